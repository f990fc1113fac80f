"""Finite fields GF(p^n) and the rings Z/n as evaluator structures."""
from __future__ import annotations

from functools import lru_cache

from .logic.structures import Structure, ring_structure


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, n) with q = p^n, or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    n, r = 0, q
    while r % p == 0:
        r //= p
        n += 1
    return (p, n) if r == 1 else None


def _poly_mulmod(a, b, mod, p):
    n = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # mod is monic, coefficients low to high
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d]
        if c:
            for i in range(n + 1):
                prod[d - n + i] = (prod[d - n + i] - c * mod[i]) % p
    return (prod + [0] * n)[:n]


def _is_irreducible(mod, p) -> bool:
    """Brute force: no monic factor of degree 1..n/2."""
    n = len(mod) - 1
    for d in range(1, n // 2 + 1):
        for code in range(p ** d):
            f = [(code // p ** i) % p for i in range(d)] + [1]
            if _poly_rem(mod, f, p) == [0] * d:
                return False
    return True


def _poly_rem(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    for d in range(len(a) - 1, db - 1, -1):
        c = a[d] * inv_lead % p
        if c:
            for i in range(db + 1):
                a[d - db + i] = (a[d - db + i] - c * b[i]) % p
    return (a + [0] * db)[:db]


@lru_cache(maxsize=None)
def least_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Least (in base-p code order) monic irreducible polynomial of degree n."""
    if n == 1:
        return (0, 1)
    for code in range(p ** n):
        mod = [(code // p ** i) % p for i in range(n)] + [1]
        if mod[0] and _is_irreducible(mod, p):
            return tuple(mod)
    raise ValueError("no irreducible polynomial found")


class FiniteField:
    """GF(p^n); element a encodes the polynomial sum_i digit_i(a) t^i in base p."""

    def __init__(self, q: int):
        pn = prime_power(q)
        if pn is None:
            raise ValueError(f"{q} is not a prime power")
        self.p, self.n = pn
        self.q = q
        self.modulus = least_irreducible(self.p, self.n)
        self._add = None
        self._mul = None

    def digits(self, a: int) -> list[int]:
        return [(a // self.p ** i) % self.p for i in range(self.n)]

    def encode(self, coeffs) -> int:
        return sum(c * self.p ** i for i, c in enumerate(coeffs))

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        return self.encode([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        return self.encode([(-x) % self.p for x in self.digits(a)])

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a * b) % self.p
        return self.encode(_poly_mulmod(self.digits(a), self.digits(b), list(self.modulus), self.p))

    def power(self, a: int, k: int) -> int:
        out, base = 1, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def frobenius(self, a: int, k: int = 1) -> int:
        return self.power(a, self.p ** k)

    def tables(self):
        if self._add is None:
            r = range(self.q)
            self._add = [[self.add(a, b) for b in r] for a in r]
            self._mul = [[self.mul(a, b) for b in r] for a in r]
        return self._add, self._mul

    def multiplicative_generator(self) -> int:
        order = self.q - 1
        primes = [d for d in range(2, order + 1) if order % d == 0 and all(d % e for e in range(2, d))]
        for a in range(1, self.q):
            if all(self.power(a, order // r) != 1 for r in primes):
                return a
        raise ValueError("no generator")

    def minimal_polynomial(self, c: int) -> list[int]:
        """Coefficients (low to high, monic) over F_p of the minimal polynomial of c."""
        conj = []
        x = c
        while x not in conj:
            conj.append(x)
            x = self.frobenius(x)
        poly = [1]  # as field elements
        for r in conj:
            nr = self.neg(r)
            nxt = [0] * (len(poly) + 1)
            for i, a in enumerate(poly):
                nxt[i + 1] = self.add(nxt[i + 1], a)
                nxt[i] = self.add(nxt[i], self.mul(a, nr))
            poly = nxt
        if any(a >= self.p for a in poly):
            raise AssertionError("minimal polynomial not over the prime field")
        return poly

    def structure(self, sigma_power: int | None = None) -> Structure:
        add, mul = self.tables()
        sigma = None
        if sigma_power is not None:
            sigma = [self.frobenius(a, sigma_power) for a in range(self.q)]
        return ring_structure(add, mul, 0, 1, sigma, label=f"F{self.q}")


def zmod_structure(n: int) -> Structure:
    r = range(n)
    return ring_structure([[(a + b) % n for b in r] for a in r], [[(a * b) % n for b in r] for a in r], 0, 1 % n,
                          label=f"Z/{n}")


def product_ring_structure(m: int, n: int) -> Structure:
    """Z/m x Z/n, a non-field ring of size m*n."""
    size = m * n

    def split(a):
        return a // n, a % n
    add = [[((split(a)[0] + split(b)[0]) % m) * n + (split(a)[1] + split(b)[1]) % n for b in range(size)]
           for a in range(size)]
    mul = [[((split(a)[0] * split(b)[0]) % m) * n + (split(a)[1] * split(b)[1]) % n for b in range(size)]
           for a in range(size)]
    return ring_structure(add, mul, 0, (1 % m) * n + 1 % n, label=f"Z/{m}xZ/{n}")
