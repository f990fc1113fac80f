"""Counting lower bounds on description length, in whole bits.

Each calculator returns floor(log2 N) for a lower bound N on the size of a
class of pairwise non-isomorphic structures: some member of the class needs
a binary description at least that long.  Only integer arithmetic is used.
"""
from __future__ import annotations

KINDS = ("groups-p-n", "graphs", "prime-fields")


class BoundError(ValueError):
    pass


def _floor_log2_ratio(num: int, den: int) -> int:
    """floor(log2(num / den)) for num >= den > 0."""
    b = num.bit_length() - den.bit_length()
    while b > 0 and den << b > num:
        b -= 1
    while den << (b + 1) <= num:
        b += 1
    return b


def groups_p_n_bits(p: int, n: int) -> int:
    """Groups of order p^n number at least p^(2/27 n^2 (n-6)); vacuous for n <= 6."""
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise BoundError(f"p = {p} is not prime")
    if n < 1:
        raise BoundError("n must be positive")
    if n <= 6:
        return 0
    a = 2 * n * n * (n - 6)          # exponent is a / 27
    # largest b with 2^(27 b) <= p^a
    big = p ** a
    b = (big.bit_length() - 1) // 27
    while 1 << (27 * (b + 1)) <= big:
        b += 1
    while b and 1 << (27 * b) > big:
        b -= 1
    return b


def graphs_bits(n: int) -> int:
    """Graphs on n vertices number more than 2^(n^2/6) / n."""
    if n < 1:
        raise BoundError("n must be positive")
    # largest b with 2^(6b) n^6 <= 2^(n^2)
    top = 1 << (n * n)
    den = n ** 6
    if den > top:
        return 0
    return _floor_log2_ratio(top, den) // 6


def prime_count(N: int) -> int:
    if N < 2:
        return 0
    sieve = bytearray([1]) * (N + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(N ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, N + 1, i)))
    return sum(sieve)


def prime_fields_bits(N: int) -> int:
    """Prime fields F_p with p <= N: pi(N) of them."""
    if N < 2:
        raise BoundError("N must be at least 2")
    return prime_count(N).bit_length() - 1


def lower_bound_bits(kind: str, **params) -> int:
    if kind == "groups-p-n":
        return groups_p_n_bits(int(params["p"]), int(params["n"]))
    if kind == "graphs":
        return graphs_bits(int(params["n"]))
    if kind == "prime-fields":
        return prime_fields_bits(int(params["N"]))
    raise BoundError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
