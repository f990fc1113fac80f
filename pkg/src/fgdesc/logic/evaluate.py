"""Model checking with memoization, conjunctive block planning and shortcut tags.

A quantifier block is evaluated as a search: nested existentials (and
universals under negation) are flattened into one block of variables and a
list of literals. Each variable is then either computed from a defining
equation x = t, drawn from a disjunction of such equations, or enumerated;
every literal is checked as soon as its variables are bound. Universal
blocks are searched as the negated existential.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass

from .formula import (And, Const, Eq, Exists, Forall, Func, Generation, Implies, Not, Or, Power, PowerUpTo,
                      Rel, Relativized, SlpWitness, Var, free_vars, substitute, term_vars)
from .structures import SignatureMismatch, Structure

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class UnboundVariable(KeyError):
    pass


class EvaluationError(ValueError):
    pass


_MISSING = object()


@dataclass
class _Step:
    var: str
    kind: str  # "def", "or" or "enum"
    terms: tuple
    checks: tuple  # (formula, polarity) pairs


@dataclass
class _Plan:
    pre: tuple  # literals over outer variables only
    steps: tuple
    live: tuple = ()  # per step: block variables bound earlier and used later


class Evaluator:
    def __init__(self, M: Structure, shortcuts: bool = True, memo: bool = True):
        self.M = M
        self.shortcuts = shortcuts
        self.use_memo = memo
        self.memo: dict = {}
        self.plans: dict = {}
        self.fv_sorted: dict = {}
        self.closures: dict = {}
        self.quotients: dict = {}
        self.stats = {"shortcut": 0, "enum": 0}

    # -- terms ---------------------------------------------------------------

    def term(self, t, env):
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise UnboundVariable(t.name) from None
        if isinstance(t, Const):
            try:
                return self.M.constants[t.name]
            except KeyError:
                raise SignatureMismatch(f"structure has no constant {t.name!r}") from None
        try:
            fn = self.M.functions[t.name]
        except KeyError:
            raise SignatureMismatch(f"structure has no function {t.name!r}") from None
        if len(t.args) == 2:
            return fn(self.term(t.args[0], env), self.term(t.args[1], env))
        return fn(*[self.term(a, env) for a in t.args])

    # -- formulas ------------------------------------------------------------

    def holds(self, f, env=None) -> bool:
        env = dict(env or {})
        missing = free_vars(f) - set(env)
        if missing:
            raise UnboundVariable(", ".join(sorted(missing)))
        return self._eval(f, env)

    def _key(self, f, env):
        fid = id(f)
        names = self.fv_sorted.get(fid)
        if names is None:
            names = tuple(sorted(free_vars(f)))
            self.fv_sorted[fid] = names
        return (fid, tuple([env[n] for n in names]))

    def _eval(self, f, env) -> bool:
        if isinstance(f, Eq):
            return self.term(f.left, env) == self.term(f.right, env)
        if isinstance(f, Rel):
            rel = self.M.relations.get(f.name)
            if rel is None:
                raise SignatureMismatch(f"structure has no relation {f.name!r}")
            args = tuple(self.term(a, env) for a in f.args)
            if callable(rel):
                return bool(rel(*args))
            return (args[0] if len(args) == 1 else args) in rel
        key = None
        if self.use_memo:
            key = self._key(f, env)
            hit = self.memo.get(key)
            if hit is not None:
                return hit
        res = None
        if self.shortcuts and f.tag is not None:
            res = self._shortcut(f.tag, env)
            if res is not None:
                self.stats["shortcut"] += 1
        if res is None:
            res = self._eval_node(f, env)
        if key is not None:
            self.memo[key] = res
        return res

    def _eval_node(self, f, env) -> bool:
        if isinstance(f, Not):
            return not self._eval(f.body, env)
        if isinstance(f, And):
            return all(self._eval(p, env) for p in f.parts)
        if isinstance(f, Or):
            return any(self._eval(p, env) for p in f.parts)
        if isinstance(f, Implies):
            return (not self._eval(f.left, env)) or self._eval(f.right, env)
        if isinstance(f, (Exists, Forall)):
            plan = self._plan(f)
            found = self._search(plan, env)
            return found if isinstance(f, Exists) else not found
        raise TypeError(f"not a formula: {f!r}")

    # -- block planning ------------------------------------------------------

    def _plan(self, f) -> _Plan:
        plan = self.plans.get(id(f))
        if plan is not None and plan[0] is f:
            return plan[1]
        outer = set(free_vars(f))
        variables: list[str] = []
        lits: list[tuple] = []
        taken = set(outer)
        self._flatten(f.body if f.tag is None or not self.shortcuts else f.body, isinstance(f, Exists),
                      variables, lits, taken, first=f.var)
        plan = self._schedule(variables, lits, outer, "inv" in self.M.functions and "mul" in self.M.functions)
        self.plans[id(f)] = (f, plan)
        return plan

    def _flatten(self, body, positive, variables, lits, taken, first=None):
        if first is not None:
            name = first
            if name in taken:
                new = _fresh(name, taken)
                body = substitute(body, {name: Var(new)})
                name = new
            taken.add(name)
            variables.append(name)
        stack = [(body, positive)]
        while stack:
            g, pol = stack.pop()
            tagged = g.tag is not None and self.shortcuts
            if not tagged and ((isinstance(g, Exists) and pol) or (isinstance(g, Forall) and not pol)):
                name, inner = g.var, g.body
                if name in taken:
                    new = _fresh(name, taken)
                    inner = substitute(inner, {name: Var(new)})
                    name = new
                taken.add(name)
                variables.append(name)
                stack.append((inner, pol))
            elif not tagged and ((isinstance(g, And) and pol) or (isinstance(g, Or) and not pol)) and g.parts:
                stack.extend((p, pol) for p in reversed(g.parts))
            elif not tagged and isinstance(g, Implies) and not pol:
                stack.append((g.right, False))
                stack.append((g.left, True))
            elif not tagged and isinstance(g, Not):
                stack.append((g.body, not pol))
            else:
                lits.append((g, pol))

    def _schedule(self, variables, lits, outer, solve: bool) -> _Plan:
        bound = set(outer)
        remaining = list(variables)
        pending = list(lits)
        pre = tuple(sorted((lt for lt in pending if free_vars(lt[0]) <= bound), key=_cost))
        pending = [lt for lt in pending if not free_vars(lt[0]) <= bound]
        steps = []
        while remaining:
            choice = None
            for lt in pending:
                d = _definer(lt, remaining, bound, solve)
                if d is not None and d[1] == "def":
                    choice = d + (lt,)
                    break
            if choice is None:
                for lt in pending:
                    d = _definer(lt, remaining, bound, solve)
                    if d is not None:
                        choice = d + (lt,)
                        break
            if choice is None:
                best, best_score = remaining[0], -1
                for v in remaining:
                    score = sum(1 for lt in pending if free_vars(lt[0]) <= bound | {v})
                    if score > best_score:
                        best, best_score = v, score
                choice = (best, "enum", (), None)
            var, kind, terms, used = choice
            remaining.remove(var)
            bound.add(var)
            ready = [lt for lt in pending if lt is not used and free_vars(lt[0]) <= bound]
            pending = [lt for lt in pending if lt is not used and not free_vars(lt[0]) <= bound]
            steps.append(_Step(var, kind, terms, tuple(sorted(ready, key=_cost))))
        # variables still needed from step i on: the failure memo keys on them
        needed: set = set()
        live = []
        for st in reversed(steps):
            for t in st.terms:
                needed |= term_vars(t)
            for lt, _ in st.checks:
                needed |= free_vars(lt)
            needed.discard(st.var)
            live.append(tuple(sorted(needed - outer)))
        live.reverse()
        return _Plan(pre, tuple(steps), tuple(live))

    def _search(self, plan: _Plan, env) -> bool:
        for lit, pol in plan.pre:
            if self._eval(lit, env) != pol:
                return False
        steps = plan.steps
        if not steps:
            return True
        saved = [env.get(s.var, _MISSING) for s in steps]
        try:
            return self._run(plan, 0, env, set())
        finally:
            for s, old in zip(steps, saved):
                if old is _MISSING:
                    env.pop(s.var, None)
                else:
                    env[s.var] = old

    def _run(self, plan, i, env, failed) -> bool:
        steps = plan.steps
        if i and self.use_memo:
            key = (i, tuple([env[v] for v in plan.live[i]]))
            if key in failed:
                return False
        step = steps[i]
        if step.kind == "def":
            cands = (self.term(step.terms[0], env),)
        elif step.kind == "or":
            cands = tuple(dict.fromkeys(self.term(t, env) for t in step.terms))
        else:
            if self.M.size is None:
                raise EvaluationError(f"variable {step.var!r} needs enumeration over an infinite domain")
            cands = range(self.M.size)
            self.stats["enum"] += 1
        last = i + 1 == len(steps)
        var = step.var
        checks = step.checks
        for c in cands:
            env[var] = c
            ok = True
            for lit, pol in checks:
                if self._eval(lit, env) != pol:
                    ok = False
                    break
            if ok and (last or self._run(plan, i + 1, env, failed)):
                return True
        if i and self.use_memo:
            failed.add(key)
        return False

    # -- shortcut oracles ----------------------------------------------------

    def _shortcut(self, tag, env):
        M = self.M
        if isinstance(tag, Power):
            g, x = self.term(tag.g, env), self.term(tag.x, env)
            return _power(M.functions[tag.op], x, tag.n) == g
        if isinstance(tag, PowerUpTo):
            g, x = self.term(tag.g, env), self.term(tag.x, env)
            op = M.functions[tag.op]
            cur = M.constants[tag.unit]
            for _ in range(1 << _log2ceil(tag.n)):
                if cur == g:
                    return True
                cur = op(cur, x)
            return False
        if isinstance(tag, Generation):
            if M.group is None or M.size is None or M.size > tag.v:
                return None
            gens = frozenset(self.term(x, env) for x in tag.xs)
            return self.term(tag.g, env) in self._closure(gens)
        if isinstance(tag, Relativized):
            return self._relativized(tag, env)
        if isinstance(tag, SlpWitness):
            return None
        return None

    def _closure(self, gens: frozenset) -> frozenset:
        hit = self.closures.get(gens)
        if hit is None:
            from ..group import closure

            hit = closure(self.M.group, sorted(gens)).members
            self.closures[gens] = hit
        return hit

    def _relativized(self, tag: Relativized, env):
        M = self.M
        if M.group is None or M.size is None or M.size > tag.v:
            return None
        from ..group import centralizer, is_normal, quotient
        from .structures import group_structure

        G = M.group
        amb_gens = frozenset(self.term(t, env) for t in tag.ambient)
        if tag.kernel is not None:
            ker_key = ("gens", frozenset(self.term(t, env) for t in tag.kernel))
        else:
            ker_key = ("cent", frozenset(self.term(t, env) for t in tag.centralize))
        qkey = (amb_gens, ker_key)
        entry = self.quotients.get(qkey, _MISSING)
        if entry is _MISSING:
            # no ambient generators: the whole structure
            ambient = self._closure(amb_gens) if tag.ambient else frozenset(range(M.size))
            pool = sorted(ambient)
            if ker_key[0] == "gens":
                kernel = self._closure(ker_key[1])
            else:
                kernel = centralizer(G, sorted(ker_key[1]), within=pool).members
            if not kernel <= ambient or not is_normal(G, kernel, pool):
                entry = None
            else:
                Q, proj = quotient(G, kernel, pool)
                entry = (Evaluator(group_structure(Q), self.shortcuts, self.use_memo), proj)
            self.quotients[qkey] = entry
        if entry is None:
            return None
        sub, proj = entry
        inner_env = {}
        for name, t in tag.constants:
            val = self.term(t, env)
            if val not in proj:
                return None
            inner_env[name] = proj[val]
        return sub._eval(tag.inner, inner_env)


def _fresh(name: str, taken: set) -> str:
    i = 1
    while f"{name}_{i}" in taken:
        i += 1
    return f"{name}_{i}"


def _solve(a, b, remaining, bound):
    """Solve a = b for a remaining variable, in a group, when b = u*x or x*u."""
    if not (isinstance(b, Func) and b.name == "mul" and term_vars(a) <= bound):
        return None
    u, w = b.args
    if isinstance(w, Var) and w.name in remaining and term_vars(u) <= bound:
        return (w.name, "def", (Func("mul", (Func("inv", (u,)), a)),))
    if isinstance(u, Var) and u.name in remaining and term_vars(w) <= bound:
        return (u.name, "def", (Func("mul", (a, Func("inv", (w,)))),))
    return None


def _definer(lt, remaining, bound, solve=False):
    """(var, kind, terms) if the literal defines a remaining variable from bound ones."""
    g, pol = lt
    if not pol:
        return None
    if isinstance(g, Eq) and g.tag is None:
        for a, b in ((g.left, g.right), (g.right, g.left)):
            if isinstance(a, Var) and a.name in remaining and term_vars(b) <= bound:
                return (a.name, "def", (b,))
        if solve:
            for a, b in ((g.left, g.right), (g.right, g.left)):
                hit = _solve(a, b, remaining, bound)
                if hit is not None:
                    return hit
        return None
    if isinstance(g, Or) and g.parts and g.tag is None:
        var, terms = None, []
        for p in g.parts:
            if not isinstance(p, Eq):
                return None
            hit = None
            for a, b in ((p.left, p.right), (p.right, p.left)):
                if isinstance(a, Var) and a.name in remaining and term_vars(b) <= bound:
                    hit = (a.name, b)
                    break
            if hit is None or (var is not None and hit[0] != var):
                return None
            var = hit[0]
            terms.append(hit[1])
        return (var, "or", tuple(terms))
    return None


def _cost(lt) -> int:
    g = lt[0]
    if isinstance(g, (Eq, Rel)):
        return 0
    if isinstance(g.tag, Relativized):
        return 3
    if g.tag is not None:
        return 1
    return 2


def _power(op, x, n: int):
    result = None
    base = x
    while n:
        if n & 1:
            result = base if result is None else op(result, base)
        n >>= 1
        if n:
            base = op(base, base)
    return result


def _log2ceil(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


def evaluate(f, M: Structure, env=None, shortcuts: bool = True, memo: bool = True) -> bool:
    return Evaluator(M, shortcuts=shortcuts, memo=memo).holds(f, env)


def naive_holds(f, M: Structure, env=None) -> bool:
    """Plain Tarskian recursion: no memo, no planning, no tags. Test oracle."""
    env = dict(env or {})
    ev = Evaluator(M, shortcuts=False, memo=False)

    def rec(g):
        if isinstance(g, (Eq, Rel)):
            return ev._eval(g, env)
        if isinstance(g, Not):
            return not rec(g.body)
        if isinstance(g, And):
            return all(rec(p) for p in g.parts)
        if isinstance(g, Or):
            return any(rec(p) for p in g.parts)
        if isinstance(g, Implies):
            return (not rec(g.left)) or rec(g.right)
        old = env.get(g.var, _MISSING)
        want = isinstance(g, Exists)
        try:
            for c in M.domain:
                env[g.var] = c
                if rec(g.body) == want:
                    return want
            return not want
        finally:
            if old is _MISSING:
                env.pop(g.var, None)
            else:
                env[g.var] = old

    missing = free_vars(f) - set(env)
    if missing:
        raise UnboundVariable(", ".join(sorted(missing)))
    return rec(f)


def failing_conjunct(f, M: Structure, env=None, shortcuts: bool = True):
    """Index of the first false conjunct of a top-level conjunction, looking
    through a leading existential block; None if f holds or has no conjunction.

    For an existential block the reported index is the furthest first-failing
    conjunct over all witness candidates (computed only when enumeration of
    the block is small).
    """
    ev = Evaluator(M, shortcuts=shortcuts)
    env = dict(env or {})
    if ev.holds(f, env):
        return None
    names = []
    g = f
    while isinstance(g, Exists):
        names.append(g.var)
        g = g.body
    if not isinstance(g, And):
        return None
    if not names:
        for i, p in enumerate(g.parts):
            if not ev.holds(p, env):
                return i
        return None
    if M.size is None or M.size ** len(names) > 200000:
        return None
    import itertools

    best = 0
    for vals in itertools.product(range(M.size), repeat=len(names)):
        e2 = dict(env)
        e2.update(zip(names, vals))
        for i, p in enumerate(g.parts):
            if not ev._eval(p, e2):
                best = max(best, i)
                break
    return best
