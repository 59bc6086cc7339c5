"""Cochains of a Lie conformal algebra with coefficients in a module, and the differential.

A degree-n cochain is stored on ordered generator tuples.  Its value at
``(x_1, ..., x_n)`` is a module element whose components are polynomials in
``L1 .. L(n-1)`` and ``D``; the last argument carries the implicit variable
``-D - L1 - ... - L(n-1)``.

Internally every slot gets its own variable ("full" convention): a value
computed with free ``mu_1 .. mu_n`` is a representative modulo
``D + mu_1 + ... + mu_n``.  The differential is computed with the last
variable free and reduced at the very end.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product
from math import factorial, prod
from typing import Sequence

from .calg import LEFT, RIGHT, ActionTable, BracketTable, act_left, act_right, left_to_right, pair_eval
from .cmod import PD, ModElem, ShapeError
from .poly import D, ONE, ZERO, Poly, Var, lam, poly_sum
from .report import Report

LIE = "LIE"
LEIBNIZ = "LEIBNIZ"

_MAX_DEGREE = {"in": 3, "out": 5}


class DegreeLimit(ValueError):
    """Cochain degree beyond the configured maximum."""


def set_max_degree(inp: int = 3, out: int = 5) -> None:
    _MAX_DEGREE["in"] = inp
    _MAX_DEGREE["out"] = out


class Cochain:
    __slots__ = ("degree", "algebra", "action", "values")

    def __init__(self, degree: int, algebra: BracketTable, action: ActionTable, values: dict):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        if action.side != LEFT:
            raise ValueError("cochains take coefficients in a LEFT module")
        if action.algebra != algebra:
            raise ShapeError("action is over a different algebra")
        M = action.module
        n = algebra.module.rank
        allowed = {D} | {lam(k) for k in range(1, degree)}
        clean = {}
        for key, v in values.items():
            key = tuple(key)
            if len(key) != degree or any(not 0 <= k < n for k in key):
                raise ShapeError(f"bad generator tuple {key} for degree {degree}")
            if v.module != M:
                raise ShapeError("cochain value outside the coefficient module")
            if v.variables() - allowed:
                raise ValueError(f"degree-{degree} values may only use D and L1..L{degree - 1}")
            if not v.is_zero():
                clean[key] = v
        self.degree = degree
        self.algebra = algebra
        self.action = action
        self.values = clean

    @property
    def module(self):
        return self.action.module

    @classmethod
    def zero(cls, degree: int, algebra: BracketTable, action: ActionTable) -> "Cochain":
        return cls(degree, algebra, action, {})

    @classmethod
    def from_element(cls, a: ModElem, algebra: BracketTable, action: ActionTable) -> "Cochain":
        """A 0-cochain is an element of the module."""
        return cls(0, algebra, action, {(): a})

    def value(self, key) -> ModElem:
        return self.values.get(tuple(key), self.module.zero())

    def is_zero(self) -> bool:
        return not self.values

    def keys(self):
        return product(range(self.algebra.module.rank), repeat=self.degree)

    def __eq__(self, other):
        return isinstance(other, Cochain) and \
            (self.degree, self.algebra, self.action, self.values) == \
            (other.degree, other.algebra, other.action, other.values)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._same(other)
        keys = set(self.values) | set(other.values)
        return Cochain(self.degree, self.algebra, self.action,
                       {k: self.value(k) - other.value(k) for k in keys})

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same(other)
        keys = set(self.values) | set(other.values)
        return Cochain(self.degree, self.algebra, self.action,
                       {k: self.value(k) + other.value(k) for k in keys})

    def _same(self, other):
        if (self.degree, self.algebra, self.action) != (other.degree, other.algebra, other.action):
            raise ShapeError("cochains of different shape")

    def __repr__(self):
        return f"Cochain(degree={self.degree}, {len(self.values)} nonzero values)"

    def entries(self):
        """(names, value) for nonzero values in lexicographic tuple order."""
        B = self.algebra.module.basis
        for key in sorted(self.values):
            yield tuple(B[k] for k in key), self.values[key]


# ----------------------------------------------------------------------------
# evaluation


def evaluate_full(g: Cochain, args: Sequence[ModElem], mus: Sequence) -> ModElem:
    """g at arbitrary arguments with one variable per slot (a representative mod D + sum(mus))."""
    n = g.degree
    if len(args) != n or len(mus) != n:
        raise ShapeError(f"degree-{n} cochain needs {n} arguments and variables")
    M = g.module
    if n == 0:
        return g.value(())
    for a in args:
        if a.module != g.algebra.module:
            raise ShapeError("cochain argument outside the algebra")
    mus = [Poly.var(m) if isinstance(m, Var) else m for m in mus]
    slots = []
    for a, mu in zip(args, mus):
        sub = {D: -mu}
        slot = [(j, c.subs(sub) if c.has(D) else c) for j, c in enumerate(a.comps) if c]
        if not slot:
            return M.zero()
        slots.append(slot)
    sub = {lam(k): mus[k - 1] for k in range(1, n)}
    cache: dict = {}
    acc = [[] for _ in range(M.rank)]
    for combo in product(*slots):
        key = tuple(j for j, _ in combo)
        val = g.values.get(key)
        if val is None:
            continue
        v = cache.get(key)
        if v is None:
            v = val.subs(sub) if sub else val
            cache[key] = v
        coef = prod((c for _, c in combo), start=ONE)
        for k, q in enumerate(v.comps):
            if q:
                acc[k].append(coef * q)
    return ModElem(M, [poly_sum(x) for x in acc])


def evaluate(g: Cochain, args: Sequence[ModElem], lams: Sequence) -> ModElem:
    """g_{lams}(args) with n-1 explicit variables; the last slot carries -D minus their sum."""
    n = g.degree
    if n == 0:
        return g.value(())
    lams = [Poly.var(m) if isinstance(m, Var) else m for m in lams]
    if len(lams) != n - 1:
        raise ShapeError(f"degree-{n} cochain takes {n - 1} lambda variables")
    last = -PD - poly_sum(lams)
    return evaluate_full(g, args, list(lams) + [last])


# ----------------------------------------------------------------------------
# differential


def _induced_right(action: ActionTable) -> ActionTable:
    return left_to_right(action)


def apply_delta(g: Cochain, formula: str = LIE, right: ActionTable | None = None) -> Cochain:
    """The differential, computed term by term.

    LIE: sum (-1)^{i+1} x_i |>_{l_i} g(..^i..) + sum_{i<j} (-1)^{i+j} g_{l_i+l_j, ...}([x_i l_i x_j], ...).
    LEIBNIZ: sum_{i<=n} (-1)^{i+1} x_i |> g(..^i..) + (-1)^{n+1} g(x_1..x_n) <|_{l_1+..+l_n} x_{n+1}
             + sum_{i<j} (-1)^i g(.., x_{j-1}, [x_i l_i x_j], x_{j+1}, ..) with x_i removed.
    The right action defaults to v <|_L x := -x |>_{-D-L} v.
    """
    n = g.degree
    if n > _MAX_DEGREE["in"] or n + 1 > _MAX_DEGREE["out"]:
        raise DegreeLimit(f"cochain degree {n} exceeds the configured maximum {_MAX_DEGREE['in']}")
    if formula not in (LIE, LEIBNIZ):
        raise ValueError("formula must be LIE or LEIBNIZ")
    if formula == LEIBNIZ:
        right = right or _induced_right(g.action)
        if right.side != RIGHT or right.module != g.module or right.algebra != g.algebra:
            raise ShapeError("LEIBNIZ formula needs a right action on the same module")
    A = g.algebra
    R = A.module
    gens = R.gens()
    lv = [Poly.var(lam(k)) for k in range(1, n + 2)]  # l_1 .. l_{n+1}; the last is the free implicit one
    closing = {lam(n + 1): -PD - poly_sum(lv[:n])}
    br = lambda a, nu, b: pair_eval(A.entries, R, a, nu, b)
    out = {}
    for key in product(range(R.rank), repeat=n + 1):
        xs = [gens[k] for k in key]
        terms = []
        idx = range(n + 1)
        if g.is_zero():
            break
        act_range = idx if formula == LIE else range(n)
        for i in act_range:
            rest = [xs[k] for k in idx if k != i]
            mus = [lv[k] for k in idx if k != i]
            inner = evaluate_full(g, rest, mus)
            if inner.is_zero():
                continue
            t = act_left(g.action, xs[i], lv[i], inner)
            terms.append(t if i % 2 == 0 else -t)
        if formula == LEIBNIZ:
            inner = evaluate_full(g, xs[:n], lv[:n])
            if not inner.is_zero():
                t = act_right(right, inner, poly_sum(lv[:n]), xs[n])
                terms.append(t if (n + 1) % 2 == 0 else -t)
        for i in idx:
            for j in idx:
                if j <= i:
                    continue
                b = br(xs[i], lv[i], xs[j])
                if b.is_zero():
                    continue
                if formula == LIE:
                    args = [b] + [xs[k] for k in idx if k not in (i, j)]
                    mus = [lv[i] + lv[j]] + [lv[k] for k in idx if k not in (i, j)]
                    sign = (-1) ** (i + j)  # 0-based indices: (-1)^{(i+1)+(j+1)}
                else:
                    args = [b if k == j else xs[k] for k in idx if k != i]
                    mus = [lv[i] + lv[j] if k == j else lv[k] for k in idx if k != i]
                    sign = (-1) ** (i + 1)
                t = evaluate_full(g, args, mus)
                if not t.is_zero():
                    terms.append(t if sign > 0 else -t)
        if not terms:
            continue
        total = terms[0]
        for t in terms[1:]:
            total = total + t
        total = total.subs(closing)
        if not total.is_zero():
            out[key] = total
    return Cochain(n + 1, A, g.action, out)


def _first_nonzero(c: Cochain):
    for names, v in c.entries():
        return names, v
    return None


def is_skew(g: Cochain) -> bool:
    """Alternating in the arguments (with their variables); cochains are stored without enforcing this."""
    return g.degree <= 1 or skew_symmetrize(g) == _scaled(g, factorial(g.degree))


def _scaled(g: Cochain, k: int) -> Cochain:
    return Cochain(g.degree, g.algebra, g.action, {key: v.scale(k) for key, v in g.values.items()})


def _skew_note(g: Cochain, formula: str) -> str:
    if formula == LIE and g.degree >= 2 and not is_skew(g):
        return "input not skew-symmetric; the LIE differential assumes it"
    return ""


def is_cocycle(g: Cochain, formula: str = LIE, right: ActionTable | None = None) -> Report:
    d = apply_delta(g, formula, right)
    rep = Report(f"cocycle (degree {g.degree}, {formula})")
    rep.run("cocycle", [_first_nonzero(d)] if d.values else [], note=_skew_note(g, formula))
    return rep


def check_delta_squared(g: Cochain, formula: str = LIE, right: ActionTable | None = None) -> Report:
    dd = apply_delta(apply_delta(g, formula, right), formula, right)
    rep = Report(f"delta squared (degree {g.degree}, {formula})")
    rep.run("delta-squared", [_first_nonzero(dd)] if dd.values else [], note=_skew_note(g, formula))
    return rep


# ----------------------------------------------------------------------------
# generators for tests and the self-test


def skew_symmetrize(g: Cochain) -> Cochain:
    """sum over permutations sigma of sgn(sigma) g(x_sigma, mu_sigma), the last variable included."""
    n = g.degree
    if n <= 1:
        return g
    R = g.algebra.module
    gens = R.gens()
    lv = [Poly.var(lam(k)) for k in range(1, n)]
    mus = lv + [-PD - poly_sum(lv)]
    perms = [(p, _sign(p)) for p in permutations(range(n))]
    out = {}
    for key in product(range(R.rank), repeat=n):
        acc = g.module.zero()
        for p, s in perms:
            v = evaluate_full(g, [gens[key[k]] for k in p], [mus[k] for k in p])
            acc = acc + v if s > 0 else acc - v
        if not acc.is_zero():
            out[key] = acc
    return Cochain(n, g.algebra, g.action, out)


def _sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def random_poly(rng: random.Random, variables: Sequence[Var], max_deg: int = 2, coeff: int = 5, terms: int = 3) -> Poly:
    """A nonzero polynomial with 1..terms monomials and coefficients in [-coeff, coeff]."""
    width = max(v.index for v in variables) + 1 if variables else 1
    while True:
        out = ZERO
        for _ in range(rng.randint(1, terms)):
            e = [0] * width
            for _ in range(rng.randint(0, max_deg)):
                if variables:
                    e[rng.choice(list(variables)).index] += 1
            c = rng.choice([k for k in range(-coeff, coeff + 1) if k])
            out = out + Poly({tuple(e): c})
        if not out.is_zero():
            return out


def random_cochain(rng: random.Random, degree: int, algebra: BracketTable, action: ActionTable,
                   max_deg: int = 2, coeff: int = 5, density: float = 0.6) -> Cochain:
    """Random values with small integer coefficients in D and L1..L(degree-1)."""
    variables = [D] + [lam(k) for k in range(1, degree)]
    M = action.module
    if degree == 0:
        return Cochain.from_element(
            ModElem(M, [random_poly(rng, variables, max_deg, coeff) for _ in range(M.rank)]), algebra, action)
    keys = list(product(range(algebra.module.rank), repeat=degree))
    chosen = [k for k in keys if rng.random() < density] or [rng.choice(keys)]
    vals = {}
    for key in chosen:
        comps = [random_poly(rng, variables, max_deg, coeff) if rng.random() < density else ZERO
                 for _ in range(M.rank)]
        if not any(comps):
            comps[rng.randrange(M.rank)] = random_poly(rng, variables, max_deg, coeff)
        vals[key] = ModElem(M, comps)
    return Cochain(degree, algebra, action, vals)
