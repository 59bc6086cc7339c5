"""Exact multivariate polynomials over the rationals in ``D`` and ``L1, L2, ...``.

``D`` stands for the derivation of the underlying C[D]-module and the ``Lk``
for the formal lambda-bracket variables.  Everything is commutative: the
conformal calculus is encoded by the evaluation rules in :mod:`cmod` and
:mod:`calg`, never by the ring itself.

Monomials are stored as dense exponent tuples indexed by variable number
(``D`` is index 0, ``Lk`` is index ``k``) with trailing zeros trimmed, so the
tuple is a canonical key.  Coefficients are ``int`` when integral and
:class:`fractions.Fraction` otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = [
    "Var", "D", "lam", "Poly", "DegreeOverflow", "set_degree_cap",
    "get_degree_cap", "ZERO", "ONE", "as_poly",
]


class DegreeOverflow(ArithmeticError):
    """An exponent exceeded the configured cap (runaway expansion)."""


_DEGREE_CAP = 64


def set_degree_cap(cap: int) -> None:
    global _DEGREE_CAP
    if cap < 1:
        raise ValueError("degree cap must be positive")
    _DEGREE_CAP = cap


def get_degree_cap() -> int:
    return _DEGREE_CAP


@dataclass(frozen=True, order=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("variable index must be >= 0")

    @property
    def is_partial(self) -> bool:
        return self.index == 0

    @property
    def name(self) -> str:
        return "D" if self.index == 0 else f"L{self.index}"

    def __repr__(self):
        return self.name


D = Var(0)


def lam(i: int) -> Var:
    if i < 1:
        raise ValueError("lambda indices start at 1")
    return Var(i)


Coeff = Union[int, Fraction]


def _norm(c) -> Coeff:
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        c = Fraction(c.numerator, c.denominator)
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    raise TypeError(f"not a rational coefficient: {c!r}")


def _trim(e: tuple) -> tuple:
    n = len(e)
    while n and e[n - 1] == 0:
        n -= 1
    return e if n == len(e) else e[:n]


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    if len(a) >= len(b):
        e = tuple([x + y for x, y in zip(a, b)]) + a[len(b):]
    else:
        e = tuple([x + y for x, y in zip(a, b)]) + b[len(a):]
    if max(e) > _DEGREE_CAP:
        raise DegreeOverflow(f"exponent {max(e)} exceeds cap {_DEGREE_CAP}")
    return e


class Poly:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero rationals."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        t = {}
        if terms:
            for e, c in terms.items():
                c = _norm(c)
                if c:
                    e = _trim(tuple(e))
                    c = _norm(t.get(e, 0) + c)
                    if c:
                        t[e] = c
                    else:
                        t.pop(e, None)
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> "Poly":
        p = cls.__new__(cls)
        p._t = t
        p._hash = None
        return p

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        c = _norm(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, v: Var | int, power: int = 1) -> "Poly":
        i = v.index if isinstance(v, Var) else int(v)
        if power == 0:
            return ONE
        e = (0,) * i + (power,)
        return cls._raw({e: 1})

    @property
    def terms(self) -> dict:
        return dict(self._t)

    # predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def is_const(self) -> bool:
        return not self._t or (len(self._t) == 1 and () in self._t)

    def const_value(self) -> Coeff:
        if not self.is_const():
            raise ValueError("polynomial is not constant")
        return self._t.get((), 0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({(): _norm(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = as_poly(other)
        if not other._t:
            return self
        if not self._t:
            return other
        t = dict(self._t)
        for e, c in other._t.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = _norm(s + c)
                if s:
                    t[e] = s
                else:
                    del t[e]
        return Poly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-as_poly(other))

    def __rsub__(self, other):
        return as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, (Poly, Var, Rational)):
            return NotImplemented
        other = as_poly(other)
        if not self._t or not other._t:
            return ZERO
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            if not eb:
                return self.scale(cb) if a is self._t else other.scale(cb)
        t: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = _mono_mul(ea, eb)
                c = ca * cb
                s = t.get(e)
                t[e] = c if s is None else s + c
        out = {}
        for e, c in t.items():
            c = _norm(c)
            if c:
                out[e] = c
        return Poly._raw(out)

    __rmul__ = __mul__

    def scale(self, q) -> "Poly":
        q = _norm(q)
        if not q:
            return ZERO
        if q == 1:
            return self
        return Poly._raw({e: _norm(c * q) for e, c in self._t.items()})

    def __truediv__(self, other):
        if isinstance(other, Poly):
            other = other.const_value()
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        return self.scale(Fraction(1) / _norm(other))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # inspection -----------------------------------------------------
    def degree(self, v: Var | None = None) -> int:
        """Degree in ``v`` (total degree if ``v`` is None); -1 for zero."""
        if not self._t:
            return -1
        if v is None:
            return max(sum(e) for e in self._t)
        i = v.index
        return max((e[i] if i < len(e) else 0) for e in self._t)

    def variables(self) -> set[Var]:
        out = set()
        for e in self._t:
            for i, k in enumerate(e):
                if k:
                    out.add(Var(i))
        return out

    def max_index(self) -> int:
        return max((len(e) - 1 for e in self._t), default=-1)

    def has(self, v: Var) -> bool:
        i = v.index
        return any(i < len(e) and e[i] for e in self._t)

    def coeff(self, v: Var, d: int) -> "Poly":
        """The polynomial multiplying ``v**d``; free of ``v``."""
        i = v.index
        out = {}
        for e, c in self._t.items():
            k = e[i] if i < len(e) else 0
            if k == d:
                if i < len(e):
                    e = _trim(e[:i] + (0,) + e[i + 1:])
                out[e] = c
        return Poly._raw(out)

    def coefficients(self, v: Var) -> dict[int, "Poly"]:
        out: dict[int, dict] = {}
        i = v.index
        for e, c in self._t.items():
            k = e[i] if i < len(e) else 0
            if k and i < len(e):
                e = _trim(e[:i] + (0,) + e[i + 1:])
            out.setdefault(k, {})[e] = c
        return {k: Poly._raw(t) for k, t in out.items()}

    # substitution -----------------------------------------------------
    def subs(self, mapping: Mapping[Var, object]) -> "Poly":
        """Simultaneous substitution ``v -> q`` for every pair in ``mapping``."""
        if not mapping or not self._t:
            return self
        repl = {v.index: as_poly(q) for v, q in mapping.items()}
        powers: dict[tuple[int, int], Poly] = {}

        def pw(i, k):
            key = (i, k)
            p = powers.get(key)
            if p is None:
                p = repl[i] if k == 1 else pw(i, k - 1) * repl[i]
                powers[key] = p
            return p

        acc: dict = {}
        for e, c in self._t.items():
            keep = list(e)
            factors = []
            for i, k in enumerate(e):
                if k and i in repl:
                    keep[i] = 0
                    factors.append(pw(i, k))
            base = _trim(tuple(keep))
            if not factors:
                acc[base] = acc.get(base, 0) + c
                continue
            prod = factors[0]
            for f in factors[1:]:
                prod = prod * f
            for fe, fc in prod._t.items():
                ne = _mono_mul(base, fe)
                acc[ne] = acc.get(ne, 0) + c * fc
        out = {}
        for e, c in acc.items():
            c = _norm(c)
            if c:
                out[e] = c
        return Poly._raw(out)

    def substitute(self, v: Var, q) -> "Poly":
        return self.subs({v: q})

    def rename(self, old: Var, new: Var) -> "Poly":
        return self.subs({old: Poly.var(new)})

    # ordering and printing ----------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple, Coeff]]:
        """Terms by descending total degree, then descending lexicographic exponent."""
        return sorted(self._t.items(), key=lambda ec: (-sum(ec[0]), _neg(ec[0])))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _neg(e: tuple) -> tuple:
    return tuple(-x for x in e)


def _fmt_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(p: Poly) -> str:
    """Render in the definition-file grammar, e.g. ``D + 2*L1``."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        factors = []
        for i, k in enumerate(e):
            if k:
                name = "D" if i == 0 else f"L{i}"
                factors.append(name if k == 1 else f"{name}^{k}")
        neg = c < 0
        a = -c if neg else c
        if factors:
            body = "*".join(factors)
            if a != 1:
                body = f"{_fmt_coeff(a)}*{body}"
        else:
            body = _fmt_coeff(a)
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


def as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, Var):
        return Poly.var(x)
    return Poly.const(x)


def poly_sum(items: Iterable[Poly]) -> Poly:
    acc: dict = {}
    for p in items:
        for e, c in p._t.items():
            acc[e] = acc.get(e, 0) + c
    out = {}
    for e, c in acc.items():
        c = _norm(c)
        if c:
            out[e] = c
    return Poly._raw(out)


ZERO = Poly._raw({})
ONE = Poly._raw({(): 1})


def fresh_var(*polys: Poly, above: int = 0) -> Var:
    """A lambda variable not occurring in any of ``polys`` (and above ``above``)."""
    top = max([above] + [p.max_index() for p in polys])
    return Var(max(top, 0) + 1)
