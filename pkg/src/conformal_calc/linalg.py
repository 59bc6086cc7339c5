"""Exact Gaussian elimination over Q (rows are dicts: column -> Fraction)."""
from __future__ import annotations

from fractions import Fraction


def rref(rows: list[dict], ncols: int) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form of a sparse matrix; returns (rows, pivot columns)."""
    rows = [{c: Fraction(v) for c, v in r.items() if v} for r in rows]
    rows = [r for r in rows if r]
    pivots: list[int] = []
    out: list[dict] = []
    for col in range(ncols):
        piv = None
        for k, r in enumerate(rows):
            if col in r:
                piv = k
                break
        if piv is None:
            continue
        r = rows.pop(piv)
        inv = 1 / r[col]
        r = {c: v * inv for c, v in r.items()}
        for k, other in enumerate(rows):
            f = other.get(col)
            if f:
                for c, v in r.items():
                    nv = other.get(c, 0) - f * v
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
        for k, other in enumerate(out):
            f = other.get(col)
            if f:
                for c, v in r.items():
                    nv = other.get(c, 0) - f * v
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
        rows = [x for x in rows if x]
        out.append(r)
        pivots.append(col)
    return out, pivots


def nullspace(rows: list[dict], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0}, one dense vector per free column."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for r, p in zip(red, pivots):
            v[p] = -r.get(free, 0)
        basis.append(v)
    return basis


def solve(rows: list[dict], rhs: list, ncols: int) -> list[Fraction] | None:
    """One solution of A x = b (free variables set to 0), or None if inconsistent."""
    aug = []
    for r, b in zip(rows, rhs):
        r = dict(r)
        if b:
            r[ncols] = Fraction(b)
        aug.append(r)
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in zip(red, pivots):
        x[p] = r.get(ncols, Fraction(0))
    return x


def rank(rows: list[dict], ncols: int) -> int:
    return len(rref(rows, ncols)[1])
