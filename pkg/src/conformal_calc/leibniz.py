"""Leibniz conformal algebras: kernel, left center, skew-symmetrization and their 2-term data."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import linalg
from .calg import LEFT, LEFT_LEIBNIZ, SKEW, ActionTable, BracketTable, check_axioms, mirrored, pair_eval
from .cmod import L1, L2, ConfMap, FreeCMod, ModElem, ShapeError
from .poly import D, ZERO, DegreeOverflow, Poly
from . import poly as _poly
from .report import Report
from .twoterm import TwoTermData, check_2term, lie_as_two_term

HALF = Fraction(1, 2)


class LeibnizAlg:
    """A bracket table verified to satisfy the left Leibniz identity."""

    __slots__ = ("table",)

    def __init__(self, table: BracketTable, *, validate: bool = True):
        if validate:
            rep = check_axioms(table, (LEFT_LEIBNIZ,))
            if not rep.passed:
                raise ValueError(f"not a left Leibniz conformal algebra:\n{rep}")
        self.table = table

    @property
    def module(self) -> FreeCMod:
        return self.table.module

    def product(self, a: ModElem, nu, b: ModElem) -> ModElem:
        return pair_eval(self.table.entries, self.module, a, nu, b)

    def __repr__(self):
        return f"LeibnizAlg({self.module.name})"


@dataclass(frozen=True)
class SubmoduleSlice:
    """A finite Q-basis of D-polynomial combinations of generators."""
    module: FreeCMod
    generators: tuple
    degree_bound: int

    def __len__(self):
        return len(self.generators)

    def contains(self, m: ModElem) -> bool:
        base = _rank(self.generators)
        return _rank(self.generators + (m,)) == base


def _flatten(m: ModElem) -> dict:
    """Q-coordinates of a lambda-free element: (component, D-exponent) -> coefficient."""
    out = {}
    for i, c in enumerate(m.comps):
        for e, coef in c.terms.items():
            if any(e[1:]):
                raise ValueError("slice elements must be lambda-free")
            out[(i, e[0] if e else 0)] = coef
    return out


def _rank(items) -> int:
    flat = [_flatten(m) for m in items]
    keys = sorted({k for f in flat for k in f})
    col = {k: n for n, k in enumerate(keys)}
    return linalg.rank([{col[k]: v for k, v in f.items()} for f in flat], len(keys))


def _independent(items: list[ModElem]) -> list[ModElem]:
    """Greedy Q-independent sublist, in order."""
    keep: list[ModElem] = []
    for m in items:
        if _rank(keep + [m]) == len(keep) + 1:
            keep.append(m)
    return keep


def _lambda_coefficients(m: ModElem) -> list[ModElem]:
    """Split m = sum_k lam^k u_k (lam any of the non-D variables) into the u_k."""
    groups: dict = {}
    for i, c in enumerate(m.comps):
        for e, coef in c.terms.items():
            rest = tuple(e[1:])
            while rest and rest[-1] == 0:
                rest = rest[:-1]
            groups.setdefault(rest, [ZERO] * m.module.rank)
            groups[rest][i] = groups[rest][i] + Poly({(e[0] if e else 0,): coef})
    return [ModElem(m.module, comps) for _, comps in sorted(groups.items())]


def leibniz_kernel(L: LeibnizAlg) -> SubmoduleSlice:
    """Q-independent coefficients of x o_L y + y o_{-D-L} x over generator pairs."""
    T = L.table
    n = L.module.rank
    items = []
    for i, j in product(range(n), repeat=2):
        K = T.entries[i][j] + mirrored(T.entries[j][i])
        items.extend(_lambda_coefficients(K))
    gens = _independent(items)
    for u in gens:
        for e in L.module.gens():
            if not L.product(u, Poly.var(L1), e).is_zero():
                raise AssertionError(f"kernel element {u} does not left-annihilate {e}")
    bound = max((c.degree(D) for u in gens for c in u.comps), default=0)
    return SubmoduleSlice(L.module, tuple(gens), bound)


def left_center(L: LeibnizAlg, degree_bound: int) -> SubmoduleSlice:
    """All t = sum f_i(D) e_i with deg f_i <= degree_bound and t o_L x = 0 for every x."""
    if degree_bound < 0:
        raise ValueError("degree_bound must be nonnegative")
    if degree_bound > _poly._DEGREE_CAP:
        raise DegreeOverflow(f"degree bound {degree_bound} exceeds the cap {_poly._DEGREE_CAP}")
    M = L.module
    T = L.table
    n = M.rank
    unknowns = [(i, k) for i in range(n) for k in range(degree_bound + 1)]
    lam_ = Poly.var(L1)
    eqs: dict = {}
    for u, (i, k) in enumerate(unknowns):
        factor = (-lam_) ** k
        for j in range(n):
            for m, q in enumerate(T.entries[i][j].comps):
                for e, coef in (factor * q).terms.items():
                    eqs.setdefault((j, m, e), {})[u] = coef
    rows = [eqs[key] for key in sorted(eqs)]
    basis = linalg.nullspace(rows, len(unknowns)) if rows else \
        [[Fraction(int(a == b)) for b in range(len(unknowns))] for a in range(len(unknowns))]
    gens = []
    for vec in basis:
        comps = [ZERO] * n
        for u, val in enumerate(vec):
            if val:
                i, k = unknowns[u]
                comps[i] = comps[i] + Poly.var(D, k).scale(val)
        t = ModElem(M, comps)
        for e in M.gens():
            if not L.product(t, lam_, e).is_zero():
                raise AssertionError("center solve returned a non-central element")
        gens.append(t)
    return SubmoduleSlice(M, tuple(gens), degree_bound)


def check_ker_in_center(L: LeibnizAlg) -> Report:
    rep = Report(f"kernel in left center of {L.module.name}")
    K = leibniz_kernel(L)
    gens = L.module.gens()

    def cases():
        for u in K.generators:
            for k, e in enumerate(gens):
                yield (str(u), L.module.basis[k]), L.product(u, Poly.var(L1), e)

    rep.run("ker-in-center", cases(), note=f"{len(K)} kernel generators")
    return rep


def skew_symmetrize(L: LeibnizAlg | BracketTable) -> BracketTable:
    """[[x_L y]] = (x o_L y - y o_{-D-L} x) / 2."""
    T = L.table if isinstance(L, LeibnizAlg) else L
    n = T.module.rank
    rows = [[(T.entries[i][j] - mirrored(T.entries[j][i])).scale(HALF) for j in range(n)] for i in range(n)]
    return BracketTable(T.module, rows, SKEW)


def jtilde_leibniz(L: LeibnizAlg, x, y, z, n1=None, n2=None) -> ModElem:
    """The Jacobiator of the skew-symmetrized bracket."""
    S = skew_symmetrize(L)
    n1 = Poly.var(L1) if n1 is None else n1
    n2 = Poly.var(L2) if n2 is None else n2
    br = lambda a, nu, b: pair_eval(S.entries, S.module, a, nu, b)
    return br(x, n1, br(y, n2, z)) - br(y, n2, br(x, n1, z)) - br(br(x, n1, y), n1 + n2, z)


def default_degree_bound(L: LeibnizAlg) -> int:
    top = max((c.degree(D) for row in L.table.entries for m in row for c in m.comps), default=0)
    return 2 + 2 * max(top, 0)


def center_generators(Z: SubmoduleSlice) -> list[ModElem]:
    """C[D]-generators of a slice: greedily pick elements not reached by D-multiples of earlier ones.

    Raises when the slice is not D-stable within its bound."""
    def deg(m):
        return max((c.degree(D) for c in m.comps), default=-1)

    chosen: list[ModElem] = []
    spanned: list[ModElem] = []
    for m in sorted(Z.generators, key=deg):
        if spanned and SubmoduleSlice(Z.module, tuple(spanned), Z.degree_bound).contains(m):
            continue
        chosen.append(m)
        k = 0
        while deg(m) + k <= Z.degree_bound:
            spanned.append(_dpow(m, k))
            k += 1
    span = SubmoduleSlice(Z.module, tuple(spanned), Z.degree_bound)
    for m in Z.generators:
        if not span.contains(m):
            raise ValueError("center slice is not generated by its low-degree part")
    for s in spanned:
        if not Z.contains(s):
            raise ValueError(f"center slice is not D-stable within the bound: {s}")
    return chosen


def _dpow(m: ModElem, k: int) -> ModElem:
    return Poly.var(D, k) * m if k else m


def express_in(gens: list[ModElem], m: ModElem, V1: FreeCMod) -> ModElem | None:
    """Write m (with lambda parameters) as sum_c p_c(D, lambdas) gens[c]; None if impossible."""
    M = m.module
    out = [ZERO] * len(gens)
    for rest, u in _grouped(m):
        du = max((c.degree(D) for c in u.comps), default=-1)
        if du < 0:
            continue
        unknowns = [(c, k) for c in range(len(gens)) for k in range(du + 1)]
        eqs: dict = {}
        for idx, (c, k) in enumerate(unknowns):
            for key, coef in _flatten(_dpow(gens[c], k)).items():
                eqs.setdefault(key, {})[idx] = coef
        target = _flatten(u)
        for key in target:
            eqs.setdefault(key, {})
        keys = sorted(eqs)
        sol = linalg.solve([eqs[k] for k in keys], [target.get(k, 0) for k in keys], len(unknowns))
        if sol is None:
            return None
        mono = Poly({(0,) + rest: 1})
        for idx, val in enumerate(sol):
            if val:
                c, k = unknowns[idx]
                out[c] = out[c] + (mono * Poly.var(D, k)).scale(val)
    return ModElem(V1, out)


def _grouped(m: ModElem):
    groups: dict = {}
    for i, c in enumerate(m.comps):
        for e, coef in c.terms.items():
            rest = tuple(e[1:])
            while rest and rest[-1] == 0:
                rest = rest[:-1]
            groups.setdefault(rest, [ZERO] * m.module.rank)
            groups[rest][i] = groups[rest][i] + Poly({(e[0] if e else 0,): coef})
    for rest in sorted(groups):
        yield rest, ModElem(m.module, groups[rest])


def _name_for(m: ModElem, k: int) -> str:
    nz = [(i, c) for i, c in enumerate(m.comps) if not c.is_zero()]
    if len(nz) == 1 and nz[0][1] == Poly.const(1):
        return m.module.basis[nz[0][0]]
    return f"z{k + 1}"


def leibniz_two_term(L: LeibnizAlg, degree_bound: int | None = None) -> TwoTermData:
    """(Z -> L, skew-symmetrized bracket, Jacobiator), Z free on the left-center generators."""
    if not leibniz_kernel(L).generators:
        return lie_as_two_term(L.table)
    bound = default_degree_bound(L) if degree_bound is None else degree_bound
    Z = left_center(L, bound)
    gens = center_generators(Z)
    if not gens:
        raise ValueError("left center is empty for a non-Lie input")
    V1 = FreeCMod(f"Z({L.module.name})", tuple(_name_for(g, k) for k, g in enumerate(gens)))
    d = ConfMap.from_columns(V1, L.module, gens)
    S = skew_symmetrize(L)
    V0 = L.module
    rows = []
    for x in V0.gens():
        row = []
        for g in gens:
            v = pair_eval(S.entries, V0, x, Poly.var(L1), g)
            h = express_in(gens, v, V1)
            if h is None:
                raise ValueError(f"[[x_L t]] leaves the center at ({x}, {g})")
            row.append(h)
        rows.append(row)
    l2_01 = ActionTable(S, V1, LEFT, rows)
    l3 = {}
    g0 = V0.gens()
    for key in product(range(V0.rank), repeat=3):
        j = jtilde_leibniz(L, *(g0[k] for k in key))
        if j.is_zero():
            continue
        h = express_in(gens, j, V1)
        if h is None:
            raise ValueError(f"the Jacobiator leaves the center at {tuple(V0.basis[k] for k in key)}: {j}")
        l3[key] = h
    return TwoTermData(V0, V1, d, S, l2_01, l3)


def center_indices(L: LeibnizAlg, degree_bound: int | None = None) -> set[int]:
    """Indices of the algebra generators lying in the left center."""
    lam_ = Poly.var(L1)
    return {k for k, e in enumerate(L.module.gens())
            if all(L.product(e, lam_, f).is_zero() for f in L.module.gens())}


def check_leibniz_two_term(L: LeibnizAlg, T: TwoTermData | None = None, **flags) -> Report:
    """check_2term with condition (i) reported for t in the left center and for all t."""
    T = T or leibniz_two_term(L)
    n = L.module.rank
    split = {"i[t in Z^l]": center_indices(L), "i[all L]": set(range(n))}
    return check_2term(T, i_split=split, **flags)


def relabel_v1(T: TwoTermData, V1: FreeCMod) -> TwoTermData:
    """The same data with V1 replaced by a module of the same rank."""
    if V1.rank != T.V1.rank:
        raise ShapeError("relabeling needs equal ranks")
    re = lambda m: ModElem(V1, m.comps)
    d = ConfMap(V1, T.V0, T.d.matrix, T.d.var)
    act = ActionTable(T.l2_00, V1, LEFT, [[re(m) for m in row] for row in T.l2_01.entries])
    return TwoTermData(T.V0, V1, d, T.l2_00, act, {k: re(v) for k, v in T.l3.items()})
