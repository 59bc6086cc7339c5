"""2-term conformal L-infinity algebras, their morphisms, and the constructions built on them."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .calg import (
    JACOBI, LEFT, SKEW, ActionTable, BracketTable, act_left, adjoint, cend_span_solve,
    check_axioms, check_derivation, check_homomorphism, check_module_axioms, inner_derivation,
    mirrored, pair_eval,
)
from .cmod import (
    L1, L2, L3, PD, ConfMap, FormTable, FreeCMod, ModElem, ShapeError, apply_map, cend_bracket,
    check_form, form_eval, matmul,
)
from .cohom import Cochain, evaluate, is_cocycle
from .poly import D, ZERO, Poly, Var, lam
from .report import Report

SKELETAL = "SKELETAL"
STRICT = "STRICT"
BOTH = "BOTH"
NEITHER = "NEITHER"

CONDITIONS = tuple("abcdefghi")


def _l3_table(values: dict, V0: FreeCMod, V1: FreeCMod) -> dict:
    out = {}
    for key, v in values.items():
        key = tuple(key)
        if len(key) != 3 or any(not 0 <= k < V0.rank for k in key):
            raise ShapeError(f"l3 key {key} is not a V0 generator triple")
        if v.module != V1:
            raise ShapeError("l3 values must lie in V1")
        if v.variables() - {D, L1, L2}:
            raise ValueError("l3 values are polynomials in L1, L2 and D")
        if not v.is_zero():
            out[key] = v
    return out


class TwoTermData:
    """(V1 --d--> V0, l2, l3).

    ``l2_00`` is the bracket on V0 and ``l2_01`` the action x |> h = l2(x, h).
    l2(h, x) is derived from condition (b) and l2(h, k) = 0.
    ``l3`` maps V0 generator triples to V1 elements in L1, L2 and D.
    """

    __slots__ = ("V0", "V1", "d", "l2_00", "l2_01", "l3")

    def __init__(self, V0, V1, d: ConfMap, l2_00: BracketTable, l2_01: ActionTable, l3: dict | None = None):
        if d.source != V1 or d.target != V0:
            raise ShapeError("d must map V1 to V0")
        if not d.is_partial_equivariant():
            raise ValueError("d must be D-equivariant (lambda-free)")
        if l2_00.module != V0:
            raise ShapeError("l2_00 must be a bracket on V0")
        if l2_01.algebra != l2_00 or l2_01.module != V1 or l2_01.side != LEFT:
            raise ShapeError("l2_01 must be a left action of (V0, l2_00) on V1")
        self.V0, self.V1, self.d = V0, V1, d
        self.l2_00, self.l2_01 = l2_00, l2_01
        self.l3 = _l3_table(l3 or {}, V0, V1)

    def __eq__(self, other):
        return isinstance(other, TwoTermData) and all(
            getattr(self, f) == getattr(other, f) for f in self.__slots__)

    def __repr__(self):
        return f"TwoTermData({self.V1.name} -> {self.V0.name}, {len(self.l3)} l3 values)"

    def with_l3(self, l3: dict) -> "TwoTermData":
        return TwoTermData(self.V0, self.V1, self.d, self.l2_00, self.l2_01, l3)

    # operations ------------------------------------------------------
    def l3_cochain(self) -> Cochain:
        return Cochain(3, self.l2_00, self.l2_01, self.l3)

    def dmap(self, h: ModElem) -> ModElem:
        return apply_map(self.d, ZERO, h)

    def l2(self, x: ModElem, nu, y: ModElem) -> ModElem:
        return pair_eval(self.l2_00.entries, self.V0, x, nu, y)

    def l2_xh(self, x: ModElem, nu, h: ModElem) -> ModElem:
        return pair_eval(self.l2_01.entries, self.V1, x, nu, h)

    def l2_hx(self, h: ModElem, nu, x: ModElem) -> ModElem:
        """l2_nu(h, x) := -l2_{-D-nu}(x, h)."""
        nu = Poly.var(nu) if isinstance(nu, Var) else nu
        s = Var(max(6, h.max_index(), x.max_index(), nu.max_index()) + 1)
        v = pair_eval(self.l2_01.entries, self.V1, x, Poly.var(s), h)
        return -v.subs({s: -PD - nu})

    def l3_eval(self, x, y, z, n1, n2) -> ModElem:
        return evaluate(self.l3_cochain(), [x, y, z], [n1, n2])


def lie_as_two_term(A: BracketTable) -> TwoTermData:
    """A Lie conformal algebra as (0 -> A, bracket, 0)."""
    V1 = FreeCMod("0", ())
    return TwoTermData(A.module, V1, ConfMap.zero(V1, A.module), A, ActionTable.zero(A, V1))


def _run_tuples(rep: Report, name: str, M0: FreeCMod, arity: int, fn, note: str = ""):
    g = M0.gens()

    def cases():
        for key in product(range(M0.rank), repeat=arity):
            yield tuple(M0.basis[k] for k in key), fn(*[g[k] for k in key])

    return rep.run(name, cases(), note)


def check_2term(T: TwoTermData, *, l3_third_slot: bool = False, i_split: dict | None = None) -> Report:
    """Conditions (a)-(i) on generator tuples.

    ``i_split`` optionally maps a label to a set of V0 generator indices
    allowed in the last slot of (i); each label gets its own verdict.
    """
    V0, V1 = T.V0, T.V1
    g0, g1 = V0.gens(), V1.gens()
    l1, l2, l3v = Poly.var(L1), Poly.var(L2), Poly.var(L3)
    rep = Report(f"two-term {V1.name} -> {V0.name}")

    rep.run("a", ((_n(V0, i, j), T.l2_00.entries[i][j] + mirrored(T.l2_00.entries[j][i]))
                  for i in range(V0.rank) for j in range(V0.rank)))

    def mixed(name, fn):
        def cases():
            for i in range(V0.rank):
                for j in range(V1.rank):
                    yield (V0.basis[i], V1.basis[j]), fn(g0[i], g1[j])
        rep.run(name, cases())

    mixed("b", lambda x, h: T.l2_xh(x, l1, h) + T.l2_hx(h, -PD - l1, x))
    rep.add("c", True, note="l2(h, k) = 0 by construction")

    def d_cases():
        for i, j, k in product(range(V0.rank), repeat=3):
            x, y, z = g0[i], g0[j], g0[k]
            a = T.l3_eval(x, y, z, l1, l2)
            r = a + T.l3_eval(y, x, z, l2, l1)
            if l3_third_slot:
                r = (r, a + T.l3_eval(x, z, y, l1, -PD - l1 - l2))
            yield _n(V0, i, j, k), r

    rep.run("d", d_cases(), note="first two slots and third slot" if l3_third_slot else "first two slots")
    mixed("e", lambda x, h: T.dmap(T.l2_xh(x, l1, h)) - T.l2(x, l1, T.dmap(h)))

    def f_cases():
        for i in range(V1.rank):
            for j in range(V1.rank):
                h, k = g1[i], g1[j]
                yield (V1.basis[i], V1.basis[j]), T.l2_xh(T.dmap(h), l1, k) - T.l2_hx(h, l1, T.dmap(k))

    rep.run("f", f_cases())

    def g_fn(x, y, z):
        rhs = T.l2(x, l1, T.l2(y, l2, z)) - T.l2(T.l2(x, l1, y), l1 + l2, z) - T.l2(y, l2, T.l2(x, l1, z))
        return T.dmap(T.l3_eval(x, y, z, l1, l2)) - rhs

    _run_tuples(rep, "g", V0, 3, g_fn)

    def h_cases():
        for i, j, k in product(range(V0.rank), range(V0.rank), range(V1.rank)):
            x, y, h = g0[i], g0[j], g1[k]
            rhs = T.l2_xh(x, l1, T.l2_xh(y, l2, h)) - T.l2_xh(T.l2(x, l1, y), l1 + l2, h) \
                - T.l2_xh(y, l2, T.l2_xh(x, l1, h))
            yield (V0.basis[i], V0.basis[j], V1.basis[k]), T.l3_eval(x, y, T.dmap(h), l1, l2) - rhs

    rep.run("h", h_cases())

    splits = i_split or {"i": set(range(V0.rank))}
    for label, allowed in splits.items():
        def i_cases(allowed=allowed):
            for i, j, k, m in product(range(V0.rank), repeat=4):
                if m not in allowed:
                    continue
                yield _n(V0, i, j, k, m), condition_i(T, g0[i], g0[j], g0[k], g0[m])
        rep.run(label, i_cases(), note="" if label == "i" else "condition (i)")
    return rep


def condition_i(T: TwoTermData, x, y, z, t) -> ModElem:
    """The ten-term expression of condition (i) at (L1, L2, L3)."""
    l1, l2, l3 = Poly.var(L1), Poly.var(L2), Poly.var(L3)
    L = T.l3_eval
    terms = [
        T.l2_xh(x, l1, L(y, z, t, l2, l3)),
        -T.l2_xh(y, l2, L(x, z, t, l1, l3)),
        T.l2_xh(z, l3, L(x, y, t, l1, l2)),
        T.l2_hx(L(x, y, z, l1, l2), l1 + l2 + l3, t),
        -L(T.l2(x, l1, y), z, t, l1 + l2, l3),
        -L(y, T.l2(x, l1, z), t, l2, l1 + l3),
        -L(y, z, T.l2(x, l1, t), l2, l3),
        L(x, T.l2(y, l2, z), t, l1, l2 + l3),
        L(x, z, T.l2(y, l2, t), l1, l3),
        -L(x, y, T.l2(z, l3, t), l1, l2),
    ]
    total = terms[0]
    for s in terms[1:]:
        total = total + s
    return total


def _n(M: FreeCMod, *idx):
    return tuple(M.basis[i] for i in idx)


def classify(T: TwoTermData) -> str:
    skeletal = T.d.is_zero()
    strict = not T.l3
    if skeletal and strict:
        return BOTH
    if skeletal:
        return SKELETAL
    if strict:
        return STRICT
    return NEITHER


# ----------------------------------------------------------------------------
# morphisms


class MorphismData:
    """f = (f0, f1, f2); ``f2[i][j]`` is f2_L1(e_i, e_j) in V1' (polynomials in L1, D)."""

    __slots__ = ("f0", "f1", "f2")

    def __init__(self, f0: ConfMap, f1: ConfMap, f2):
        if not (f0.is_partial_equivariant() and f1.is_partial_equivariant()):
            raise ValueError("f0 and f1 must be D-equivariant")
        n = f0.source.rank
        f2 = tuple(tuple(r) for r in f2)
        if len(f2) != n or any(len(r) != n for r in f2):
            raise ShapeError("f2 table must be rank(V0) x rank(V0)")
        for r in f2:
            for e in r:
                if e.module != f1.target:
                    raise ShapeError("f2 values must lie in V1'")
                if e.variables() - {D, L1}:
                    raise ValueError("f2 values are polynomials in L1 and D")
        self.f0, self.f1, self.f2 = f0, f1, f2

    @classmethod
    def identity(cls, T: TwoTermData) -> "MorphismData":
        z = T.V1.zero()
        return cls(ConfMap.identity(T.V0), ConfMap.identity(T.V1), [[z] * T.V0.rank for _ in range(T.V0.rank)])

    @classmethod
    def zero(cls, S: TwoTermData, T: TwoTermData) -> "MorphismData":
        z = T.V1.zero()
        return cls(ConfMap.zero(S.V0, T.V0), ConfMap.zero(S.V1, T.V1), [[z] * S.V0.rank for _ in range(S.V0.rank)])

    def f2_eval(self, a: ModElem, nu, b: ModElem) -> ModElem:
        return pair_eval(self.f2, self.f1.target, a, nu, b)

    def __eq__(self, other):
        return isinstance(other, MorphismData) and (self.f0, self.f1, self.f2) == (other.f0, other.f1, other.f2)

    def __repr__(self):
        return f"MorphismData({self.f0.source.name} -> {self.f0.target.name})"


def _ap(f: ConfMap, m: ModElem) -> ModElem:
    return apply_map(f, ZERO, m)


def check_morphism(f: MorphismData, S: TwoTermData, T: TwoTermData) -> Report:
    if (f.f0.source, f.f0.target, f.f1.source, f.f1.target) != (S.V0, T.V0, S.V1, T.V1):
        raise ShapeError("morphism does not match the two-term data")
    l1, l2 = Poly.var(L1), Poly.var(L2)
    rep = Report(f"morphism {S.V0.name} -> {T.V0.name}")
    g0, g1 = S.V0.gens(), S.V1.gens()

    def c1():
        for j in range(S.V1.rank):
            h = g1[j]
            yield (S.V1.basis[j],), _ap(f.f0, S.dmap(h)) - T.dmap(_ap(f.f1, h))

    rep.run("i", c1())

    def c2(x, y):
        lhs = _ap(f.f0, S.l2(x, l1, y)) - T.l2(_ap(f.f0, x), l1, _ap(f.f0, y))
        return lhs - T.dmap(f.f2_eval(x, l1, y))

    _run_tuples(rep, "ii", S.V0, 2, c2)

    def c3():
        for i in range(S.V0.rank):
            for j in range(S.V1.rank):
                x, a = g0[i], g1[j]
                lhs = _ap(f.f1, S.l2_xh(x, l1, a)) - T.l2_xh(_ap(f.f0, x), l1, _ap(f.f1, a))
                yield (S.V0.basis[i], S.V1.basis[j]), lhs - f.f2_eval(x, l1, S.dmap(a))

    rep.run("iii", c3())

    def c4(x, y, z):
        fx, fy, fz = _ap(f.f0, x), _ap(f.f0, y), _ap(f.f0, z)
        lhs = _ap(f.f1, S.l3_eval(x, y, z, l1, l2)) - T.l3_eval(fx, fy, fz, l1, l2)
        F = f.f2_eval
        rhs = F(x, l1, S.l2(y, l2, z)) - F(S.l2(x, l1, y), l1 + l2, z) - F(y, l2, S.l2(x, l1, z)) \
            + T.l2_xh(fx, l1, F(y, l2, z)) - T.l2_hx(F(x, l1, y), l1 + l2, fz) - T.l2_xh(fy, l2, F(x, l1, z))
        return lhs - rhs

    _run_tuples(rep, "iv", S.V0, 3, c4)
    return rep


def compose_morphisms(g: MorphismData, f: MorphismData) -> MorphismData:
    """g after f: (g0 f0, g1 f1, g2(f0 x, f0 y) + g1 f2(x, y))."""
    if f.f0.target != g.f0.source or f.f1.target != g.f1.source:
        raise ShapeError("morphisms are not composable")
    n = f.f0.source.rank
    gens = f.f0.source.gens()
    l1 = Poly.var(L1)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            a, b = _ap(f.f0, gens[i]), _ap(f.f0, gens[j])
            row.append(g.f2_eval(a, l1, b) + _ap(g.f1, f.f2[i][j]))
        rows.append(row)
    return MorphismData(matmul(g.f0, f.f0), matmul(g.f1, f.f1), rows)


def gauge_transform(T: TwoTermData, f2) -> tuple[TwoTermData, MorphismData]:
    """Push T forward along f = (id, id, f2); returns (T', f) with f: T -> T' valid when f2 is skew."""
    V0, V1 = T.V0, T.V1
    f = MorphismData(ConfMap.identity(V0), ConfMap.identity(V1), f2)
    g0, g1 = V0.gens(), V1.gens()
    l1, l2 = Poly.var(L1), Poly.var(L2)
    br = [[T.l2(g0[i], l1, g0[j]) - T.dmap(f.f2_eval(g0[i], l1, g0[j])) for j in range(V0.rank)]
          for i in range(V0.rank)]
    A2 = BracketTable(V0, br)
    act = [[T.l2_xh(g0[i], l1, g1[j]) - f.f2_eval(g0[i], l1, T.dmap(g1[j])) for j in range(V1.rank)]
           for i in range(V0.rank)]
    partial = TwoTermData(V0, V1, T.d, A2, ActionTable(A2, V1, LEFT, act))
    l3 = {}
    F = f.f2_eval
    for key in product(range(V0.rank), repeat=3):
        x, y, z = (g0[k] for k in key)
        rhs = F(x, l1, T.l2(y, l2, z)) - F(T.l2(x, l1, y), l1 + l2, z) - F(y, l2, T.l2(x, l1, z)) \
            + partial.l2_xh(x, l1, F(y, l2, z)) - partial.l2_hx(F(x, l1, y), l1 + l2, z) \
            - partial.l2_xh(y, l2, F(x, l1, z))
        v = T.l3_eval(x, y, z, l1, l2) - rhs
        if not v.is_zero():
            l3[key] = v
    return partial.with_l3(l3), f


# ----------------------------------------------------------------------------
# crossed modules


@dataclass(frozen=True)
class CrossedModuleData:
    g: BracketTable
    h: BracketTable
    phi: ConfMap
    action: ActionTable


def check_crossed_module(C: CrossedModuleData) -> Report:
    if C.phi.source != C.h.module or C.phi.target != C.g.module:
        raise ShapeError("phi must map h to g")
    if C.action.algebra != C.g or C.action.module != C.h.module or C.action.side != LEFT:
        raise ShapeError("action must be a left action of g on h")
    rep = Report(f"crossed module {C.h.module.name} -> {C.g.module.name}")
    rep.extend(check_axioms(C.g, (SKEW, JACOBI)), "g.")
    rep.extend(check_axioms(C.h, (SKEW, JACOBI)), "h.")
    rep.extend(check_homomorphism(C.phi, C.h, C.g), "phi.")
    rep.extend(check_module_axioms(C.action), "action.")
    G, H = C.g.module, C.h.module
    gg, gh = G.gens(), H.gens()
    l1 = Poly.var(L1)

    def equiv():
        for i in range(G.rank):
            for j in range(H.rank):
                x, h = gg[i], gh[j]
                lhs = _ap(C.phi, act_left(C.action, x, l1, h))
                rhs = pair_eval(C.g.entries, G, x, l1, _ap(C.phi, h))
                yield (G.basis[i], H.basis[j]), lhs - rhs

    def peiffer():
        for i in range(H.rank):
            for j in range(H.rank):
                h, k = gh[i], gh[j]
                lhs = act_left(C.action, _ap(C.phi, h), l1, k)
                rhs = pair_eval(C.h.entries, H, h, l1, k)
                yield (H.basis[i], H.basis[j]), lhs - rhs

    rep.run("equivariance", equiv())
    rep.run("peiffer", peiffer())
    return rep


def to_crossed_module(T: TwoTermData) -> CrossedModuleData:
    """[h_L k] := l2_L(dh, k), x |> h := l2(x, h), phi := d."""
    if T.l3:
        raise ValueError("to_crossed_module needs strict data (l3 = 0)")
    g1 = T.V1.gens()
    rows = [[T.l2_xh(T.dmap(h), Poly.var(L1), k) for k in g1] for h in g1]
    h_table = BracketTable(T.V1, rows)
    return CrossedModuleData(T.l2_00, h_table, T.d, T.l2_01)


def from_crossed_module(C: CrossedModuleData) -> TwoTermData:
    return TwoTermData(C.g.module, C.h.module, C.phi, C.g, C.action, {})


def inn_der_crossed_module(A: BracketTable, extra: list[tuple[str, ConfMap]] = (), degree_bound: int = 3):
    """Inn(A) -> Der(A) on the generating set {ad e_i} plus ``extra`` derivations.

    Der's bracket is the Cend bracket, written back in the listed generators
    (Cend D acting as -mu); Inn is identified with A through ad, so the
    action D |>_L ad_x = ad_{D_L x} has the components of D_L x.
    """
    R = A.module
    ads = [inner_derivation(A, e) for e in R.gens()]
    for name, Dm in extra:
        if not check_derivation(A, Dm).passed:
            raise ValueError(f"{name} is not a conformal derivation")
    maps = ads + [m for _, m in extra]
    names = tuple(f"ad_{b}" for b in R.basis) + tuple(n for n, _ in extra)
    DerM = FreeCMod(f"Der{R.name}", names)
    InnM = FreeCMod(f"Inn{R.name}", tuple(f"ad_{b}" for b in R.basis))
    rows = []
    for a in maps:
        row = []
        for b in maps:
            fam = cend_bracket(a, b)
            coeffs = cend_span_solve(fam, maps, degree_bound)
            if coeffs is None:
                raise ValueError("listed derivations are not closed under the Cend bracket")
            row.append(ModElem(DerM, coeffs))
        rows.append(row)
    der = BracketTable(DerM, rows)
    inn = BracketTable(InnM, [[ModElem(InnM, e.comps) for e in r] for r in A.entries])
    phi = ConfMap(InnM, DerM, [[Poly.const(1 if i == k else 0) for i in range(InnM.rank)]
                               for k in range(DerM.rank)])
    act_rows = [[ModElem(InnM, apply_map(m, Poly.var(L1), e).comps) for e in R.gens()] for m in maps]
    return CrossedModuleData(der, inn, phi, ActionTable(der, InnM, LEFT, act_rows))


# ----------------------------------------------------------------------------
# skeletal and string data


def make_skeletal(R: BracketTable, M: ActionTable, c3: Cochain) -> TwoTermData:
    if c3.degree != 3 or c3.algebra != R or c3.action != M:
        raise ShapeError("c3 must be a 3-cochain of R with values in M")
    if not check_axioms(R, (SKEW, JACOBI)).passed:
        raise ValueError("R is not a Lie conformal algebra")
    if not check_module_axioms(M).passed:
        raise ValueError("M is not a module")
    if not is_cocycle(c3).passed:
        raise ValueError("c3 is not a 3-cocycle")
    return TwoTermData(R.module, M.module, ConfMap.zero(M.module, R.module), R, M, dict(c3.values))


def trivial_line(name: str = "C") -> FreeCMod:
    """The one-dimensional module on which D acts by 0."""
    return FreeCMod(name, ("c",), partial_zero=True)


def string_l3_value(R: BracketTable, B: FormTable, x, y, z) -> Poly:
    """<[x_L1 y], z>_{L1+L2}."""
    return form_eval(B, pair_eval(R.entries, R.module, x, Poly.var(L1), y), z, Poly.var(L1) + Poly.var(L2))


def make_string(R: BracketTable, B: FormTable) -> TwoTermData:
    rep = check_form(B, R)
    if not rep.passed:
        raise ValueError(f"form is not symmetric and invariant: {rep}")
    if not check_axioms(R, (SKEW, JACOBI)).passed:
        raise ValueError("R is not a Lie conformal algebra")
    C = trivial_line()
    g = R.module.gens()
    l3 = {}
    for key in product(range(R.module.rank), repeat=3):
        v = string_l3_value(R, B, *(g[k] for k in key))
        if v:
            l3[key] = ModElem(C, [v])
    return TwoTermData(R.module, C, ConfMap.zero(C, R.module), R, ActionTable.zero(R, C), l3)


# ----------------------------------------------------------------------------
# the Lie 2-algebra presentation (functors T and S at data level)


@dataclass(frozen=True)
class Lie2Presentation:
    """Objects V0, morphisms L1 = V0 (+) V1 with s, t, i; bracket on L1; Jacobiator table.

    The Jacobiator at (x, y, z) is the morphism ([x_L1[y_L2 z]], -l3(x, y, z)):
    with t(x, h) = x + dh this runs from [x[yz]] to [[xy]z] + [y[xz]].
    """
    objects: FreeCMod
    v1: FreeCMod
    morphisms: FreeCMod
    s: ConfMap
    t: ConfMap
    i: ConfMap
    bracket: BracketTable
    jacobiator: tuple  # ((key, ModElem over morphisms), ...)

    def jac(self, key) -> ModElem:
        for k, v in self.jacobiator:
            if k == key:
                return v
        return self.morphisms.zero()


def _sum_names(V0: FreeCMod, V1: FreeCMod) -> tuple[str, ...]:
    names = list(V0.basis)
    for b in V1.basis:
        n = b
        while n in names:
            n += "'"
        names.append(n)
    return tuple(names)


def _embed(Lm: FreeCMod, offset: int, m: ModElem) -> ModElem:
    comps = [ZERO] * Lm.rank
    for k, c in enumerate(m.comps):
        comps[offset + k] = c
    return ModElem(Lm, comps)


def _part(M: FreeCMod, offset: int, m: ModElem) -> ModElem:
    return ModElem(M, m.comps[offset:offset + M.rank])


def lie2_present(T: TwoTermData) -> Lie2Presentation:
    V0, V1 = T.V0, T.V1
    n0 = V0.rank
    Lm = FreeCMod(f"{V0.name}+{V1.name}", _sum_names(V0, V1))
    one, zero = Poly.const(1), ZERO
    s = ConfMap(Lm, V0, [[one if c == k else zero for c in range(Lm.rank)] for k in range(n0)])
    tcols = [V0.gen(c) if c < n0 else T.dmap(V1.gen(c - n0)) for c in range(Lm.rank)]
    t = ConfMap.from_columns(Lm, V0, tcols)
    i = ConfMap(V0, Lm, [[one if c == k else zero for c in range(n0)] for k in range(Lm.rank)])
    l1 = Poly.var(L1)
    g = Lm.gens()
    rows = []
    for a in range(Lm.rank):
        row = []
        for b in range(Lm.rank):
            xa, xb = a < n0, b < n0
            if xa and xb:
                v = _embed(Lm, 0, T.l2(V0.gen(a), l1, V0.gen(b)))
            elif xa:
                v = _embed(Lm, n0, T.l2_xh(V0.gen(a), l1, V1.gen(b - n0)))
            elif xb:
                v = _embed(Lm, n0, T.l2_hx(V1.gen(a - n0), l1, V0.gen(b)))
            else:
                v = _embed(Lm, n0, T.l2_xh(T.dmap(V1.gen(a - n0)), l1, V1.gen(b - n0)))
            row.append(v)
        rows.append(row)
    bracket = BracketTable(Lm, rows)
    l2v = Poly.var(L2)
    jac = []
    for key in product(range(n0), repeat=3):
        x, y, z = (V0.gen(k) for k in key)
        src = T.l2(x, l1, T.l2(y, l2v, z))
        val = _embed(Lm, 0, src) - _embed(Lm, n0, T.l3.get(key, V1.zero()))
        if not val.is_zero():
            jac.append((key, val))
    return Lie2Presentation(V0, V1, Lm, s, t, i, bracket, tuple(jac))


def lie2_extract(P: Lie2Presentation) -> TwoTermData:
    V0, V1, Lm = P.objects, P.v1, P.morphisms
    n0 = V0.rank
    d = ConfMap.from_columns(V1, V0, [apply_map(P.t, ZERO, Lm.gen(n0 + j)) - apply_map(P.s, ZERO, Lm.gen(n0 + j))
                                      for j in range(V1.rank)])
    A = BracketTable(V0, [[_part(V0, 0, P.bracket.entries[a][b]) for b in range(n0)] for a in range(n0)])
    act = ActionTable(A, V1, LEFT, [[_part(V1, n0, P.bracket.entries[a][n0 + b]) for b in range(V1.rank)]
                                    for a in range(n0)])
    l3 = {}
    for key, v in P.jacobiator:
        w = -_part(V1, n0, v)
        if not w.is_zero():
            l3[key] = w
    return TwoTermData(V0, V1, d, A, act, l3)


def check_presentation(P: Lie2Presentation, T: TwoTermData) -> Report:
    """Structure maps, Jacobiator endpoints (condition (g)), naturality in the third slot
    (condition (h)) and the Jacobiator identity (condition (i)), all through the L1 bracket."""
    V0, V1, Lm = P.objects, P.v1, P.morphisms
    n0 = V0.rank
    rep = Report(f"Lie 2-algebra on {Lm.name}")
    si = matmul(P.s, P.i)
    ti = matmul(P.t, P.i)
    ident = ConfMap.identity(V0)
    rep.add("s.i = id", si == ident)
    rep.add("t.i = id", ti == ident)
    l1, l2, l3 = Poly.var(L1), Poly.var(L2), Poly.var(L3)
    br = lambda a, nu, b: pair_eval(P.bracket.entries, Lm, a, nu, b)
    S = lambda m: apply_map(P.s, ZERO, m)
    Tt = lambda m: apply_map(P.t, ZERO, m)
    inc = lambda x: apply_map(P.i, ZERO, x)
    hv = lambda h: _embed(Lm, n0, h)
    p1 = lambda m: _part(V1, n0, m)

    def endpoints():
        for key in product(range(n0), repeat=3):
            x, y, z = (inc(V0.gen(k)) for k in key)
            J = P.jac(key)
            target = br(br(x, l1, y), l1 + l2, z) + br(y, l2, br(x, l1, z))
            yield _n(V0, *key), (S(J) - S(br(x, l1, br(y, l2, z))), Tt(J) - S(target))

    rep.run("jacobiator-endpoints", endpoints())

    def natural():
        for i, j, k, m in product(range(n0), range(n0), range(n0), range(V1.rank)):
            x, y, z = inc(V0.gen(i)), inc(V0.gen(j)), inc(V0.gen(k))
            h = hv(V1.gen(m))
            zp = z + inc(T.dmap(V1.gen(m)))
            jz = p1(_jac_general(P, T, x, y, z))
            jzp = p1(_jac_general(P, T, x, y, zp))
            top = p1(br(x, l1, br(y, l2, h)))
            bottom = p1(br(br(x, l1, y), l1 + l2, h) + br(y, l2, br(x, l1, h)))
            yield (V0.basis[i], V0.basis[j], V0.basis[k], V1.basis[m]), (jzp + top) - (jz + bottom)

    rep.run("naturality", natural())

    def identity():
        for key in product(range(n0), repeat=4):
            x, y, z, t = (inc(V0.gen(k)) for k in key)
            L = lambda a, b, c, n1, n2: -p1(_jac_general(P, T, a, b, c, n1, n2))
            X = lambda m: inc(S(m))
            lhs = L(x, y, X(br(z, l3, t)), l1, l2) + p1(br(y, l2, hv(L(x, z, t, l1, l3)))) \
                + L(X(br(x, l1, y)), z, t, l1 + l2, l3) + L(y, X(br(x, l1, z)), t, l2, l1 + l3) \
                + L(y, z, X(br(x, l1, t)), l2, l3)
            rhs = p1(br(x, l1, hv(L(y, z, t, l2, l3)))) + p1(br(z, l3, hv(L(x, y, t, l1, l2)))) \
                + p1(br(hv(L(x, y, z, l1, l2)), l1 + l2 + l3, t)) + L(x, X(br(y, l2, z)), t, l1, l2 + l3) \
                + L(x, z, X(br(y, l2, t)), l1, l3)
            yield _n(V0, *key), lhs - rhs

    rep.run("jacobiator-identity", identity())
    return rep


def _jac_general(P: Lie2Presentation, T: TwoTermData, x, y, z, n1=None, n2=None) -> ModElem:
    """The Jacobiator at object arguments (elements of L1 in the image of i), multilinearly."""
    V0 = P.objects
    n0 = V0.rank
    n1 = Poly.var(L1) if n1 is None else n1
    n2 = Poly.var(L2) if n2 is None else n2
    vals = {key: _part(P.v1, n0, v) for key, v in P.jacobiator}
    coch = Cochain(3, T.l2_00, T.l2_01, {k: -v for k, v in vals.items()})
    xs = [_part(V0, 0, a) for a in (x, y, z)]
    h = -evaluate(coch, xs, [n1, n2])
    src = T.l2(xs[0], n1, T.l2(xs[1], n2, xs[2]))
    return _embed(P.morphisms, 0, src) + _embed(P.morphisms, n0, h)
