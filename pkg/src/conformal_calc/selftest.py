"""Built-in fixture corpus and the acceptance suite run by ``conformal-calc selftest``."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .calg import (
    JACOBI, JACOBI_EQUIV, LEFT, SKEW, ActionTable, BracketTable, adjoint, check_axioms,
    check_module_axioms, cur_sl2, eval_bracket, free_abelian, m_delta, mirrored,
    perturbed_virasoro, virasoro,
)
from .cmod import L1, L2, PD, ConfMap, FormTable, FreeCMod, ModElem
from .cohom import LEIBNIZ, LIE, Cochain, apply_delta, check_delta_squared, is_cocycle, random_cochain, \
    skew_symmetrize as skew_cochain
from .leibniz import LeibnizAlg, check_ker_in_center, check_leibniz_two_term, left_center, \
    leibniz_kernel, leibniz_two_term, relabel_v1, skew_symmetrize
from .omni import build_omni, graph_check, omni_two_term
from .poly import Poly
from .report import Report, Witness
from .twoterm import (
    MorphismData, SKELETAL, STRICT, TwoTermData, check_2term, check_crossed_module, check_morphism,
    CrossedModuleData, classify, compose_morphisms, from_crossed_module, gauge_transform,
    inn_der_crossed_module, lie2_extract, lie2_present, make_skeletal, make_string, to_crossed_module,
)

DELTAS = (0, 1, 2, Fraction(1, 2))
SEED = 20240611


# ----------------------------------------------------------------------------
# fixtures


def killing_form_sl2() -> FormTable:
    """Trace form on sl2 in the basis (e, f, h), lambda-independent."""
    return FormTable(cur_sl2().module, [[0, 1, 0], [1, 0, 0], [0, 0, 2]])


def skew_non_jacobi() -> BracketTable:
    """[L_lam L] = D(D + 2 lam) L: skew but not Jacobi."""
    M = FreeCMod("Q", ("L",))
    return BracketTable(M, [[ModElem(M, [PD * (PD + 2 * Poly.var(L1))])]])


def sl2_derivation_d() -> ConfMap:
    """d_lam x = (D + lam) x on Cur(sl2)."""
    M = cur_sl2().module
    return ConfMap(M, M, [[PD + Poly.var(L1) if i == k else Poly.const(0) for i in range(3)] for k in range(3)])


def inn_der_sl2() -> CrossedModuleData:
    return inn_der_crossed_module(cur_sl2(), [("d", sl2_derivation_d())])


def identity_crossed(A: BracketTable) -> CrossedModuleData:
    return CrossedModuleData(A, A, ConfMap.identity(A.module), adjoint(A))


def abelian_strict() -> TwoTermData:
    """omni data over the rank-one abelian algebra acting by x |>_lam v = v, with l3 forced to 0."""
    A = free_abelian(1)
    M = FreeCMod("W", ("w",))
    act = ActionTable(A, M, LEFT, [[M.gen(0)]])
    return omni_two_term(A, act).with_l3({})


def skew_table(rng: random.Random, T: TwoTermData, scale: int = 3):
    """A random f2 table with f2_lam(x, y) = -f2_{-D-lam}(y, x)."""
    from .cohom import random_poly
    from .poly import D

    n, V1 = T.V0.rank, T.V1
    raw = [[ModElem(V1, [random_poly(rng, [L1, D], 1, scale, 2) for _ in range(V1.rank)]) for _ in range(n)]
           for _ in range(n)]
    return [[raw[i][j] - mirrored(raw[j][i]) for j in range(n)] for i in range(n)]


def vir_cocycle(delta=1, seed: int = SEED) -> Cochain:
    """A 3-coboundary (hence cocycle) over (Vir, M_delta) from a skew 2-cochain."""
    rng = random.Random(seed)
    V = virasoro()
    act = m_delta(delta, V)
    c2 = skew_cochain(random_cochain(rng, 2, V, act, max_deg=1, coeff=3))
    return apply_delta(c2)


def vir_non_cocycle(delta=1, seed: int = SEED) -> Cochain:
    rng = random.Random(seed)
    V = virasoro()
    act = m_delta(delta, V)
    while True:
        c = random_cochain(rng, 3, V, act, max_deg=1, coeff=3, density=1.0)
        if not is_cocycle(c).passed:
            return c


# ----------------------------------------------------------------------------
# criteria


def _require(rep: Report, name: str, cond: bool, note: str = "", witness=None):
    rep.add(name, cond, witness if not cond else None, note)


def criterion_1() -> Report:
    rep = Report("1. Virasoro axioms and nested bracket")
    V = virasoro()
    rep.extend(check_axioms(V, (SKEW, JACOBI, JACOBI_EQUIV)), "Vir.")
    L = V.module.gen(0)
    nested = eval_bracket(V, L, L1, eval_bracket(V, L, L2, L))
    want = (PD + Poly.var(L1) + 2 * Poly.var(L2)) * (PD + 2 * Poly.var(L1)) * L
    _require(rep, "[L_L1[L_L2 L]] = (D+L1+2L2)(D+2L1)L", nested == want,
             witness=Witness(("L", "L", "L"), nested - want))
    return rep


def criterion_2() -> Report:
    rep = Report("2. Cur(sl2) axioms")
    rep.extend(check_axioms(cur_sl2(), (SKEW, JACOBI)), "CurSl2.")
    return rep


def criterion_3() -> Report:
    rep = Report("3. perturbed Virasoro fails skew-symmetry")
    P = perturbed_virasoro(3)
    chk = check_axioms(P, (SKEW,))["SKEW"]
    want = -(PD * P.module.gen(0))
    ok = (not chk.passed) and chk.witness.tuple == ("L", "L") and chk.witness.residual == want
    rep.add("SKEW fails with residual -D*L", ok,
            None if ok else Witness(("L", "L"), chk.witness.residual if chk.witness else None))
    return rep


def criterion_4() -> Report:
    rep = Report("4. M_Delta module axioms")
    V = virasoro()
    for delta in DELTAS:
        r = check_module_axioms(m_delta(delta, V))
        rep.extend(r, f"Delta={delta}.")
    M = FreeCMod("Mbad", ("v",))
    bad = ActionTable(V, M, LEFT, [[ModElem(M, [Poly.var(L1) ** 2])]])
    chk = check_module_axioms(bad)["left-module"]
    rep.add("lam^2 v fails left-module with witness", not chk.passed and chk.witness is not None)
    return rep


def criterion_5(count_per_case: int = 8) -> Report:
    rep = Report("5. delta^2 = 0 on random 0- and 1-cochains")
    rng = random.Random(SEED)
    V, S = virasoro(), cur_sl2()
    cases = [(V, m_delta(d, V), f"Vir,M_{d}") for d in (0, 1, 2)] + [(S, adjoint(S), "CurSl2,adjoint")]
    total = 0
    first_fail = None
    for (A, act, label), degree, formula in product(cases, (0, 1), (LIE, LEIBNIZ)):
        for _ in range(count_per_case):
            c = random_cochain(rng, degree, A, act, max_deg=2, coeff=5)
            r = check_delta_squared(c, formula)
            total += 1
            if not r.passed and first_fail is None:
                first_fail = (label, degree, formula, r["delta-squared"].witness)
    w = None
    if first_fail:
        w = Witness(tuple(str(x) for x in first_fail[:3]), first_fail[3].residual)
    rep.add("delta-squared", first_fail is None, w, note=f"{total} random cochains")
    return rep


def criterion_6() -> Report:
    rep = Report("6. omni-Lie two-term data over (Vir, M_1)")
    V = virasoro()
    T = omni_two_term(V, m_delta(1, V))
    rep.extend(check_2term(T), "omni.")
    g = check_2term(T.with_l3({}))["g"]
    ok = False
    if not g.passed and g.witness.tuple == ("L", "L", "v"):
        m = T.V0.gen(1)
        shape = (Poly.var(L1) - Poly.var(L2)) * (PD + Poly.var(L1) + Poly.var(L2))
        res = g.witness.residual
        c = res.comps[1]
        e0 = min(c.terms) if c.terms else None
        ratio = Fraction(c.terms[e0]) / shape.terms[e0] if e0 in shape.terms else None
        ok = ratio is not None and res == shape.scale(ratio) * m and not res.comps[0]
    rep.add("l3 = 0 fails (g) at (L, L, v) with a (L1-L2)(D+L1+L2)v residual", ok,
            None if ok else g.witness)
    return rep


def criterion_7() -> Report:
    rep = Report("7. graph criterion")
    expected = [
        (virasoro(), "Lie", True, True),
        (perturbed_virasoro(3), "non-skew", False, None),
        (skew_non_jacobi(), "skew, non-Jacobi", True, False),
    ]
    for om, label, iso, closed in expected:
        r = graph_check(om)
        axioms = check_axioms(om, (SKEW, JACOBI))
        name = om.module.name
        rep.add(f"{name} ({label}): lie_equivalence", r["lie_equivalence"].passed, r["lie_equivalence"].witness,
                note=r["lie_equivalence"].note)
        rep.add(f"{name}: isotropic is {iso}, SKEW is {iso}",
                r["isotropic"].passed == iso and axioms["SKEW"].passed == iso)
        if closed is not None:
            rep.add(f"{name}: closed is {closed}, JACOBI is {closed}",
                    r["closed"].passed == closed and axioms["JACOBI"].passed == closed)
    return rep


def criterion_8() -> Report:
    rep = Report("8. Leibniz kernel, center and two-term data over hemi(Vir, M_1)")
    V = virasoro()
    act = m_delta(1, V)
    O = build_omni(V, act)
    L = LeibnizAlg(O.hemi)
    K = leibniz_kernel(L)
    Z = left_center(L, 4)
    rep.add("kernel inside center slice", all(Z.contains(u) for u in K.generators),
            note=f"{len(K)} kernel, {len(Z)} center generators")
    rep.extend(check_ker_in_center(L))
    rep.add("skew-symmetrization = demisemidirect bracket", skew_symmetrize(L) == O.demi)
    T = leibniz_two_term(L)
    To = omni_two_term(V, act, O=O)
    rep.add("two-term data = omni two-term data up to V1 labels", relabel_v1(T, To.V1) == To)
    rep.extend(check_leibniz_two_term(L, T), "leibniz.")
    return rep


def criterion_9() -> Report:
    rep = Report("9. strict, crossed-module and skeletal data")
    fixtures = [("Inn->Der", inn_der_sl2()), ("id Vir", identity_crossed(virasoro()))]
    for label, C in fixtures:
        rep.extend(check_crossed_module(C), f"{label}.")
        T = from_crossed_module(C)
        rep.add(f"{label}: to(from(C)) = C", to_crossed_module(T) == C)
        rep.add(f"{label}: from(to(T)) = T", from_crossed_module(to_crossed_module(T)) == T)
        rep.add(f"{label}: classify = STRICT", classify(T) in (STRICT, "BOTH"))
    T = abelian_strict()
    rep.add("abelian omni strict data valid", check_2term(T).passed)
    rep.add("abelian omni: from(to(T)) = T", from_crossed_module(to_crossed_module(T)) == T)
    S = make_string(cur_sl2(), killing_form_sl2())
    rep.extend(check_2term(S), "string.")
    rep.add("string classify = SKELETAL", classify(S) == SKELETAL)
    V = virasoro()
    samples = [("string", S.l3_cochain(), S)]
    for k, delta in enumerate((1, 2)):
        c = vir_cocycle(delta, SEED + k)
        samples.append((f"Vir cocycle M_{delta}", c, make_skeletal(V, c.action, c)))
    bad = vir_non_cocycle(1)
    samples.append(("Vir non-cocycle", bad, TwoTermData(V.module, bad.module, ConfMap.zero(bad.module, V.module),
                                                        V, bad.action, bad.values)))
    for label, c, T in samples:
        a, b = check_2term(T)["i"].passed, is_cocycle(c).passed
        rep.add(f"{label}: (i) agrees with cocycle check", a == b, note=f"(i)={a}, cocycle={b}")
    return rep


def morphism_fixtures(seed: int = SEED):
    """T0 --f--> T1 --g--> T2 --h--> T3, each a gauge transform of the last by a skew f2."""
    rng = random.Random(seed)
    V = virasoro()
    T0 = omni_two_term(V, m_delta(1, V))
    chain = [T0]
    arrows = []
    for _ in range(3):
        T, f = gauge_transform(chain[-1], skew_table(rng, chain[-1]))
        chain.append(T)
        arrows.append(f)
    return chain, arrows


def criterion_10() -> Report:
    rep = Report("10. morphisms and the Lie 2-algebra round trip")
    chain, (f, g, h) = morphism_fixtures()
    T0, T1, T2, T3 = chain
    rep.extend(check_morphism(MorphismData.identity(T0), T0, T0), "id.")
    rep.extend(check_morphism(f, T0, T1), "f.")
    rep.extend(check_morphism(g, T1, T2), "g.")
    gf = compose_morphisms(g, f)
    rep.extend(check_morphism(gf, T0, T2), "g.f.")
    rep.add("associativity", compose_morphisms(h, gf) == compose_morphisms(compose_morphisms(h, g), f))
    fixtures = [("omni Vir", T0), ("gauge Vir", T1), ("string", make_string(cur_sl2(), killing_form_sl2())),
                ("Inn->Der", from_crossed_module(inn_der_sl2())), ("abelian", abelian_strict())]
    for label, T in fixtures:
        rep.add(f"{label}: extract(present(T)) = T", lie2_extract(lie2_present(T)) == T)
    return rep


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10)


def selftest() -> list[Report]:
    return [c() for c in CRITERIA]


def render(reports: list[Report]) -> str:
    lines = [r.render() for r in reports]
    n = sum(len(r.checks) for r in reports)
    bad = sum(1 for r in reports for c in r.checks if not c.passed)
    lines.append(f"selftest: {n - bad}/{n} checks passed")
    return "\n".join(lines)
