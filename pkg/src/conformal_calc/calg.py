"""Lambda-brackets on free C[D]-modules, module actions and their axiom checkers.

Every structure (bracket, Leibniz product, action, adjoint map) is stored on
generators as a table of module elements whose components are polynomials in
``L1`` and ``D``.  Evaluation on arbitrary arguments uses the sesquilinearity
rules: in the left argument ``D -> -nu``, in the right argument ``D -> D + nu``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from . import linalg
from .cmod import (
    L1, L2, L3, PD, ConfMap, FreeCMod, FreshnessError, ModElem, ShapeError, apply_map,
)
from .poly import D, ONE, ZERO, Poly, Var, as_poly, poly_sum
from .report import Report

SESQUI_CONSISTENT = "SESQUI_CONSISTENT"
SKEW = "SKEW"
JACOBI = "JACOBI"
JACOBI_EQUIV = "JACOBI_EQUIV"
LEFT_LEIBNIZ = "LEFT_LEIBNIZ"
RIGHT_LEIBNIZ = "RIGHT_LEIBNIZ"
ALL_AXIOMS = (SESQUI_CONSISTENT, SKEW, JACOBI, JACOBI_EQUIV, LEFT_LEIBNIZ, RIGHT_LEIBNIZ)

LEFT = "LEFT"
RIGHT = "RIGHT"


def _check_entry(e: ModElem, target: FreeCMod, what: str):
    if not isinstance(e, ModElem) or e.module != target:
        raise ShapeError(f"{what} entry must be an element of {target.name}")
    if e.variables() - {D, L1}:
        raise ValueError(f"{what} entries are polynomials in L1 and D only")


def _table(entries, rows: int, cols: int, target: FreeCMod, what: str):
    entries = tuple(tuple(r) for r in entries)
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise ShapeError(f"{what} table must be {rows}x{cols}")
    for r in entries:
        for e in r:
            _check_entry(e, target, what)
    return entries


class BracketTable:
    """``entries[i][j] = e_i _L1 e_j``; ``claim`` is advisory and never trusted."""

    __slots__ = ("module", "entries", "claim")

    def __init__(self, module: FreeCMod, entries, claim: str = "NONE"):
        self.module = module
        self.entries = _table(entries, module.rank, module.rank, module, "bracket")
        self.claim = claim

    @classmethod
    def zero(cls, module: FreeCMod) -> "BracketTable":
        z = module.zero()
        return cls(module, [[z] * module.rank for _ in range(module.rank)], "SKEW")

    def __eq__(self, other):
        return isinstance(other, BracketTable) and (self.module, self.entries) == (other.module, other.entries)

    def __hash__(self):
        return hash((self.module, self.entries))

    def __repr__(self):
        return f"BracketTable({self.module.name})"


class ActionTable:
    """Action of ``algebra`` on ``module``.

    ``entries[i][j]`` is ``e_i |>_L1 v_j`` for a LEFT action and
    ``v_j <|_L1 e_i`` for a RIGHT action.
    """

    __slots__ = ("algebra", "module", "side", "entries")

    def __init__(self, algebra: BracketTable, module: FreeCMod, side: str, entries):
        if side not in (LEFT, RIGHT):
            raise ValueError("side must be LEFT or RIGHT")
        self.algebra = algebra
        self.module = module
        self.side = side
        self.entries = _table(entries, algebra.module.rank, module.rank, module, "action")

    @classmethod
    def zero(cls, algebra: BracketTable, module: FreeCMod, side: str = LEFT) -> "ActionTable":
        z = module.zero()
        return cls(algebra, module, side, [[z] * module.rank for _ in range(algebra.module.rank)])

    def __eq__(self, other):
        return isinstance(other, ActionTable) and \
            (self.algebra, self.module, self.side, self.entries) == \
            (other.algebra, other.module, other.side, other.entries)

    def __hash__(self):
        return hash((self.algebra, self.module, self.side, self.entries))

    def __repr__(self):
        return f"ActionTable({self.side}: {self.algebra.module.name} on {self.module.name})"


# ----------------------------------------------------------------------------
# evaluation


def _top(*things) -> int:
    top = 3
    for t in things:
        top = max(top, t.max_index())
    return top


def pair_eval(entries, target: FreeCMod, a: ModElem, nu, b: ModElem) -> ModElem:
    """sum_ij f_i(-nu) g_j(D + nu) entries[i][j](L1 -> nu) for a = sum f_i e_i, b = sum g_j e_j.

    ``nu`` may be any polynomial.  A ``D`` inside ``nu`` is the output
    derivation: the value is computed at a scratch variable first.
    """
    nu = as_poly(nu)
    if nu.has(D):
        s = Var(_top(a, b, nu) + 1)
        return pair_eval(entries, target, a, Poly.var(s), b).subs({s: nu})
    left = {D: -nu}
    right = {D: PD + nu} if not nu.is_zero() else None
    fs = [(i, c.subs(left) if c.has(D) else c) for i, c in enumerate(a.comps) if c]
    if not fs:
        return target.zero()
    gs = [(j, c.subs(right) if (right and c.has(D)) else c) for j, c in enumerate(b.comps) if c]
    if not gs:
        return target.zero()
    rename = None if nu == Poly.var(L1) else {L1: nu}
    acc = [[] for _ in range(target.rank)]
    for i, f in fs:
        row = entries[i]
        for j, g in gs:
            e = row[j]
            fg = None
            for k, q in enumerate(e.comps):
                if not q:
                    continue
                if rename is not None and q.has(L1):
                    q = q.subs(rename)
                if fg is None:
                    fg = f * g
                acc[k].append(fg * q)
    return ModElem(target, [poly_sum(x) for x in acc])


def _fresh(nu, *elems):
    if isinstance(nu, Var):
        for m in elems:
            if m.has(nu):
                raise FreshnessError(f"{nu} already occurs in an argument")
        return Poly.var(nu)
    return as_poly(nu)


def eval_bracket(T: BracketTable, a: ModElem, nu, b: ModElem) -> ModElem:
    """[a_nu b].  A Var ``nu`` must be fresh in both arguments; a Poly ``nu`` is substituted as given."""
    if a.module != T.module or b.module != T.module:
        raise ShapeError(f"arguments must lie in {T.module.name}")
    return pair_eval(T.entries, T.module, a, _fresh(nu, a, b), b)


def act_left(A: ActionTable, x: ModElem, nu, v: ModElem) -> ModElem:
    """x |>_nu v."""
    if A.side != LEFT:
        raise ValueError("act_left needs a LEFT action")
    if x.module != A.algebra.module or v.module != A.module:
        raise ShapeError("act_left arguments do not match the action")
    return pair_eval(A.entries, A.module, x, _fresh(nu, x, v), v)


def act_right(A: ActionTable, v: ModElem, nu, x: ModElem) -> ModElem:
    """v <|_nu x."""
    if A.side != RIGHT:
        raise ValueError("act_right needs a RIGHT action")
    if x.module != A.algebra.module or v.module != A.module:
        raise ShapeError("act_right arguments do not match the action")
    # entries are indexed [algebra][module]; transpose for the evaluation
    tr = [[A.entries[i][j] for i in range(len(A.entries))] for j in range(A.module.rank)]
    return pair_eval(tr, A.module, v, _fresh(nu, x, v), x)


def bracket_of(T: BracketTable):
    return lambda a, nu, b: eval_bracket(T, a, nu, b)


def substitute_lambda(m: ModElem, old: Var, q) -> ModElem:
    return m.subs({old: as_poly(q)})


def mirrored(m: ModElem) -> ModElem:
    """m(L1 -> -D - L1): the table rule behind skew-symmetry."""
    return m.subs({L1: -PD - Poly.var(L1)})


# ----------------------------------------------------------------------------
# axiom checks


def _names(M: FreeCMod, *idx) -> tuple[str, ...]:
    return tuple(M.basis[i] for i in idx)


def _triples(n: int):
    for i in range(n):
        for j in range(n):
            for k in range(n):
                yield i, j, k


def check_axioms(T: BracketTable, kinds: Iterable[str] = (SKEW, JACOBI)) -> Report:
    """Verify the requested identities on all generator tuples (lexicographic order)."""
    kinds = list(kinds)
    for k in kinds:
        if k not in ALL_AXIOMS:
            raise ValueError(f"unknown axiom {k!r}")
    M = T.module
    n = M.rank
    g = M.gens()
    l1, l2 = Poly.var(L1), Poly.var(L2)
    br = bracket_of(T)
    rep = Report(f"algebra {M.name}")

    def skew():
        for i in range(n):
            for j in range(n):
                yield _names(M, i, j), T.entries[i][j] + mirrored(T.entries[j][i])

    def jacobi():
        for i, j, k in _triples(n):
            x, y, z = g[i], g[j], g[k]
            lhs = br(x, L1, br(y, L2, z))
            rhs = br(br(x, L1, y), l1 + l2, z) + br(y, L2, br(x, L1, z))
            yield _names(M, i, j, k), lhs - rhs

    def jacobi_equiv():
        for i, j, k in _triples(n):
            x, y, z = g[i], g[j], g[k]
            lhs = br(br(x, L1, y), l1 + l2, z)
            rhs = br(x, L1, br(y, L2, z)) + br(br(x, L1, z), -PD - l2, y)
            yield _names(M, i, j, k), lhs - rhs

    def sesqui():
        for i in range(n):
            for j in range(n):
                e = T.entries[i][j]
                if e.variables() - {D, L1}:
                    yield _names(M, i, j), e
                    continue
                a = br(g[i].partial(), L1, g[j]) + l1 * br(g[i], L1, g[j])
                b = br(g[i], L1, g[j].partial()) - (PD + l1) * br(g[i], L1, g[j])
                yield _names(M, i, j), (a, b)

    runners = {
        SESQUI_CONSISTENT: sesqui, SKEW: skew, JACOBI: jacobi, JACOBI_EQUIV: jacobi_equiv,
        LEFT_LEIBNIZ: jacobi, RIGHT_LEIBNIZ: jacobi_equiv,
    }
    for k in ALL_AXIOMS:
        if k in kinds:
            rep.run(k, runners[k]())
    return rep


def is_lie(T: BracketTable) -> bool:
    return check_axioms(T, (SKEW, JACOBI)).passed


# ----------------------------------------------------------------------------
# modules


def check_module_axioms(act: ActionTable, *, right_reading: str = "uplam") -> Report:
    """Module identities on all (algebra, algebra, module) generator triples.

    For a RIGHT action ``right_reading`` selects the subscript of the last
    term: ``"uplam"`` (default) uses -D-L1, ``"plain"`` uses L1+L2.
    """
    A = act.algebra
    R, M = A.module, act.module
    gx, gv = R.gens(), M.gens()
    l1, l2 = Poly.var(L1), Poly.var(L2)
    br = bracket_of(A)
    rep = Report(f"{act.side.lower()} module {M.name} over {R.name}")
    tname = lambda i, j, k: (R.basis[i], R.basis[j], M.basis[k])

    if act.side == LEFT:
        op = lambda x, nu, v: act_left(act, x, nu, v)

        def sesqui():
            for i in range(R.rank):
                for k in range(M.rank):
                    x, v = gx[i], gv[k]
                    a = op(x.partial(), L1, v) + l1 * op(x, L1, v)
                    b = op(x, L1, v.partial()) - (PD + l1) * op(x, L1, v)
                    yield (R.basis[i], M.basis[k]), (a, b)

        def axiom():
            for i in range(R.rank):
                for j in range(R.rank):
                    for k in range(M.rank):
                        x, y, v = gx[i], gx[j], gv[k]
                        lhs = op(br(x, L1, y), l1 + l2, v)
                        rhs = op(x, L1, op(y, L2, v)) - op(y, L2, op(x, L1, v))
                        yield tname(i, j, k), lhs - rhs

        rep.run("sesquilinear", sesqui())
        rep.run("left-module", axiom())
        return rep

    if right_reading not in ("uplam", "plain"):
        raise ValueError("right_reading must be 'uplam' or 'plain'")
    op = lambda v, nu, x: act_right(act, v, nu, x)

    def sesqui_r():
        for i in range(R.rank):
            for k in range(M.rank):
                x, v = gx[i], gv[k]
                a = op(v.partial(), L1, x) + l1 * op(v, L1, x)
                b = op(v, L1, x.partial()) - (PD + l1) * op(v, L1, x)
                yield (R.basis[i], M.basis[k]), (a, b)

    last = (-PD - l1) if right_reading == "uplam" else (l1 + l2)

    def axiom_r():
        for i in range(R.rank):
            for j in range(R.rank):
                for k in range(M.rank):
                    x, y, v = gx[i], gx[j], gv[k]
                    lhs = op(v, L2, br(x, L1, y))
                    rhs = op(op(v, L2, x), l1 + l2, y) - op(op(v, L2, y), last, x)
                    yield tname(i, j, k), lhs - rhs

    rep.run("sesquilinear", sesqui_r())
    rep.run("right-module", axiom_r(), note=f"reading={right_reading}")
    return rep


def right_to_left(act: ActionTable) -> ActionTable:
    """a |>_L v := -(v <|_mu a)|_{mu -> -D - L}."""
    if act.side != RIGHT:
        raise ValueError("right_to_left needs a RIGHT action")
    rows = [[-mirrored(e) for e in row] for row in act.entries]
    return ActionTable(act.algebra, act.module, LEFT, rows)


def left_to_right(act: ActionTable) -> ActionTable:
    """v <|_L a := -(a |>_mu v)|_{mu -> -D - L}; inverse of :func:`right_to_left`."""
    if act.side != LEFT:
        raise ValueError("left_to_right needs a LEFT action")
    rows = [[-mirrored(e) for e in row] for row in act.entries]
    return ActionTable(act.algebra, act.module, RIGHT, rows)


def check_leibniz_module(lact: ActionTable, ract: ActionTable) -> Report:
    """The three compatibility identities of a module over a Leibniz conformal algebra."""
    if lact.side != LEFT or ract.side != RIGHT:
        raise ValueError("need a LEFT and a RIGHT action")
    if lact.algebra != ract.algebra or lact.module != ract.module:
        raise ShapeError("left and right actions must share algebra and module")
    A = lact.algebra
    R, M = A.module, lact.module
    gx, gv = R.gens(), M.gens()
    l1, l2 = Poly.var(L1), Poly.var(L2)
    prod = bracket_of(A)
    lt = lambda x, nu, v: act_left(lact, x, nu, v)
    rt = lambda v, nu, x: act_right(ract, v, nu, x)
    rep = Report(f"Leibniz module {M.name} over {R.name}")

    def tuples():
        for i in range(R.rank):
            for j in range(R.rank):
                for k in range(M.rank):
                    yield (R.basis[i], R.basis[j], M.basis[k]), gx[i], gx[j], gv[k]

    def ll():
        for t, x, y, v in tuples():
            yield t, lt(x, L1, lt(y, L2, v)) - lt(prod(x, L1, y), l1 + l2, v) - lt(y, L2, lt(x, L1, v))

    def lr():
        for t, x, y, v in tuples():
            yield t, lt(x, L1, rt(v, L2, y)) - rt(lt(x, L1, v), l1 + l2, y) - rt(v, L2, prod(x, L1, y))

    def rl():
        for t, x, y, v in tuples():
            yield t, rt(v, L1, prod(x, L2, y)) - rt(rt(v, L1, x), l1 + l2, y) - lt(x, L2, rt(v, L1, y))

    rep.run("left-left", ll())
    rep.run("left-right", lr())
    rep.run("right-left", rl())
    return rep


# ----------------------------------------------------------------------------
# homomorphisms and derivations


def check_homomorphism(f: ConfMap, A: BracketTable, B: BracketTable) -> Report:
    """f([x_L y]) = [f(x)_L f(y)]' for a D-equivariant f."""
    if f.source != A.module or f.target != B.module:
        raise ShapeError("map does not match the algebras")
    rep = Report(f"homomorphism {A.module.name} -> {B.module.name}")
    rep.add("partial-equivariant", f.is_partial_equivariant())
    g = A.module.gens()

    def cases():
        for i in range(A.module.rank):
            for j in range(A.module.rank):
                lhs = apply_map(f, ZERO, eval_bracket(A, g[i], L1, g[j]))
                rhs = eval_bracket(B, apply_map(f, ZERO, g[i]), L1, apply_map(f, ZERO, g[j]))
                yield _names(A.module, i, j), lhs - rhs

    rep.run("bracket", cases())
    return rep


def isolate(f: ConfMap, *, above: int = 3) -> ConfMap:
    """Rename the parameters of ``f`` to scratch variables and its evaluation variable to L1."""
    ps = sorted(f.params(), key=lambda v: v.index)
    top = max(above, f.max_index()) + 1
    mapping = {p: Poly.var(Var(top + k)) for k, p in enumerate(ps)}
    if f.var != L1:
        mapping[f.var] = Poly.var(L1)
    if not mapping:
        return f
    return ConfMap(f.source, f.target, [[x.subs(mapping) for x in row] for row in f.matrix], L1)


def inner_derivation(A: BracketTable, x: ModElem) -> ConfMap:
    """(ad x)_L1(y) = [x_L1 y]."""
    if x.module != A.module:
        raise ShapeError("x must lie in the algebra")
    if x.has(L1):
        raise FreshnessError("x must not contain L1")
    cols = [pair_eval(A.entries, A.module, x, Poly.var(L1), e) for e in A.module.gens()]
    return ConfMap.from_columns(A.module, A.module, cols, L1)


def check_derivation(A: BracketTable, Dm: ConfMap) -> Report:
    """D_L1[x_L2 y] = [(D_L1 x)_{L1+L2} y] + [x_L2 D_L1 y] on generator pairs."""
    M = A.module
    if Dm.source != M or Dm.target != M:
        raise ShapeError("derivation must be an endomorphism of the algebra module")
    Dm = isolate(Dm)
    g = M.gens()
    l1, l2 = Poly.var(L1), Poly.var(L2)
    ap = lambda m: apply_map(Dm, l1, m)
    br = lambda a, nu, b: pair_eval(A.entries, M, a, nu, b)
    rep = Report(f"derivation of {M.name}")

    def cases():
        for i in range(M.rank):
            for j in range(M.rank):
                x, y = g[i], g[j]
                lhs = ap(br(x, l2, y))
                rhs = br(ap(x), l1 + l2, y) + br(x, l2, ap(y))
                yield _names(M, i, j), lhs - rhs

    rep.run("derivation", cases())
    return rep


def ad_family(om: BracketTable, x: ModElem, var: Var) -> ConfMap:
    """ad_om(x) as a map in ``var``; ``x`` may carry parameters."""
    cols = [pair_eval(om.entries, om.module, x, Poly.var(var), e) for e in om.module.gens()]
    return ConfMap.from_columns(om.module, om.module, cols, var)


def check_normalizer(A: BracketTable, om: BracketTable, Dm: ConfMap) -> Report:
    """[D_L1 ad_om(x)] = ad_om(D_L1 x) for every generator x, as two-variable families.

    ``A`` fixes the module; the identity only involves ``om``.
    """
    from .cmod import cend_bracket

    M = om.module
    if A.module != M or Dm.source != M or Dm.target != M:
        raise ShapeError("normalizer check needs endomorphisms of one module")
    Dm = isolate(Dm)
    rep = Report(f"normalizer of F_om on {M.name}")

    def cases():
        for i, x in enumerate(M.gens()):
            lhs = cend_bracket(Dm, ad_family(om, x, L1))
            Dx = apply_map(Dm, Poly.var(L1), x)
            rhs = ad_family(om, Dx, L2)
            yield (M.basis[i],), tuple(a - b for a, b in zip(lhs.entries(), rhs.entries()))

    rep.run("normalizer", cases())
    return rep


def cend_span_solve(family: ConfMap, basis: list[ConfMap], degree_bound: int = 4):
    """Express a Cend family in the C[D, L1]-span of ``basis`` maps.

    ``family`` has evaluation variable L2 and parameter L1 (as produced by
    :func:`cmod.cend_bracket`).  Returns polynomials P_c(L1, D) with
    family_L2 = sum_c P_c(L1, -L2) * basis_c at L2 (D on Cend acts as -L2),
    or None when no representation within ``degree_bound`` exists.
    """
    if family.var != L2 or family.params() - {L1}:
        raise ValueError("family must be a map in L2 with parameter L1")
    monos = [(a, b) for a in range(degree_bound + 1) for b in range(degree_bound + 1 - a)]
    unknowns = [(c, a, b) for c in range(len(basis)) for a, b in monos]
    l1, l2 = Poly.var(L1), Poly.var(L2)
    renamed = []
    for B in basis:
        if B.source != family.source or B.target != family.target:
            raise ShapeError("basis map shape mismatch")
        if B.params():
            raise ValueError("basis maps must be single-variable")
        renamed.append([[x.rename(B.var, L2) if B.var != L2 else x for x in row] for row in B.matrix])
    # equations: coefficient of each monomial in each matrix slot
    eqs: dict = {}
    for uidx, (c, a, b) in enumerate(unknowns):
        factor = l1 ** a * (-l2) ** b
        for k, row in enumerate(renamed[c]):
            for i, q in enumerate(row):
                if not q:
                    continue
                for e, coef in (factor * q).terms.items():
                    eqs.setdefault((k, i, e), {})[uidx] = coef
    rhs_terms = {}
    for k, row in enumerate(family.matrix):
        for i, q in enumerate(row):
            for e, coef in q.terms.items():
                rhs_terms[(k, i, e)] = coef
                eqs.setdefault((k, i, e), {})
    keys = sorted(eqs)
    sol = linalg.solve([eqs[key] for key in keys], [rhs_terms.get(key, 0) for key in keys], len(unknowns))
    if sol is None:
        return None
    out = [ZERO] * len(basis)
    for uidx, val in enumerate(sol):
        if val:
            c, a, b = unknowns[uidx]
            out[c] = out[c] + (Poly.var(L1, a) * Poly.var(D, b)).scale(val)
    return out


# ----------------------------------------------------------------------------
# built-in examples


def virasoro() -> BracketTable:
    M = FreeCMod("Vir", ("L",))
    return BracketTable(M, [[ModElem(M, [PD + 2 * Poly.var(L1)])]], "SKEW")


def _check_lie_constants(basis, consts) -> None:
    n = len(basis)

    def br(i, j):
        return consts.get((i, j), {})

    for i in range(n):
        for j in range(n):
            a, b = br(i, j), br(j, i)
            for k in set(a) | set(b):
                if Fraction(a.get(k, 0)) + Fraction(b.get(k, 0)) != 0:
                    raise ValueError(f"structure constants are not antisymmetric at ({basis[i]}, {basis[j]})")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                # [x_i,[x_j,x_k]] + cyclic = 0
                tot: dict = {}
                for (p, q, r) in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, c in br(q, r).items():
                        for s, d in br(p, m).items():
                            tot[s] = tot.get(s, 0) + Fraction(c) * Fraction(d)
                if any(tot.values()):
                    raise ValueError("structure constants violate the Jacobi identity")


def current(name: str, basis, consts: dict) -> BracketTable:
    """Cur g = C[D] (x) g with [x_L y] = [x, y]; ``consts[(i, j)] = {k: c^k_ij}``."""
    basis = tuple(basis)
    consts = {(int(i), int(j)): {int(k): v for k, v in d.items()} for (i, j), d in consts.items()}
    _check_lie_constants(basis, consts)
    M = FreeCMod(name, basis)
    rows = []
    for i in range(len(basis)):
        row = []
        for j in range(len(basis)):
            comps = [ZERO] * len(basis)
            for k, c in consts.get((i, j), {}).items():
                comps[k] = comps[k] + Poly.const(Fraction(c))
            row.append(ModElem(M, comps))
        rows.append(row)
    return BracketTable(M, rows, "SKEW")


SL2_BASIS = ("e", "f", "h")
SL2_CONSTANTS = {
    (0, 1): {2: 1}, (1, 0): {2: -1},      # [e,f] = h
    (2, 0): {0: 2}, (0, 2): {0: -2},      # [h,e] = 2e
    (2, 1): {1: -2}, (1, 2): {1: 2},      # [h,f] = -2f
}


def cur_sl2() -> BracketTable:
    return current("CurSl2", SL2_BASIS, SL2_CONSTANTS)


def free_abelian(n: int, name: str | None = None) -> BracketTable:
    if n < 1:
        raise ValueError("rank must be positive")
    M = FreeCMod(name or f"Ab{n}", tuple(f"x{i + 1}" for i in range(n)))
    return BracketTable.zero(M)


def m_delta(delta, vir: BracketTable | None = None, name: str = "M") -> ActionTable:
    """Rank-one Vir-module with L |>_L1 v = (D + delta*L1) v."""
    vir = vir or virasoro()
    if vir.module.rank != 1:
        raise ShapeError("M_delta needs a rank-one algebra")
    M = FreeCMod(name, ("v",))
    q = Fraction(delta)
    return ActionTable(vir, M, LEFT, [[ModElem(M, [PD + Poly.var(L1).scale(q)])]])


def adjoint(T: BracketTable) -> ActionTable:
    """T acting on (a copy of) itself by the bracket."""
    return ActionTable(T, T.module, LEFT, T.entries)


def trivial_action(T: BracketTable, M: FreeCMod) -> ActionTable:
    return ActionTable.zero(T, M, LEFT)


def perturbed_virasoro(c=3) -> BracketTable:
    """[L_L L] = (D + c L) L; skew only for c = 2."""
    M = FreeCMod("VirP", ("L",))
    return BracketTable(M, [[ModElem(M, [PD + Poly.var(L1).scale(Fraction(c))])]])


BUILTIN_ALGEBRAS = {
    "virasoro": virasoro,
    "cur_sl2": cur_sl2,
}
