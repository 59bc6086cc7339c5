"""Free finitely generated C[D]-modules, conformal linear maps and conformal forms."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .poly import D, ONE, ZERO, Poly, Var, as_poly, lam, poly_sum

L1, L2, L3 = lam(1), lam(2), lam(3)
PD = Poly.var(D)


class ShapeError(ValueError):
    """Mismatched modules or matrix dimensions."""


class FreshnessError(ValueError):
    """An evaluation variable already occurs in an argument."""


@dataclass(frozen=True)
class FreeCMod:
    """Free C[D]-module on ``basis``.

    ``partial_zero`` marks the rank-one trivial module C on which D acts as 0;
    it is not free, but every element is a constant multiple of the generator
    so it is handled by killing D in all components.
    """

    name: str
    basis: tuple[str, ...]
    partial_zero: bool = False

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if not self.basis:
            # the zero module is allowed (V1 = 0 for Lie inputs)
            return
        if len(set(self.basis)) != len(self.basis):
            raise ValueError(f"basis names of {self.name} are not distinct")
        if self.partial_zero and len(self.basis) != 1:
            raise ValueError("the D = 0 flag is only supported in rank one")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self, name: str) -> int:
        try:
            return self.basis.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a generator of {self.name}") from None

    def gen(self, i: int | str) -> "ModElem":
        if isinstance(i, str):
            i = self.index(i)
        comps = [ZERO] * self.rank
        comps[i] = ONE
        return ModElem(self, comps)

    def zero(self) -> "ModElem":
        return ModElem(self, [ZERO] * self.rank)

    def gens(self) -> list["ModElem"]:
        return [self.gen(i) for i in range(self.rank)]


def direct_sum(name: str, a: FreeCMod, b: FreeCMod) -> FreeCMod:
    return FreeCMod(name, a.basis + b.basis)


class ModElem:
    """``sum_i comps[i] * e_i`` with Poly components in D and lambda variables."""

    __slots__ = ("module", "comps", "_hash")

    def __init__(self, module: FreeCMod, comps: Iterable):
        comps = tuple(as_poly(c) for c in comps)
        if len(comps) != module.rank:
            raise ShapeError(f"{module.name} has rank {module.rank}, got {len(comps)} components")
        if module.partial_zero:
            comps = tuple(c.subs({D: 0}) if c.has(D) else c for c in comps)
        self.module = module
        self.comps = comps
        self._hash = None

    @classmethod
    def from_terms(cls, module: FreeCMod, terms: dict) -> "ModElem":
        comps = [ZERO] * module.rank
        for name, p in terms.items():
            i = module.index(name) if isinstance(name, str) else name
            comps[i] = comps[i] + as_poly(p)
        return cls(module, comps)

    def _same(self, other: "ModElem"):
        if not isinstance(other, ModElem) or other.module != self.module:
            raise ShapeError("elements of different modules")

    def __add__(self, other):
        self._same(other)
        return ModElem(self.module, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        self._same(other)
        return ModElem(self.module, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return ModElem(self.module, [-a for a in self.comps])

    def __rmul__(self, p):
        p = as_poly(p)
        return ModElem(self.module, [p * a for a in self.comps])

    def __mul__(self, p):
        return self.__rmul__(p)

    def scale(self, q) -> "ModElem":
        return ModElem(self.module, [a.scale(q) for a in self.comps])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other):
        if not isinstance(other, ModElem):
            return NotImplemented
        return self.module == other.module and self.comps == other.comps

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.module, self.comps))
        return self._hash

    def subs(self, mapping) -> "ModElem":
        return ModElem(self.module, [c.subs(mapping) for c in self.comps])

    def has(self, v: Var) -> bool:
        return any(c.has(v) for c in self.comps)

    def max_index(self) -> int:
        return max((c.max_index() for c in self.comps), default=-1)

    def variables(self) -> set[Var]:
        out = set()
        for c in self.comps:
            out |= c.variables()
        return out

    def partial(self) -> "ModElem":
        """The element D * self."""
        return PD * self

    def __str__(self):
        return format_elem(self)

    def __repr__(self):
        return f"ModElem({self.module.name}: {format_elem(self)})"

    def to_dict(self) -> dict:
        return {n: str(c) for n, c in zip(self.module.basis, self.comps) if not c.is_zero()}


def format_elem(m: ModElem, quote: bool = False) -> str:
    """Render as e.g. ``(D + 2*L1)*L + v``; ``quote`` wraps coefficients in double quotes."""
    parts = []
    for name, c in zip(m.module.basis, m.comps):
        if c.is_zero():
            continue
        if quote:
            parts.append(name if c == 1 else f'"{c}"*{name}')
            continue
        if c == 1:
            s = name
        elif c == -1:
            s = f"-{name}"
        elif len(c.terms) == 1:
            s = f"{c}*{name}"
        else:
            s = f"({c})*{name}"
        parts.append(s)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") and not quote else f" + {p}"
    return out


def elem_sum(module: FreeCMod, items: Iterable[ModElem]) -> ModElem:
    cols: list[list[Poly]] = [[] for _ in range(module.rank)]
    for m in items:
        if m.module != module:
            raise ShapeError("elements of different modules")
        for i, c in enumerate(m.comps):
            if c:
                cols[i].append(c)
    return ModElem(module, [poly_sum(c) for c in cols])


def shift_partial(m: ModElem, nu: Poly) -> ModElem:
    """Replace every D by D + nu (right-argument rule)."""
    if nu.is_zero():
        return m
    return m.subs({D: PD + nu})


def kill_partial(m: ModElem, nu: Poly) -> list[Poly]:
    """Components with D replaced by -nu (left-argument rule)."""
    return [c.subs({D: -nu}) if c.has(D) else c for c in m.comps]


def _scratch(*things, above: int = 3) -> Var:
    top = above
    for t in things:
        if isinstance(t, (ModElem, Poly)):
            top = max(top, t.max_index())
        elif isinstance(t, ConfMap):
            top = max(top, t.max_index())
    return Var(top + 1)


# ----------------------------------------------------------------------------
# conformal linear maps


class ConfMap:
    """Conformal linear map given on generators.

    ``matrix[k][i]`` is the e_k-coefficient of f_var(e_i); extension to
    D-multiples (f_x(D m) = (D + x) f_x(m)) happens at application time.
    Variables other than D and ``var`` are parameters.
    """

    __slots__ = ("source", "target", "matrix", "var")

    def __init__(self, source: FreeCMod, target: FreeCMod, matrix, var: Var = L1):
        matrix = tuple(tuple(as_poly(x) for x in row) for row in matrix)
        if len(matrix) != target.rank or any(len(r) != source.rank for r in matrix):
            raise ShapeError(
                f"matrix must be {target.rank}x{source.rank} for {source.name}->{target.name}")
        if target.partial_zero:
            matrix = tuple(tuple(x.subs({D: 0}) for x in row) for row in matrix)
        self.source = source
        self.target = target
        self.matrix = matrix
        self.var = var

    @classmethod
    def from_columns(cls, source: FreeCMod, target: FreeCMod, columns: Sequence[ModElem], var: Var = L1):
        if len(columns) != source.rank:
            raise ShapeError("one column per source generator required")
        for c in columns:
            if c.module != target:
                raise ShapeError("column outside the target module")
        rows = [[columns[i].comps[k] for i in range(source.rank)] for k in range(target.rank)]
        return cls(source, target, rows, var)

    @classmethod
    def identity(cls, m: FreeCMod) -> "ConfMap":
        return cls(m, m, [[ONE if i == k else ZERO for i in range(m.rank)] for k in range(m.rank)])

    @classmethod
    def zero(cls, source: FreeCMod, target: FreeCMod) -> "ConfMap":
        return cls(source, target, [[ZERO] * source.rank for _ in range(target.rank)])

    def column(self, i: int) -> ModElem:
        return ModElem(self.target, [row[i] for row in self.matrix])

    def columns(self) -> list[ModElem]:
        return [self.column(i) for i in range(self.source.rank)]

    def entries(self):
        for row in self.matrix:
            yield from row

    def max_index(self) -> int:
        return max((x.max_index() for x in self.entries()), default=-1)

    def params(self) -> set[Var]:
        vs = set()
        for x in self.entries():
            vs |= x.variables()
        vs.discard(D)
        vs.discard(self.var)
        return vs

    def is_partial_equivariant(self) -> bool:
        """True when no lambda variable occurs, i.e. the map commutes with D."""
        return all(x.variables() <= {D} for x in self.entries())

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries())

    def with_var(self, v: Var) -> "ConfMap":
        if v == self.var:
            return self
        if any(x.has(v) for x in self.entries()):
            raise FreshnessError(f"{v} already occurs in the map")
        return ConfMap(self.source, self.target,
                       [[x.rename(self.var, v) for x in row] for row in self.matrix], v)

    def subs(self, mapping) -> "ConfMap":
        return ConfMap(self.source, self.target,
                       [[x.subs(mapping) for x in row] for row in self.matrix], self.var)

    def __add__(self, other: "ConfMap") -> "ConfMap":
        self._same(other)
        return ConfMap(self.source, self.target,
                       [[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)], self.var)

    def __sub__(self, other: "ConfMap") -> "ConfMap":
        self._same(other)
        return ConfMap(self.source, self.target,
                       [[a - b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)], self.var)

    def __neg__(self):
        return ConfMap(self.source, self.target, [[-a for a in r] for r in self.matrix], self.var)

    def _same(self, other):
        if (self.source, self.target, self.var) != (other.source, other.target, other.var):
            raise ShapeError("maps with different shapes or variables")

    def __eq__(self, other):
        if not isinstance(other, ConfMap):
            return NotImplemented
        return (self.source, self.target, self.var, self.matrix) == \
            (other.source, other.target, other.var, other.matrix)

    def __hash__(self):
        return hash((self.source, self.target, self.var, self.matrix))

    def __repr__(self):
        cols = "; ".join(f"{n} -> {c}" for n, c in zip(self.source.basis, self.columns()))
        return f"ConfMap[{self.source.name}->{self.target.name}, {self.var}]({cols})"


def apply_map(f: ConfMap, nu, m: ModElem) -> ModElem:
    """f_nu(m) for an arbitrary polynomial ``nu``; variables shared with ``m`` are the same scalars."""
    if m.module != f.source:
        raise ShapeError(f"element of {m.module.name} given to a map from {f.source.name}")
    nu = as_poly(nu)
    if nu.has(D):
        s = _scratch(f, m, nu)
        return apply_map(f, Poly.var(s), m).subs({s: nu})
    rename = {} if nu == Poly.var(f.var) else {f.var: nu}
    acc = [[] for _ in range(f.target.rank)]
    shift = {D: PD + nu} if not nu.is_zero() else None
    for i, g in enumerate(m.comps):
        if g.is_zero():
            continue
        if shift and g.has(D):
            g = g.subs(shift)
        for k in range(f.target.rank):
            q = f.matrix[k][i]
            if q.is_zero():
                continue
            if rename:
                q = q.subs(rename)
            acc[k].append(g * q)
    return ModElem(f.target, [poly_sum(a) for a in acc])


def chom_apply(f: ConfMap, lam_var: Var, m: ModElem) -> ModElem:
    """f_lam(m) with the sesquilinear extension f_lam(D m) = (D + lam) f_lam(m)."""
    if m.module != f.source:
        raise ShapeError(f"element of {m.module.name} given to a map from {f.source.name}")
    if m.has(lam_var):
        raise FreshnessError(f"{lam_var} already occurs in the argument")
    if lam_var in f.params():
        raise FreshnessError(f"{lam_var} is a parameter of the map")
    return apply_map(f, Poly.var(lam_var), m)


def apply_equivariant(f: ConfMap, m: ModElem) -> ModElem:
    """Apply a D-equivariant (lambda-free) map: plain C[D]-linear extension."""
    return apply_map(f, ZERO, m)


def matmul(f: ConfMap, g: ConfMap) -> ConfMap:
    """Composition of D-equivariant maps (f after g)."""
    if g.target != f.source:
        raise ShapeError("g.target must equal f.source")
    cols = [apply_equivariant(f, c) for c in g.columns()]
    return ConfMap.from_columns(g.source, f.target, cols)


def cend_product(f: ConfMap, g: ConfMap) -> ConfMap:
    """The family (f_L1 g)_L2 = f_L1 g_{L2-L1}; evaluation variable L2, parameter L1."""
    if g.target != f.source:
        raise ShapeError("g.target must equal f.source")
    if (f.params() | g.params()) & {L1, L2}:
        raise ValueError("parameters L1, L2 are reserved by cend_product")
    nu = Poly.var(L2) - Poly.var(L1)
    cols = []
    for i in range(g.source.rank):
        inner = apply_map(g, nu, g.source.gen(i))
        cols.append(apply_map(f, Poly.var(L1), inner))
    return ConfMap.from_columns(g.source, f.target, cols, var=L2)


def cend_compose(f: ConfMap, g: ConfMap) -> ConfMap:
    """Single-variable composite: the zeroth product (f_L g)_mu at L = 0, i.e. f_0 g_mu."""
    fam = cend_product(f, g)
    m = fam.subs({L1: 0})
    return ConfMap(m.source, m.target, [[x.rename(L2, L1) for x in row] for row in m.matrix], L1)


def cend_bracket(f: ConfMap, g: ConfMap) -> ConfMap:
    """[f_L1 g]_L2 = f_L1 g_{L2-L1} - g_{L2-L1} f_L1, as a map in L2 with parameter L1."""
    if not (f.source == f.target == g.source == g.target):
        raise ShapeError("cend_bracket needs endomorphisms of one module")
    if (f.params() | g.params()) & {L1, L2}:
        raise ValueError("parameters L1, L2 are reserved by cend_bracket")
    M = f.source
    shift = Poly.var(L2) - Poly.var(L1)
    cols = []
    for i in range(M.rank):
        e = M.gen(i)
        fg = apply_map(f, Poly.var(L1), apply_map(g, shift, e))
        gf = apply_map(g, shift, apply_map(f, Poly.var(L1), e))
        cols.append(fg - gf)
    return ConfMap.from_columns(M, M, cols, var=L2)


def cend_bracket_alt(f: ConfMap, g: ConfMap) -> ConfMap:
    """[f_L g] = f_L g - g_{-D-L} f, with D acting on Cend by (D h)_mu = -mu h_mu."""
    first = cend_product(f, g)
    second = cend_product(g, f)
    nu = Var(max(3, second.max_index()) + 1)
    second = second.subs({L1: Poly.var(nu)})
    # -D - L1 with D -> -L2 (the evaluation variable of the family)
    second = second.subs({nu: Poly.var(L2) - Poly.var(L1)})
    return first - second


def cend_partial(f: ConfMap) -> ConfMap:
    """D acting on Chom: (D f)_x = -x f_x."""
    x = Poly.var(f.var)
    return ConfMap(f.source, f.target, [[-x * q for q in row] for row in f.matrix], f.var)


# ----------------------------------------------------------------------------
# conformal bilinear forms


class FormTable:
    """Scalar conformal bilinear form: ``entries[i][j]`` = <e_i, e_j>_L1 in C[L1]."""

    __slots__ = ("module", "entries")

    def __init__(self, module: FreeCMod, entries):
        entries = tuple(tuple(as_poly(x) for x in row) for row in entries)
        if len(entries) != module.rank or any(len(r) != module.rank for r in entries):
            raise ShapeError("form table must be rank x rank")
        for row in entries:
            for x in row:
                if x.has(D):
                    raise ValueError("form values must not contain D")
                if x.variables() - {L1}:
                    raise ValueError("form values are polynomials in L1 only")
        self.module = module
        self.entries = entries

    @classmethod
    def zero(cls, module: FreeCMod) -> "FormTable":
        return cls(module, [[ZERO] * module.rank for _ in range(module.rank)])

    def __eq__(self, other):
        return isinstance(other, FormTable) and (self.module, self.entries) == (other.module, other.entries)

    def __hash__(self):
        return hash((self.module, self.entries))


def form_eval(B: FormTable, u: ModElem, w: ModElem, lam_) -> Poly:
    """<u, w>_lam = sum f_i(-lam) g_j(lam) B_ij(lam) for u = sum f_i e_i, w = sum g_j e_j."""
    if u.module != B.module or w.module != B.module:
        raise ShapeError("form evaluated outside its module")
    x = as_poly(lam_)
    fs = [c.subs({D: -x}) if c.has(D) else c for c in u.comps]
    gs = [c.subs({D: x}) if c.has(D) else c for c in w.comps]
    out = []
    for i, fi in enumerate(fs):
        if fi.is_zero():
            continue
        for j, gj in enumerate(gs):
            b = B.entries[i][j]
            if gj.is_zero() or b.is_zero():
                continue
            if x != Poly.var(L1):
                b = b.subs({L1: x})
            out.append(fi * gj * b)
    return poly_sum(out)


def check_form(B: FormTable, A=None, *, invariance_reading: str = "right"):
    """Symmetry and the two invariance identities of a conformal bilinear form.

    ``invariance_reading`` fixes how the D inside <x, [y_{lam-D} z]>_mu binds:
    ``"right"`` pairs it through the right slot (D -> mu), ``"left"`` through
    the left slot (D -> -mu).
    """
    from .calg import eval_bracket  # circular at import time
    from .report import Report

    if invariance_reading not in ("right", "left"):
        raise ValueError("invariance_reading must be 'right' or 'left'")
    M = B.module
    rep = Report(f"form on {M.name}")
    n = M.rank
    neg = {L1: -Poly.var(L1)}

    def sym_cases():
        for i in range(n):
            for j in range(n):
                yield (M.basis[i], M.basis[j]), B.entries[i][j] - B.entries[j][i].subs(neg)

    rep.run("symmetric", sym_cases())
    if A is None:
        return rep
    if A.module != M:
        raise ShapeError("form and bracket live on different modules")
    l1, l2 = Poly.var(L1), Poly.var(L2)
    nu = lam(4)
    gens = M.gens()
    inner = (l1 - PD) if invariance_reading == "right" else (l1 + l2)

    def lhs(i, j, k):
        return form_eval(B, eval_bracket(A, gens[i], L2, gens[j]), gens[k], l1)

    def inv1():
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    yz = eval_bracket(A, gens[j], nu, gens[k]).subs({nu: inner})
                    yield (M.basis[i], M.basis[j], M.basis[k]), lhs(i, j, k) - form_eval(B, gens[i], yz, l2)

    def inv2():
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    zy = eval_bracket(A, gens[k], nu, gens[j]).subs({nu: -l1})
                    yield (M.basis[i], M.basis[j], M.basis[k]), lhs(i, j, k) + form_eval(B, gens[i], zy, l2)

    rep.run("invariant-form-1", inv1(), note=f"reading={invariance_reading}")
    rep.run("invariant-form-2", inv2())
    return rep
