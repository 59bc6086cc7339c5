"""Plain-text definition files.

Grammar (one declaration per unindented line, entries indented below it)::

    module   <name> basis <gen>... [partial-zero]
    algebra  <name> on <module>
        bracket <gen> <gen> [: <gen>] = "<poly>"
    action   <name> of <algebra> on <module> [side left|right]
        act <gen> <gen> [: <gen>] = "<poly>"
    form     <name> on <module>
        pair <gen> <gen> = "<poly>"
    map      <name> from <module> to <module>
        entry <gen> [: <gen>] = "<poly>"
    cochain  <name> degree <n> of <action>
        value <gen>... [: <gen>] = "<poly>"
    twoterm  <name> d <map> bracket <algebra> action <action> [l3 <cochain>]
    morphism <name> from <twoterm> to <twoterm> f0 <map> f1 <map>
        f2 <gen> <gen> [: <gen>] = "<poly>"
    crossed  <name> g <algebra> h <algebra> phi <map> action <action>
    omni     <name> algebra <algebra> action <action>
    leibniz  <name> table <algebra>

An entry adds ``poly`` to component ``: gen`` of the value at the listed
generators; the target may be omitted when the value module has rank one.
``#`` starts a comment.  Names are any run of characters other than
whitespace, ``:``, ``=``, ``"`` and ``#``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .calg import LEFT, RIGHT, ActionTable, BracketTable
from .cmod import ConfMap, FormTable, FreeCMod, ModElem
from .cohom import Cochain
from .parse import PolyParseError, parse_poly
from .poly import ZERO, Poly

KINDS = ("module", "algebra", "action", "form", "map", "cochain", "twoterm", "morphism",
         "crossed", "omni", "leibniz")

# header keys -> kind of the referenced declaration (None: literal value)
HEADERS = {
    "algebra": {"on": "module"},
    "action": {"of": "algebra", "on": "module", "side": None},
    "form": {"on": "module"},
    "map": {"from": "module", "to": "module"},
    "cochain": {"degree": None, "of": "action"},
    "twoterm": {"d": "map", "bracket": "algebra", "action": "action", "l3": "cochain"},
    "morphism": {"from": "twoterm", "to": "twoterm", "f0": "map", "f1": "map"},
    "crossed": {"g": "algebra", "h": "algebra", "phi": "map", "action": "action"},
    "omni": {"algebra": "algebra", "action": "action"},
    "leibniz": {"table": "algebra"},
}
OPTIONAL = {("action", "side"), ("twoterm", "l3")}
ENTRY_WORD = {"algebra": "bracket", "action": "act", "form": "pair", "map": "entry",
              "cochain": "value", "morphism": "f2"}

_NAME = r'[^\s:="#]+'
_HEADER_RE = re.compile(rf"({_NAME})")
_ENTRY_RE = re.compile(rf'^(\s+)({_NAME})((?:\s+{_NAME})*)\s*(?::\s*({_NAME})\s*)?=\s*"([^"]*)"\s*$')


class DefParseError(ValueError):
    def __init__(self, message: str, line: int, col: int, token: str = ""):
        self.message, self.line, self.col, self.token = message, line, col, token
        where = f"line {line}, column {col}"
        super().__init__(f"{where}: {message}" + (f" near {token!r}" if token else ""))


@dataclass(frozen=True)
class Entry:
    gens: tuple[str, ...]
    target: str | None
    value: Poly
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Decl:
    kind: str
    name: str
    header: tuple  # ((key, value), ...) in canonical key order; module: (("basis", gens), ("partial-zero", bool))
    entries: tuple[Entry, ...] = ()
    line: int = field(default=0, compare=False)

    def get(self, key, default=None):
        for k, v in self.header:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class DefFile:
    decls: tuple[Decl, ...]

    def __getitem__(self, name: str) -> Decl:
        for d in self.decls:
            if d.name == name:
                return d
        raise KeyError(name)

    def names(self, kind: str | None = None) -> list[str]:
        return [d.name for d in self.decls if kind is None or d.kind == kind]


# ----------------------------------------------------------------------------
# parsing


def parse_def(text: str) -> DefFile:
    decls: list[Decl] = []
    kinds: dict[str, str] = {}
    current: Decl | None = None
    pending: list[Entry] = []

    def close():
        nonlocal current, pending
        if current is not None:
            decls.append(Decl(current.kind, current.name, current.header, tuple(pending), current.line))
        current, pending = None, []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        if line[0].isspace():
            if current is None:
                raise DefParseError("entry outside a declaration", lineno, 1, line.strip())
            pending.append(_parse_entry(line, lineno, current))
            continue
        close()
        current = _parse_header(line, lineno, kinds)
        kinds[current.name] = current.kind
    close()
    return DefFile(tuple(decls))


def _strip_comment(line: str) -> str:
    out, quoted = [], False
    for ch in line:
        if ch == '"':
            quoted = not quoted
        if ch == "#" and not quoted:
            break
        out.append(ch)
    return "".join(out).rstrip()


def _tokens(line: str):
    return [(m.group(1), m.start(1) + 1) for m in _HEADER_RE.finditer(line)]


def _parse_header(line: str, lineno: int, kinds: dict) -> Decl:
    toks = _tokens(line)
    stray = re.search(r'[:="]', line)
    if stray:
        raise DefParseError("unexpected character in declaration", lineno, stray.start() + 1, stray.group())
    kind, col = toks[0]
    if kind not in KINDS:
        raise DefParseError(f"unknown declaration kind {kind!r}", lineno, col, kind)
    if len(toks) < 2:
        raise DefParseError("missing name", lineno, len(line) + 1)
    name, ncol = toks[1]
    if name in kinds:
        raise DefParseError(f"duplicate name {name!r}", lineno, ncol, name)
    rest = toks[2:]
    if kind == "module":
        if not rest or rest[0][0] != "basis":
            raise DefParseError("expected 'basis'", lineno, rest[0][1] if rest else len(line) + 1,
                                rest[0][0] if rest else "")
        gens = [t for t, _ in rest[1:]]
        pz = bool(gens) and gens[-1] == "partial-zero"
        if pz:
            gens = gens[:-1]
        if len(set(gens)) != len(gens):
            raise DefParseError("repeated generator name", lineno, rest[0][1])
        return Decl(kind, name, (("basis", tuple(gens)), ("partial-zero", pz)), (), lineno)
    spec = HEADERS[kind]
    got = {}
    if len(rest) % 2:
        raise DefParseError("header keys and values must pair up", lineno, rest[-1][1], rest[-1][0])
    for (key, kcol), (val, vcol) in zip(rest[::2], rest[1::2]):
        if key not in spec:
            raise DefParseError(f"unknown key {key!r} for {kind}", lineno, kcol, key)
        if key in got:
            raise DefParseError(f"repeated key {key!r}", lineno, kcol, key)
        ref = spec[key]
        if ref is not None:
            if val not in kinds:
                raise DefParseError(f"unresolved reference {val!r}", lineno, vcol, val)
            if kinds[val] != ref:
                raise DefParseError(f"{val!r} is a {kinds[val]}, expected a {ref}", lineno, vcol, val)
        elif key == "degree" and not val.isdigit():
            raise DefParseError("degree must be a nonnegative integer", lineno, vcol, val)
        elif key == "side" and val not in ("left", "right"):
            raise DefParseError("side must be left or right", lineno, vcol, val)
        got[key] = val
    for key in spec:
        if key not in got and (kind, key) not in OPTIONAL:
            raise DefParseError(f"missing key {key!r} for {kind}", lineno, len(line) + 1)
    header = tuple((k, got[k]) for k in spec if k in got)
    return Decl(kind, name, header, (), lineno)


def _parse_entry(line: str, lineno: int, decl: Decl) -> Entry:
    word = ENTRY_WORD.get(decl.kind)
    if word is None:
        raise DefParseError(f"{decl.kind} declarations take no entries", lineno, 1, line.strip())
    m = _ENTRY_RE.match(line)
    if not m:
        stripped = line.strip()
        col = len(line) - len(line.lstrip()) + 1
        bad = re.search(r'"[^"]*$', line)
        if bad:
            raise DefParseError("unterminated string", lineno, bad.start() + 1, bad.group())
        raise DefParseError("malformed entry", lineno, col, stripped.split()[0] if stripped else "")
    if m.group(2) != word:
        raise DefParseError(f"expected {word!r}", lineno, len(m.group(1)) + 1, m.group(2))
    gens = tuple(m.group(3).split())
    text = m.group(5)
    try:
        value = parse_poly(text)
    except PolyParseError as e:
        raise DefParseError(e.message, lineno, m.start(5) + e.pos + 1, text[e.pos:e.pos + 3]) from None
    return Entry(gens, m.group(4), value, lineno)


# ----------------------------------------------------------------------------
# printing


def format_def(df: DefFile) -> str:
    out = []
    for d in df.decls:
        if d.kind == "module":
            tail = " partial-zero" if d.get("partial-zero") else ""
            out.append(f"module {d.name} basis {' '.join(d.get('basis'))}{tail}".rstrip())
            continue
        out.append(" ".join([d.kind, d.name] + [f"{k} {v}" for k, v in d.header]))
        word = ENTRY_WORD.get(d.kind)
        for e in d.entries:
            tgt = f" : {e.target}" if e.target is not None else ""
            gens = (" " + " ".join(e.gens)) if e.gens else ""
            out.append(f"    {word}{gens}{tgt} = \"{e.value}\"")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------------
# building objects


class DefBuildError(ValueError):
    pass


def build(df: DefFile) -> dict:
    """Materialize every declaration; returns name -> object in file order."""
    from .leibniz import LeibnizAlg
    from .omni import build_omni
    from .twoterm import CrossedModuleData, MorphismData, TwoTermData

    objs: dict = {}

    def fail(d: Decl, msg: str, e: Entry | None = None):
        line = e.line if e is not None else d.line
        raise DefBuildError(f"line {line}: {d.kind} {d.name}: {msg}")

    def idx(d, M: FreeCMod, g: str, e):
        if g not in M.basis:
            fail(d, f"{g!r} is not a generator of {M.name}", e)
        return M.index(g)

    def elem_table(d, rows, cols, target: FreeCMod, row_mod, col_mod):
        acc = [[[ZERO] * target.rank for _ in range(cols)] for _ in range(rows)]
        for e in d.entries:
            if len(e.gens) != 2:
                fail(d, "entries name two generators", e)
            i, j = idx(d, row_mod, e.gens[0], e), idx(d, col_mod, e.gens[1], e)
            k = _target_index(d, target, e, fail)
            acc[i][j][k] = acc[i][j][k] + e.value
        return [[ModElem(target, c) for c in row] for row in acc]

    for d in df.decls:
        try:
            if d.kind == "module":
                objs[d.name] = FreeCMod(d.name, d.get("basis"), bool(d.get("partial-zero")))
            elif d.kind == "algebra":
                M = objs[d.get("on")]
                objs[d.name] = BracketTable(M, elem_table(d, M.rank, M.rank, M, M, M))
            elif d.kind == "action":
                A, M = objs[d.get("of")], objs[d.get("on")]
                side = RIGHT if d.get("side") == "right" else LEFT
                objs[d.name] = ActionTable(A, M, side, elem_table(d, A.module.rank, M.rank, M, A.module, M))
            elif d.kind == "form":
                M = objs[d.get("on")]
                acc = [[ZERO] * M.rank for _ in range(M.rank)]
                for e in d.entries:
                    if len(e.gens) != 2 or e.target is not None:
                        fail(d, "pair entries name two generators and no target", e)
                    i, j = idx(d, M, e.gens[0], e), idx(d, M, e.gens[1], e)
                    acc[i][j] = acc[i][j] + e.value
                objs[d.name] = FormTable(M, acc)
            elif d.kind == "map":
                S, T = objs[d.get("from")], objs[d.get("to")]
                mat = [[ZERO] * S.rank for _ in range(T.rank)]
                for e in d.entries:
                    if len(e.gens) != 1:
                        fail(d, "map entries name one source generator", e)
                    i = idx(d, S, e.gens[0], e)
                    k = _target_index(d, T, e, fail)
                    mat[k][i] = mat[k][i] + e.value
                objs[d.name] = ConfMap(S, T, mat)
            elif d.kind == "cochain":
                act = objs[d.get("of")]
                n = int(d.get("degree"))
                A, M = act.algebra.module, act.module
                vals: dict = {}
                for e in d.entries:
                    if len(e.gens) != n:
                        fail(d, f"degree-{n} values name {n} generators", e)
                    key = tuple(idx(d, A, g, e) for g in e.gens)
                    k = _target_index(d, M, e, fail)
                    comps = vals.setdefault(key, [ZERO] * M.rank)
                    comps[k] = comps[k] + e.value
                objs[d.name] = Cochain(n, act.algebra, act, {k: ModElem(M, c) for k, c in vals.items()})
            elif d.kind == "twoterm":
                dmap, A, act = objs[d.get("d")], objs[d.get("bracket")], objs[d.get("action")]
                l3 = objs[d.get("l3")].values if d.get("l3") else {}
                objs[d.name] = TwoTermData(A.module, act.module, dmap, A, act, l3)
            elif d.kind == "morphism":
                S, T = objs[d.get("from")], objs[d.get("to")]
                f2 = elem_table(d, S.V0.rank, S.V0.rank, T.V1, S.V0, S.V0)
                objs[d.name] = MorphismData(objs[d.get("f0")], objs[d.get("f1")], f2)
            elif d.kind == "crossed":
                objs[d.name] = CrossedModuleData(objs[d.get("g")], objs[d.get("h")], objs[d.get("phi")],
                                                 objs[d.get("action")])
            elif d.kind == "omni":
                objs[d.name] = build_omni(objs[d.get("algebra")], objs[d.get("action")])
            elif d.kind == "leibniz":
                objs[d.name] = LeibnizAlg(objs[d.get("table")])
        except DefBuildError:
            raise
        except (ValueError, KeyError) as exc:
            fail(d, str(exc))
    return objs


def _target_index(d, M: FreeCMod, e: Entry, fail) -> int:
    if e.target is None:
        if M.rank != 1:
            fail(d, f"value module {M.name} has rank {M.rank}; name the target generator", e)
        return 0
    if e.target not in M.basis:
        fail(d, f"{e.target!r} is not a generator of {M.name}", e)
    return M.index(e.target)


def load(text: str) -> dict:
    return build(parse_def(text))


# ----------------------------------------------------------------------------
# writing objects back


class Writer:
    """Accumulates declarations for objects and their dependencies, deduplicated by value."""

    def __init__(self):
        self.decls: list[Decl] = []
        self._seen: list = []
        self._names: set[str] = set()

    def _name(self, base: str) -> str:
        n, k = base, 1
        while n in self._names:
            k += 1
            n = f"{base}~{k}"
        self._names.add(n)
        return n

    def _memo(self, kind: str, obj, make):
        for k, o, name in self._seen:
            if k == kind and o == obj:
                return name
        name = make()
        self._seen.append((kind, obj, name))
        return name

    def module(self, M: FreeCMod) -> str:
        def make():
            if M.name in self._names:
                raise DefBuildError(f"two different modules are both named {M.name!r}")
            self._names.add(M.name)
            self.decls.append(Decl("module", M.name, (("basis", tuple(M.basis)), ("partial-zero", M.partial_zero))))
            return M.name
        return self._memo("module", M, make)

    @staticmethod
    def _elem_entries(prefix: tuple, m: ModElem) -> list[Entry]:
        M = m.module
        out = []
        for k, c in enumerate(m.comps):
            if not c.is_zero():
                out.append(Entry(prefix, M.basis[k] if M.rank != 1 else None, c))
        return out

    def algebra(self, A: BracketTable, name: str | None = None) -> str:
        def make():
            mname = self.module(A.module)
            B = A.module.basis
            ents = [e for i, row in enumerate(A.entries) for j, m in enumerate(row)
                    for e in self._elem_entries((B[i], B[j]), m)]
            n = self._name(name or f"{mname}.bracket")
            self.decls.append(Decl("algebra", n, (("on", mname),), tuple(ents)))
            return n
        return self._memo("algebra", A, make)

    def action(self, act: ActionTable, name: str | None = None) -> str:
        def make():
            an = self.algebra(act.algebra)
            mn = self.module(act.module)
            Ba, Bm = act.algebra.module.basis, act.module.basis
            ents = [e for i, row in enumerate(act.entries) for j, m in enumerate(row)
                    for e in self._elem_entries((Ba[i], Bm[j]), m)]
            header = (("of", an), ("on", mn)) + ((("side", "right"),) if act.side == RIGHT else ())
            n = self._name(name or f"{mn}.action")
            self.decls.append(Decl("action", n, header, tuple(ents)))
            return n
        return self._memo("action", act, make)

    def form(self, B: FormTable, name: str | None = None) -> str:
        def make():
            mn = self.module(B.module)
            b = B.module.basis
            ents = [Entry((b[i], b[j]), None, q) for i, row in enumerate(B.entries) for j, q in enumerate(row)
                    if not q.is_zero()]
            n = self._name(name or f"{mn}.form")
            self.decls.append(Decl("form", n, (("on", mn),), tuple(ents)))
            return n
        return self._memo("form", B, make)

    def map(self, f: ConfMap, name: str | None = None) -> str:
        def make():
            sn, tn = self.module(f.source), self.module(f.target)
            ents = []
            for i in range(f.source.rank):
                ents.extend(self._elem_entries((f.source.basis[i],), f.column(i)))
            n = self._name(name or f"{sn}->{tn}")
            self.decls.append(Decl("map", n, (("from", sn), ("to", tn)), tuple(ents)))
            return n
        return self._memo("map", f, make)

    def cochain(self, c: Cochain, name: str | None = None) -> str:
        def make():
            an = self.action(c.action)
            ents = []
            for names, v in c.entries():
                ents.extend(self._elem_entries(names, v))
            n = self._name(name or f"{an}.c{c.degree}")
            self.decls.append(Decl("cochain", n, (("degree", str(c.degree)), ("of", an)), tuple(ents)))
            return n
        return self._memo("cochain", c, make)

    def twoterm(self, T, name: str = "T") -> str:
        def make():
            dn = self.map(T.d)
            an = self.algebra(T.l2_00)
            cn = self.action(T.l2_01)
            header = (("d", dn), ("bracket", an), ("action", cn))
            if T.l3:
                header += (("l3", self.cochain(T.l3_cochain(), f"{name}.l3")),)
            n = self._name(name)
            self.decls.append(Decl("twoterm", n, header))
            return n
        return self._memo("twoterm", T, make)

    def morphism(self, f, S, T, name: str = "f") -> str:
        sn, tn = self.twoterm(S, "S"), self.twoterm(T, "T")
        f0, f1 = self.map(f.f0), self.map(f.f1)
        B = S.V0.basis
        ents = [e for i, row in enumerate(f.f2) for j, m in enumerate(row)
                for e in self._elem_entries((B[i], B[j]), m)]
        n = self._name(name)
        self.decls.append(Decl("morphism", n, (("from", sn), ("to", tn), ("f0", f0), ("f1", f1)), tuple(ents)))
        return n

    def crossed(self, C, name: str = "C") -> str:
        header = (("g", self.algebra(C.g)), ("h", self.algebra(C.h)), ("phi", self.map(C.phi)),
                  ("action", self.action(C.action)))
        n = self._name(name)
        self.decls.append(Decl("crossed", n, header))
        return n

    def omni(self, O, name: str = "E") -> str:
        header = (("algebra", self.algebra(O.algebra)), ("action", self.action(O.action)))
        n = self._name(name)
        self.decls.append(Decl("omni", n, header))
        return n

    def deffile(self) -> DefFile:
        return DefFile(tuple(self.decls))

    def text(self) -> str:
        return format_def(self.deffile())


def dump(items: Iterable[tuple[str, str, object]]) -> str:
    """Serialize (kind, name, object) triples; kinds as in the grammar."""
    w = Writer()
    for kind, name, obj in items:
        getattr(w, kind)(obj, name)
    return w.text()
