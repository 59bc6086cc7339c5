"""Command-line front end: ``conformal-calc <group> <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import calg, cohom, poly
from .calg import (
    JACOBI, JACOBI_EQUIV, LEFT_LEIBNIZ, RIGHT_LEIBNIZ, SESQUI_CONSISTENT, SKEW, ActionTable, BracketTable,
)
from .cmod import ConfMap, FormTable, FreeCMod, check_form
from .deffile import DefBuildError, DefParseError, Writer, build, parse_def
from .report import Report

AXIOM_NAMES = {
    "skew": SKEW, "jacobi": JACOBI, "jacobi-equiv": JACOBI_EQUIV, "sesqui": SESQUI_CONSISTENT,
    "left-leibniz": LEFT_LEIBNIZ, "right-leibniz": RIGHT_LEIBNIZ,
}
FLAGS = ("invariance-left", "l3-third-slot", "pairing-literal", "right-module-plain")


DEFAULTS = {"format": "text", "degree_bound": None, "max_degree": None, "timings": False, "flag": None,
            "defs": None}


class UsageError(Exception):
    pass


# ----------------------------------------------------------------------------
# name resolution


def _builtin_algebra(name: str) -> BracketTable | None:
    from .selftest import skew_non_jacobi

    table = {"Vir": calg.virasoro, "CurSl2": calg.cur_sl2, "VirP": calg.perturbed_virasoro, "Q": skew_non_jacobi}
    if name in table:
        return table[name]()
    if name.startswith("Ab") and name[2:].isdigit():
        return calg.free_abelian(int(name[2:]))
    return None


class Context:
    def __init__(self, args):
        self.args = args
        self.objects: dict = {}
        if getattr(args, "defs", None):
            self.objects.update(_load(args.defs))

    def get(self, name: str, types, what: str):
        obj = self.objects.get(name)
        if obj is not None:
            if not isinstance(obj, types):
                raise UsageError(f"{name!r} is not a{'n' if what[0] in 'aeiou' else ''} {what}")
            return obj
        return None

    def algebra(self, name: str) -> BracketTable:
        obj = self.get(name, BracketTable, "algebra")
        if obj is None:
            obj = _builtin_algebra(name)
        if obj is None:
            raise UsageError(f"unknown algebra {name!r}")
        return obj

    def action(self, spec: str, algebra: BracketTable | None) -> ActionTable:
        obj = self.get(spec, ActionTable, "action")
        if obj is not None:
            return obj
        if algebra is None:
            raise UsageError(f"built-in module {spec!r} needs --algebra")
        if spec.startswith("MDelta="):
            try:
                delta = Fraction(spec.split("=", 1)[1])
            except ValueError:
                raise UsageError(f"bad weight in {spec!r}") from None
            return calg.m_delta(delta, algebra)
        if spec == "adjoint":
            return calg.adjoint(algebra)
        if spec == "trivial":
            return calg.trivial_action(algebra, FreeCMod("C", ("c",), partial_zero=True))
        raise UsageError(f"unknown module {spec!r}")

    def form(self, name: str) -> FormTable:
        obj = self.get(name, FormTable, "form")
        if obj is not None:
            return obj
        if name == "killing":
            from .selftest import killing_form_sl2
            return killing_form_sl2()
        raise UsageError(f"unknown form {name!r}")

    def named(self, name: str, cls, what: str):
        obj = self.get(name, cls, what)
        if obj is None:
            raise UsageError(f"no {what} named {name!r}")
        return obj


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> dict:
    text = _read(path)
    return build(parse_def(text))


def _pick(objs: dict, cls, name: str | None, what: str):
    if name is not None:
        obj = objs.get(name)
        if not isinstance(obj, cls):
            raise UsageError(f"no {what} named {name!r}")
        return name, obj
    found = [(n, o) for n, o in objs.items() if isinstance(o, cls)]
    if not found:
        raise UsageError(f"no {what} in input")
    return found[-1]


def _flags(args) -> dict:
    out = {f: False for f in FLAGS}
    for item in args.flag or []:
        if "=" not in item:
            raise UsageError(f"--flag expects NAME=on|off, got {item!r}")
        k, v = item.split("=", 1)
        if k not in out or v not in ("on", "off"):
            raise UsageError(f"unknown flag setting {item!r}; flags: {', '.join(FLAGS)}")
        out[k] = v == "on"
    return out


# ----------------------------------------------------------------------------
# output


class Output:
    def __init__(self, args):
        self.args = args
        self.reports: list[tuple[Report, float]] = []
        self.texts: list[str] = []

    def report(self, fn, *a, **kw) -> Report:
        t = time.perf_counter()
        rep = fn(*a, **kw)
        self.reports.append((rep, time.perf_counter() - t))
        return rep

    def text(self, s: str):
        self.texts.append(s)

    @property
    def passed(self) -> bool:
        return all(r.passed for r, _ in self.reports)

    def emit(self, stream):
        timings = self.args.timings
        if self.args.format == "json":
            doc = {}
            if self.reports:
                reps = []
                for r, dt in self.reports:
                    d = r.to_dict()
                    if timings:
                        d["wall_time"] = round(dt, 6)
                    reps.append(d)
                n = sum(len(r.checks) for r, _ in self.reports)
                bad = sum(1 for r, _ in self.reports for c in r.checks if not c.passed)
                doc["reports"] = reps
                doc["summary"] = {"checks": n, "passed": n - bad, "failed": bad}
            if self.texts:
                doc["output"] = "".join(self.texts)
            stream.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
            return
        for s in self.texts:
            stream.write(s if s.endswith("\n") else s + "\n")
        for r, dt in self.reports:
            stream.write(r.render() + "\n")
            if timings:
                stream.write(f"  time {dt:.3f}s\n")
        if self.reports:
            n = sum(len(r.checks) for r, _ in self.reports)
            bad = sum(1 for r, _ in self.reports for c in r.checks if not c.passed)
            prefix = "selftest: " if self.args.group == "selftest" else ""
            stream.write(f"{prefix}{n - bad}/{n} checks passed\n")


# ----------------------------------------------------------------------------
# commands


def cmd_check(args, ctx: Context, out: Output, flags: dict):
    what = args.what
    if what == "algebra":
        A = ctx.algebra(args.name)
        kinds = [SKEW, JACOBI]
        if args.axioms:
            try:
                kinds = [AXIOM_NAMES[a.strip().lower()] for a in args.axioms.split(",") if a.strip()]
            except KeyError as e:
                raise UsageError(f"unknown axiom {e.args[0]!r}; known: {', '.join(AXIOM_NAMES)}") from None
        out.report(calg.check_axioms, A, kinds).subject = f"algebra {args.name}"
    elif what == "module":
        A = ctx.algebra(args.algebra) if args.algebra else None
        act = ctx.action(args.name, A)
        rep = out.report(calg.check_module_axioms, act,
                         right_reading="plain" if flags["right-module-plain"] else "uplam")
        rep.subject = f"module {args.name}"
    elif what == "form":
        B = ctx.form(args.name)
        A = ctx.algebra(args.algebra) if args.algebra else None
        if A is None and B.module.name == "CurSl2":
            A = calg.cur_sl2()
        out.report(check_form, B, A, invariance_reading="left" if flags["invariance-left"] else "right")
    elif what == "derivation":
        if not args.algebra:
            raise UsageError("check derivation needs --algebra")
        A = ctx.algebra(args.algebra)
        if args.name == "d" and ctx.get("d", ConfMap, "map") is None:
            from .selftest import sl2_derivation_d
            Dm = sl2_derivation_d()
        else:
            Dm = ctx.named(args.name, ConfMap, "map")
        out.report(calg.check_derivation, A, Dm)


def cmd_cohomology(args, ctx: Context, out: Output, flags: dict):
    c = ctx.named(args.name, cohom.Cochain, "cochain")
    formula = cohom.LEIBNIZ if args.formula == "leibniz" else cohom.LIE
    if args.what == "delta":
        d = cohom.apply_delta(c, formula)
        w = Writer()
        w.cochain(d, f"delta({args.name})")
        out.text(w.text())
    elif args.what == "d2":
        out.report(cohom.check_delta_squared, c, formula)
    else:
        out.report(cohom.is_cocycle, c, formula)


def _source(args, with_decls: bool = False):
    if not args.source:
        raise UsageError("missing input file (use - for stdin)")
    df = parse_def(_read(args.source))
    objs = build(df)
    return (df, objs) if with_decls else objs


def cmd_twoterm(args, ctx: Context, out: Output, flags: dict):
    from . import twoterm as tt

    what = args.what
    if what == "string":
        A = ctx.algebra(args.algebra or "CurSl2")
        B = ctx.form(args.form or "killing")
        T = tt.make_string(A, B)
        out.text(_dump_twoterm(T, args.name or "T"))
        return
    if what == "skeletal":
        if not (args.algebra and args.action and args.cochain):
            raise UsageError("twoterm skeletal needs --algebra, --action and --cochain (from --def)")
        A = ctx.algebra(args.algebra)
        act = ctx.action(args.action, A)
        c = ctx.named(args.cochain, cohom.Cochain, "cochain")
        T = tt.make_skeletal(A, act, c)
        out.text(_dump_twoterm(T, args.name or "T"))
        return
    objs = _source(args)
    if what == "crossed-from":
        _, C = _pick(objs, tt.CrossedModuleData, args.name, "crossed module")
        rep = out.report(tt.check_crossed_module, C)
        if rep.passed:
            out.text(_dump_twoterm(tt.from_crossed_module(C), "T"))
        return
    name, T = _pick(objs, tt.TwoTermData, args.name, "two-term declaration")
    if what == "check":
        out.report(tt.check_2term, T, l3_third_slot=flags["l3-third-slot"])
    elif what == "classify":
        out.text(f"{name}: {tt.classify(T)}")
    elif what == "crossed-to":
        C = tt.to_crossed_module(T)
        w = Writer()
        w.crossed(C, f"{name}.crossed")
        out.text(w.text())
    elif what == "present":
        P = tt.lie2_present(T)
        out.text(_describe_presentation(P))
        out.report(tt.check_presentation, P, T)
    elif what == "roundtrip":
        def roundtrip():
            rep = Report(f"round trips of {name}")
            rep.add("extract(present(T)) = T", tt.lie2_extract(tt.lie2_present(T)) == T)
            if not T.l3:
                C = tt.to_crossed_module(T)
                rep.add("from(to(T)) = T", tt.from_crossed_module(C) == T)
                rep.add("to(from(C)) = C", tt.to_crossed_module(tt.from_crossed_module(C)) == C)
            return rep
        out.report(roundtrip)


def _dump_twoterm(T, name: str) -> str:
    w = Writer()
    w.twoterm(T, name)
    return w.text()


def _describe_presentation(P) -> str:
    lines = [f"objects   {P.objects.name}: {' '.join(P.objects.basis)}",
             f"morphisms {P.morphisms.name}: {' '.join(P.morphisms.basis)}",
             f"jacobiator values: {len(P.jacobiator)}"]
    return "\n".join(lines)


def cmd_morphism(args, ctx: Context, out: Output, flags: dict):
    from . import twoterm as tt

    df, objs = _source(args, with_decls=True)
    if args.what == "check":
        name, f = _pick(objs, tt.MorphismData, args.name, "morphism")
        S, T = _endpoints(df, objs, name)
        out.report(tt.check_morphism, f, S, T)
    else:
        if not (args.first and args.second):
            raise UsageError("morphism compose needs --first and --second")
        _, f = _pick(objs, tt.MorphismData, args.first, "morphism")
        _, g = _pick(objs, tt.MorphismData, args.second, "morphism")
        src, dst = df[args.first].get("from"), df[args.second].get("to")
        S, U = objs[src], objs[dst]
        gf = tt.compose_morphisms(g, f)
        w = Writer()
        w.twoterm(S, src)
        w.twoterm(U, dst)
        w.morphism(gf, S, U, f"{args.second}.{args.first}")
        out.text(w.text())
        out.report(tt.check_morphism, gf, S, U)


def _endpoints(df, objs: dict, name: str):
    d = df[name]
    return objs[d.get("from")], objs[d.get("to")]


def _omni_inputs(args, ctx: Context):
    if not (args.algebra and args.module):
        raise UsageError("omni commands need --algebra and --module")
    A = ctx.algebra(args.algebra)
    return A, ctx.action(args.module, A)


def cmd_omni(args, ctx: Context, out: Output, flags: dict):
    from . import omni

    reading = omni.LITERAL if flags["pairing-literal"] else omni.PROOF
    if args.what == "dirac":
        om = ctx.algebra(args.bracket or args.algebra or "Vir")
        out.report(omni.graph_check, om, reading=reading, degree_bound=args.degree_bound or 4)
        return
    A, act = _omni_inputs(args, ctx)
    O = omni.build_omni(A, act, reading=reading)
    if args.what == "build":
        w = Writer()
        w.omni(O, args.name or "E")
        w.algebra(O.hemi, f"{O.E.name}.hemi")
        w.algebra(O.demi, f"{O.E.name}.demi")
        out.text(w.text())
    elif args.what == "check":
        out.report(omni.check_omni, O)
    else:
        out.text(_dump_twoterm(omni.omni_two_term(A, act, O=O), args.name or "T"))


def cmd_leibniz(args, ctx: Context, out: Output, flags: dict):
    from . import leibniz as lb
    from .omni import build_omni

    if args.module:
        A, act = _omni_inputs(args, ctx)
        L = lb.LeibnizAlg(build_omni(A, act).hemi)
    else:
        name = args.name or args.algebra
        if not name:
            raise UsageError("leibniz commands need an algebra name or --algebra/--module")
        obj = ctx.objects.get(name)
        L = obj if isinstance(obj, lb.LeibnizAlg) else lb.LeibnizAlg(ctx.algebra(name))
    bound = args.degree_bound if args.degree_bound is not None else lb.default_degree_bound(L)
    if args.what == "kernel":
        K = lb.leibniz_kernel(L)
        out.text(_slice_text("kernel", K))
        out.report(lb.check_ker_in_center, L)
    elif args.what == "center":
        out.text(_slice_text("left center", lb.left_center(L, bound)))
    else:
        T = lb.leibniz_two_term(L, bound)
        out.text(_dump_twoterm(T, args.name_out or "T"))


def _slice_text(label: str, S) -> str:
    from .cmod import format_elem

    lines = [f"{label} of {S.module.name}: {len(S)} generators (D-degree bound {S.degree_bound})"]
    lines += [f"  {format_elem(g)}" for g in S.generators]
    return "\n".join(lines)


def cmd_selftest(args, ctx: Context, out: Output, flags: dict):
    from .selftest import CRITERIA

    for crit in CRITERIA:
        out.report(crit)


# ----------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    # options are accepted before or after the command; defaults are filled in by main()
    S = argparse.SUPPRESS
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=S)
    common.add_argument("--degree-bound", type=int, default=S, metavar="N")
    common.add_argument("--max-degree", type=int, default=S, metavar="N", help="polynomial degree cap")
    common.add_argument("--timings", action="store_true", default=S)
    common.add_argument("--flag", action="append", default=S, metavar="NAME=on|off",
                        help=f"toggles: {', '.join(FLAGS)}")
    common.add_argument("--def", dest="defs", default=S, metavar="FILE", help="definition file")

    p = argparse.ArgumentParser(prog="conformal-calc", parents=[common],
                                description="Exact checks for Lie conformal algebras "
                                "and 2-term conformal L-infinity algebras.")
    sub = p.add_subparsers(dest="group", required=True)

    c = sub.add_parser("check", parents=[common])
    c.add_argument("what", choices=("algebra", "module", "form", "derivation"))
    c.add_argument("name")
    c.add_argument("--axioms")
    c.add_argument("--algebra")
    c.set_defaults(fn=cmd_check)

    h = sub.add_parser("cohomology", parents=[common])
    h.add_argument("what", choices=("delta", "d2", "cocycle"))
    h.add_argument("name")
    h.add_argument("--formula", choices=("lie", "leibniz"), default="lie")
    h.set_defaults(fn=cmd_cohomology)

    t = sub.add_parser("twoterm", parents=[common])
    t.add_argument("what", choices=("check", "classify", "string", "skeletal", "crossed-to", "crossed-from",
                                    "present", "roundtrip"))
    t.add_argument("source", nargs="?")
    t.add_argument("--name")
    t.add_argument("--algebra")
    t.add_argument("--form")
    t.add_argument("--action")
    t.add_argument("--cochain")
    t.set_defaults(fn=cmd_twoterm)

    m = sub.add_parser("morphism", parents=[common])
    m.add_argument("what", choices=("check", "compose"))
    m.add_argument("source")
    m.add_argument("--name")
    m.add_argument("--first")
    m.add_argument("--second")
    m.set_defaults(fn=cmd_morphism)

    o = sub.add_parser("omni", parents=[common])
    o.add_argument("what", choices=("build", "check", "two-term", "dirac"))
    o.add_argument("--algebra")
    o.add_argument("--module")
    o.add_argument("--bracket")
    o.add_argument("--name")
    o.set_defaults(fn=cmd_omni)

    lz = sub.add_parser("leibniz", parents=[common])
    lz.add_argument("what", choices=("kernel", "center", "two-term"))
    lz.add_argument("name", nargs="?")
    lz.add_argument("--algebra")
    lz.add_argument("--module")
    lz.add_argument("--out-name", dest="name_out")
    lz.set_defaults(fn=cmd_leibniz)

    s = sub.add_parser("selftest", parents=[common])
    s.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for key, value in DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    if args.max_degree is not None:
        poly.set_degree_cap(args.max_degree)
    out = Output(args)
    try:
        flags = _flags(args)
        ctx = Context(args)
        args.fn(args, ctx, out, flags)
    except (UsageError, DefParseError, DefBuildError, OSError) as e:
        sys.stderr.write(f"conformal-calc: {e}\n")
        return 2
    except (ValueError, ArithmeticError) as e:
        out.emit(sys.stdout)
        sys.stderr.write(f"conformal-calc: {e}\n")
        return 1
    out.emit(sys.stdout)
    return 0 if out.passed else 1


if __name__ == "__main__":
    sys.exit(main())
