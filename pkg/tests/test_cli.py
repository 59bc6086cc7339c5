import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from conformal_calc.cli import main
from conformal_calc.deffile import Writer, load
from conformal_calc.selftest import morphism_fixtures

FIXTURE = str(Path(__file__).parent / "fixtures" / "virasoro.def")
CLI = [sys.executable, "-m", "conformal_calc.cli"]


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_virasoro(capsys):
    code, out, _ = run(capsys, "check", "algebra", "Vir", "--axioms", "skew,jacobi")
    assert code == 0
    assert out.splitlines() == ["== algebra Vir", "  PASS  SKEW", "  PASS  JACOBI", "2/2 checks passed"]


def test_failing_check_exits_one_with_witness(capsys):
    code, out, _ = run(capsys, "check", "algebra", "VirP", "--axioms", "skew")
    assert code == 1
    assert "FAIL  SKEW" in out and "(L, L)" in out


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "check", "algebra", "Nope")[0] == 2
    assert run(capsys, "check", "algebra", "Vir", "--axioms", "bogus")[0] == 2
    assert run(capsys, "--flag", "nonsense=on", "check", "algebra", "Vir")[0] == 2
    assert run(capsys, "check", "module", "MDelta=x", "--algebra", "Vir")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_json_output(capsys):
    code, out, _ = run(capsys, "--format", "json", "check", "algebra", "Q")
    doc = json.loads(out)
    assert code == 1
    assert doc["summary"] == {"checks": 2, "passed": 1, "failed": 1}
    checks = {c["axiom"]: c for c in doc["reports"][0]["checks"]}
    assert checks["SKEW"]["verdict"] == "PASS" and checks["JACOBI"]["verdict"] == "FAIL"
    assert "witness" in checks["JACOBI"]


def test_options_after_the_command(capsys):
    _, a, _ = run(capsys, "--format", "json", "check", "algebra", "Vir")
    _, b, _ = run(capsys, "check", "algebra", "Vir", "--format", "json")
    assert a == b


def test_timings_only_on_request(capsys):
    _, plain, _ = run(capsys, "check", "algebra", "CurSl2")
    _, timed, _ = run(capsys, "check", "algebra", "CurSl2", "--timings")
    assert "time" not in plain and "time" in timed
    _, again, _ = run(capsys, "check", "algebra", "CurSl2")
    assert again == plain


def test_definition_file(capsys):
    assert run(capsys, "check", "algebra", "Vir", "--def", FIXTURE, "--axioms", "skew,jacobi,jacobi-equiv")[0] == 0
    code, out, _ = run(capsys, "check", "module", "M1.action", "--def", FIXTURE)
    assert code == 0 and out.startswith("== module M1.action")


def test_builtin_modules_and_forms(capsys):
    assert run(capsys, "check", "module", "MDelta=1/2", "--algebra", "Vir")[0] == 0
    assert run(capsys, "check", "module", "adjoint", "--algebra", "CurSl2")[0] == 0
    assert run(capsys, "check", "form", "killing", "--algebra", "CurSl2")[0] == 0
    assert run(capsys, "check", "derivation", "d", "--algebra", "CurSl2")[0] == 0


def test_cohomology_commands(capsys, tmp_path):
    path = tmp_path / "c.def"
    path.write_text(Path(FIXTURE).read_text() + 'cochain c degree 1 of M1.action\n    value L = "D"\n'
                    'module M2 basis w\naction M2.action of Vir on M2\n    act L w = "D + 2*L"\n'
                    'cochain k degree 1 of M2.action\n    value L = "1"\n')
    assert run(capsys, "cohomology", "d2", "c", "--def", str(path))[0] == 0
    assert run(capsys, "cohomology", "cocycle", "c", "--def", str(path), "--formula", "leibniz")[0] == 0
    # k(L) = w on the weight-2 module: dk(L, L) = (D + 2 L1) w
    code, out, _ = run(capsys, "cohomology", "cocycle", "k", "--def", str(path))
    assert code == 1 and "(D + 2*L1)*w" in out
    code, out, _ = run(capsys, "cohomology", "delta", "c", "--def", str(path))
    assert code == 0
    assert "cochain delta(c) degree 2" in out
    assert load(out)["delta(c)"].degree == 2


def test_pipeline_omni_into_check():
    made = subprocess.run(CLI + ["omni", "two-term", "--algebra", "Vir", "--module", "MDelta=1"],
                          capture_output=True, text=True, check=True)
    checked = subprocess.run(CLI + ["twoterm", "check", "-"], input=made.stdout, capture_output=True, text=True)
    assert checked.returncode == 0
    lines = checked.stdout.splitlines()
    assert [ln.split()[1] for ln in lines if ln.startswith("  PASS")] == list("abcdefghi")
    assert lines[-1] == "9/9 checks passed"


def test_string_construction_and_checks(capsys, monkeypatch):
    code, text, _ = run(capsys, "twoterm", "string")
    assert code == 0
    assert run(capsys, "twoterm", "check", "-", stdin=text, monkeypatch=monkeypatch)[0] == 0
    code, out, _ = run(capsys, "twoterm", "classify", "-", stdin=text, monkeypatch=monkeypatch)
    assert out.strip() == "T: SKELETAL"
    assert run(capsys, "twoterm", "roundtrip", "-", stdin=text, monkeypatch=monkeypatch)[0] == 0
    code, out, _ = run(capsys, "twoterm", "present", "-", stdin=text, monkeypatch=monkeypatch)
    assert code == 0 and "jacobiator-identity" in out


def test_crossed_module_commands(capsys, tmp_path):
    path = tmp_path / "lie.def"
    path.write_text(Path(FIXTURE).read_text() + "map zero from M1 to VirMod\n"
                    "twoterm T d zero bracket Vir action M1.action\n")
    code, crossed, _ = run(capsys, "twoterm", "crossed-to", str(path))
    assert code == 0 and "crossed T.crossed" in crossed
    (tmp_path / "c.def").write_text(crossed)
    code, back, _ = run(capsys, "twoterm", "crossed-from", str(tmp_path / "c.def"))
    assert code == 0 and "twoterm T" in back


def test_skeletal_construction(capsys, tmp_path):
    path = tmp_path / "s.def"
    path.write_text(Path(FIXTURE).read_text() + 'cochain c3 degree 3 of M1.action\n')
    code, out, _ = run(capsys, "twoterm", "skeletal", "--def", str(path), "--algebra", "Vir",
                       "--action", "M1.action", "--cochain", "c3")
    assert code == 0 and "twoterm T" in out


def test_morphism_commands(capsys, tmp_path):
    chain, (f, g, _) = morphism_fixtures()
    w = Writer()
    for k, T in enumerate(chain[:3]):
        w.twoterm(T, f"T{k}")
    w.morphism(f, chain[0], chain[1], "f")
    w.morphism(g, chain[1], chain[2], "g")
    path = tmp_path / "m.def"
    path.write_text(w.text())
    assert run(capsys, "morphism", "check", str(path), "--name", "f")[0] == 0
    code, out, _ = run(capsys, "morphism", "compose", str(path), "--first", "f", "--second", "g")
    assert code == 0 and "morphism g.f from T0 to T2" in out


def test_omni_commands(capsys):
    assert run(capsys, "omni", "check", "--algebra", "Vir", "--module", "MDelta=2")[0] == 0
    code, out, _ = run(capsys, "omni", "build", "--algebra", "Vir", "--module", "MDelta=1")
    assert code == 0 and "omni E algebra" in out
    assert run(capsys, "omni", "dirac", "--algebra", "Vir")[0] == 0
    assert run(capsys, "omni", "dirac", "--algebra", "Vir", "--flag", "pairing-literal=on")[0] == 1
    code, out, _ = run(capsys, "omni", "dirac", "--algebra", "Q")
    assert code == 1 and "FAIL  closed" in out and "PASS  lie_equivalence" in out


def test_leibniz_commands(capsys):
    code, out, _ = run(capsys, "leibniz", "kernel", "--algebra", "Vir", "--module", "MDelta=1")
    assert code == 0 and "kernel of Vir+M: 2 generators" in out
    code, out, _ = run(capsys, "leibniz", "center", "--algebra", "Vir", "--module", "MDelta=1",
                       "--degree-bound", "2")
    assert "3 generators" in out
    code, out, _ = run(capsys, "leibniz", "two-term", "--algebra", "Vir", "--module", "MDelta=1")
    assert code == 0 and "twoterm T" in out


def test_degree_cap_flag(capsys):
    from conformal_calc.poly import get_degree_cap, set_degree_cap
    old = get_degree_cap()
    try:
        code, _, err = run(capsys, "--max-degree", "1", "check", "algebra", "Vir")
        assert code == 1 and "exceeds cap" in err
    finally:
        set_degree_cap(old)
