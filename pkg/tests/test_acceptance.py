"""The eleven acceptance criteria, one test each, with their time bounds.

Each test prints a single PASS/FAIL line; the lines are repeated in the
terminal summary of a normal pytest run.
"""
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from conformal_calc import selftest as st
from conformal_calc.calg import check_module_axioms, m_delta, virasoro
from conformal_calc.cmod import L1, L2, PD
from conformal_calc.omni import build_omni, jtilde, omni_two_term
from conformal_calc.poly import Poly
from conformal_calc.twoterm import check_2term

from conftest import ACCEPTANCE_LINES

BOUNDS = {1: 0.1, 2: 1.0, 3: 0.1, 4: 0.4, 5: 10.0, 6: 2.0, 7: 2.0, 8: 5.0, 9: 2.0, 10: 2.0}


def _record(n: int, ok: bool, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)


@pytest.mark.parametrize("n", sorted(BOUNDS))
def test_criterion(n):
    crit = st.CRITERIA[n - 1]
    t = time.perf_counter()
    rep = crit()
    dt = time.perf_counter() - t
    ok = rep.passed and dt < BOUNDS[n]
    _record(n, ok, f"{rep.subject} ({len(rep.checks)} checks, {dt:.3f}s < {BOUNDS[n]}s)")
    assert rep.passed, rep.render()
    assert dt < BOUNDS[n]


def test_criterion_4_per_weight_bound():
    V = virasoro()
    for delta in st.DELTAS:
        t = time.perf_counter()
        assert check_module_axioms(m_delta(delta, V)).passed
        assert time.perf_counter() - t < 0.1


def test_criterion_5_suite_size():
    rep = st.criterion_5()
    assert "128 random cochains" in rep["delta-squared"].note


def test_criterion_6_residual_shape():
    # with l3 = 0 the (g) residual at (L, L, v) is -J(L, L, v) = 1/4 (L1 - L2)(D + L1 + L2) v
    V = virasoro()
    O = build_omni(V, m_delta(1, V))
    T = omni_two_term(V, O.action, O=O)
    w = check_2term(T.with_l3({}))["g"].witness
    L, v = O.E.gens()
    shape = (Poly.var(L1) - Poly.var(L2)) * (PD + Poly.var(L1) + Poly.var(L2))
    assert w.tuple == ("L", "L", "v")
    assert w.residual == shape.scale(Fraction(1, 4)) * T.V0.gen(1)
    assert jtilde(O, L, L, v) == -w.residual


def test_criterion_11_determinism():
    t = time.perf_counter()
    first = subprocess.run([sys.executable, "-m", "conformal_calc.cli", "selftest"], capture_output=True)
    dt = time.perf_counter() - t
    second = subprocess.run([sys.executable, "-m", "conformal_calc.cli", "selftest"], capture_output=True)
    same = first.stdout == second.stdout
    total = first.stdout.decode().strip().splitlines()[-1]
    ok = same and first.returncode == 0 and second.returncode == 0 and dt < 60
    _record(11, ok, f"selftest twice byte-identical={same}, {total}, {dt:.2f}s < 60s")
    assert same
    assert first.returncode == second.returncode == 0
    assert dt < 60
    assert st.render(st.selftest()) == st.render(st.selftest())
