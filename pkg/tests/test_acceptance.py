"""Top-level acceptance checks.

Each test records a single `ACn: PASS`/`ACn: FAIL` line (echoed in the
terminal summary via conftest) and then asserts, so a failed criterion is
both visible in the summary and red in the pytest report.
"""

import sys
import time

import mpmath

from arith_selberg.congruence import coset_action, index_hat, make_subgroup
from arith_selberg.verify import (
    suite_example1,
    suite_forms,
    suite_hd,
    suite_lemma24,
    suite_lemma25,
    suite_lemma26,
    suite_pgt_band,
    suite_vz,
)
from arith_selberg.zeta import ZetaConfig, log_deriv, zeta_congruence, zeta_sl2z


def _report(n: int, ok: bool, detail: str = "") -> None:
    line = f"AC{n}: {'PASS' if ok else 'FAIL'}" + (f"  [{detail}]" if detail else "")
    print(line, file=sys.stderr, flush=True)
    import conftest

    conftest.AC_LINES.append(line)


def _first_failure(reports):
    for rep in reports:
        if not rep.passed:
            return rep
    return None


def test_ac1_trace_class_totals():
    start = time.monotonic()
    reports = suite_hd(t=list(range(3, 201)))
    elapsed = time.monotonic() - start
    ok = all(r.passed for r in reports) and elapsed < 60
    _report(1, ok, f"{elapsed:.1f}s")
    assert ok, _first_failure(reports) or f"over budget: {elapsed:.1f}s"


def test_ac2_power_conjugacy_coverage():
    start = time.monotonic()
    reports = suite_lemma26(p=[2, 3, 5, 7], t=list(range(3, 51)))
    elapsed = time.monotonic() - start
    coverage = next(r for r in reports if r.check == "lemma26.nu_classes_power_connected")
    ok = coverage.passed and elapsed < 120
    detail = "" if ok else "nu-classes not power-connected for p | D at p^r, r >= 2"
    _report(2, ok, detail or f"{elapsed:.1f}s")
    assert ok, coverage.counterexample


def test_ac3_prime_level_closed_form():
    start = time.monotonic()
    reports = suite_example1(p=[3, 5, 7, 11], X=30, n_max=10)
    elapsed = time.monotonic() - start
    ok = all(r.passed for r in reports) and elapsed < 60
    _report(3, ok, f"{elapsed:.1f}s")
    assert ok, _first_failure(reports) or f"over budget: {elapsed:.1f}s"


def test_ac4_induced_character_structure():
    reports = suite_vz(N=[6, 10, 12, 15, 16, 18, 20, 24], samples=1000)
    wanted = {"vz.cycle_structure", "vz.char_multiplicative"}
    picked = [r for r in reports if r.check in wanted]
    ok = all(r.passed for r in picked)
    _report(4, ok)
    assert ok, _first_failure(picked)


def test_ac5_cycle_type_nu_invariance():
    reports = suite_lemma24(N=list(range(2, 25)), X=20)
    inv = next(r for r in reports if r.check == "lemma24.cycle_type_nu_invariant")
    cov = next(r for r in reports if r.check == "lemma24.normal_form_coverage")
    ok = inv.passed and cov.passed
    _report(5, ok)
    assert ok, inv.counterexample or cov.counterexample


def test_ac6_equal_nu_parts():
    reports = suite_lemma25(D=None, N=None)  # defaults: D <= 500, N <= 25
    ok = all(r.passed for r in reports)
    _report(6, ok)
    assert ok, _first_failure(reports)


def test_ac7_pgt_band():
    start = time.monotonic()
    reports = suite_pgt_band(x=[200, 500, 1000])
    elapsed = time.monotonic() - start
    ok = all(r.passed for r in reports) and elapsed < 120
    _report(7, ok, f"{elapsed:.1f}s")
    assert ok, _first_failure(reports) or f"over budget: {elapsed:.1f}s"


def test_ac8_projective_kernel_index():
    bad = None
    for n in (2, 3, 4, 5, 6, 8, 9, 12):
        got = len(coset_action(make_subgroup("gammahat", n)))
        if got != index_hat(n):
            bad = {"N": n, "cosets": got, "index_hat": index_hat(n)}
            break
    _report(8, bad is None)
    assert bad is None, bad


def test_ac9_log_deriv_finite_difference():
    cfg = ZetaConfig(unit_bound=20, n_max=30, j_max=60, precision=192)
    groups = [None, make_subgroup("gamma0", 5), make_subgroup("gamma0", 7)]
    h = mpmath.mpf(10) ** -6
    worst = mpmath.mpf(0)
    with mpmath.workprec(240):
        for sub in groups:
            zeta = zeta_sl2z if sub is None else lambda s, c: zeta_congruence(sub, s, c)
            for s in (mpmath.mpf(2), mpmath.mpf("2.5"), mpmath.mpf(3)):
                fd = (
                    mpmath.log(zeta(s + h, cfg).value) - mpmath.log(zeta(s - h, cfg).value)
                ) / (2 * h)
                worst = max(worst, abs(fd - log_deriv(sub, s, cfg).value))
    ok = worst < mpmath.mpf(10) ** -8
    _report(9, ok, f"max deviation {mpmath.nstr(worst, 3)}")
    assert ok, f"finite difference deviates by {worst}"


def test_ac10_class_group_axioms():
    reports = suite_forms(D=None)  # default: all D <= 200
    axioms = next(r for r in reports if r.check == "forms.class_group_axioms")
    ok = axioms.passed
    _report(10, ok)
    assert ok, axioms.counterexample
