import random

import mpmath
import pytest

from arith_selberg.congruence import CycleType, make_subgroup
from arith_selberg.zeta import (
    DivergenceError,
    ZetaConfig,
    build_spectral_table,
    classnum_sum,
    gamma0p_case,
    gamma0p_closed_form,
    h_poly,
    li,
    log_deriv,
    prim_geodesic_count,
    zeta_congruence,
    zeta_sl2z,
)


def test_config_validation():
    with pytest.raises(ValueError):
        ZetaConfig(unit_bound=1)
    with pytest.raises(ValueError):
        ZetaConfig(unit_bound=3, n_max=-1)
    with pytest.raises(ValueError):
        ZetaConfig(unit_bound=3, j_max=0)


def test_empty_product_is_one():
    # no discriminant has unit below 2 (the smallest is (3 + sqrt(5))/2)
    v = zeta_sl2z(2, ZetaConfig(unit_bound=2))
    assert v.value == 1


def test_single_discriminant_value():
    v = zeta_sl2z(2, ZetaConfig(unit_bound=3, n_max=0))
    assert abs(v.value - mpmath.mpf("0.9787137637477918")) < 1e-15
    assert v.heuristic_tail


def test_log_deriv_single_term_values():
    v1 = log_deriv(None, 2, ZetaConfig(unit_bound=3, n_max=0, j_max=1))
    assert abs(v1.value - mpmath.mpf("0.047971736398417540")) < 1e-15
    v60 = log_deriv(None, 2, ZetaConfig(unit_bound=3, n_max=0, j_max=60))
    assert abs(v60.value - mpmath.mpf("0.048881887512611800")) < 1e-15


def test_divergence_error():
    cfg = ZetaConfig(unit_bound=5)
    for s in (1, 0.5, mpmath.mpc(1, 3)):
        with pytest.raises(DivergenceError):
            zeta_sl2z(s, cfg)
        with pytest.raises(DivergenceError):
            log_deriv(None, s, cfg)


def test_h_poly_example():
    assert h_poly(0.5, CycleType.from_lengths([1, 2])) == 0.375
    assert h_poly(0.0, CycleType.from_lengths([3, 3, 1])) == 1


def test_h_poly_equals_permutation_determinant():
    rng = random.Random(7)
    with mpmath.workprec(80):
        for _ in range(25):
            n = rng.randint(2, 8)
            perm = list(range(n))
            rng.shuffle(perm)
            ct = CycleType.from_permutation(tuple(perm))
            x = mpmath.mpf(rng.random()) * mpmath.mpf("0.9")
            mat = mpmath.zeros(n)
            for i in range(n):
                mat[i, i] = 1
                mat[i, perm[i]] -= x
            assert abs(mpmath.det(mat) - h_poly(x, ct)) < mpmath.mpf(10) ** -18


def test_full_level_matches_sl2z():
    cfg = ZetaConfig(unit_bound=8, n_max=5)
    sub = make_subgroup("full", 7)
    a = zeta_sl2z(2.5, cfg).value
    b = zeta_congruence(sub, 2.5, cfg).value
    assert abs(a - b) <= abs(b) * 1e-14


def test_zeta_monotone_in_truncation():
    # enlarging X multiplies in more factors < 1, so the value decreases
    vals = [zeta_sl2z(2, ZetaConfig(unit_bound=X)).value for X in (3, 6, 10, 15)]
    assert all(vals[i + 1] < vals[i] for i in range(len(vals) - 1))
    assert all(0 < v <= 1 for v in vals)


def test_spectral_table_is_sorted():
    table = build_spectral_table(None, ZetaConfig(unit_bound=12))
    eps = [rec.eps for rec in table]
    assert eps == sorted(eps)
    assert {rec.D for rec in table} == {5, 8, 12, 13, 21, 24, 32, 45, 60, 77, 96, 117, 140}


def test_gamma0p_case_degree_and_consistency():
    for p in (3, 5, 7):
        for D in (5, 8, 12, 13, 21, 24, 28, 60):
            ct = gamma0p_case(D, p)
            assert ct.degree == p + 1


def test_gamma0p_closed_form_matches_cosets():
    cfg = ZetaConfig(unit_bound=12, n_max=5)
    for p in (3, 5):
        sub = make_subgroup("gamma0", p)
        a = zeta_congruence(sub, 2, cfg).value
        b = gamma0p_closed_form(p, 2, cfg).value
        assert abs(a - b) <= abs(b) * 1e-14
    with pytest.raises(ValueError):
        gamma0p_closed_form(4, 2, cfg)
    with pytest.raises(ValueError):
        gamma0p_closed_form(2, 2, cfg)


def test_log_deriv_is_derivative_of_log_zeta():
    cfg = ZetaConfig(unit_bound=8, n_max=25, j_max=80, precision=160)
    h = mpmath.mpf(10) ** -8
    with mpmath.workprec(200):
        for s in (mpmath.mpf(2), mpmath.mpf("2.5")):
            fd = (
                mpmath.log(zeta_sl2z(s + h, cfg).value)
                - mpmath.log(zeta_sl2z(s - h, cfg).value)
            ) / (2 * h)
            assert abs(fd - log_deriv(None, s, cfg).value) < 1e-9


def test_prim_geodesic_count_full():
    assert prim_geodesic_count(None, 7) == 1  # eps(5)^2 = 6.854...
    assert prim_geodesic_count(None, 6) == 0
    assert prim_geodesic_count(None, 1) == 0


def test_prim_geodesic_count_matches_classnum_sum():
    # at full level, norms below x correspond to units below sqrt(x)
    for x in (50, 200):
        assert prim_geodesic_count(None, x * x) == classnum_sum(x)


def test_prim_geodesic_count_congruence_lifting():
    # each length-m cycle over a base class lifts to one class of norm eps^(2m);
    # long cycles push norms past the cutoff, so counts can drop below full level
    sub = make_subgroup("gamma0", 5)
    assert prim_geodesic_count(sub, 7) == 1
    assert prim_geodesic_count(sub, 50) == 7
    assert prim_geodesic_count(None, 50) == 10
    counts = [prim_geodesic_count(sub, x) for x in (50, 500, 3000)]
    assert counts == sorted(counts)


def test_classnum_sum_values():
    assert classnum_sum(2) == 0
    assert classnum_sum(3) == 1
    assert classnum_sum(4) == 3


def test_li_values():
    assert li(2) == 0
    assert abs(li(10**6) - mpmath.mpf("78626.503995")) < 1e-3
    with pytest.raises(ValueError):
        li(1.5)
