from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arith_selberg.pell import (
    PellSolution,
    _unit_below,
    discriminants_by_unit,
    epsilon,
    fundamental_solution,
    is_discriminant,
    pell_identity,
    pell_mul,
    pell_power,
    square_divisor_parts,
)

DISCRIMINANTS = [D for D in range(5, 400) if is_discriminant(D)]


def test_is_discriminant():
    assert is_discriminant(5)
    assert is_discriminant(12)
    assert not is_discriminant(16)  # square
    assert not is_discriminant(7)  # 3 mod 4
    assert not is_discriminant(-4)
    assert not is_discriminant(0)


@pytest.mark.parametrize(
    "D,expected",
    [(5, (3, 1)), (8, (6, 2)), (12, (4, 1)), (13, (11, 3)), (17, (66, 16)), (21, (5, 1))],
)
def test_fundamental_solution(D, expected):
    s = fundamental_solution(D)
    assert (s.t, s.u) == expected


def test_fundamental_solution_rejects_bad_input():
    for D in (7, 16, 0, -4, 1):
        with pytest.raises(ValueError):
            fundamental_solution(D)


def test_solution_constructor_validates():
    with pytest.raises(ValueError):
        PellSolution(3, 2, 5)
    with pytest.raises(ValueError):
        PellSolution(-3, 1, 5)  # wrong branch


def test_pell_power():
    assert (pell_power(12, 2).t, pell_power(12, 2).u) == (14, 4)
    assert (pell_power(12, 3).t, pell_power(12, 3).u) == (52, 15)
    ident = pell_power(12, 0)
    assert ident.is_identity


def test_identity_is_neutral():
    f = fundamental_solution(8)
    assert pell_mul(f, pell_identity(8)) == f


def test_mul_discriminant_mismatch():
    with pytest.raises(ValueError):
        pell_mul(fundamental_solution(5), fundamental_solution(8))


@given(st.sampled_from(DISCRIMINANTS), st.integers(1, 8), st.integers(1, 8))
@settings(max_examples=60, deadline=None)
def test_power_homomorphism(D, j, k):
    assert pell_mul(pell_power(D, j), pell_power(D, k)) == pell_power(D, j + k)


@given(st.sampled_from(DISCRIMINANTS), st.integers(1, 6))
@settings(max_examples=40, deadline=None)
def test_powers_solve_the_equation(D, j):
    s = pell_power(D, j)
    assert s.t * s.t - D * s.u * s.u == 4


def test_epsilon_value():
    uv = epsilon(5)
    assert abs(uv.real_view - 2.618033988749895) < 1e-12
    assert abs(uv.log_view - 0.9624236501192069) < 1e-12
    with pytest.raises(ValueError):
        epsilon(5, precision=32)


def test_unit_below_is_exact():
    # eps(5) = 2.6180...; the cut at the exact value must be strict
    assert _unit_below(3, Fraction(27, 10))
    assert not _unit_below(3, Fraction(26, 10))
    assert not _unit_below(3, Fraction(2))


def test_square_divisor_parts():
    assert list(square_divisor_parts(32)) == [(1, 32), (2, 8), (4, 2)]


def test_enumeration_small():
    assert [(D, (s.t, s.u)) for D, s in discriminants_by_unit(4)] == [
        (5, (3, 1)),
        (12, (4, 1)),
    ]
    with pytest.raises(ValueError):
        discriminants_by_unit(1)


def test_enumeration_sorted_and_fundamental():
    rows = discriminants_by_unit(50)
    # eps is determined by the trace alone, so ascending eps means ascending t
    traces = [s.t for _, s in rows]
    assert traces == sorted(traces)
    assert len({D for D, _ in rows}) == len(rows)
    for D, s in rows:
        f = fundamental_solution(D)
        assert (f.t, f.u) == (s.t, s.u)
