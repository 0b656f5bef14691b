import pytest

from arith_selberg.congruence import cycle_type, make_subgroup
from arith_selberg.matrix_corr import HyperbolicMatrix
from arith_selberg.oracles import (
    OracleReport,
    class_count_scan,
    exhaustive_psl_classes,
    p1_action,
    p1_points,
    pell_ascending,
    trace_class_count,
)
from arith_selberg.pell import fundamental_solution, is_discriminant
from arith_selberg.quadforms import class_number


def test_oracle_report_invariant():
    r = OracleReport("x", {}, True, None)
    assert '"passed": true' in r.to_json()
    with pytest.raises(AssertionError):
        OracleReport("x", {}, False, None)  # failure needs a counterexample
    with pytest.raises(AssertionError):
        OracleReport("x", {}, True, {"spurious": 1})


def test_pell_ascending():
    s = pell_ascending(5)
    assert (s.t, s.u) == (3, 1)
    assert pell_ascending(13, bound=2) is None  # u1 = 3 exceeds the scan bound
    with pytest.raises(ValueError):
        pell_ascending(7)


def test_pell_ascending_agrees_with_fast_path():
    for D in range(5, 120):
        if not is_discriminant(D):
            continue
        o = pell_ascending(D)
        if o is None:  # u1 above the scan bound (large-regulator D, e.g. 97)
            continue
        f = fundamental_solution(D)
        assert (o.t, o.u) == (f.t, f.u)


def test_class_count_scan_agrees():
    for D in (5, 8, 12, 13, 17, 21, 40, 60, 145, 229):
        assert class_count_scan(D) == class_number(D)


def test_trace_class_count_examples():
    assert trace_class_count(3) == {(1, 5): 1}
    assert trace_class_count(4) == {(1, 12): 2}
    assert trace_class_count(6) == {(1, 32): 2, (2, 8): 1}
    with pytest.raises(ValueError):
        trace_class_count(2)


def test_p1_points_and_action():
    assert len(p1_points(5)) == 6
    perm = p1_action(5, (2, 1, 1, 1))
    assert sorted(perm) == list(range(6))
    assert sum(1 for i, j in enumerate(perm) if i == j) == 1
    with pytest.raises(ValueError):
        p1_action(5, (5, 0, 0, 5))  # singular mod 5


def test_p1_action_matches_coset_action():
    from arith_selberg.congruence import CycleType

    g = HyperbolicMatrix(2, 1, 1, 1)
    for p in (3, 5, 7):
        sub = make_subgroup("gamma0", p)
        assert cycle_type(sub, g) == CycleType.from_permutation(p1_action(p, g))


def test_exhaustive_psl_classes():
    classes = exhaustive_psl_classes(2)
    assert len(classes) == 3
    sizes = sorted(len(c) for c in classes)
    assert sum(sizes) == 6
    with pytest.raises(ValueError):
        exhaustive_psl_classes(120)  # group order above the scan bound
