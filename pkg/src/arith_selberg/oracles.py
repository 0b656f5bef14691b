"""Independent brute-force reference implementations.

Everything here deliberately duplicates main-path logic with a different
algorithm (exhaustive window scan instead of the divisor walk, ascending-u
scan instead of continued fractions, projective-line action instead of coset
tables).  Used only by tests and the `verify` command.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .pell import PellSolution, is_discriminant


@dataclass(frozen=True)
class OracleReport:
    check: str
    params: dict = field(compare=False)
    passed: bool = True
    counterexample: object = None

    def __post_init__(self):
        assert (self.counterexample is not None) == (not self.passed)

    def to_json(self) -> str:
        return json.dumps(
            {
                "check": self.check,
                "params": self.params,
                "passed": self.passed,
                "counterexample": self.counterexample,
            },
            sort_keys=True,
        )


def pell_ascending(D: int, bound: int = 10**6) -> PellSolution | None:
    """Smallest-u solution of t^2 - D u^2 = 4 by direct scan over u."""
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a valid discriminant")
    for u in range(1, bound + 1):
        tt = 4 + D * u * u
        t = math.isqrt(tt)
        if t * t == tt:
            return PellSolution(t, u, D)
    return None


def _oracle_reduced(a: int, b: int, c: int, D: int) -> bool:
    if b <= 0 or b * b >= D:
        return False
    lo, hi = 2 * abs(a) - b, 2 * abs(a) + b
    return hi * hi > D and (lo <= 0 or lo * lo < D)


def _oracle_step(a: int, b: int, c: int, D: int) -> tuple[int, int, int]:
    # right neighbor of a reduced form: same walk, written from scratch
    s = math.isqrt(D)
    bp = s - ((s + b) % (2 * abs(c)))
    return c, bp, (bp * bp - D) // (4 * c)


def _oracle_all_reduced(D: int) -> set[tuple[int, int, int]]:
    """Every primitive reduced form of discriminant D, by scanning the (a, b)
    window directly and solving for c."""
    s = math.isqrt(D)
    found = set()
    for a in range(-s, s + 1):
        if a == 0:
            continue
        for b in range(1, s + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c == 0 or math.gcd(a, math.gcd(b, c)) != 1:
                continue
            if _oracle_reduced(a, b, c, D):
                found.add((a, b, c))
    return found


def class_count_scan(D: int) -> int:
    """Number of reduction cycles among all primitive reduced forms, computed
    independently of the quadforms module."""
    remaining = _oracle_all_reduced(D)
    cycles = 0
    while remaining:
        start = next(iter(remaining))
        cur = start
        while True:
            remaining.discard(cur)
            cur = _oracle_step(*cur, D)
            if cur == start:
                break
        cycles += 1
    return cycles


def trace_class_count(t: int) -> dict[tuple[int, int], int]:
    """For each u with u^2 | t^2 - 4 and D = (t^2-4)/u^2 a valid discriminant,
    the number of conjugacy classes with invariants (t, u)."""
    if t <= 2:
        raise ValueError("trace must be at least 3")
    out = {}
    n = t * t - 4
    for u in range(1, math.isqrt(n) + 1):
        if n % (u * u):
            continue
        D = n // (u * u)
        if is_discriminant(D):
            out[(u, D)] = class_count_scan(D)
    return out


def p1_points(p: int) -> list[tuple[int, int]]:
    """P^1(F_p) as [x : 1] for x in F_p followed by [1 : 0]."""
    return [(x, 1) for x in range(p)] + [(1, 0)]


def _p1_normalize(x: int, y: int, p: int) -> tuple[int, int]:
    if y % p:
        return (x * pow(y, -1, p) % p, 1)
    return (1, 0)


def p1_action(p: int, gamma) -> tuple[int, ...]:
    """Right action of gamma on P^1(F_p) row vectors, as a permutation of the
    point indices of p1_points(p)."""
    entries = gamma.entries() if hasattr(gamma, "entries") else tuple(gamma)
    a, b, c, d = (e % p for e in entries)
    if (a * d - b * c) % p == 0:
        raise ValueError("matrix is singular mod p")
    pts = p1_points(p)
    index = {pt: i for i, pt in enumerate(pts)}
    return tuple(
        index[_p1_normalize(x * a + y * c, x * b + y * d, p)] for (x, y) in pts
    )


def exhaustive_psl_classes(N: int) -> list[frozenset]:
    """Full conjugacy partition of PSL2(Z/NZ) by scanning every conjugator."""
    from .congruence import _CONJ_BOUND, _minv, _mmul, psl_canon, sl2_elements, sl2_order

    if sl2_order(N) > _CONJ_BOUND:
        raise ValueError(f"group order {sl2_order(N)} exceeds bound {_CONJ_BOUND}")
    elements = sl2_elements(N)
    canon = sorted({psl_canon(m, N) for m in elements})
    assigned = {}
    classes = []
    for m in canon:
        if m in assigned:
            continue
        orbit = {psl_canon(_mmul(_minv(g, N), _mmul(m, g, N), N), N) for g in elements}
        cid = len(classes)
        classes.append(frozenset(orbit))
        for x in orbit:
            assigned[x] = cid
    return classes
