"""Exact solutions of t^2 - D*u^2 = 4, their group law, and fundamental units.

Solutions (t, u) with t > 2, u > 0 correspond to units (t + u*sqrt(D))/2 > 1
of norm +1 in the quadratic order of discriminant D.  Only the positive
branch is represented; the identity is (2, 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

DEFAULT_PRECISION = 128


def is_discriminant(n: int) -> bool:
    """True iff n is a positive non-square integer with n = 0 or 1 mod 4."""
    if n <= 0 or n % 4 not in (0, 1):
        return False
    return math.isqrt(n) ** 2 != n


def _require_discriminant(D: int) -> None:
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a valid discriminant (positive, non-square, 0 or 1 mod 4)")


@dataclass(frozen=True)
class PellSolution:
    """A solution of t^2 - D*u^2 = 4, normalized to t > 2, u > 0 (or the identity (2, 0))."""

    t: int
    u: int
    D: int

    def __post_init__(self):
        if self.t * self.t - self.D * self.u * self.u != 4:
            raise ValueError(f"({self.t}, {self.u}) does not solve t^2 - {self.D}*u^2 = 4")
        if not (self.t > 2 and self.u > 0) and (self.t, self.u) != (2, 0):
            raise ValueError(f"({self.t}, {self.u}) is not on the positive branch")

    @property
    def is_identity(self) -> bool:
        return self.u == 0


def pell_identity(D: int) -> PellSolution:
    return PellSolution(2, 0, D)


def pell_mul(s1: PellSolution, s2: PellSolution) -> PellSolution:
    """Group law: the product corresponds to multiplying (t + u*sqrt(D))/2 factors."""
    if s1.D != s2.D:
        raise ValueError(f"discriminant mismatch: {s1.D} != {s2.D}")
    tt = s1.t * s2.t + s1.u * s2.u * s1.D
    uu = s1.t * s2.u + s2.t * s1.u
    assert tt % 2 == 0 and uu % 2 == 0
    return PellSolution(tt // 2, uu // 2, s1.D)


def _pell_one(d: int) -> tuple[int, int]:
    """Minimal (x, y) with x, y > 0 and x^2 - d*y^2 = 1, via the continued
    fraction of sqrt(d).  d must be positive and non-square."""
    a0 = math.isqrt(d)
    m, q, a = 0, 1, a0
    h0, h1 = a0, 1
    k0, k1 = 1, 0
    while h0 * h0 - d * k0 * k0 != 1:
        m = a * q - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        h0, h1 = a * h0 + h1, h0
        k0, k1 = a * k0 + k1, k0
    return h0, k0


def _automorph_solution(D: int) -> PellSolution:
    """Fundamental solution from one period of the principal reduction cycle.

    Each right-neighbor step [a,b,c] -> [c,b',c'] is the substitution
    [[0,-1],[1,m]] with m = (b+b')/(2c); the product over one period is the
    fundamental automorph [[(t-bu)/2, -cu],[au, (t+bu)/2]] of the starting
    form, giving (t, u) directly.
    """
    s = math.isqrt(D)

    def is_red(a: int, b: int, c: int) -> bool:
        if b <= 0 or b * b >= D:
            return False
        twoa = 2 * abs(a)
        if (twoa + b) ** 2 <= D:
            return False
        return not (twoa - b > 0 and (twoa - b) ** 2 >= D)

    def step(a: int, b: int, c: int) -> tuple[int, int, int]:
        ac = abs(c)
        if ac > s:
            bp = (-b) % (2 * ac)
            if bp > ac:
                bp -= 2 * ac
        else:
            bp = s - ((s + b) % (2 * ac))
        return c, bp, (bp * bp - D) // (4 * c)

    delta = D % 2
    a, b, c = 1, delta, (delta * delta - D) // 4
    while not is_red(a, b, c):
        a, b, c = step(a, b, c)
    start = (a, b, c)
    g11, g12, g21, g22 = 1, 0, 0, 1
    while True:
        a2, b2, c2 = step(a, b, c)
        m = (b + b2) // (2 * c)
        g11, g12 = g12, -g11 + m * g12
        g21, g22 = g22, -g21 + m * g22
        a, b, c = a2, b2, c2
        if (a, b, c) == start:
            break
    t = g11 + g22
    u = g21 // start[0]
    return PellSolution(abs(t), abs(u), D)


def fundamental_solution(D: int) -> PellSolution:
    """The minimal nontrivial solution (t1, u1), t1 > 2, u1 > 0.

    D = 0 mod 4 reduces to x^2 - (D/4)y^2 = 1 by continued fractions; odd D
    uses the principal-cycle automorph, which also finds the solutions with
    t, u both odd (possible only for D = 5 mod 8).
    """
    _require_discriminant(D)
    if D % 4 == 0:
        x, y = _pell_one(D // 4)
        return PellSolution(2 * x, y, D)
    return _automorph_solution(D)


def pell_power(D: int, j: int) -> PellSolution:
    """Coefficients of eps(D)^j = (t_j + u_j*sqrt(D))/2; j = 0 gives the identity."""
    if j < 0:
        raise ValueError("exponent must be nonnegative")
    result = pell_identity(D)
    if j == 0:
        return result
    base = fundamental_solution(D)
    while j:
        if j & 1:
            result = pell_mul(result, base)
        j >>= 1
        if j:
            base = pell_mul(base, base)
    return result


@dataclass(frozen=True)
class UnitValue:
    """Exact (t, u) of a Pell solution together with high-precision views of
    the unit (t + u*sqrt(D))/2 and its logarithm."""

    t: int
    u: int
    D: int
    real_view: mpmath.mpf
    log_view: mpmath.mpf
    precision: int


def epsilon(D: int, precision: int = DEFAULT_PRECISION) -> UnitValue:
    """The fundamental unit eps(D) = (t1 + u1*sqrt(D))/2 at the given bit precision."""
    if precision < 64:
        raise ValueError("precision must be at least 64 bits")
    s = fundamental_solution(D)
    with mpmath.workprec(precision + 16):
        real = (s.t + s.u * mpmath.sqrt(D)) / 2
        logv = mpmath.log(real)
    return UnitValue(s.t, s.u, D, real, logv, precision)


def unit_of(s: PellSolution, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """High-precision value of (t + u*sqrt(D))/2 for an arbitrary solution."""
    with mpmath.workprec(precision + 16):
        return (s.t + s.u * mpmath.sqrt(s.D)) / 2


def _unit_below(t: int, X: Fraction) -> bool:
    """Exact test (t + sqrt(t^2 - 4))/2 < X for integer trace t >= 3."""
    if 2 * X <= t:
        return False
    rhs = 2 * X - t
    return t * t - 4 < rhs * rhs


def square_divisor_parts(n: int):
    """All u >= 1 with u^2 | n, paired with n // u^2."""
    u = 1
    while u * u <= n:
        if n % (u * u) == 0:
            yield u, n // (u * u)
        u += 1


def discriminants_by_unit(X) -> list[tuple[int, PellSolution]]:
    """All D with eps(D) < X, each with its fundamental solution, ordered by eps(D).

    Enumeration is by trace t (eps is determined by t alone); the first t
    producing a given D yields its fundamental solution, later traces for the
    same D are powers and get discarded.
    """
    Xq = Fraction(X)
    if Xq <= 1:
        raise ValueError("bound must exceed 1")
    out = []
    seen = set()
    t = 3
    while _unit_below(t, Xq):
        per_trace = []
        for u, D in square_divisor_parts(t * t - 4):
            if D in seen or not is_discriminant(D):
                continue
            seen.add(D)
            per_trace.append((D, PellSolution(t, u, D)))
        per_trace.sort()
        out.extend(per_trace)
        t += 1
    return out
