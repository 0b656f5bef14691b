"""Bijection between hyperbolic SL2(Z) conjugacy data and (form class, Pell solution).

gamma_of builds the matrix attached to a form and a Pell solution; invariants_of
recovers (t, u, Q, D) from a hyperbolic matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .pell import PellSolution, is_discriminant
from .quadforms import QuadForm, class_representatives


@dataclass(frozen=True)
class HyperbolicMatrix:
    g11: int
    g12: int
    g21: int
    g22: int

    def __post_init__(self):
        if self.g11 * self.g22 - self.g12 * self.g21 != 1:
            raise ValueError("determinant must be 1")
        if abs(self.g11 + self.g22) <= 2:
            raise ValueError(f"trace {self.g11 + self.g22} is not hyperbolic")

    @property
    def trace(self) -> int:
        return self.g11 + self.g22

    def entries(self) -> tuple[int, int, int, int]:
        return (self.g11, self.g12, self.g21, self.g22)

    def __mul__(self, other: "HyperbolicMatrix") -> "HyperbolicMatrix":
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return HyperbolicMatrix(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def power(self, k: int) -> "HyperbolicMatrix":
        if k < 1:
            raise ValueError("exponent must be positive")
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result


@dataclass(frozen=True)
class ClassInvariant:
    t: int
    u: int
    Q: QuadForm
    D: int


def gamma_of(Q: QuadForm, s: PellSolution) -> HyperbolicMatrix:
    """[[ (t+bu)/2, -cu ], [ au, (t-bu)/2 ]] for (t, u) a nontrivial solution."""
    if Q.discriminant != s.D:
        raise ValueError(f"form discriminant {Q.discriminant} != solution discriminant {s.D}")
    if s.u == 0:
        raise ValueError("trivial Pell solution (2, 0) is excluded")
    t, u = s.t, s.u
    assert (t + Q.b * u) % 2 == 0
    return HyperbolicMatrix((t + Q.b * u) // 2, -Q.c * u, Q.a * u, (t - Q.b * u) // 2)


def invariants_of(g: HyperbolicMatrix) -> ClassInvariant:
    """Recover (t, u, Q, D); g is first normalized to positive trace."""
    g11, g12, g21, g22 = g.entries()
    if g11 + g22 < 0:
        g11, g12, g21, g22 = -g11, -g12, -g21, -g22
    t = g11 + g22
    u = math.gcd(g21, math.gcd(g11 - g22, g12))
    assert u > 0, "hyperbolic matrices have a nonzero off-diagonal triple"
    Q = QuadForm(g21 // u, (g11 - g22) // u, -g12 // u)
    D = (t * t - 4) // (u * u)
    assert D == Q.discriminant
    return ClassInvariant(t, u, Q, D)


def class_list(t: int, u: int) -> list[HyperbolicMatrix]:
    """One matrix per SL2(Z)-conjugacy class with invariants (t, u): exactly
    gamma_of over the class representatives of D = (t^2 - 4)/u^2."""
    if u <= 0 or (t * t - 4) % (u * u) != 0:
        raise ValueError(f"({t}, {u}) does not define a discriminant")
    D = (t * t - 4) // (u * u)
    if not is_discriminant(D):
        raise ValueError(f"D = {D} is not a valid discriminant")
    sol = PellSolution(t, u, D)
    return [gamma_of(Q, sol) for Q in class_representatives(D)]
