"""Primitive indefinite binary quadratic forms over Z.

Reduction, proper (narrow) equivalence via reduction cycles, class numbers,
and Gauss composition.  A form [a, b, c] is a*x^2 + b*x*y + c*y^2 with
positive non-square discriminant b^2 - 4*a*c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .pell import is_discriminant


@dataclass(frozen=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def coefficients(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y


def discriminant(Q: QuadForm) -> int:
    return Q.discriminant


def _require_valid(Q: QuadForm) -> int:
    D = Q.discriminant
    if not is_discriminant(D):
        raise ValueError(f"form {Q.coefficients()} has invalid discriminant {D}")
    if math.gcd(Q.a, math.gcd(Q.b, Q.c)) != 1:
        raise ValueError(f"form {Q.coefficients()} is not primitive")
    if Q.a == 0 or Q.c == 0:
        raise ValueError("outer coefficients must be nonzero")
    return D


def is_reduced(Q: QuadForm) -> bool:
    """Reduced window: 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b."""
    D = Q.discriminant
    if D <= 0 or Q.b <= 0 or Q.b * Q.b >= D:
        return False
    twoa = 2 * abs(Q.a)
    if (twoa + Q.b) ** 2 <= D:
        return False
    if twoa - Q.b > 0 and (twoa - Q.b) ** 2 >= D:
        return False
    return True


def _rho(Q: QuadForm) -> QuadForm:
    """One right-neighbor step [a,b,c] -> [c,b',c']; drives any form to a
    reduced one and walks the cycle once reduced."""
    D = Q.discriminant
    s = math.isqrt(D)
    a, b, c = Q.a, Q.b, Q.c
    ac = abs(c)
    if ac > s:
        # choose b' = -b mod 2|c| in (-|c|, |c|]
        bp = (-b) % (2 * ac)
        if bp > ac:
            bp -= 2 * ac
    else:
        # choose b' = -b mod 2|c| in (s - 2|c|, s]
        bp = s - ((s + b) % (2 * ac))
    cp = (bp * bp - D) // (4 * c)
    return QuadForm(c, bp, cp)


def reduce_form(Q: QuadForm) -> QuadForm:
    """A reduced form properly equivalent to Q."""
    _require_valid(Q)
    while not is_reduced(Q):
        Q = _rho(Q)
    return Q


def reduction_cycle(Q: QuadForm) -> list[QuadForm]:
    """The full cycle of reduced forms through reduce_form(Q)."""
    start = reduce_form(Q)
    cycle = [start]
    cur = _rho(start)
    while cur != start:
        cycle.append(cur)
        cur = _rho(cur)
    return cycle


def equivalent(Q1: QuadForm, Q2: QuadForm) -> bool:
    """Proper (narrow, SL2(Z)) equivalence."""
    if Q1.discriminant != Q2.discriminant:
        raise ValueError("discriminant mismatch")
    target = reduce_form(Q2)
    return target in reduction_cycle(Q1)


# smallest-prime-factor sieve, grown on demand, for divisor enumeration
_spf: list[int] = [0, 1]


def _grow_spf(limit: int) -> None:
    global _spf
    if len(_spf) > limit:
        return
    limit = max(limit + 1, 2 * len(_spf), 1 << 12)
    spf = list(range(limit))
    for p in range(2, math.isqrt(limit - 1) + 1):
        if spf[p] == p:
            for m in range(p * p, limit, p):
                if spf[m] == m:
                    spf[m] = p
    _spf = spf


def _divisors(n: int) -> list[int]:
    if n >= len(_spf):
        _grow_spf(n)
    divs = [1]
    while n > 1:
        p = _spf[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def _reduced_forms(D: int) -> list[QuadForm]:
    """All reduced primitive forms of discriminant D."""
    s = math.isqrt(D)
    forms = []
    for b in range(2 - (D % 2), s + 1, 2):
        m = (D - b * b) // 4  # = -a*c > 0
        for e in _divisors(m):
            # window: sqrt(D) - b < 2e < sqrt(D) + b
            if (2 * e + b) ** 2 <= D:
                continue
            if 2 * e - b > 0 and (2 * e - b) ** 2 >= D:
                continue
            f = m // e
            if math.gcd(e, math.gcd(b, f)) != 1:
                continue
            forms.append(QuadForm(e, b, -f))
            forms.append(QuadForm(-e, b, f))
    return forms


@lru_cache(maxsize=None)
def _class_cycles(D: int) -> tuple[tuple[QuadForm, ...], ...]:
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a valid discriminant")
    remaining = set(_reduced_forms(D))
    cycles = []
    while remaining:
        seed = min(remaining, key=QuadForm.coefficients)
        cyc = reduction_cycle(seed)
        cycles.append(tuple(cyc))
        remaining.difference_update(cyc)
    cycles.sort(key=lambda cyc: min(f.coefficients() for f in cyc))
    return tuple(cycles)


def class_number(D: int) -> int:
    """Narrow class number h(D): the number of reduction cycles."""
    return len(_class_cycles(D))


def class_representatives(D: int) -> list[QuadForm]:
    """One reduced representative per class: the lexicographically minimal
    cycle element, classes ordered by that element."""
    return [min(cyc, key=QuadForm.coefficients) for cyc in _class_cycles(D)]


def identity_form(D: int) -> QuadForm:
    """The principal form [1, delta, (delta^2 - D)/4] with delta = D mod 2."""
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a valid discriminant")
    delta = D % 2
    return QuadForm(1, delta, (delta * delta - D) // 4)


def inverse_class(Q: QuadForm) -> QuadForm:
    """[a, -b, c] represents the inverse class."""
    return QuadForm(Q.a, -Q.b, Q.c)


def _ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    """(g, s, t) with s*x + t*y = g = gcd(x, y) >= 0."""
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _compose_raw(Q1: QuadForm, Q2: QuadForm) -> QuadForm | None:
    """General composition on the given representatives, or None if the
    middle-coefficient congruence fails for this pair."""
    D = Q1.discriminant
    a1, b1, c1 = Q1.coefficients()
    a2, b2, c2 = Q2.coefficients()
    s = (b1 + b2) // 2
    g1, x1, x2 = _ext_gcd(a1, a2)
    beta, y1, w = _ext_gcd(g1, s)
    v1, v2 = x1 * y1, x2 * y1  # v1*a1 + v2*a2 + w*s = beta
    A = a1 * a2 // (beta * beta)
    # (b1*b2 + D)/2 = b1*s - 2*a1*c1, divisible by beta
    half = b1 * s - 2 * a1 * c1
    B = v1 * (a1 // beta) * b2 + v2 * (a2 // beta) * b1 + w * (half // beta)
    if (B * B - D) % (4 * A) != 0:
        return None
    C = (B * B - D) // (4 * A)
    # normalize B into (-|2A|, |2A|] for determinism
    twoA = 2 * abs(A)
    Bn = B % twoA
    if Bn > abs(A):
        Bn -= twoA
    Cn = (Bn * Bn - D) // (4 * A)
    return QuadForm(A, Bn, Cn)


def compose(Q1: QuadForm, Q2: QuadForm) -> QuadForm:
    """Gauss composition; the class of the result depends only on the classes
    of the inputs."""
    D = _require_valid(Q1)
    if _require_valid(Q2) != D:
        raise ValueError("discriminant mismatch")
    if (Q1.b - Q2.b) % 2 != 0:
        raise AssertionError("middle coefficients must share the parity of D")
    result = _compose_raw(Q1, Q2)
    if result is not None:
        return result
    # fall back to concerted representatives from the reduction cycles
    for R1 in reduction_cycle(Q1):
        for R2 in reduction_cycle(Q2):
            result = _compose_raw(R1, R2)
            if result is not None:
                return result
    raise AssertionError("composition failed on every representative pair")


@dataclass(frozen=True)
class ClassGroup:
    """The narrow class group of discriminant D as an explicit table."""

    D: int
    reps: tuple[QuadForm, ...]
    table: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.reps)

    def __len__(self) -> int:
        return len(self.reps)


def _class_index(D: int, Q: QuadForm) -> int:
    red = reduce_form(Q)
    for i, cyc in enumerate(_class_cycles(D)):
        if red in cyc:
            return i
    raise AssertionError(f"form {Q.coefficients()} not matched to a class of D={D}")


def class_group(D: int) -> ClassGroup:
    reps = class_representatives(D)
    table = tuple(
        tuple(_class_index(D, compose(Qi, Qj)) for Qj in reps) for Qi in reps
    )
    return ClassGroup(D, tuple(reps), table)
