"""Truncated evaluation of the arithmetic zeta products, their logarithmic
derivatives, the Gamma0(p) closed forms, prime-geodesic counts, and the
class-number-sum side of the prime geodesic theorem.

All series are cut at a unit bound X (discriminants with eps(D) <= X) and at
n_max factors of the inner product; the reported tail bound is a heuristic
majorant, flagged as such, since no effective error term is available.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .congruence import CongruenceSubgroup, CycleType, cycle_type
from .matrix_corr import gamma_of
from .pell import (
    DEFAULT_PRECISION,
    PellSolution,
    _unit_below,
    discriminants_by_unit,
    pell_mul,
)
from .quadforms import class_number, class_representatives


class DivergenceError(ValueError):
    """s lies outside the convergence half-plane Re(s) > 1."""


@dataclass(frozen=True)
class ZetaConfig:
    unit_bound: float  # include D with eps(D) <= X
    n_max: int = 20
    j_max: int = 60
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.unit_bound <= 1:
            raise ValueError("unit bound must exceed 1")
        if self.n_max < 0 or self.j_max < 1:
            raise ValueError("truncation orders out of range")


@dataclass(frozen=True)
class SeriesValue:
    value: object  # mpf or mpc
    truncation_error_bound: object
    heuristic_tail: bool = True


@dataclass(frozen=True)
class SpectralRecord:
    D: int
    solution: PellSolution
    h: int
    eps: object  # mpf
    log_eps: object  # mpf
    ct: CycleType  # cycle type of the coset permutation at j = 1


@dataclass(frozen=True)
class SpectralTable:
    records: tuple[SpectralRecord, ...]
    config: ZetaConfig = field(compare=False)

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)


def _check_s(s, precision):
    with mpmath.workprec(precision + 16):
        sv = mpmath.mpmathify(s)
    if mpmath.re(sv) <= 1:
        raise DivergenceError(f"Re(s) = {mpmath.re(sv)} is not > 1")
    return sv


def _eps_views(sol: PellSolution, precision: int):
    with mpmath.workprec(precision + 16):
        eps = (sol.t + sol.u * mpmath.sqrt(sol.D)) / 2
        return eps, mpmath.log(eps)


def build_spectral_table(group: CongruenceSubgroup | None, config: ZetaConfig) -> SpectralTable:
    """Per-discriminant data for all D with eps(D) <= X, in ascending eps order.

    group = None means the full modular group (cycle type (1) everywhere).
    """
    records = []
    Xq = Fraction(config.unit_bound)
    for D, sol in discriminants_by_unit(Xq + 1):
        # eps(D) <= X is the same as eps(D) < X since eps is irrational
        if not _unit_below(sol.t, Xq):
            continue
        eps, log_eps = _eps_views(sol, config.precision)
        if group is None:
            ct = CycleType(((1, 1),))
        else:
            ct = cycle_type(group, gamma_of(class_representatives(D)[0], sol))
        records.append(SpectralRecord(D, sol, class_number(D), eps, log_eps, ct))
    return SpectralTable(tuple(records), config)


def h_poly(x, ct: CycleType):
    """prod (1 - x^m)^n over the cycle type; equals det(I - P x) for any
    permutation P of that type."""
    out = 1
    for m, n in ct:
        out *= (1 - x**m) ** n
    return out


def _tail_bound(table: SpectralTable, sigma, config: ZetaConfig):
    """Heuristic majorant for the dropped factors: geometric continuation of
    the n-product for included D, plus an integral estimate h(D) ~ eps for the
    omitted discriminants."""
    with mpmath.workprec(config.precision + 16):
        sigma = mpmath.mpf(sigma)
        tail = mpmath.mpf(0)
        for rec in table:
            q = rec.eps ** (-2 * (sigma + config.n_max + 1))
            tail += rec.h * rec.ct.degree * q / (1 - rec.eps**-2)
        X = mpmath.mpf(config.unit_bound)
        if sigma > 1:
            tail += X ** (2 - 2 * sigma) / (2 * sigma - 2)
        return tail


def _zeta_from_table(table: SpectralTable, s, config: ZetaConfig) -> SeriesValue:
    sv = _check_s(s, config.precision)
    with mpmath.workprec(config.precision + 16):
        prod = mpmath.mpf(1)
        for rec in table:
            for n in range(config.n_max + 1):
                x = rec.eps ** (-2 * (sv + n))
                prod *= h_poly(x, rec.ct) ** rec.h
        return SeriesValue(prod, _tail_bound(table, mpmath.re(sv), config))


def zeta_sl2z(s, config: ZetaConfig) -> SeriesValue:
    """prod_{eps(D)<=X} prod_{n<=n_max} (1 - eps(D)^(-2(s+n)))^h(D)."""
    return _zeta_from_table(build_spectral_table(None, config), s, config)


def zeta_congruence(group: CongruenceSubgroup, s, config: ZetaConfig) -> SeriesValue:
    """prod_D prod_n det(I - chi(gamma_1) eps(D)^(-2(s+n)))^h(D) via cycle types."""
    return _zeta_from_table(build_spectral_table(group, config), s, config)


def log_deriv(group: CongruenceSubgroup | None, s, config: ZetaConfig) -> SeriesValue:
    """(d/ds) log Z as the double sum over discriminants and powers j, with
    tr chi(gamma^j) read off the j-th power of the coset permutation."""
    sv = _check_s(s, config.precision)
    table = build_spectral_table(group, config)
    with mpmath.workprec(config.precision + 16):
        total = mpmath.mpf(0)
        for rec in table:
            for j in range(1, config.j_max + 1):
                tr = rec.ct.fixed_points(j)
                if tr == 0:
                    continue
                total += (
                    tr
                    * rec.h
                    * 2
                    * rec.log_eps
                    / (1 - rec.eps ** (-2 * j))
                    * rec.eps ** (-2 * j * sv)
                )
        sigma = mpmath.re(sv)
        tail = mpmath.mpf(0)
        for rec in table:
            tail += (
                rec.ct.degree
                * rec.h
                * 2
                * rec.log_eps
                / (1 - rec.eps**-2)
                * rec.eps ** (-2 * (config.j_max + 1) * sigma)
                / (1 - rec.eps ** (-2 * sigma))
            )
        if sigma > 1:
            tail += mpmath.mpf(config.unit_bound) ** (2 - 2 * sigma) / (2 * sigma - 2)
        return SeriesValue(total, tail)


def _min_power_dividing(D: int, p: int) -> int:
    """Least l >= 1 with p | u_l, via Pell powers mod nothing fancy."""
    from .pell import fundamental_solution

    base = fundamental_solution(D)
    cur = base
    for l in range(1, 2 * p + 3):
        if cur.u % p == 0:
            return l
        cur = pell_mul(cur, base)
    raise AssertionError(f"no l <= {2 * p + 2} with {p} | u_l for D = {D}")


def gamma0p_case(D: int, p: int) -> CycleType:
    """The Gamma0(p) cycle-type pattern of the class over D, decided purely by
    u_j divisibility and the Legendre symbol (an independent route that never
    touches coset tables)."""
    from .pell import fundamental_solution

    sol = fundamental_solution(D)
    if sol.u % p == 0:
        return CycleType(((1, p + 1),))
    if D % p == 0:
        return CycleType(((1, 1), (p, 1)))
    legendre = pow(D % p, (p - 1) // 2, p)
    l = _min_power_dividing(D, p)
    if legendre == 1:
        assert (p - 1) % l == 0
        return CycleType.from_lengths([1, 1] + [l] * ((p - 1) // l))
    assert (p + 1) % l == 0
    return CycleType.from_lengths([l] * ((p + 1) // l))


def gamma0p_closed_form(p: int, s, config: ZetaConfig) -> SeriesValue:
    """Four-case closed form of the Gamma0(p) zeta for odd prime p."""
    if p < 3 or any(p % q == 0 for q in range(2, p)):
        raise ValueError("p must be an odd prime")
    sv = _check_s(s, config.precision)
    base = build_spectral_table(None, config)
    with mpmath.workprec(config.precision + 16):
        prod = mpmath.mpf(1)
        records = []
        for rec in base:
            ct = gamma0p_case(rec.D, p)
            records.append(SpectralRecord(rec.D, rec.solution, rec.h, rec.eps, rec.log_eps, ct))
            for n in range(config.n_max + 1):
                x = rec.eps ** (-2 * (sv + n))
                prod *= h_poly(x, ct) ** rec.h
        table = SpectralTable(tuple(records), config)
        return SeriesValue(prod, _tail_bound(table, mpmath.re(sv), config))


def prim_geodesic_count(group: CongruenceSubgroup | None, x, config: ZetaConfig | None = None) -> int:
    """Number of primitive classes of the subgroup with norm < x, by lifting:
    a length-m cycle over a base class of norm eps^2 contributes one class of
    norm eps^(2m)."""
    xq = Fraction(x)
    if xq <= 1:
        return 0
    count = 0
    # eps^2 < x requires t = eps + 1/eps < sqrt(x) + 1; enumerate that far
    for D, sol in discriminants_by_unit(_isqrt_bound(xq)):
        if group is None:
            cts = [CycleType(((1, 1),))] * class_number(D)
        else:
            cts = [
                cycle_type(group, gamma_of(Q, sol)) for Q in class_representatives(D)
            ]
        for ct in cts:
            for m, n in ct:
                # eps^(2m) < x iff t_{2m} < x + 1/x, and t_{2m} = t_m^2 - 2
                tm = _trace_power(sol, m)
                if Fraction(tm * tm - 2) * xq < xq * xq + 1:
                    count += n
    return count


def _trace_power(sol: PellSolution, m: int) -> int:
    acc = PellSolution(2, 0, sol.D)
    base = sol
    while m:
        if m & 1:
            acc = pell_mul(acc, base)
        m >>= 1
        if m:
            base = pell_mul(base, base)
    return acc.t


def _isqrt_bound(xq: Fraction) -> Fraction:
    # any rational upper bound for sqrt(x) + 1 works; exact cuts happen later
    import math

    return Fraction(math.isqrt(int(xq)) + 2)


def classnum_sum(x) -> int:
    """Sum of h(D) over D with eps(D) < x."""
    if Fraction(x) <= 1:
        return 0
    return sum(class_number(D) for D, _ in discriminants_by_unit(x))


def li(x, precision: int = DEFAULT_PRECISION):
    """Logarithmic integral from 2 to x."""
    if x < 2:
        raise ValueError("li is defined for x >= 2")
    with mpmath.workprec(precision + 16):
        return mpmath.li(mpmath.mpf(x), offset=True)
