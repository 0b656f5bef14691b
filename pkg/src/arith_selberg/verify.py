"""Invariant suites cross-checking the fast paths against the oracles.

Each suite returns a list of OracleReport records; a suite passes when every
record passes.  Suite names are the tokens accepted by the command line.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import mpmath

from .congruence import (
    CycleType,
    char_trace,
    conj2_relations,
    coset_action,
    cycle_type,
    decompose_level,
    gamma_nu,
    index_hat,
    make_subgroup,
    nu_classes,
    psl_conjugate,
    _as_mat,
    _mmul,
)
from .matrix_corr import HyperbolicMatrix, class_list, gamma_of, invariants_of
from .oracles import (
    OracleReport,
    class_count_scan,
    p1_action,
    pell_ascending,
    trace_class_count,
)
from .pell import (
    PellSolution,
    discriminants_by_unit,
    fundamental_solution,
    is_discriminant,
    pell_mul,
    pell_power,
)
from .quadforms import (
    QuadForm,
    class_group,
    class_number,
    class_representatives,
    compose,
    equivalent,
    identity_form,
    inverse_class,
    reduce_form,
)
from .zeta import (
    ZetaConfig,
    classnum_sum,
    gamma0p_case,
    li,
    log_deriv,
    zeta_congruence,
)


def _discriminants_up_to(D_max: int) -> list[int]:
    return [D for D in range(5, D_max + 1) if is_discriminant(D)]


def _filter_discriminants(Ds) -> list[int]:
    """User-supplied D ranges may contain squares or 2, 3 mod 4 values; keep
    only the valid ones."""
    out = [d for d in Ds if is_discriminant(d)]
    if not out:
        raise ValueError("no valid discriminant in the requested range")
    return out


def _mat_pow(m, k: int, N: int):
    acc = (1 % N, 0, 0, 1 % N)
    base = _as_mat(m, N)
    while k:
        if k & 1:
            acc = _mmul(acc, base, N)
        k >>= 1
        base = _mmul(base, base, N)
    return acc


def suite_pell(D=None) -> list[OracleReport]:
    """Fundamental solutions agree with the ascending-u oracle; the group law
    generates exactly the powers of the fundamental solution."""
    Ds = _filter_discriminants(D) if D else _discriminants_up_to(300)
    reports = []
    bad = None
    for d in Ds:
        f = fundamental_solution(d)
        o = pell_ascending(d, bound=10**6)
        if o is None:
            # oracle scan bound exceeded; skip, the relation itself is
            # validated by the solution constructor
            continue
        if (f.t, f.u) != (o.t, o.u):
            bad = {"D": d, "fast": [f.t, f.u], "oracle": [o.t, o.u]}
            break
    reports.append(
        OracleReport("pell.fundamental_matches_oracle", {"D_max": max(Ds)}, bad is None, bad)
    )
    bad = None
    for d in Ds[:50]:
        f = fundamental_solution(d)
        if (pell_mul(f, f).t, pell_mul(f, f).u) != (pell_power(d, 2).t, pell_power(d, 2).u):
            bad = {"D": d}
            break
        p3 = pell_mul(pell_mul(f, f), f)
        if (p3.t, p3.u) != (pell_power(d, 3).t, pell_power(d, 3).u):
            bad = {"D": d}
            break
    reports.append(OracleReport("pell.power_consistency", {"count": 50}, bad is None, bad))
    return reports


def suite_forms(D=None) -> list[OracleReport]:
    """Class group axioms at every discriminant: closure, identity, inverses,
    associativity, commutativity, and order h(D)."""
    Ds = _filter_discriminants(D) if D else _discriminants_up_to(200)
    reports = []
    bad = None
    for d in Ds:
        G = class_group(d)
        n = G.order
        if n != class_number(d):
            bad = {"D": d, "reason": "order != class number"}
            break
        e = None
        for i in range(n):
            if all(G.table[i][j] == j for j in range(n)):
                e = i
                break
        if e is None:
            bad = {"D": d, "reason": "no identity"}
            break
        from .quadforms import _class_cycles

        if reduce_form(identity_form(d)) not in _class_cycles(d)[e]:
            bad = {"D": d, "reason": "principal form is not the table identity"}
            break
        ok = True
        for i in range(n):
            if sorted(G.table[i]) != list(range(n)):
                ok = False
            if G.table[i].count(e) != 1:
                ok = False
            for j in range(n):
                if G.table[i][j] != G.table[j][i]:
                    ok = False
                for k in range(n):
                    if G.table[G.table[i][j]][k] != G.table[i][G.table[j][k]]:
                        ok = False
        if not ok:
            bad = {"D": d, "reason": "group axiom failure"}
            break
        # inverse class is [a, -b, c]
        for i, Q in enumerate(G.reps):
            if not equivalent(compose(Q, inverse_class(Q)), identity_form(d)):
                bad = {"D": d, "reason": "inverse_class failure", "rep": Q.coefficients()}
                break
        if bad:
            break
    reports.append(
        OracleReport("forms.class_group_axioms", {"D_max": max(Ds)}, bad is None, bad)
    )
    # composition is class-independent: composing cycle members lands in one class
    rng = random.Random(11)
    bad = None
    for d in rng.sample(Ds, min(20, len(Ds))):
        reps = class_representatives(d)
        from .quadforms import reduction_cycle

        for Q1 in reps[:3]:
            for Q2 in reps[:3]:
                base = reduce_form(compose(Q1, Q2))
                for R1 in reduction_cycle(Q1)[:4]:
                    for R2 in reduction_cycle(Q2)[:4]:
                        if not equivalent(compose(R1, R2), base):
                            bad = {
                                "D": d,
                                "pair": [R1.coefficients(), R2.coefficients()],
                            }
                            break
    reports.append(
        OracleReport("forms.composition_class_independent", {"samples": 20}, bad is None, bad)
    )
    return reports


def suite_hd(t=None) -> list[OracleReport]:
    """Class counts by trace: the exhaustive window-scan oracle totals equal
    the sum of class numbers over u with u^2 | t^2 - 4."""
    ts = t or list(range(3, 201))
    bad = None
    for tv in ts:
        oracle = trace_class_count(tv)
        for (u, d), cnt in oracle.items():
            if cnt != class_number(d):
                bad = {"t": tv, "u": u, "D": d, "oracle": cnt, "fast": class_number(d)}
                break
        if bad:
            break
        n = tv * tv - 4
        expect = sum(
            class_number(n // (u * u))
            for u in range(1, math.isqrt(n) + 1)
            if n % (u * u) == 0 and is_discriminant(n // (u * u))
        )
        total = sum(oracle.values())
        if total != expect:
            bad = {"t": tv, "oracle_total": total, "fast_total": expect}
            break
    return [
        OracleReport("hd.trace_totals", {"t_min": min(ts), "t_max": max(ts)}, bad is None, bad)
    ]


def _enumerated_invariants(unit_bound: int) -> list[PellSolution]:
    return [sol for _, sol in discriminants_by_unit(Fraction(unit_bound))]


def suite_lemma24(N=None, X: int = 20) -> list[OracleReport]:
    """Every hyperbolic class reduces to a nu normal form mod N, and the cycle
    type of any coset action is the same for every realized nu."""
    Ns = N or list(range(2, 25))
    sols = _enumerated_invariants(X)
    reports = []
    bad = None
    for sol in sols:
        for n in Ns:
            if (sol.t % n, sol.u % n) in ((2 % n, 0), ((-2) % n, 0)):
                continue
            try:
                nu_classes(sol.t, sol.u, n)
            except AssertionError as exc:
                bad = {"t": sol.t, "u": sol.u, "N": n, "detail": str(exc)}
                break
        if bad:
            break
    reports.append(
        OracleReport(
            "lemma24.normal_form_coverage",
            {"N_max": max(Ns), "unit_bound": X},
            bad is None,
            bad,
        )
    )
    bad = None
    for sol in sols:
        for n in Ns:
            if (sol.t % n, sol.u % n) in ((2 % n, 0), ((-2) % n, 0)):
                continue
            nc = nu_classes(sol.t, sol.u, n)
            subgroups = [make_subgroup("gamma0", n), make_subgroup("gamma1pm", n)]
            for sub in subgroups:
                base = None
                for nu in nc.nus:
                    ct = cycle_type(sub, gamma_nu(sol.t, sol.u, sol.D, nu, n))
                    if base is None:
                        base = ct
                    elif ct != base:
                        bad = {
                            "t": sol.t,
                            "u": sol.u,
                            "N": n,
                            "kind": sub.kind,
                            "nu": nu,
                            "got": list(ct),
                            "expected": list(base),
                        }
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    reports.append(
        OracleReport(
            "lemma24.cycle_type_nu_invariant",
            {"N_max": max(Ns), "unit_bound": X},
            bad is None,
            bad,
        )
    )
    return reports


def suite_lemma25(D=None, N=None) -> list[OracleReport]:
    """The classes with invariants (t1, u1) split into nu parts of equal size
    h(D)/mu, for every level."""
    Ds = _filter_discriminants(D) if D else _discriminants_up_to(500)
    Ns = N or list(range(2, 26))
    bad = None
    checked = 0
    for d in Ds:
        sol = fundamental_solution(d)
        for n in Ns:
            if (sol.t % n, sol.u % n) in ((2 % n, 0), ((-2) % n, 0)):
                continue
            try:
                nc = nu_classes(sol.t, sol.u, n)
            except AssertionError as exc:
                bad = {"D": d, "N": n, "detail": str(exc)}
                break
            h = class_number(d)
            sizes = {nu: len(ix) for nu, ix in nc.parts.items()}
            if h % nc.mu or any(s != h // nc.mu for s in sizes.values()):
                bad = {"D": d, "N": n, "h": h, "mu": nc.mu, "sizes": sizes}
                break
            checked += 1
        if bad:
            break
    return [
        OracleReport(
            "lemma25.equal_parts",
            {"D_max": max(Ds), "N_max": max(Ns), "checked": checked},
            bad is None,
            bad,
        )
    ]


def suite_lemma26(p=None, t=None) -> list[OracleReport]:
    """Power-conjugacy relations between nu normal forms at prime-power level.

    Two reports.  The first confirms each emitted relation by exhaustive
    conjugacy search and summarizes failures per residue class (p, r, case).
    The second asks whether the realized nu classes are all power-conjugate
    to the first one, falling back to an empirical exponent search when the
    emitted exponent fails; this is the acceptance-relevant coverage check.
    For p odd, p | D and r >= 2 coverage is provably unattainable: the trace
    of gamma_1^k is t_k, a conjugate of gamma_nu must have trace +-t mod p^r,
    and t_k = +-t mod p^2 has no solution for e.g. D=60, p=5 (t=8, t_2=62).
    Such cases are reported as counterexamples rather than skipped.
    """
    primes = p or [2, 3, 5, 7]
    ts = t or list(range(3, 51))
    levels = []
    for q in primes:
        pr = q
        r = 1
        while pr <= 27:
            levels.append((q, r, pr))
            pr *= q
            r += 1
    unconfirmed: dict[str, list] = {}
    uncovered = []
    checked = relations_checked = 0
    for q, r, n in levels:
        for tv in ts:
            m = tv * tv - 4
            for u in range(1, math.isqrt(m) + 1):
                if m % (u * u):
                    continue
                d = m // (u * u)
                if not is_discriminant(d):
                    continue
                if (tv % n, u % n) in ((2 % n, 0), ((-2) % n, 0)):
                    continue
                case = f"p={q} r={r} " + ("p|D" if d % q == 0 else "p∤D")
                for (na, k, nb) in conj2_relations(q, r, tv, u, d):
                    try:
                        ga = gamma_nu(tv, u, d, na, n)
                        gb = gamma_nu(tv, u, d, nb, n)
                    except ValueError:
                        continue
                    relations_checked += 1
                    if not psl_conjugate(n, _mat_pow(ga, k, n), gb.entries()):
                        unconfirmed.setdefault(case, []).append(
                            {"t": tv, "u": u, "D": d, "rel": [na, k, nb]}
                        )
                # coverage: every realized class power-conjugate to the first
                nc = nu_classes(tv, u, n)
                g1 = gamma_nu(tv, u, d, nc.nus[0], n)
                powers = [_mat_pow(g1, k, n) for k in range(1, 4 * n)]
                for other in nc.nus[1:]:
                    gb = gamma_nu(tv, u, d, other, n)
                    if not any(psl_conjugate(n, pw, gb.entries()) for pw in powers):
                        uncovered.append(
                            {"case": case, "t": tv, "u": u, "D": d, "nu": other}
                        )
                checked += 1
            if len(uncovered) > 20:
                break
        if len(uncovered) > 20:
            break
    reports = [
        OracleReport(
            "lemma26.emitted_relations_confirmed",
            {
                "primes": primes,
                "t_max": max(ts),
                "relations_checked": relations_checked,
                "failures_by_case": {k: len(v) for k, v in unconfirmed.items()},
            },
            not unconfirmed,
            {k: v[:3] for k, v in unconfirmed.items()} or None,
        ),
        OracleReport(
            "lemma26.nu_classes_power_connected",
            {"primes": primes, "t_max": max(ts), "tuples_checked": checked},
            not uncovered,
            uncovered[:5] or None,
        ),
    ]
    return reports


def _random_hyperbolic(rng: random.Random) -> HyperbolicMatrix:
    while True:
        a = rng.randint(-30, 30)
        b = rng.randint(-30, 30)
        c = rng.randint(-30, 30)
        if a == 0:
            continue
        num = 1 + b * c
        if num % a:
            continue
        d = num // a
        if abs(a + d) > 2:
            return HyperbolicMatrix(a, b, c, d)


def suite_vz(N=None, samples: int = 1000) -> list[OracleReport]:
    """Induced-character structure: cycle lengths sum to the index, the trace
    is the fixed-coset count, the character is multiplicative over the
    prime-power factors of the level, and the projective-kernel coset count
    matches the closed-form index."""
    Ns = N or [6, 10, 12, 15]
    rng = random.Random(2024)
    gammas = [_random_hyperbolic(rng) for _ in range(samples)]
    reports = []
    bad = None
    subgroups = [make_subgroup("gamma0", n) for n in Ns]
    subgroups += [make_subgroup("gamma1pm", n) for n in Ns if n <= 12]
    subgroups += [make_subgroup("gammahat", n) for n in Ns if n <= 10]
    for sub in subgroups:
        idx = len(coset_action(sub))
        for g in gammas:
            ct = cycle_type(sub, g)
            if ct.degree != idx:
                bad = {"kind": sub.kind, "N": sub.level, "gamma": list(g.entries()),
                       "degree": ct.degree, "index": idx}
                break
            if ct.fixed_points(1) != char_trace(sub, g):
                bad = {"kind": sub.kind, "N": sub.level, "gamma": list(g.entries()),
                       "reason": "trace != fixed points"}
                break
        if bad:
            break
    reports.append(
        OracleReport("vz.cycle_structure", {"levels": Ns, "samples": samples}, bad is None, bad)
    )
    bad = None
    for n in Ns:
        sub = make_subgroup("gamma0", n)
        parts = decompose_level(sub)
        for g in gammas:
            lhs = char_trace(sub, g)
            rhs = 1
            for part in parts:
                rhs *= char_trace(part, g)
            if lhs != rhs:
                bad = {"N": n, "gamma": list(g.entries()), "lhs": lhs, "rhs": rhs}
                break
        if bad:
            break
    reports.append(
        OracleReport("vz.char_multiplicative", {"levels": Ns, "samples": samples}, bad is None, bad)
    )
    bad = None
    for n in (2, 3, 4, 5, 6, 8, 9, 12):
        got = len(coset_action(make_subgroup("gammahat", n)))
        want = index_hat(n)
        if got != want:
            bad = {"N": n, "cosets": got, "index_hat": want}
            break
    reports.append(OracleReport("vz.projective_kernel_index", {"N": [2, 3, 4, 5, 6, 8, 9, 12]}, bad is None, bad))
    # independent projective-line model of the prime-level coset action
    bad = None
    for q in (3, 5, 7, 11, 13):
        sub = make_subgroup("gamma0", q)
        for g in gammas[:100]:
            ct1 = cycle_type(sub, g)
            ct2 = CycleType.from_permutation(p1_action(q, g))
            if ct1 != ct2:
                bad = {"p": q, "gamma": list(g.entries()), "coset": list(ct1), "p1": list(ct2)}
                break
        if bad:
            break
    reports.append(
        OracleReport("vz.p1_cross_check", {"p": [3, 5, 7, 11, 13], "samples": 100}, bad is None, bad)
    )
    return reports


def suite_example1(p=None, X: int = 30, n_max: int = 10) -> list[OracleReport]:
    """Prime-level zeta: the general coset-table evaluation agrees with the
    four-case closed form, and every enumerated discriminant realizes one of
    the four cycle-type patterns."""
    from .zeta import gamma0p_closed_form

    primes = p or [3, 5, 7, 11]
    cfg = ZetaConfig(unit_bound=X, n_max=n_max)
    reports = []
    bad = None
    with mpmath.workprec(cfg.precision + 16):
        for q in primes:
            sub = make_subgroup("gamma0", q)
            for s in (mpmath.mpf(2), mpmath.mpf("2.5"), mpmath.mpc(3, 1)):
                z1 = zeta_congruence(sub, s, cfg).value
                z2 = gamma0p_closed_form(q, s, cfg).value
                rel = abs(z1 - z2) / abs(z2)
                if rel > mpmath.mpf(10) ** -12:
                    bad = {"p": q, "s": str(s), "rel_error": float(rel)}
                    break
            if bad:
                break
    reports.append(
        OracleReport(
            "example1.closed_form_agreement",
            {"p": primes, "unit_bound": X, "n_max": n_max},
            bad is None,
            bad,
        )
    )
    bad = None
    for q in primes:
        sub = make_subgroup("gamma0", q)
        for d, sol in discriminants_by_unit(X):
            want = gamma0p_case(d, q)
            got = cycle_type(sub, gamma_of(class_representatives(d)[0], sol))
            if want != got:
                bad = {"p": q, "D": d, "pattern": list(want), "coset": list(got)}
                break
        if bad:
            break
    reports.append(
        OracleReport("example1.four_case_patterns", {"p": primes, "unit_bound": X}, bad is None, bad)
    )
    return reports


def suite_pgt_band(x=None) -> list[OracleReport]:
    """Desk-scale stand-in for the asymptotic count: the class-number sum over
    units below x stays within 20 percent of li(x^2) and the relative distance
    to 1 does not grow along the sampled points."""
    xs = x or [200, 500, 1000]
    ratios = []
    with mpmath.workprec(80):
        for xv in xs:
            ratios.append(float(classnum_sum(xv) / li(mpmath.mpf(xv) ** 2)))
    bad = None
    if not all(0.8 <= r <= 1.2 for r in ratios):
        bad = {"x": xs, "ratios": ratios, "reason": "outside band"}
    else:
        dists = [abs(r - 1) for r in ratios]
        if any(dists[i + 1] > dists[i] for i in range(len(dists) - 1)):
            bad = {"x": xs, "ratios": ratios, "reason": "distance to 1 grew"}
    return [OracleReport("pgt.band", {"x": xs, "ratios": ratios}, bad is None, bad)]


SUITES = {
    "pell": suite_pell,
    "forms": suite_forms,
    "hd": suite_hd,
    "lemma24": suite_lemma24,
    "lemma25": suite_lemma25,
    "lemma26": suite_lemma26,
    "vz": suite_vz,
    "example1": suite_example1,
    "pgt-band": suite_pgt_band,
}
