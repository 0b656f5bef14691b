"""Command-line surface.

Deterministic, machine-readable output: every command prints either CSV (a
header row plus data rows) or JSON (one object per record).  Numeric values
are printed with explicit precision via mpmath.nstr, so identical invocations
produce byte-identical output.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 domain error (evaluation outside the convergence half-plane).
"""

from __future__ import annotations

import json
import os
import sys
from fractions import Fraction

import click
import mpmath

from .congruence import make_subgroup
from .pell import DEFAULT_PRECISION, epsilon
from .quadforms import class_number, class_representatives
from .verify import SUITES
from .zeta import (
    DivergenceError,
    ZetaConfig,
    classnum_sum,
    gamma0p_closed_form,
    li,
    log_deriv,
    prim_geodesic_count,
    zeta_congruence,
    zeta_sl2z,
)

_DIGITS = 17  # significant digits in printed numeric fields


def _precision() -> int:
    raw = os.environ.get("ARITH_SELBERG_PRECISION")
    if raw is None:
        return DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError:
        raise click.UsageError(f"ARITH_SELBERG_PRECISION={raw!r} is not an integer")


def _numstr(v) -> str:
    return mpmath.nstr(v, _DIGITS, strip_zeros=False)


def _emit(records: list[dict], fmt: str) -> None:
    if fmt == "json":
        for rec in records:
            click.echo(json.dumps(rec, sort_keys=True))
    else:
        if not records:
            return
        keys = list(records[0])
        click.echo(",".join(keys))
        for rec in records:
            click.echo(",".join(str(rec[k]) for k in keys))


def _parse_s(raw: str):
    try:
        val = complex(raw.replace("i", "j").replace(" ", ""))
    except ValueError:
        raise click.UsageError(f"cannot parse s = {raw!r}")
    if val.imag == 0:
        return mpmath.mpf(val.real)
    return mpmath.mpc(val.real, val.imag)


def _load_group(group: str, level: int | None):
    if group == "sl2z":
        return None
    if group.startswith("custom:"):
        if level is None:
            raise click.UsageError("--level is required for custom groups")
        path = group.split(":", 1)[1]
        try:
            with open(path) as fh:
                lines = [ln.split("#")[0].strip() for ln in fh]
        except OSError as exc:
            raise click.UsageError(f"cannot read {path}: {exc}")
        gens = []
        for ln in lines:
            if not ln:
                continue
            parts = ln.split()
            if len(parts) != 4:
                raise click.UsageError(f"expected four integers per line, got {ln!r}")
            gens.append(tuple(int(x) for x in parts))
        return make_subgroup("custom", level, generators=gens)
    if group in ("gamma0", "gamma1pm", "gammahat"):
        if level is None:
            raise click.UsageError(f"--level is required for group {group}")
        return make_subgroup(group, level)
    raise click.UsageError(f"unknown group {group!r}")


_format_option = click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True
)


@click.group()
def main():
    """Arithmetic data of hyperbolic conjugacy classes and zeta products."""


@main.command("classnum")
@click.argument("d", type=int)
@_format_option
def cmd_classnum(d: int, fmt: str):
    """Narrow class number and reduced representatives of discriminant D."""
    try:
        h = class_number(d)
        reps = class_representatives(d)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(
        [
            {
                "D": d,
                "h": h,
                "representatives": ";".join(
                    "[{} {} {}]".format(*Q.coefficients()) for Q in reps
                ),
            }
        ],
        fmt,
    )


@main.command("unit")
@click.argument("d", type=int)
@click.option("--precision", type=int, default=None, help="bits (default from env or 128)")
@_format_option
def cmd_unit(d: int, precision: int | None, fmt: str):
    """Fundamental solution and unit of discriminant D."""
    try:
        uv = epsilon(d, precision or _precision())
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(
        [
            {
                "D": d,
                "t": uv.t,
                "u": uv.u,
                "epsilon": _numstr(uv.real_view),
                "log_epsilon": _numstr(uv.log_view),
            }
        ],
        fmt,
    )


@main.command("zeta")
@click.option("--group", default="sl2z", show_default=True)
@click.option("--level", type=int, default=None)
@click.option("--s", "s_raw", required=True)
@click.option("--trunc-eps", type=float, required=True, help="unit bound X")
@click.option("--n-max", type=int, default=20, show_default=True)
@click.option("--j-max", type=int, default=60, show_default=True)
@click.option("--log-deriv", "want_log_deriv", is_flag=True, help="print d/ds log Z instead")
@click.option("--closed-form", is_flag=True, help="prime-level closed form (gamma0 only)")
@_format_option
def cmd_zeta(group, level, s_raw, trunc_eps, n_max, j_max, want_log_deriv, closed_form, fmt):
    """Truncated zeta product (or its log-derivative) at s."""
    s = _parse_s(s_raw)
    try:
        cfg = ZetaConfig(unit_bound=trunc_eps, n_max=n_max, j_max=j_max, precision=_precision())
    except ValueError as exc:
        raise click.UsageError(str(exc))
    sub = _load_group(group, level)
    try:
        if want_log_deriv:
            result = log_deriv(sub, s, cfg)
        elif closed_form:
            if group != "gamma0" or level is None:
                raise click.UsageError("--closed-form requires --group gamma0 --level p")
            result = gamma0p_closed_form(level, s, cfg)
        elif sub is None:
            result = zeta_sl2z(s, cfg)
        else:
            result = zeta_congruence(sub, s, cfg)
    except DivergenceError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(3)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(
        [
            {
                "group": group,
                "level": level if level is not None else "",
                "s": s_raw,
                "trunc_eps": trunc_eps,
                "n_max": n_max,
                "value": _numstr(result.value),
                "tail_bound": _numstr(result.truncation_error_bound),
                "tail_is_heuristic": result.heuristic_tail,
            }
        ],
        fmt,
    )


@main.command("pgt")
@click.option("--group", default="sl2z", show_default=True)
@click.option("--level", type=int, default=None)
@click.option("--x", "x", type=float, required=True)
@_format_option
def cmd_pgt(group, level, x, fmt):
    """Primitive classes with norm below x^2, the class-number sum, and li(x^2)."""
    sub = _load_group(group, level)
    try:
        # x bounds the unit; the corresponding norm bound is x^2
        pi = prim_geodesic_count(sub, Fraction(x) ** 2)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    row = {"group": group, "level": level if level is not None else "", "x": x, "pi": pi}
    if sub is None:
        row["classnum_sum"] = classnum_sum(x)
    if x >= 2:  # li(x^2) needs x^2 >= 2; ratio only meaningful past the pole
        lival = li(mpmath.mpf(x) ** 2, _precision())
        row["li_x2"] = _numstr(lival)
        row["ratio"] = _numstr(pi / lival) if lival != 0 else "inf"
    _emit([row], fmt)


def _parse_range(clauses: tuple[str, ...]) -> dict:
    out = {}
    for clause in clauses:
        if "=" not in clause:
            raise click.UsageError(f"range clause {clause!r} is not key=values")
        key, _, spec = clause.partition("=")
        key = key.strip()
        spec = spec.strip()
        try:
            if ".." in spec:
                lo, hi = spec.split("..")
                out[key] = list(range(int(lo), int(hi) + 1))
            else:
                out[key] = [int(x) for x in spec.split(",")]
        except ValueError:
            raise click.UsageError(f"cannot parse range {spec!r}")
    return out


@main.command("verify")
@click.option("--suite", required=True)
@click.option("--range", "ranges", multiple=True, help="key=lo..hi or key=a,b,c")
def cmd_verify(suite, ranges):
    """Run an invariant suite; JSON-lines report, exit 1 on any failure."""
    if suite not in SUITES:
        raise click.UsageError(
            f"unknown suite {suite!r}; choose from {', '.join(sorted(SUITES))}"
        )
    kwargs = _parse_range(ranges)
    try:
        reports = SUITES[suite](**kwargs)
    except TypeError as exc:
        raise click.UsageError(f"bad range keys for suite {suite}: {exc}")
    ok = True
    for rep in reports:
        click.echo(rep.to_json())
        ok = ok and rep.passed
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
