"""Command-line surface: spectrum sweeps, scheme comparisons, coefficient
tables and pointwise diagnostics, emitted as CSV/JSON with optional PNG
figures rendered alongside file outputs.

The coupling grid is generated in exact rational steps so the singular
point z = 0 is decidable: a grid that would contain it is shifted by half
a step.  Exit codes: 0 success, 2 configuration error, 3 numerical
failure.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import click

from .analysis import amplitude_ratio, phase_shift, resonance_diagnostics
from .core import LevelIndex, NumericalError, classify_free_momentum, method_label
from .perturbation import MAX_ORDER as MAX_PT_ORDER
from .perturbation import coefficients, perturbative_momentum
from .resummation import branch_for_level, recursive_momentum, series_momentum
from .spectrum_exact import exact_level

_METHODS = ("exact", "recursive", "series", "perturbative")
_COMPARE_ORDERS = (1, 2, 3, 4, 5)
_MAX_SERIES_ORDER = 20


@dataclass(frozen=True)
class RunConfig:
    """Echoable snapshot of one CLI invocation."""

    command: str
    N: int
    z_min: Fraction
    z_max: Fraction
    z_steps: int
    levels: Tuple[LevelIndex, ...]
    method: str
    order: int
    output_path: str
    format: str

    def grid(self) -> List[Fraction]:
        step = (self.z_max - self.z_min) / (self.z_steps - 1)
        points = [self.z_min + i * step for i in range(self.z_steps)]
        if any(p == 0 for p in points):
            half = step / 2
            points = [p + half for p in points]
        return points

    def echo(self) -> Dict[str, object]:
        return {
            "command": self.command,
            "N": self.N,
            "z_min": str(self.z_min),
            "z_max": str(self.z_max),
            "z_steps": self.z_steps,
            "levels": [idx.label for idx in self.levels],
            "method": self.method,
            "order": self.order,
            "format": self.format,
        }


def _fraction(text: str, name: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"{name} must be a rational number, got {text!r}")


def _parse_level_token(N: int, token: str) -> LevelIndex:
    parts = token.split(":")
    if len(parts) != 2:
        raise click.UsageError(
            f"level {token!r} is not of the form n:l (e.g. 1:0 or 2:-1)"
        )
    try:
        n, l = int(parts[0]), int(parts[1])
    except ValueError:
        raise click.UsageError(f"level {token!r} has non-integer parts")
    try:
        return LevelIndex(N, n, l)
    except ValueError as exc:
        raise click.UsageError(f"inadmissible level {token!r}: {exc}")


def _parse_levels(N: int, text: str) -> Tuple[LevelIndex, ...]:
    text = text.strip()
    if not text:
        raise click.UsageError("the level list is empty")
    if ":" not in text and "," not in text:
        try:
            count = int(text)
        except ValueError:
            raise click.UsageError(f"levels must be a count or n:l list, got {text!r}")
        if count < 1:
            raise click.UsageError(f"level count must be >= 1, got {count}")
        return tuple(classify_free_momentum(N, s) for s in range(1, count + 1))
    return tuple(_parse_level_token(N, tok) for tok in text.split(",") if tok.strip())


def _validate_grid(z_min: Fraction, z_max: Fraction, z_steps: int) -> None:
    if z_steps < 2:
        raise click.UsageError(f"z-steps must be >= 2, got {z_steps}")
    if not z_min < z_max:
        raise click.UsageError(f"z-min must stay below z-max, got [{z_min}, {z_max}]")


def _validate_method(config: RunConfig) -> None:
    if config.method not in _METHODS:
        raise click.UsageError(f"unknown method {config.method!r}")
    if config.order < 1:
        raise click.UsageError(f"order must be >= 1, got {config.order}")
    if config.method == "perturbative" and config.order > MAX_PT_ORDER:
        raise click.UsageError(
            f"perturbative coefficients stop at order {MAX_PT_ORDER}, got {config.order}"
        )
    if config.method == "series" and config.order > _MAX_SERIES_ORDER:
        raise click.UsageError(
            f"series order is capped at {_MAX_SERIES_ORDER}, got {config.order}"
        )
    if config.method in ("recursive", "series"):
        for idx in config.levels:
            try:
                branch_for_level(idx)
            except ValueError as exc:
                raise click.UsageError(str(exc))


def _momentum(index: LevelIndex, z: float, method: str, order: int) -> float:
    if method == "exact":
        return exact_level(index.N, z, index)
    if method == "perturbative":
        return perturbative_momentum(index, z, order)
    spec = branch_for_level(index)
    if method == "recursive":
        return recursive_momentum(index.N, spec.branch, index.n, z, order).k
    return series_momentum(index.N, spec.branch, index.n, z, order).k


# -- output plumbing ---------------------------------------------------------


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(payload: Dict[str, object]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    Path(path).write_bytes(text.encode("utf-8"))


def _figure_path(output: str) -> Optional[Path]:
    if output == "-":
        return None
    return Path(output).with_suffix(".png")


def _save_figure(fig, png_path: Path) -> None:
    fig.savefig(png_path, format="png", metadata={"Software": None})


def _new_figure():
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt.subplots(figsize=(7.0, 5.0), dpi=110)


def _render_spectrum_figure(
    png_path: Path, config: RunConfig, table: Dict[str, List[Tuple[float, float]]]
) -> None:
    fig, ax = _new_figure()
    for label, pts in table.items():
        zs = [p[0] for p in pts]
        ks = [p[1] for p in pts]
        ax.plot(zs, ks, lw=1.2, label=label)
    ax.set_xlabel("coupling z")
    ax.set_ylabel("momentum k")
    ax.set_title(f"Level momenta, N = {config.N} ({config.method})")
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)
    _save_figure(fig, png_path)


def _render_compare_figure(
    png_path: Path, config: RunConfig, series: Dict[int, List[Tuple[float, float]]]
) -> None:
    fig, ax = _new_figure()
    for order in sorted(series):
        pts = series[order]
        zs = [p[0] for p in pts]
        errs = [max(abs(p[1]), 1e-17) for p in pts]
        ax.semilogy(zs, errs, lw=1.2, label=f"order {order}")
    ax.set_xlabel("coupling z")
    ax.set_ylabel("|percent error|")
    ax.set_title(f"Recursion vs exact, N = {config.N}, {config.levels[0].label}")
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)
    _save_figure(fig, png_path)


# -- commands ----------------------------------------------------------------


@click.group()
def main() -> None:
    """Momentum spectrum toolkit for the finite-volume delta-shell cavity."""


def _run_spectrum(config: RunConfig, render: bool) -> None:
    label = method_label(config.method, None if config.method == "exact" else config.order)
    rows: List[Tuple[str, str, str, str]] = []
    table: Dict[str, List[Tuple[float, float]]] = {idx.label: [] for idx in config.levels}
    for zf in config.grid():
        z = float(zf)
        for idx in config.levels:
            k = _momentum(idx, z, config.method, config.order)
            rows.append((format(z, ".17g"), idx.label, format(k, ".17g"), label))
            table[idx.label].append((z, k))
    if config.format == "csv":
        text = _csv_text(("z", "label", "k", "method"), rows)
    else:
        text = _json_text(
            {
                "config": config.echo(),
                "rows": [
                    {"z": float(r[0]), "label": r[1], "k": float(r[2]), "method": r[3]}
                    for r in rows
                ],
            }
        )
    _emit(config.output_path, text)
    png = _figure_path(config.output_path)
    if render and png is not None:
        _render_spectrum_figure(png, config, table)


@main.command("spectrum")
@click.option("--N", "-N", "cavity", type=int, required=True, help="Cavity length ratio.")
@click.option("--z-min", "z_min_s", type=str, required=True)
@click.option("--z-max", "z_max_s", type=str, required=True)
@click.option("--z-steps", type=int, default=101, show_default=True)
@click.option(
    "--levels",
    type=str,
    required=True,
    help="Level count (lowest s = 1..count) or explicit list n:l,n:l.",
)
@click.option(
    "--method",
    type=click.Choice(_METHODS),
    default="exact",
    show_default=True,
)
@click.option("--order", type=int, default=3, show_default=True)
@click.option("--output", "-o", type=str, default="-", help="Path or - for stdout.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(("csv", "json")),
    default="csv",
    show_default=True,
)
@click.option("--no-figure", is_flag=True, help="Skip the PNG next to a file output.")
def cmd_spectrum(
    cavity: int,
    z_min_s: str,
    z_max_s: str,
    z_steps: int,
    levels: str,
    method: str,
    order: int,
    output: str,
    fmt: str,
    no_figure: bool,
) -> None:
    """Sweep level momenta k(z) over an exact rational coupling grid."""
    if cavity < 1:
        raise click.UsageError(f"N must be >= 1, got {cavity}")
    z_min = _fraction(z_min_s, "z-min")
    z_max = _fraction(z_max_s, "z-max")
    _validate_grid(z_min, z_max, z_steps)
    config = RunConfig(
        command="spectrum",
        N=cavity,
        z_min=z_min,
        z_max=z_max,
        z_steps=z_steps,
        levels=_parse_levels(cavity, levels),
        method=method,
        order=order,
        output_path=output,
        format=fmt,
    )
    _validate_method(config)
    try:
        _run_spectrum(config, render=not no_figure)
    except NumericalError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(3)


def _run_compare(config: RunConfig, render: bool) -> None:
    index = config.levels[0]
    spec = branch_for_level(index)
    rows: List[Tuple[str, str, str]] = []
    curves: Dict[int, List[Tuple[float, float]]] = {h: [] for h in _COMPARE_ORDERS}
    for zf in config.grid():
        z = float(zf)
        k_exact = exact_level(index.N, z, index)
        for h in _COMPARE_ORDERS:
            k_h = recursive_momentum(index.N, spec.branch, index.n, z, h).k
            percent = 100.0 * (k_exact - k_h) / k_exact
            rows.append((format(z, ".17g"), str(h), format(percent, ".17g")))
            curves[h].append((z, percent))
    if config.format == "csv":
        text = _csv_text(("z", "order", "percent_error"), rows)
    else:
        text = _json_text(
            {
                "config": config.echo(),
                "rows": [
                    {"z": float(r[0]), "order": int(r[1]), "percent_error": float(r[2])}
                    for r in rows
                ],
            }
        )
    _emit(config.output_path, text)
    png = _figure_path(config.output_path)
    if render and png is not None:
        _render_compare_figure(png, config, curves)


@main.command("compare")
@click.option("--N", "-N", "cavity", type=int, required=True)
@click.option("--level", type=str, default="1:0", show_default=True, help="Level n:l.")
@click.option("--z-min", "z_min_s", type=str, required=True)
@click.option("--z-max", "z_max_s", type=str, required=True)
@click.option("--z-steps", type=int, default=201, show_default=True)
@click.option("--output", "-o", type=str, default="-")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(("csv", "json")),
    default="csv",
    show_default=True,
)
@click.option("--no-figure", is_flag=True)
def cmd_compare(
    cavity: int,
    level: str,
    z_min_s: str,
    z_max_s: str,
    z_steps: int,
    output: str,
    fmt: str,
    no_figure: bool,
) -> None:
    """Percent error of recursion orders 1..5 against the exact level."""
    if cavity < 1:
        raise click.UsageError(f"N must be >= 1, got {cavity}")
    z_min = _fraction(z_min_s, "z-min")
    z_max = _fraction(z_max_s, "z-max")
    _validate_grid(z_min, z_max, z_steps)
    index = _parse_level_token(cavity, level)
    try:
        branch_for_level(index)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    config = RunConfig(
        command="compare",
        N=cavity,
        z_min=z_min,
        z_max=z_max,
        z_steps=z_steps,
        levels=(index,),
        method="recursive",
        order=max(_COMPARE_ORDERS),
        output_path=output,
        format=fmt,
    )
    try:
        _run_compare(config, render=not no_figure)
    except NumericalError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(3)


@main.command("coeffs")
@click.option("--N", "-N", "cavity", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--l", "l", type=int, default=0, show_default=True)
@click.option("--order", type=int, default=MAX_PT_ORDER, show_default=True)
@click.option("--output", "-o", type=str, default="-")
def cmd_coeffs(cavity: int, n: int, l: int, order: int, output: str) -> None:
    """Perturbative series coefficients of one level, as JSON."""
    if cavity < 1:
        raise click.UsageError(f"N must be >= 1, got {cavity}")
    if not 1 <= order <= MAX_PT_ORDER:
        raise click.UsageError(
            f"closed-form coefficients exist for orders 1..{MAX_PT_ORDER}, got {order}"
        )
    try:
        index = LevelIndex(cavity, n, l)
        data = coefficients(index)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    payload = {
        "config": {"command": "coeffs", "N": cavity, "n": n, "l": l, "order": order},
        "label": index.label,
        "kind": index.kind.value,
        "kappa": str(index.free_momentum),
        "coefficients": list(data.coeffs[:order]),
    }
    _emit(output, _json_text(payload))


@main.command("diagnostics")
@click.option("--N", "-N", "cavity", type=int, required=True)
@click.option("--k", "k_opt", type=float, default=None, help="Momentum to probe.")
@click.option("--level", type=str, default=None, help="Level n:l, resolved at --z.")
@click.option("--z", "z_opt", type=float, default=None)
@click.option("--output", "-o", type=str, default="-")
def cmd_diagnostics(
    cavity: int,
    k_opt: Optional[float],
    level: Optional[str],
    z_opt: Optional[float],
    output: str,
) -> None:
    """Amplitude ratio, phase and level slope at a momentum or level."""
    if cavity < 1:
        raise click.UsageError(f"N must be >= 1, got {cavity}")
    if (k_opt is None) == (level is None):
        raise click.UsageError("give exactly one of --k or --level")
    if level is not None and z_opt is None:
        raise click.UsageError("--level needs --z to resolve the momentum")
    config: Dict[str, object] = {
        "command": "diagnostics",
        "N": cavity,
        "k": k_opt,
        "level": level,
        "z": z_opt,
    }
    try:
        if level is not None:
            index = _parse_level_token(cavity, level)
            k = exact_level(cavity, z_opt, index)
            n_for_cell = index.n if index.l == 0 else None
        else:
            k = k_opt
            n_for_cell = None
        if z_opt is None:
            body: Dict[str, object] = {
                "N": cavity,
                "k": k,
                "amplitude": amplitude_ratio(cavity, k),
                "phase": phase_shift(cavity, k),
            }
        else:
            diags = resonance_diagnostics(cavity, z_opt, k, n=n_for_cell)
            body = {
                "N": diags.N,
                "z": diags.z,
                "k": diags.k,
                "n_eff": diags.n_eff,
                "amplitude": diags.amplitude,
                "phase": diags.phase,
                "slope": diags.slope,
                "critical_below": str(diags.critical_below),
                "critical_above": str(diags.critical_above),
                "midpoint_coupling": str(diags.midpoint),
            }
    except NumericalError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(3)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(output, _json_text({"config": config, "diagnostics": body}))


if __name__ == "__main__":
    main()
