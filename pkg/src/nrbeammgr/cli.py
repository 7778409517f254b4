"""Command line front-end: analytic evaluations, Monte Carlo runs, parameter
sweeps and figure regeneration, all emitting CSV.

Exit codes: 0 success, 1 validation error, 2 I/O error.
"""

from __future__ import annotations

import itertools
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import click

from . import figures as figures_mod
from .channel import misdetection_probability
from .config import Params, load_config, validate
from .errors import ValidationError
from .ia import beam_report_delay, ia_delay, ia_total_latency, plan_for
from .overhead import overhead_report
from .tracking import (
    csi_count,
    csi_window,
    max_neighbors,
    orthogonal_csi_capacity,
    rlf_delay,
    tracking_delay,
)

EXIT_VALIDATION = 1
EXIT_IO = 2


def _fmt(value) -> str:
    if isinstance(value, (Fraction, float)):
        return "%.12g" % float(value)
    return str(value)


def _emit(header: Sequence[str], rows: Sequence[Sequence[object]], output: Optional[str]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(cell) for cell in row))
    text = "\n".join(lines) + "\n"
    if output is None:
        click.echo(text, nl=False)
    else:
        try:
            with open(output, "w", encoding="ascii", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            click.echo(f"error: cannot write {output}: {exc}", err=True)
            sys.exit(EXIT_IO)


def _params(config: Optional[str], overrides: dict, arch: Optional[str]) -> Params:
    if arch is not None:
        parts = [p.strip() for p in arch.split(",")]
        if len(parts) != 2:
            raise ValidationError(
                f"arch must be 'gnb_arch,ue_arch' (e.g. analog,analog), got '{arch}'"
            )
        overrides = dict(overrides, gnb_arch=parts[0], ue_arch=parts[1])
    try:
        return load_config(config, overrides)
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)


def _run(func):
    """Translate library validation errors into exit code 1."""
    try:
        return func()
    except ValidationError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_VALIDATION)


def _common(fn):
    fn = click.option("--config", "-c", default=None, help="INI config file")(fn)
    fn = click.option("--output", "-o", default=None, help="write CSV here instead of stdout")(fn)
    fn = click.option("--set", "-s", "sets", multiple=True, metavar="KEY=VALUE",
                      help="override any config key")(fn)
    return fn


def _overrides(sets: Tuple[str, ...], **kw) -> dict:
    out = {}
    for item in sets:
        if "=" not in item:
            click.echo(f"error: --set expects KEY=VALUE, got '{item}'", err=True)
            sys.exit(EXIT_VALIDATION)
        key, _, value = item.partition("=")
        out[key.strip()] = value.strip()
    for key, value in kw.items():
        if value is not None:
            out[key] = value
    return out


@click.group()
def main() -> None:
    """Analytic and Monte Carlo evaluation of NR beam management."""


def _burst_inputs(p: Params) -> List[Tuple[str, object]]:
    return [("scs_khz", p.scs), ("n_ss", p.nss), ("t_ss_ms", p.tss),
            ("diversity", int(p.diversity))]


@main.command("ia-delay")
@_common
@click.option("--gnb", type=int, default=None, help="gNB antenna elements")
@click.option("--ue", type=int, default=None, help="UE antenna elements")
@click.option("--arch", default=None, help="gNB,UE beamforming (analog/hybrid/digital/omni)")
@click.option("--nss", "nss", type=int, default=None)
@click.option("--tss", "tss", type=int, default=None)
@click.option("--scs", "scs", type=int, default=None)
def ia_delay_cmd(config, output, sets, gnb, ue, arch, nss, tss, scs) -> None:
    """Exhaustive-sweep initial access delay."""
    p = _params(config, _overrides(sets, gnb=gnb, ue=ue, nss=nss, tss=tss, scs=scs), arch)

    def go():
        plan = plan_for(p.gnb_codebook(), p.gnb_bf(), p.ue_codebook(), p.ue_bf())
        burst = p.burst()
        latency = ia_total_latency(p.framework_config(), plan, burst, gnb_arch=p.gnb_bf())
        header = [k for k, _ in _burst_inputs(p)] + [
            "m_gnb", "m_ue", "gnb_arch", "ue_arch", "s_d",
            "t_ia_ms", "t_report_ms", "t_total_ms",
        ]
        row = [v for _, v in _burst_inputs(p)] + [
            p.gnb, p.ue, p.gnb_arch, p.ue_arch, plan.s_d,
            latency.sweep_ms, latency.report_ms, latency.total_ms,
        ]
        _emit(header, [row], output)

    _run(go)


@main.command("report-delay")
@_common
@click.option("--gnb", type=int, default=None)
@click.option("--arch", default=None, help="gNB,UE beamforming")
@click.option("--nss", "nss", type=int, default=None)
@click.option("--tss", "tss", type=int, default=None)
@click.option("--scs", "scs", type=int, default=None)
def report_delay_cmd(config, output, sets, gnb, arch, nss, tss, scs) -> None:
    """Beam reporting delay for the configured framework."""
    p = _params(config, _overrides(sets, gnb=gnb, nss=nss, tss=tss, scs=scs), arch)

    def go():
        delay = beam_report_delay(
            p.framework_config(), p.gnb_codebook(), p.gnb_bf(), p.burst()
        )
        header = [k for k, _ in _burst_inputs(p)] + [
            "m_gnb", "gnb_arch", "framework", "t_report_ms",
        ]
        row = [v for _, v in _burst_inputs(p)] + [p.gnb, p.gnb_arch, p.framework, delay]
        _emit(header, [row], output)

    _run(go)


@main.command("tracking-delay")
@_common
@click.option("--gnb", type=int, default=None)
@click.option("--users", type=int, default=None)
@click.option("--rx", "csi_rx", type=int, default=None)
@click.option("--csi-option", type=int, default=None)
@click.option("--csi-slots", type=int, default=None)
@click.option("--tss", "tss", type=int, default=None)
@click.option("--scs", "scs", type=int, default=None)
def tracking_delay_cmd(config, output, sets, gnb, users, csi_rx, csi_option, csi_slots, tss, scs) -> None:
    """Average beam-tracking delay until the first CSI-RS per direction."""
    p = _params(config, _overrides(sets, gnb=gnb, users=users, csi_rx=csi_rx,
                                   csi_option=csi_option, csi_slots=csi_slots,
                                   tss=tss, scs=scs), None)

    def go():
        burst = p.burst()
        csi = p.csi()
        scenario = p.scenario()
        n_csi = csi_count(csi_window(burst), csi, burst.numerology)
        delay = tracking_delay(scenario, csi, burst)
        header = [k for k, _ in _burst_inputs(p)] + [
            "csi_option", "csi_slots", "n_user", "n_csi_rx", "z_csi", "n_csi", "t_tr_ms",
        ]
        row = [v for _, v in _burst_inputs(p)] + [
            p.csi_option, p.csi_slots, p.users, p.csi_rx, scenario.z_csi, n_csi, delay,
        ]
        _emit(header, [row], output)

    _run(go)


@main.command("rlf")
@_common
@click.option("--gnb", type=int, default=None)
@click.option("--ue", type=int, default=None)
@click.option("--arch", default=None, help="gNB,UE beamforming")
@click.option("--framework", default=None)
@click.option("--nss", "nss", type=int, default=None)
@click.option("--tss", "tss", type=int, default=None)
@click.option("--scs", "scs", type=int, default=None)
def rlf_cmd(config, output, sets, gnb, ue, arch, framework, nss, tss, scs) -> None:
    """Radio-link-failure recovery delay."""
    p = _params(config, _overrides(sets, gnb=gnb, ue=ue, framework=framework,
                                   nss=nss, tss=tss, scs=scs), arch)

    def go():
        plan = plan_for(p.gnb_codebook(), p.gnb_bf(), p.ue_codebook(), p.ue_bf())
        delay = rlf_delay(p.framework_config(), plan, p.burst())
        header = [k for k, _ in _burst_inputs(p)] + [
            "m_gnb", "m_ue", "gnb_arch", "ue_arch", "framework", "t_rlf_ms",
        ]
        row = [v for _, v in _burst_inputs(p)] + [
            p.gnb, p.ue, p.gnb_arch, p.ue_arch, p.framework, delay,
        ]
        _emit(header, [row], output)

    _run(go)


@main.command("neighbors")
@_common
@click.option("--csi-option", type=int, default=None)
@click.option("--csi-slots", type=int, default=None)
@click.option("--csi-symbols", type=int, default=None)
@click.option("--rho", "csi_rho", default=None)
@click.option("--tss", "tss", type=int, default=None)
@click.option("--scs", "scs", type=int, default=None)
def neighbors_cmd(config, output, sets, csi_option, csi_slots, csi_symbols, csi_rho, tss, scs) -> None:
    """Orthogonal CSI-RS capacity and maximum supportable neighbor gNBs."""
    p = _params(config, _overrides(sets, csi_option=csi_option, csi_slots=csi_slots,
                                   csi_symbols=csi_symbols, csi_rho=csi_rho,
                                   tss=tss, scs=scs), None)

    def go():
        burst = p.burst()
        csi = p.csi()
        n_csi = csi_count(csi_window(burst), csi, burst.numerology)
        capacity = orthogonal_csi_capacity(burst, csi)
        header = [k for k, _ in _burst_inputs(p)] + [
            "csi_option", "csi_slots", "csi_symbols", "rho",
            "n_csi", "orthogonal_capacity", "max_neighbors",
        ]
        row = [v for _, v in _burst_inputs(p)] + [
            p.csi_option, p.csi_slots, p.csi_symbols, p.csi_rho,
            n_csi, capacity, max_neighbors(capacity, n_csi),
        ]
        _emit(header, [row], output)

    _run(go)


@main.command("overhead")
@_common
@click.option("--nss", "nss", type=int, default=None)
@click.option("--tss", "tss", type=int, default=None)
@click.option("--scs", "scs", type=int, default=None)
@click.option("--diversity", default=None, help="on/off SS block repetition")
@click.option("--csi-slots", type=int, default=None)
@click.option("--csi-symbols", type=int, default=None)
@click.option("--rho", "csi_rho", default=None)
def overhead_cmd(config, output, sets, nss, tss, scs, diversity, csi_slots, csi_symbols, csi_rho) -> None:
    """Control overhead ratios for SS bursts, CSI-RS and beam reporting."""
    p = _params(config, _overrides(sets, nss=nss, tss=tss, scs=scs, diversity=diversity,
                                   csi_slots=csi_slots, csi_symbols=csi_symbols,
                                   csi_rho=csi_rho), None)

    def go():
        burst = p.burst()
        csi = p.csi()
        n_csi = csi_count(csi_window(burst), csi, burst.numerology)
        report = overhead_report(
            burst, csi, n_csi,
            framework=p.framework_config(),
            gnb_codebook=p.gnb_codebook(),
            gnb_arch=p.gnb_bf(),
            rach_spacing_khz=p.rach_scs,
        )
        header = [k for k, _ in _burst_inputs(p)] + [
            "n_rep", "csi_slots", "csi_symbols", "rho", "n_csi",
            "omega_5ms", "omega_tss", "omega_csi", "omega_tot", "omega_br",
        ]
        row = [v for _, v in _burst_inputs(p)] + [
            burst.n_rep, p.csi_slots, p.csi_symbols, p.csi_rho, n_csi,
            report.omega_5ms, report.omega_tss, report.omega_csi,
            report.omega_tot, report.omega_br,
        ]
        _emit(header, [row], output)

    _run(go)


@main.command("misdetection")
@_common
@click.option("--gnb", type=int, default=None)
@click.option("--ue", type=int, default=None)
@click.option("--density", type=float, default=None, help="gNB density per km^2")
@click.option("--trials", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--workers", type=int, default=None)
@click.option("--scs", "scs", type=int, default=None)
@click.option("--diversity", default=None)
def misdetection_cmd(config, output, sets, gnb, ue, density, trials, seed, workers, scs, diversity) -> None:
    """Monte Carlo SS-block misdetection probability."""
    p = _params(config, _overrides(sets, gnb=gnb, ue=ue, density=density, trials=trials,
                                   seed=seed, scs=scs, diversity=diversity), None)

    def go():
        est = misdetection_probability(
            p.deployment(), p.channel(), p.gnb_array(), p.ue_array(), p.burst(),
            trials=p.trials, seed=p.seed, workers=workers,
        )
        header = [k for k, _ in _burst_inputs(p)] + [
            "m_gnb", "m_ue", "density_per_km2", "trials", "seed",
            "p_md", "halfwidth_95", "misdetections",
        ]
        row = [v for _, v in _burst_inputs(p)] + [
            p.gnb, p.ue, p.density, p.trials, p.seed,
            est.estimate, est.confidence_halfwidth, est.misdetections,
        ]
        _emit(header, [row], output)

    _run(go)


_METRICS = ("ia-delay", "report-delay", "tracking-delay", "rlf", "overhead", "misdetection")


def _metric_row(metric: str, p: Params, workers: Optional[int]):
    if metric == "ia-delay":
        plan = plan_for(p.gnb_codebook(), p.gnb_bf(), p.ue_codebook(), p.ue_bf())
        return ("t_ia_ms",), (ia_delay(plan, p.burst()),)
    if metric == "report-delay":
        return ("t_report_ms",), (
            beam_report_delay(p.framework_config(), p.gnb_codebook(), p.gnb_bf(), p.burst()),
        )
    if metric == "tracking-delay":
        return ("t_tr_ms",), (tracking_delay(p.scenario(), p.csi(), p.burst()),)
    if metric == "rlf":
        plan = plan_for(p.gnb_codebook(), p.gnb_bf(), p.ue_codebook(), p.ue_bf())
        return ("t_rlf_ms",), (rlf_delay(p.framework_config(), plan, p.burst()),)
    if metric == "overhead":
        burst = p.burst()
        csi = p.csi()
        n_csi = csi_count(csi_window(burst), csi, burst.numerology)
        report = overhead_report(burst, csi, n_csi)
        return ("omega_5ms", "omega_tss", "omega_csi", "omega_tot"), (
            report.omega_5ms, report.omega_tss, report.omega_csi, report.omega_tot,
        )
    est = misdetection_probability(
        p.deployment(), p.channel(), p.gnb_array(), p.ue_array(), p.burst(),
        trials=p.trials, seed=p.seed, workers=workers,
    )
    return ("p_md", "halfwidth_95"), (est.estimate, est.confidence_halfwidth)


@main.command("sweep")
@_common
@click.option("--metric", type=click.Choice(_METRICS), required=True)
@click.option("--axis", "axes", multiple=True, metavar="KEY=V1,V2,...",
              help="sweep axis; repeatable, cartesian product")
@click.option("--workers", type=int, default=None)
def sweep_cmd(config, output, sets, metric, axes, workers) -> None:
    """Evaluate a metric over the cartesian product of parameter axes."""
    base = _params(config, _overrides(sets), None)
    axis_defs: List[Tuple[str, List[str]]] = []
    for axis in axes:
        if "=" not in axis:
            click.echo(f"error: --axis expects KEY=V1,V2,..., got '{axis}'", err=True)
            sys.exit(EXIT_VALIDATION)
        key, _, raw = axis.partition("=")
        values = [v.strip() for v in raw.split(",") if v.strip()]
        if not values:
            click.echo(f"error: axis '{key}' has no values", err=True)
            sys.exit(EXIT_VALIDATION)
        axis_defs.append((key.strip(), values))

    def go():
        names = [name for name, _ in axis_defs]
        grid = list(itertools.product(*(values for _, values in axis_defs)))
        click.echo(f"sweep: {len(grid)} grid point(s) over {names or ['(none)']}", err=True)
        rows = []
        header = None
        # grid order is the row order: parallelism never reorders the file
        for point in grid:
            p = load_config(None, {**_as_dict(base), **dict(zip(names, point))})
            metric_header, values = _metric_row(metric, p, workers)
            header = list(names) + list(metric_header)
            rows.append(list(point) + list(values))
        _emit(header or list(names), rows, output)

    _run(go)


def _as_dict(p: Params) -> dict:
    import dataclasses

    return dataclasses.asdict(p)


@main.command("figures")
@click.option("--outdir", "-d", default="figures_csv", show_default=True)
@click.option("--only", default=None, help="regenerate a single figure by name")
def figures_cmd(outdir, only) -> None:
    """Regenerate every covered figure/table data series as CSV files."""
    try:
        if only is not None:
            if only not in figures_mod.FIGURES:
                click.echo(
                    f"error: unknown figure '{only}'; known: {sorted(figures_mod.FIGURES)}",
                    err=True,
                )
                sys.exit(EXIT_VALIDATION)
            import os

            os.makedirs(outdir, exist_ok=True)
            path = os.path.join(outdir, f"{only}.csv")
            with open(path, "w", encoding="ascii", newline="\n") as fh:
                fh.write(figures_mod.render_csv(only))
            written = [path]
        else:
            written = figures_mod.write_all(outdir)
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    for path in written:
        click.echo(path)


@main.command("validate")
@click.option("--config", "-c", default=None, help="INI config file")
@click.option("--set", "-s", "sets", multiple=True, metavar="KEY=VALUE")
def validate_cmd(config, sets) -> None:
    """Report every constraint violation in the configuration."""
    try:
        p = load_config(config, _overrides(sets))
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    except ValidationError as exc:
        click.echo(f"violation: {exc}")
        sys.exit(EXIT_VALIDATION)
    violations = validate(p)
    for message in violations:
        click.echo(f"violation: {message}")
    if violations:
        sys.exit(EXIT_VALIDATION)
    click.echo("ok")


if __name__ == "__main__":
    main()
