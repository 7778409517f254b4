"""Regeneration of the evaluation's figure and table data series as CSVs.

Every cell is either an echoed input or the output of exactly one library
call, formatted with 10 significant digits, so regeneration is byte-stable.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from .beams import ArrayConfig, BfArchitecture, BfKind, Role, codebook
from .ia import FrameworkConfig, FrameworkKind, beam_report_delay, ia_delay, plan_for
from .numerology import BURST_PERIODS_MS, SS_BLOCK_COUNTS, SsBurstConfig, numerology_from_spacing
from .overhead import report_overhead, ss_overhead, total_overhead
from .overhead import csi_overhead
from .tracking import (
    CsiOption,
    CsiRsConfig,
    TrackingScenario,
    csi_count,
    csi_window,
    rlf_delay,
    tracking_delay,
)

Rows = Tuple[Sequence[str], List[Sequence[object]]]

_ANTENNAS = [(4, 4), (16, 4), (64, 4), (16, 16), (64, 16), (64, "omni")]

_ARCHES = {
    "analog": BfArchitecture(kind=BfKind.ANALOG),
    "hybrid": BfArchitecture(kind=BfKind.HYBRID, hybrid_divisor=2),
    "digital": BfArchitecture(kind=BfKind.DIGITAL),
    "omni": BfArchitecture(kind=BfKind.OMNI),
}


def _burst(n_ss: int, t_ss: int, scs: int, diversity: bool = False) -> SsBurstConfig:
    return SsBurstConfig(
        n_ss=n_ss,
        t_ss_ms=t_ss,
        numerology=numerology_from_spacing(scs),
        freq_diversity=diversity,
    )


def _pair(m_gnb: int, m_ue, gnb_arch: str, ue_arch: str):
    gnb = codebook(ArrayConfig(elements=m_gnb, role=Role.GNB_SECTOR))
    if m_ue == "omni":
        ue = codebook(ArrayConfig(elements=1, role=Role.UE_OMNI))
        ue_bf = _ARCHES["omni"]
    else:
        ue = codebook(ArrayConfig(elements=m_ue, role=Role.UE))
        ue_bf = _ARCHES[ue_arch]
    return plan_for(gnb, _ARCHES[gnb_arch], ue, ue_bf)


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return "%.12g" % float(value)
    if isinstance(value, float):
        return "%.12g" % value
    return str(value)


def _ia_vs_nss(gnb_arch: str, ue_arch: str) -> Rows:
    rows = []
    for m_gnb, m_ue in _ANTENNAS:
        plan = _pair(m_gnb, m_ue, gnb_arch, ue_arch)
        for n_ss in SS_BLOCK_COUNTS:
            delay = ia_delay(plan, _burst(n_ss, 20, 240))
            rows.append((m_gnb, m_ue, gnb_arch, ue_arch, n_ss, 20, 240, delay))
    return (
        ("m_gnb", "m_ue", "gnb_arch", "ue_arch", "n_ss", "t_ss_ms", "scs_khz", "t_ia_ms"),
        rows,
    )


def _ia_vs_tss() -> Rows:
    rows = []
    for m_gnb, m_ue in _ANTENNAS:
        plan = _pair(m_gnb, m_ue, "analog", "hybrid")
        for t_ss in BURST_PERIODS_MS:
            delay = ia_delay(plan, _burst(64, t_ss, 240))
            rows.append((m_gnb, m_ue, "analog", "hybrid", 64, t_ss, 240, delay))
    return (
        ("m_gnb", "m_ue", "gnb_arch", "ue_arch", "n_ss", "t_ss_ms", "scs_khz", "t_ia_ms"),
        rows,
    )


def _ia_vs_scs() -> Rows:
    rows = []
    for m_gnb, m_ue in [(4, 4), (64, "omni")]:
        plan = _pair(m_gnb, m_ue, "analog", "analog")
        for scs in (120, 240):
            delay = ia_delay(plan, _burst(64, 20, scs))
            rows.append((m_gnb, m_ue, "analog", "analog", 64, 20, scs, delay))
    return (
        ("m_gnb", "m_ue", "gnb_arch", "ue_arch", "n_ss", "t_ss_ms", "scs_khz", "t_ia_ms"),
        rows,
    )


def _tracking_grid() -> Rows:
    burst = _burst(64, 20, 120)
    rows = []
    for t_csi_slots in (5, 80):
        for option in (CsiOption.OPT1, CsiOption.OPT2):
            csi = CsiRsConfig(option=option, t_csi_slots=t_csi_slots)
            for n_user in (5, 10, 20):
                for rx in (1, 2, 3, 4):
                    scenario = TrackingScenario(n_user=n_user, n_csi_rx=rx, gnb_beams=50)
                    delay = tracking_delay(scenario, csi, burst)
                    rows.append(
                        (t_csi_slots, option.value, n_user, rx, scenario.z_csi, delay)
                    )
    return (("t_csi_slots", "option", "n_user", "n_csi_rx", "z_csi", "t_tr_ms"), rows)


def _csi_counts() -> Rows:
    numerology = numerology_from_spacing(120)
    rows = []
    for t_csi_slots in (10, 20, 40, 80):
        for option in (CsiOption.OPT1, CsiOption.OPT2):
            csi = CsiRsConfig(option=option, t_csi_slots=t_csi_slots)
            for t_ss in BURST_PERIODS_MS:
                window = csi_window(_burst(64, t_ss, 120))
                rows.append(
                    (t_csi_slots, option.value, t_ss, csi_count(window, csi, numerology))
                )
    return (("t_csi_slots", "option", "t_ss_ms", "n_csi"), rows)


_REP_CONFIGS = [(120, False), (240, False), (120, True), (240, True)]


def _omega_5ms() -> Rows:
    rows = []
    for scs, diversity in _REP_CONFIGS:
        for n_ss in SS_BLOCK_COUNTS:
            burst = _burst(n_ss, 20, scs, diversity)
            rows.append((scs, int(diversity), burst.n_rep, n_ss, ss_overhead(burst)[1]))
    return (("scs_khz", "diversity", "n_rep", "n_ss", "omega_5ms"), rows)


def _omega_tss() -> Rows:
    rows = []
    for scs, diversity in _REP_CONFIGS:
        for t_ss in BURST_PERIODS_MS:
            burst = _burst(64, t_ss, scs, diversity)
            rows.append((scs, int(diversity), burst.n_rep, t_ss, ss_overhead(burst)[2]))
    return (("scs_khz", "diversity", "n_rep", "t_ss_ms", "omega_tss"), rows)


_RHOS = ("0.072", "0.1", "0.144", "0.2", "0.4", "0.5", "1")


def _omega_csi() -> Rows:
    burst = _burst(64, 20, 120)
    numerology = burst.numerology
    rows = []
    for t_csi_slots in (40, 5):
        for n_symb in (1, 2, 4):
            for rho in _RHOS:
                csi = CsiRsConfig(
                    option=CsiOption.OPT1,
                    t_csi_slots=t_csi_slots,
                    n_symb=n_symb,
                    rho=Fraction(rho),
                )
                n_csi = csi_count(csi_window(burst), csi, numerology)
                rows.append(
                    (t_csi_slots, n_symb, rho, n_csi, csi_overhead(burst, csi, n_csi))
                )
    return (("t_csi_slots", "n_symb", "rho", "n_csi", "omega_csi"), rows)


def _omega_tot() -> Rows:
    rows = []
    for scs, diversity in _REP_CONFIGS:
        burst = _burst(64, 20, scs, diversity)
        for n_symb in (1, 2, 4):
            for rho in _RHOS:
                csi = CsiRsConfig(
                    option=CsiOption.OPT1, t_csi_slots=5, n_symb=n_symb, rho=Fraction(rho)
                )
                n_csi = csi_count(csi_window(burst), csi, burst.numerology)
                rows.append(
                    (
                        scs,
                        int(diversity),
                        n_symb,
                        rho,
                        n_csi,
                        total_overhead(burst, csi, n_csi),
                    )
                )
    return (("scs_khz", "diversity", "n_symb", "rho", "n_csi", "omega_tot"), rows)


def _report_delays() -> Rows:
    rows = []
    for m_gnb in (4, 16, 64):
        gnb = codebook(ArrayConfig(elements=m_gnb, role=Role.GNB_SECTOR))
        for arch in ("analog", "hybrid", "digital"):
            for n_ss in (8, 64):
                burst = _burst(n_ss, 20, 120)
                delay = beam_report_delay(
                    FrameworkConfig(kind=FrameworkKind.SA_DL), gnb, _ARCHES[arch], burst
                )
                rows.append((m_gnb, arch, n_ss, 20, 120, delay))
    return (("m_gnb", "gnb_arch", "n_ss", "t_ss_ms", "scs_khz", "t_br_ms"), rows)


_RLF_COLUMNS = [
    (8, 20, "analog", "analog"),
    (64, 40, "digital", "analog"),
    (64, 80, "digital", "analog"),
]


def _rlf_table() -> Rows:
    sa = FrameworkConfig(kind=FrameworkKind.SA_DL)
    rows = []
    for m_gnb, m_ue in [(4, 4), (64, "omni"), (64, 16)]:
        for n_ss, t_ss, gnb_arch, ue_arch in _RLF_COLUMNS:
            plan = _pair(m_gnb, m_ue, gnb_arch, ue_arch)
            delay = rlf_delay(sa, plan, _burst(n_ss, t_ss, 120))
            rows.append((m_gnb, m_ue, gnb_arch, ue_arch, n_ss, t_ss, 120, delay))
    return (
        ("m_gnb", "m_ue", "gnb_arch", "ue_arch", "n_ss", "t_ss_ms", "scs_khz", "t_rlf_ms"),
        rows,
    )


def _report_overheads() -> Rows:
    sa = FrameworkConfig(kind=FrameworkKind.SA_DL)
    burst = _burst(64, 20, 120)
    rows = []
    for m_gnb in (4, 16, 64):
        gnb = codebook(ArrayConfig(elements=m_gnb, role=Role.GNB_SECTOR))
        for arch in ("analog", "digital"):
            for rach_scs in (60, 120):
                ratio = report_overhead(sa, gnb, _ARCHES[arch], burst, rach_scs)
                rows.append((m_gnb, arch, rach_scs, ratio))
    return (("m_gnb", "gnb_arch", "rach_scs_khz", "omega_br"), rows)


FIGURES: Dict[str, Callable[[], Rows]] = {
    "ia_vs_nss_analog_analog": lambda: _ia_vs_nss("analog", "analog"),
    "ia_vs_nss_analog_hybrid": lambda: _ia_vs_nss("analog", "hybrid"),
    "ia_vs_nss_analog_digital": lambda: _ia_vs_nss("analog", "digital"),
    "ia_vs_nss_digital_analog": lambda: _ia_vs_nss("digital", "analog"),
    "ia_vs_tss": _ia_vs_tss,
    "ia_vs_scs": _ia_vs_scs,
    "tracking_delay": _tracking_grid,
    "csi_counts": _csi_counts,
    "omega_5ms": _omega_5ms,
    "omega_tss": _omega_tss,
    "omega_csi": _omega_csi,
    "omega_tot": _omega_tot,
    "report_delay": _report_delays,
    "rlf_recovery": _rlf_table,
    "report_overhead": _report_overheads,
}


def render_csv(name: str) -> str:
    header, rows = FIGURES[name]()
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(cell) for cell in row))
    return "\n".join(lines) + "\n"


def write_all(outdir: str) -> List[str]:
    os.makedirs(outdir, exist_ok=True)
    written = []
    for name in sorted(FIGURES):
        path = os.path.join(outdir, f"{name}.csv")
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(render_csv(name))
        written.append(path)
    return written
