"""Control-overhead ratios for SS bursts, CSI-RS and SA beam reporting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .beams import BeamCodebook, BfArchitecture
from .errors import ValidationError
from .ia import FrameworkConfig, rach_occasions
from .numerology import (
    SS_BLOCK_SUBCARRIERS,
    SsBurstConfig,
    numerology_from_spacing,
    ss_burst_max_duration,
)
from .tracking import CsiRsConfig, csi_window

# Reserved RACH bandwidth per agreed RACH numerology.
RACH_BANDWIDTH_HZ = {60: 10_000_000, 120: 20_000_000}
RACH_OCCASION_SYMBOLS = 4


@dataclass(frozen=True)
class OverheadReport:
    """All overhead ratios for one configuration."""

    r_ss_hz_ms: Fraction
    omega_5ms: Fraction
    omega_tss: Fraction
    omega_csi: Fraction
    omega_tot: Fraction
    omega_br: Optional[Fraction] = None


def ss_resources(burst: SsBurstConfig) -> Fraction:
    """Time-frequency area (Hz*ms) consumed by one burst's SS blocks."""
    bandwidth_hz = SS_BLOCK_SUBCARRIERS * burst.n_rep * burst.numerology.spacing_khz * 1000
    return burst.n_ss * 4 * burst.numerology.symbol_ms * bandwidth_hz


def ss_overhead(burst: SsBurstConfig) -> Tuple[Fraction, Fraction, Fraction]:
    """SS-block overhead: resource area, ratio over the 5 ms burst window
    and ratio over the full burst period."""
    r_ss = ss_resources(burst)
    omega_5ms = r_ss / (5 * burst.bandwidth_hz)
    omega_tss = r_ss / (burst.t_ss_ms * burst.bandwidth_hz)
    return r_ss, omega_5ms, omega_tss


def csi_overhead(burst: SsBurstConfig, csi: CsiRsConfig, n_csi: int) -> Fraction:
    """Fraction of the inter-burst window spent on CSI-RS."""
    if n_csi == 0:
        return Fraction(0)
    window = csi_window(burst)
    if window <= 0:
        raise ValidationError("CSI-RS overhead needs a positive inter-burst window")
    return n_csi * csi.n_symb * burst.numerology.symbol_ms * csi.rho / window


def total_overhead(burst: SsBurstConfig, csi: CsiRsConfig, n_csi: int) -> Fraction:
    """Combined SS-burst and CSI-RS overhead over the whole burst period."""
    csi_area = n_csi * csi.n_symb * burst.numerology.symbol_ms * csi.rho * burst.bandwidth_hz
    return (csi_area + ss_resources(burst)) / (burst.t_ss_ms * burst.bandwidth_hz)


def report_overhead(
    framework: FrameworkConfig,
    gnb_codebook: Optional[BeamCodebook],
    gnb_arch: Optional[BfArchitecture],
    burst: SsBurstConfig,
    rach_spacing_khz: int = 60,
) -> Fraction:
    """Overhead of the beam-reporting RACH occasions over the burst period.

    Each occasion spans 4 symbols at the RACH numerology over the reserved
    RACH bandwidth; NSA needs a single occasion.
    """
    if rach_spacing_khz not in RACH_BANDWIDTH_HZ:
        raise ValidationError(
            f"rach_spacing_khz must be in {sorted(RACH_BANDWIDTH_HZ)}, got {rach_spacing_khz}"
        )
    if framework.is_sa:
        if gnb_codebook is None or gnb_arch is None:
            raise ValidationError(
                "SA report overhead requires the gNB codebook and architecture"
            )
        occasions = rach_occasions(gnb_codebook, gnb_arch)
    else:
        occasions = 1
    rach_symbol_ms = numerology_from_spacing(rach_spacing_khz).symbol_ms
    area = occasions * RACH_OCCASION_SYMBOLS * rach_symbol_ms * RACH_BANDWIDTH_HZ[rach_spacing_khz]
    return area / (burst.t_ss_ms * burst.bandwidth_hz)


def overhead_report(
    burst: SsBurstConfig,
    csi: CsiRsConfig,
    n_csi: int,
    framework: Optional[FrameworkConfig] = None,
    gnb_codebook: Optional[BeamCodebook] = None,
    gnb_arch: Optional[BfArchitecture] = None,
    rach_spacing_khz: int = 60,
) -> OverheadReport:
    r_ss, omega_5ms, omega_tss = ss_overhead(burst)
    omega_csi = csi_overhead(burst, csi, n_csi)
    omega_tot = total_overhead(burst, csi, n_csi)
    omega_br = None
    if framework is not None:
        omega_br = report_overhead(
            framework, gnb_codebook, gnb_arch, burst, rach_spacing_khz
        )
    return OverheadReport(
        r_ss_hz_ms=r_ss,
        omega_5ms=omega_5ms,
        omega_tss=omega_tss,
        omega_csi=omega_csi,
        omega_tot=omega_tot,
        omega_br=omega_br,
    )
