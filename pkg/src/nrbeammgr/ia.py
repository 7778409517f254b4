"""Initial-access reactiveness: sweep size, IA delay and beam reporting."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .beams import BeamCodebook, BfArchitecture, BfKind, simultaneous_beams
from .errors import ValidationError
from .numerology import SsBurstConfig, burst_tail_time

LTE_LATENCIES_MS = (10, 4, 0.8)

# A RACH occasion spans half a slot and sweeps two directions; a burst
# period hosts at most n_ss occasions.
RACH_DIRECTIONS_PER_OCCASION = 2
RACH_OCCASION_SLOT_FRACTION = Fraction(1, 2)


class FrameworkKind(enum.Enum):
    SA_DL = "sa-dl"
    NSA_DL = "nsa-dl"
    NSA_UL = "nsa-ul"


@dataclass(frozen=True)
class FrameworkConfig:
    """Measurement framework selection plus its NSA-side parameters."""

    kind: FrameworkKind
    lte_latency_ms: Optional[float] = None
    srs_period_ms: Optional[float] = None
    srs_miss_count: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is not FrameworkKind.SA_DL and self.lte_latency_ms is None:
            raise ValidationError(
                f"lte_latency_ms is required for framework {self.kind.value}"
            )
        if self.srs_period_ms is not None and self.srs_period_ms <= 0:
            raise ValidationError(
                f"srs_period_ms must be > 0, got {self.srs_period_ms}"
            )
        if self.srs_miss_count is not None and self.srs_miss_count < 1:
            raise ValidationError(
                f"srs_miss_count must be >= 1, got {self.srs_miss_count}"
            )

    @property
    def is_sa(self) -> bool:
        return self.kind is FrameworkKind.SA_DL


@dataclass(frozen=True)
class SweepPlan:
    """An exhaustive sweep over every gNB/UE direction pair."""

    s_d: int
    gnb_codebook: BeamCodebook
    ue_codebook: BeamCodebook
    gnb_kbf: int
    ue_kbf: int


def sweep_block_count(
    gnb_codebook: BeamCodebook,
    gnb_kbf: int,
    ue_codebook: BeamCodebook,
    ue_kbf: int,
) -> SweepPlan:
    """Total SS blocks needed to cover all direction pairs.

    Each side batches its directions in groups of K_BF; the sweep needs the
    product of the two batch counts. The uplink framework uses the same
    count with SRSs occupying the SS block resources.
    """
    if gnb_kbf < 1 or ue_kbf < 1:
        raise ValidationError("K_BF must be >= 1 on both sides")
    s_d = math.ceil(gnb_codebook.total_directions / gnb_kbf) * math.ceil(
        ue_codebook.total_directions / ue_kbf
    )
    return SweepPlan(
        s_d=s_d,
        gnb_codebook=gnb_codebook,
        ue_codebook=ue_codebook,
        gnb_kbf=gnb_kbf,
        ue_kbf=ue_kbf,
    )


def plan_for(
    gnb_codebook: BeamCodebook,
    gnb_arch: BfArchitecture,
    ue_codebook: BeamCodebook,
    ue_arch: BfArchitecture,
) -> SweepPlan:
    """Convenience wrapper deriving both K_BF values from the architectures."""
    gnb_kbf = simultaneous_beams(
        gnb_arch, gnb_codebook.elements, gnb_codebook.total_directions
    )
    ue_kbf = simultaneous_beams(
        ue_arch, ue_codebook.elements, ue_codebook.total_directions
    )
    return sweep_block_count(gnb_codebook, gnb_kbf, ue_codebook, ue_kbf)


def ia_delay(plan: SweepPlan, burst: SsBurstConfig) -> Fraction:
    """Delay (ms) from the first SS burst start to the end of the sweep.

    Full bursts carry n_ss blocks each; the remainder lands in the last
    burst and only its tail time counts.
    """
    full_bursts = math.ceil(plan.s_d / burst.n_ss) - 1
    blocks_left = plan.s_d - burst.n_ss * full_bursts
    return burst.t_ss_ms * full_bursts + burst_tail_time(blocks_left, burst.numerology)


def beam_report_delay(
    framework: FrameworkConfig,
    gnb_codebook: Optional[BeamCodebook],
    gnb_arch: Optional[BfArchitecture],
    burst: SsBurstConfig,
) -> Fraction:
    """Delay (ms) for the UE to report its chosen beam.

    NSA forwards the decision over the LTE link. SA needs a RACH-occasion
    sweep at the gNB: ceil(directions / (2 K_BF)) occasions of half a slot,
    at most n_ss per burst period.
    """
    if not framework.is_sa:
        return Fraction(str(framework.lte_latency_ms))
    if gnb_codebook is None or gnb_arch is None:
        raise ValidationError("SA beam reporting requires the gNB codebook and architecture")
    kbf = simultaneous_beams(gnb_arch, gnb_codebook.elements, gnb_codebook.total_directions)
    occasions = math.ceil(
        gnb_codebook.total_directions / (RACH_DIRECTIONS_PER_OCCASION * kbf)
    )
    full_bursts = math.ceil(occasions / burst.n_ss) - 1
    remaining = occasions - burst.n_ss * full_bursts
    occasion_ms = burst.numerology.slot_ms * RACH_OCCASION_SLOT_FRACTION
    return burst.t_ss_ms * full_bursts + remaining * occasion_ms


def rach_occasions(gnb_codebook: BeamCodebook, gnb_arch: BfArchitecture) -> int:
    """RACH occasions needed for an SA reporting sweep (1 for NSA)."""
    kbf = simultaneous_beams(gnb_arch, gnb_codebook.elements, gnb_codebook.total_directions)
    return math.ceil(gnb_codebook.total_directions / (RACH_DIRECTIONS_PER_OCCASION * kbf))


@dataclass(frozen=True)
class IaLatency:
    """End-to-end IA latency with its two addends kept separate."""

    sweep_ms: Fraction
    report_ms: Fraction

    @property
    def total_ms(self) -> Fraction:
        return self.sweep_ms + self.report_ms


def ia_total_latency(
    framework: FrameworkConfig,
    plan: SweepPlan,
    burst: SsBurstConfig,
    gnb_arch: Optional[BfArchitecture] = None,
    include_expected_wait: bool = False,
) -> IaLatency:
    """Sweep plus reporting delay; optionally add the mean T_SS/2 wait the
    UE spends before the first burst (off by default)."""
    sweep = ia_delay(plan, burst)
    if include_expected_wait:
        sweep += Fraction(burst.t_ss_ms, 2)
    report = beam_report_delay(framework, plan.gnb_codebook, gnb_arch, burst)
    return IaLatency(sweep_ms=sweep, report_ms=report)
