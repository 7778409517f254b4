"""Beam tracking: CSI-RS scheduling, tracking latency and RLF recovery."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ValidationError
from .ia import FrameworkConfig, SweepPlan, ia_delay
from .numerology import Numerology, SsBurstConfig, ss_burst_max_duration

CSI_PERIODS_SLOTS = (5, 10, 20, 40, 80, 160, 320, 640)
CSI_SYMBOL_COUNTS = (1, 2, 4)
CSI_RS_SYMBOLS_PER_SLOT = 4
MAX_CSI_RX_DIRECTIONS = 4


class CsiOption(enum.Enum):
    """CSI-RS placement: OPT1 starts one period after the burst, OPT2 uses a
    centering offset and fits one extra transmission."""

    OPT1 = 1
    OPT2 = 2


@dataclass(frozen=True)
class CsiRsConfig:
    option: CsiOption
    t_csi_slots: int
    n_symb: int = 1
    rho: Fraction = Fraction(1)
    n_csi_rx: int = 1

    def __post_init__(self) -> None:
        if self.t_csi_slots not in CSI_PERIODS_SLOTS:
            raise ValidationError(
                f"t_csi_slots must be in {CSI_PERIODS_SLOTS}, got {self.t_csi_slots}"
            )
        if self.n_symb not in CSI_SYMBOL_COUNTS:
            raise ValidationError(
                f"n_symb must be in {CSI_SYMBOL_COUNTS}, got {self.n_symb}"
            )
        # exact rational rho; float inputs go through their decimal repr
        if not isinstance(self.rho, Fraction):
            object.__setattr__(self, "rho", Fraction(str(self.rho)))
        if not 0 < self.rho <= 1:
            raise ValidationError(f"rho must be in (0, 1], got {self.rho}")
        if not 1 <= self.n_csi_rx <= MAX_CSI_RX_DIRECTIONS:
            raise ValidationError(
                f"n_csi_rx must be in 1..{MAX_CSI_RX_DIRECTIONS}, got {self.n_csi_rx}"
            )

    def period_ms(self, numerology: Numerology) -> Fraction:
        return self.t_csi_slots * numerology.slot_ms


@dataclass(frozen=True)
class TrackingScenario:
    """Per-sector tracking load, reduced to the equivalent number of
    single-direction measures."""

    n_user: int
    n_csi_rx: int
    gnb_beams: int
    measures: int = field(init=False)
    z_csi: int = field(init=False)

    def __post_init__(self) -> None:
        if self.n_user < 1:
            raise ValidationError(f"n_user must be >= 1, got {self.n_user}")
        if self.gnb_beams < 1:
            raise ValidationError(f"gnb_beams must be >= 1, got {self.gnb_beams}")
        object.__setattr__(self, "measures", self.n_user * self.n_csi_rx)
        object.__setattr__(self, "z_csi", min(self.measures, self.gnb_beams))


def csi_window(burst: SsBurstConfig) -> Fraction:
    """Time (ms) left for CSI-RS between two SS bursts."""
    return burst.t_ss_ms - ss_burst_max_duration(burst.numerology)


def csi_count(window: Fraction, csi: CsiRsConfig, numerology: Numerology) -> int:
    """CSI-RS transmissions schedulable in the window: floor of the period
    ratio for OPT1, ceil for OPT2 (zero if there is no window at all)."""
    if window < 0:
        raise ValidationError(f"window must be >= 0, got {window}")
    ratio = Fraction(window) / csi.period_ms(numerology)
    if csi.option is CsiOption.OPT1:
        return math.floor(ratio)
    return math.ceil(ratio) if window > 0 else 0


def csi_offset(window: Fraction, csi: CsiRsConfig, numerology: Numerology) -> Fraction:
    """OPT2 start offset (ms) that centers the CSI-RS train in the window."""
    if csi.option is not CsiOption.OPT2:
        raise ValidationError("csi_offset is only defined for option 2")
    n_csi = csi_count(window, csi, numerology)
    if n_csi < 1:
        raise ValidationError("no CSI-RS schedulable in window")
    return (Fraction(window) - (n_csi - 1) * csi.period_ms(numerology)) / 2


def tracking_delay(
    scenario: TrackingScenario, csi: CsiRsConfig, burst: SsBurstConfig
) -> Fraction:
    """Average delay (ms) until the first CSI-RS of each required direction.

    The z_csi required transmissions are scheduled in order, n_csi per burst
    period; the average is over their reception instants, measured from the
    end of an SS burst.
    """
    numerology = burst.numerology
    window = csi_window(burst)
    n_csi = csi_count(window, csi, numerology)
    if n_csi == 0:
        raise ValidationError("no CSI-RS schedulable in window")
    t_ss = Fraction(burst.t_ss_ms)
    t_csi = csi.period_ms(numerology)
    z = scenario.z_csi
    periods, rem = divmod(z, n_csi)

    if csi.option is CsiOption.OPT1:
        # instants i*T_CSI, i = 1..n_csi, in each period
        total = (
            t_ss * n_csi * periods * (periods - 1) / 2
            + periods * t_csi * n_csi * (n_csi + 1) / 2
            + rem * periods * t_ss
            + t_csi * rem * (rem + 1) / 2
        )
    else:
        # instants O + i*T_CSI, i = 0..n_csi-1, in each period
        offset = csi_offset(window, csi, numerology)
        total = (
            t_ss * n_csi * periods * (periods - 1) / 2
            + periods * (t_csi * n_csi * (n_csi - 1) / 2 + n_csi * offset)
            + rem * (periods * t_ss + offset)
            + t_csi * rem * (rem - 1) / 2
        )
    return total / z


def orthogonal_csi_capacity(burst: SsBurstConfig, csi: CsiRsConfig) -> int:
    """Orthogonal CSI-RS opportunities between two bursts: slots in the
    window times per-slot opportunities times the frequency reuse factor."""
    window = csi_window(burst)
    if window <= 0:
        return 0
    slots = window / burst.numerology.slot_ms
    per_slot = CSI_RS_SYMBOLS_PER_SLOT // csi.n_symb
    return int(slots * per_slot * math.floor(1 / csi.rho))


def max_neighbors(capacity: int, n_csi: int) -> int:
    """Neighbor gNBs supportable without CSI-RS collisions."""
    if n_csi < 1:
        raise ValidationError(f"n_csi must be >= 1, got {n_csi}")
    return max(0, capacity // n_csi - 1)


def rlf_delay(
    framework: FrameworkConfig, plan: SweepPlan, burst: SsBurstConfig
) -> Fraction:
    """Radio-link-failure recovery delay (ms).

    SA re-runs initial access from the next burst (mean wait T_SS/2). NSA
    with SRS parameters lets the gNB detect the failure after N_SRS missed
    sounding signals; otherwise the UE notifies over the LTE link.
    """
    if framework.is_sa:
        return Fraction(burst.t_ss_ms, 2) + ia_delay(plan, burst)
    if framework.srs_period_ms is not None:
        if framework.srs_miss_count is None:
            raise ValidationError("srs_miss_count is required with srs_period_ms")
        t_srs = Fraction(str(framework.srs_period_ms))
        return t_srs / 2 + (framework.srs_miss_count - 1) * t_srs
    return Fraction(str(framework.lte_latency_ms))
