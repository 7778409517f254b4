"""NR frame structure: numerology-derived timing and SS burst geometry.

All durations are kept as exact rational milliseconds (``fractions.Fraction``)
so that golden-value comparisons never suffer float drift; the quantities
involved are all dyadic/decimal and survive exact arithmetic end to end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ValidationError

SUPPORTED_SPACINGS_KHZ = (15, 30, 60, 120, 240)
BEAM_MGMT_SPACINGS_KHZ = (120, 240)

SS_BLOCK_COUNTS = (8, 16, 32, 64)
MAX_SS_BLOCKS_PER_BURST = 64
BURST_PERIODS_MS = (5, 10, 20, 40, 80, 160)
SS_BLOCK_SUBCARRIERS = 240
DEFAULT_BANDWIDTH_HZ = 400_000_000

# 71.35 us per symbol at 15 kHz, expressed in ms.
_BASE_SYMBOL_MS = Fraction(7135, 100_000)


@dataclass(frozen=True)
class Numerology:
    """Subcarrier spacing and the slot/symbol grid it induces."""

    spacing_khz: int
    n: int
    slot_ms: Fraction
    symbol_ms: Fraction


def numerology_from_spacing(spacing_khz: int) -> Numerology:
    """Build the timing grid for a subcarrier spacing of 15*2^n kHz.

    Slot duration is 1/2^n ms and symbol duration 71.35/2^n us; fourteen
    symbols fit in a slot with a small guard remainder.
    """
    if spacing_khz not in SUPPORTED_SPACINGS_KHZ:
        raise ValidationError(
            f"spacing_khz must be one of {SUPPORTED_SPACINGS_KHZ}, got {spacing_khz}"
        )
    n = SUPPORTED_SPACINGS_KHZ.index(spacing_khz)
    return Numerology(
        spacing_khz=spacing_khz,
        n=n,
        slot_ms=Fraction(1, 2**n),
        symbol_ms=_BASE_SYMBOL_MS / 2**n,
    )


def _require_beam_mgmt(numerology: Numerology) -> None:
    if numerology.spacing_khz not in BEAM_MGMT_SPACINGS_KHZ:
        raise ValidationError(
            "beam management requires spacing_khz in "
            f"{BEAM_MGMT_SPACINGS_KHZ}, got {numerology.spacing_khz}"
        )


def ss_burst_max_duration(numerology: Numerology) -> Fraction:
    """Maximum SS burst duration in ms: 5 at 120 kHz, 2.5 at 240 kHz.

    SS blocks are confined to the first 5 ms of the burst period, so the
    burst never extends past that window.
    """
    _require_beam_mgmt(numerology)
    return Fraction(5) if numerology.spacing_khz == 120 else Fraction(5, 2)


def burst_tail_time(n_blocks_left: int, numerology: Numerology) -> Fraction:
    """Time (ms) to deliver the last ``n_blocks_left`` SS blocks of a sweep.

    Blocks occupy symbols 2-5 and 8-11 of each slot (two blocks per slot).
    An even remainder ends 2 symbols before the slot boundary; an odd one
    spills 6 symbols into the next slot.
    """
    _require_beam_mgmt(numerology)
    if n_blocks_left < 1:
        raise ValidationError(
            f"n_blocks_left must be >= 1, got {n_blocks_left}"
        )
    if n_blocks_left % 2 == 0:
        return Fraction(n_blocks_left, 2) * numerology.slot_ms - 2 * numerology.symbol_ms
    return (n_blocks_left // 2) * numerology.slot_ms + 6 * numerology.symbol_ms


@dataclass(frozen=True)
class SsBurstConfig:
    """SS burst layout: block count, periodicity and frequency-diversity mode.

    ``n_rep`` is derived from ``freq_diversity`` and the spacing: a single
    copy without diversity, otherwise as many 240-subcarrier repetitions as
    fit in the carrier (11 at 120 kHz, 5 at 240 kHz).
    """

    n_ss: int
    t_ss_ms: int
    numerology: Numerology
    freq_diversity: bool = False
    bandwidth_hz: int = DEFAULT_BANDWIDTH_HZ
    n_rep: int = field(init=False)

    def __post_init__(self) -> None:
        if self.n_ss not in SS_BLOCK_COUNTS:
            raise ValidationError(
                f"n_ss must be one of {SS_BLOCK_COUNTS}, got {self.n_ss}"
            )
        if self.t_ss_ms not in BURST_PERIODS_MS:
            raise ValidationError(
                f"t_ss_ms must be in {BURST_PERIODS_MS}, got {self.t_ss_ms}"
            )
        _require_beam_mgmt(self.numerology)
        ss_bandwidth_hz = SS_BLOCK_SUBCARRIERS * self.numerology.spacing_khz * 1000
        if ss_bandwidth_hz > self.bandwidth_hz:
            raise ValidationError(
                f"SS block bandwidth {ss_bandwidth_hz} Hz exceeds carrier "
                f"bandwidth {self.bandwidth_hz} Hz"
            )
        if not self.freq_diversity:
            n_rep = 1
        else:
            n_rep = 11 if self.numerology.spacing_khz == 120 else 5
        object.__setattr__(self, "n_rep", n_rep)

    @property
    def max_burst_duration_ms(self) -> Fraction:
        return ss_burst_max_duration(self.numerology)
