"""Antenna arrays, beam codebooks and beamforming architectures.

Maps array size to beamwidth and direction counts (azimuth x elevation),
and architecture to the number of simultaneously processable beams.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import ValidationError

# Calibrated 3 dB beamwidths for square uniform arrays. Other element counts
# fall back to 120/sqrt(M) degrees, flagged as uncalibrated.
BEAMWIDTH_TABLE_DEG = {4: 60, 16: 26, 64: 13}

GNB_AZIMUTH_RANGE_DEG = 120
UE_AZIMUTH_RANGE_DEG = 360
ELEVATION_RANGE_DEG = 60


class Role(enum.Enum):
    GNB_SECTOR = "gnb"
    UE = "ue"
    UE_OMNI = "ue-omni"


class BfKind(enum.Enum):
    ANALOG = "analog"
    HYBRID = "hybrid"
    DIGITAL = "digital"
    OMNI = "omni"


@dataclass(frozen=True)
class ArrayConfig:
    """A transceiver's antenna array and the angular sector it must cover."""

    elements: int
    role: Role
    azimuth_range_deg: Optional[int] = None
    elevation_range_deg: int = ELEVATION_RANGE_DEG

    def __post_init__(self) -> None:
        if self.elements < 1:
            raise ValidationError(f"elements must be >= 1, got {self.elements}")
        if self.azimuth_range_deg is None:
            default = (
                GNB_AZIMUTH_RANGE_DEG
                if self.role is Role.GNB_SECTOR
                else UE_AZIMUTH_RANGE_DEG
            )
            object.__setattr__(self, "azimuth_range_deg", default)


@dataclass(frozen=True)
class BeamCodebook:
    """Direction grid swept by an array, plus its boresight gain."""

    beamwidth_deg: float
    n_azimuth: int
    n_elevation: int
    total_directions: int
    boresight_gain_dbi: float
    elements: int
    calibrated: bool


@dataclass(frozen=True)
class BfArchitecture:
    """Beamforming architecture; hybrid carries its RF-chain divisor."""

    kind: BfKind
    hybrid_divisor: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is BfKind.HYBRID:
            if self.hybrid_divisor is None:
                raise ValidationError("hybrid beamforming requires hybrid_divisor")
            if self.hybrid_divisor < 2:
                raise ValidationError(
                    f"hybrid_divisor must be >= 2, got {self.hybrid_divisor}"
                )


def beamwidth_for_elements(elements: int) -> float:
    """3 dB beamwidth in degrees for a square array of ``elements`` antennas."""
    if elements < 1:
        raise ValidationError(f"elements must be >= 1, got {elements}")
    if elements in BEAMWIDTH_TABLE_DEG:
        return float(BEAMWIDTH_TABLE_DEG[elements])
    side = math.isqrt(elements)
    if side * side != elements:
        raise ValidationError(
            f"no calibrated beamwidth for {elements} elements and the "
            "fallback formula needs a perfect square"
        )
    return 120.0 / math.sqrt(elements)


def codebook(array: ArrayConfig) -> BeamCodebook:
    """Direction counts for an array: ceil(range / beamwidth) on each axis.

    An omnidirectional UE covers everything with a single 0 dBi "beam".
    """
    if array.role is Role.UE_OMNI:
        return BeamCodebook(
            beamwidth_deg=360.0,
            n_azimuth=1,
            n_elevation=1,
            total_directions=1,
            boresight_gain_dbi=0.0,
            elements=array.elements,
            calibrated=True,
        )
    width = beamwidth_for_elements(array.elements)
    n_az = math.ceil(array.azimuth_range_deg / width)
    n_el = math.ceil(array.elevation_range_deg / width)
    return BeamCodebook(
        beamwidth_deg=width,
        n_azimuth=n_az,
        n_elevation=n_el,
        total_directions=n_az * n_el,
        boresight_gain_dbi=10.0 * math.log10(array.elements),
        elements=array.elements,
        calibrated=array.elements in BEAMWIDTH_TABLE_DEG,
    )


def simultaneous_beams(arch: BfArchitecture, elements: int, total_directions: int) -> int:
    """Number of beams the transceiver can process at once (K_BF)."""
    if total_directions < 1:
        raise ValidationError(
            f"total_directions must be >= 1, got {total_directions}"
        )
    if arch.kind in (BfKind.ANALOG, BfKind.OMNI):
        return 1
    cap = min(total_directions, elements)
    if arch.kind is BfKind.DIGITAL:
        return cap
    return max(1, cap // arch.hybrid_divisor)
