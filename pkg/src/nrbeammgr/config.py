"""Flat key-value configuration shared by the CLI and the sweep engine.

The config file is INI-style with one section per parameter group; every
key can be overridden from the command line with ``--key value``.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import List, Optional

from .beams import ArrayConfig, BeamCodebook, BfArchitecture, BfKind, Role, codebook
from .channel import ChannelParams, DeploymentModel, PathlossParams
from .errors import ValidationError
from .ia import FrameworkConfig, FrameworkKind
from .numerology import (
    BEAM_MGMT_SPACINGS_KHZ,
    BURST_PERIODS_MS,
    DEFAULT_BANDWIDTH_HZ,
    SS_BLOCK_COUNTS,
    SsBurstConfig,
    numerology_from_spacing,
)
from .tracking import (
    CSI_PERIODS_SLOTS,
    CSI_SYMBOL_COUNTS,
    CsiOption,
    CsiRsConfig,
    MAX_CSI_RX_DIRECTIONS,
    TrackingScenario,
)

_ARCH_NAMES = {k.value: k for k in BfKind}
_FRAMEWORK_NAMES = {k.value: k for k in FrameworkKind}


@dataclass(frozen=True)
class Params:
    """Every tunable of the evaluation, with the ledger defaults."""

    # burst
    scs: int = 120
    nss: int = 8
    tss: int = 20
    diversity: bool = False
    bandwidth: int = DEFAULT_BANDWIDTH_HZ
    # arrays / beamforming
    gnb: int = 64
    gnb_arch: str = "analog"
    gnb_hybrid_divisor: int = 2
    ue: int = 16
    ue_arch: str = "analog"
    ue_hybrid_divisor: int = 2
    # framework
    framework: str = "sa-dl"
    lte_latency: float = 10.0
    srs_period: Optional[float] = None
    srs_miss: Optional[int] = None
    rach_scs: int = 60
    # csi-rs
    csi_option: int = 2
    csi_slots: int = 5
    csi_symbols: int = 1
    csi_rho: str = "1"
    csi_rx: int = 1
    users: int = 10
    # deployment / channel
    density: float = 10.0
    radius: float = 500.0
    tx_power: float = 30.0
    threshold: float = -5.0
    noise_figure: float = 7.0
    los_intercept: float = 61.4
    los_exponent: float = 2.0
    los_sigma: float = 5.8
    nlos_intercept: float = 72.0
    nlos_exponent: float = 2.92
    nlos_sigma: float = 8.7
    los_decay: float = 67.1
    outage_decay: float = 30.0
    outage_offset: float = 5.2
    # monte carlo
    trials: int = 100_000
    seed: int = 1

    # ---- builders -------------------------------------------------------

    def burst(self) -> SsBurstConfig:
        return SsBurstConfig(
            n_ss=self.nss,
            t_ss_ms=self.tss,
            numerology=numerology_from_spacing(self.scs),
            freq_diversity=self.diversity,
            bandwidth_hz=self.bandwidth,
        )

    def gnb_array(self) -> ArrayConfig:
        return ArrayConfig(elements=self.gnb, role=Role.GNB_SECTOR)

    def ue_array(self) -> ArrayConfig:
        role = Role.UE_OMNI if self.ue_arch == "omni" else Role.UE
        return ArrayConfig(elements=self.ue, role=role)

    def gnb_codebook(self) -> BeamCodebook:
        return codebook(self.gnb_array())

    def ue_codebook(self) -> BeamCodebook:
        return codebook(self.ue_array())

    def gnb_bf(self) -> BfArchitecture:
        return _bf(self.gnb_arch, self.gnb_hybrid_divisor)

    def ue_bf(self) -> BfArchitecture:
        return _bf(self.ue_arch, self.ue_hybrid_divisor)

    def framework_config(self) -> FrameworkConfig:
        kind = _FRAMEWORK_NAMES.get(self.framework)
        if kind is None:
            raise ValidationError(
                f"framework must be one of {sorted(_FRAMEWORK_NAMES)}, got {self.framework}"
            )
        return FrameworkConfig(
            kind=kind,
            lte_latency_ms=None if kind is FrameworkKind.SA_DL else self.lte_latency,
            srs_period_ms=self.srs_period,
            srs_miss_count=self.srs_miss,
        )

    def csi(self) -> CsiRsConfig:
        return CsiRsConfig(
            option=CsiOption(self.csi_option),
            t_csi_slots=self.csi_slots,
            n_symb=self.csi_symbols,
            rho=Fraction(self.csi_rho),
            n_csi_rx=self.csi_rx,
        )

    def scenario(self) -> TrackingScenario:
        return TrackingScenario(
            n_user=self.users,
            n_csi_rx=self.csi_rx,
            gnb_beams=self.gnb_codebook().total_directions,
        )

    def deployment(self) -> DeploymentModel:
        return DeploymentModel(
            gnb_density_per_km2=self.density,
            region_radius_m=self.radius,
            tx_power_dbm=self.tx_power,
            snr_threshold_db=self.threshold,
            noise_figure_db=self.noise_figure,
        )

    def channel(self) -> ChannelParams:
        return ChannelParams(
            pl_los=PathlossParams(self.los_intercept, self.los_exponent, self.los_sigma),
            pl_nlos=PathlossParams(
                self.nlos_intercept, self.nlos_exponent, self.nlos_sigma
            ),
            los_decay_m=self.los_decay,
            outage_decay_m=self.outage_decay,
            outage_offset=self.outage_offset,
        )


def _bf(name: str, divisor: int) -> BfArchitecture:
    kind = _ARCH_NAMES.get(name)
    if kind is None:
        raise ValidationError(
            f"beamforming architecture must be one of {sorted(_ARCH_NAMES)}, got {name}"
        )
    if kind is BfKind.HYBRID:
        return BfArchitecture(kind=kind, hybrid_divisor=divisor)
    return BfArchitecture(kind=kind)


_FIELD_TYPES = {f.name: f.type for f in fields(Params)}


def _coerce(name: str, raw: str):
    if name not in _FIELD_TYPES:
        raise ValidationError(f"unknown parameter '{name}'")
    default = getattr(Params(), name)
    if name in ("srs_period", "srs_miss"):
        if raw.lower() in ("", "none"):
            return None
        return int(raw) if name == "srs_miss" else float(raw)
    if isinstance(default, bool):
        if raw.lower() in ("1", "true", "on", "yes"):
            return True
        if raw.lower() in ("0", "false", "off", "no"):
            return False
        raise ValidationError(f"{name} must be a boolean flag, got '{raw}'")
    if isinstance(default, int):
        return int(raw)
    if isinstance(default, float):
        return float(raw)
    return raw


def load_config(path: Optional[str] = None, overrides: Optional[dict] = None) -> Params:
    """Read an INI config (sections are cosmetic; keys must be unique) and
    apply command-line overrides on top."""
    values = {}
    if path is not None:
        parser = configparser.ConfigParser()
        read = parser.read(path)
        if not read:
            raise OSError(f"cannot read config file {path}")
        for section in parser.sections():
            for key, raw in parser.items(section):
                values[key] = _coerce(key, raw)
    for key, raw in (overrides or {}).items():
        if raw is None:
            continue
        values[key] = _coerce(key, raw) if isinstance(raw, str) else raw
    return replace(Params(), **values)


def validate(params: Params) -> List[str]:
    """Every constraint violation in the configuration, one message each.

    Purely a reporting operation; nothing is mutated and nothing raises.
    """
    violations: List[str] = []

    def check(ok: bool, message: str) -> None:
        if not ok:
            violations.append(message)

    check(
        params.scs in BEAM_MGMT_SPACINGS_KHZ,
        f"scs must be in {set(BEAM_MGMT_SPACINGS_KHZ)}, got {params.scs}",
    )
    check(
        params.nss in SS_BLOCK_COUNTS,
        f"nss must be in {set(SS_BLOCK_COUNTS)}, got {params.nss}",
    )
    check(
        params.tss in BURST_PERIODS_MS,
        f"tss must be in {{5,10,20,40,80,160}}, got {params.tss}",
    )
    if params.scs in BEAM_MGMT_SPACINGS_KHZ:
        check(
            240 * params.scs * 1000 <= params.bandwidth,
            f"bandwidth {params.bandwidth} Hz is below the SS block bandwidth",
        )
    check(params.gnb >= 1, f"gnb elements must be >= 1, got {params.gnb}")
    check(params.ue >= 1, f"ue elements must be >= 1, got {params.ue}")
    for side, name in (("gnb", params.gnb_arch), ("ue", params.ue_arch)):
        check(
            name in _ARCH_NAMES,
            f"{side}_arch must be one of {sorted(_ARCH_NAMES)}, got {name}",
        )
    check(
        params.gnb_hybrid_divisor >= 2 or params.gnb_arch != "hybrid",
        "gnb_hybrid_divisor must be >= 2 for hybrid beamforming",
    )
    check(
        params.ue_hybrid_divisor >= 2 or params.ue_arch != "hybrid",
        "ue_hybrid_divisor must be >= 2 for hybrid beamforming",
    )
    check(
        params.framework in _FRAMEWORK_NAMES,
        f"framework must be one of {sorted(_FRAMEWORK_NAMES)}, got {params.framework}",
    )
    check(
        params.csi_option in (1, 2),
        f"csi_option must be 1 or 2, got {params.csi_option}",
    )
    check(
        params.csi_slots in CSI_PERIODS_SLOTS,
        f"csi_slots must be in {set(CSI_PERIODS_SLOTS)}, got {params.csi_slots}",
    )
    check(
        params.csi_symbols in CSI_SYMBOL_COUNTS,
        f"csi_symbols must be in {set(CSI_SYMBOL_COUNTS)}, got {params.csi_symbols}",
    )
    try:
        rho = Fraction(params.csi_rho)
        check(0 < rho <= 1, f"csi_rho must be in (0,1], got {params.csi_rho}")
    except (ValueError, ZeroDivisionError):
        violations.append(f"csi_rho is not a number: '{params.csi_rho}'")
    check(
        1 <= params.csi_rx <= MAX_CSI_RX_DIRECTIONS,
        f"csi_rx must be in 1..{MAX_CSI_RX_DIRECTIONS}, got {params.csi_rx}",
    )
    check(params.users >= 1, f"users must be >= 1, got {params.users}")
    check(params.density > 0, f"density must be > 0, got {params.density}")
    check(params.radius >= 200, f"radius must be >= 200 m, got {params.radius}")
    check(params.trials >= 1000, f"trials must be >= 1000, got {params.trials}")
    check(
        params.rach_scs in (60, 120),
        f"rach_scs must be 60 or 120 kHz, got {params.rach_scs}",
    )
    return violations
