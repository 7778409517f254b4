"""Monte Carlo misdetection probability under a stochastic-geometry deployment.

gNBs form a Poisson point process on a disc around the UE; each link is in
LOS, NLOS or outage with distance-dependent probabilities and lognormal
shadowing. A trial is misdetected when no gNB's best beam pair clears the
SNR threshold.

Trials are grouped in fixed-size blocks, each drawn from its own
counter-based RNG stream keyed by (seed, block index); the estimate is a
commutative count, so any worker partitioning yields bit-identical results.
"""

from __future__ import annotations

import dataclasses
import enum
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .beams import ArrayConfig, Role, codebook
from .errors import ValidationError
from .numerology import SsBurstConfig

THERMAL_NOISE_DBM_PER_HZ = -174.0
TRIAL_BLOCK_SIZE = 4096
WORKERS_ENV_VAR = "NR_BEAMMGR_THREADS"


class LinkState(enum.IntEnum):
    LOS = 0
    NLOS = 1
    OUTAGE = 2


@dataclass(frozen=True)
class PathlossParams:
    intercept_db: float
    exponent: float
    shadow_sigma_db: float

    def __post_init__(self) -> None:
        if self.exponent <= 0:
            raise ValidationError(f"pathloss exponent must be > 0, got {self.exponent}")
        if self.shadow_sigma_db < 0:
            raise ValidationError(
                f"shadow sigma must be >= 0, got {self.shadow_sigma_db}"
            )


@dataclass(frozen=True)
class ChannelParams:
    """28 GHz urban macro/micro fit: LOS/NLOS pathloss plus the
    distance-decay constants of the LOS and outage state curves."""

    pl_los: PathlossParams = PathlossParams(61.4, 2.0, 5.8)
    pl_nlos: PathlossParams = PathlossParams(72.0, 2.92, 8.7)
    los_decay_m: float = 67.1
    outage_decay_m: float = 30.0
    outage_offset: float = 5.2


@dataclass(frozen=True)
class DeploymentModel:
    gnb_density_per_km2: float
    region_radius_m: float = 500.0
    tx_power_dbm: float = 30.0
    carrier_ghz: float = 28.0
    snr_threshold_db: float = -5.0
    noise_figure_db: float = 7.0
    bandwidth_per_rep_hz: float = 240 * 120e3

    def __post_init__(self) -> None:
        if self.gnb_density_per_km2 <= 0:
            raise ValidationError(
                f"gnb_density_per_km2 must be > 0, got {self.gnb_density_per_km2}"
            )
        if self.region_radius_m < 200:
            raise ValidationError(
                f"region_radius_m must be >= 200, got {self.region_radius_m}"
            )
        if not math.isfinite(self.snr_threshold_db):
            raise ValidationError("snr_threshold_db must be finite")

    @property
    def mean_gnb_count(self) -> float:
        area_km2 = math.pi * (self.region_radius_m / 1000.0) ** 2
        return self.gnb_density_per_km2 * area_km2


def state_probabilities(
    params: ChannelParams, distance_m: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(p_outage, p_los, p_nlos) at each distance; the three always sum to 1."""
    d = np.asarray(distance_m, dtype=float)
    p_out = np.maximum(0.0, 1.0 - np.exp(params.outage_offset - d / params.outage_decay_m))
    p_los = (1.0 - p_out) * np.exp(-d / params.los_decay_m)
    return p_out, p_los, 1.0 - p_out - p_los


def pathloss_db(
    params: ChannelParams,
    state: LinkState,
    distance_m: float,
    shadowing_db: float = 0.0,
) -> float:
    """Distance pathloss in dB; an outage link has no usable path."""
    if distance_m <= 0:
        raise ValidationError(f"distance_m must be > 0, got {distance_m}")
    if state is LinkState.OUTAGE:
        return math.inf
    pl = params.pl_los if state is LinkState.LOS else params.pl_nlos
    return pl.intercept_db + 10.0 * pl.exponent * math.log10(distance_m) + shadowing_db


def link_snr_db(
    model: DeploymentModel,
    gain_tx_dbi: float,
    gain_rx_dbi: float,
    pathloss_db: float,
    n_rep: int = 1,
    tx_split_count: int = 1,
) -> float:
    """Link SNR with non-coherent combining gain over n_rep repetitions.

    A transmitter sending tx_split_count simultaneous beams divides its
    power budget among them.
    """
    if n_rep < 1:
        raise ValidationError(f"n_rep must be >= 1, got {n_rep}")
    noise_dbm = (
        THERMAL_NOISE_DBM_PER_HZ
        + 10.0 * math.log10(model.bandwidth_per_rep_hz)
        + model.noise_figure_db
    )
    return (
        model.tx_power_dbm
        - 10.0 * math.log10(tx_split_count)
        + gain_tx_dbi
        + gain_rx_dbi
        - pathloss_db
        - noise_dbm
        + 5.0 * math.log10(n_rep)
    )


def _block_rng(seed: int, block_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed, block_index]))


def _draw_block(
    rng: np.random.Generator,
    model: DeploymentModel,
    params: ChannelParams,
    n_trials: int,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Draw every random quantity for a block of trials.

    Returns per-trial gNB counts plus flattened distances, states and
    shadowing. Draw order is fixed so results are reproducible for a given
    stream regardless of what the caller does with them.
    """
    counts = rng.poisson(model.mean_gnb_count, size=n_trials)
    total = int(counts.sum())
    radial_u = rng.random(total)
    state_u = rng.random(total)
    shadow_z = rng.standard_normal(total)

    distances = model.region_radius_m * np.sqrt(radial_u)
    p_out, p_los, _ = state_probabilities(params, distances)
    states = np.full(total, int(LinkState.NLOS), dtype=np.int8)
    states[state_u < p_out + p_los] = int(LinkState.LOS)
    states[state_u < p_out] = int(LinkState.OUTAGE)

    sigmas = np.where(
        states == int(LinkState.LOS),
        params.pl_los.shadow_sigma_db,
        np.where(states == int(LinkState.NLOS), params.pl_nlos.shadow_sigma_db, 0.0),
    )
    return counts, distances, states, shadow_z * sigmas


def sample_deployment(
    model: DeploymentModel,
    params: ChannelParams,
    seed: int,
    trial_index: int,
) -> Sequence[Tuple[float, LinkState, float]]:
    """One trial's gNB field: (distance_m, state, shadowing_db) per gNB.

    Deterministic given (seed, trial_index).
    """
    if trial_index < 0:
        raise ValidationError(f"trial_index must be >= 0, got {trial_index}")
    rng = _block_rng(seed, trial_index)
    _, distances, states, shadowing = _draw_block(rng, model, params, 1)
    return [
        (float(d), LinkState(int(s)), float(sh))
        for d, s, sh in zip(distances, states, shadowing)
    ]


@dataclass(frozen=True)
class MisdetectionEstimate:
    estimate: float
    confidence_halfwidth: float
    trials: int
    misdetections: int


def _array_gain_dbi(array: ArrayConfig) -> float:
    return codebook(array).boresight_gain_dbi


def _block_misdetections(
    seed: int,
    block_index: int,
    n_trials: int,
    model: DeploymentModel,
    params: ChannelParams,
    snr_const_db: float,
) -> int:
    """Misdetection count for one block of trials.

    A gNB is detectable when its pathloss stays below snr_const_db minus
    the SNR threshold; a trial fails when no gNB is detectable.
    """
    rng = _block_rng(seed, block_index)
    counts, distances, states, shadowing = _draw_block(rng, model, params, n_trials)

    # distances below 1 m would evaluate the pathloss fit outside its range
    d = np.maximum(distances, 1.0)
    intercepts = np.where(
        states == int(LinkState.LOS), params.pl_los.intercept_db, params.pl_nlos.intercept_db
    )
    exponents = np.where(
        states == int(LinkState.LOS), params.pl_los.exponent, params.pl_nlos.exponent
    )
    pathloss = intercepts + 10.0 * exponents * np.log10(d) + shadowing
    margin = model.snr_threshold_db - snr_const_db  # detect iff -PL >= margin
    detectable = (states != int(LinkState.OUTAGE)) & (-pathloss >= margin)

    # a trial with zero gNBs has no detectable link and counts as misdetected
    trial_of_gnb = np.repeat(np.arange(n_trials), counts)
    detected_per_trial = np.bincount(
        trial_of_gnb, weights=detectable, minlength=n_trials
    )
    return int((detected_per_trial == 0).sum())


def misdetection_probability(
    model: DeploymentModel,
    params: ChannelParams,
    gnb_array: ArrayConfig,
    ue_array: ArrayConfig,
    burst: SsBurstConfig,
    trials: int,
    seed: int = 0,
    workers: Optional[int] = None,
    tx_split_count: int = 1,
) -> MisdetectionEstimate:
    """Estimate P(best beam-pair SNR < threshold) over independent trials.

    Returns the point estimate with a Wald 95% half-width. The trial count
    and seed fully determine the result; the worker count never changes it.
    """
    if trials < 1000:
        raise ValidationError(f"trials must be >= 1000, got {trials}")
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV_VAR, "1"))

    bandwidth = ss_block_bandwidth_hz(burst)
    link_model = model
    if link_model.bandwidth_per_rep_hz != bandwidth:
        link_model = dataclasses.replace(model, bandwidth_per_rep_hz=bandwidth)

    # SNR = snr_const - pathloss; fold every pathloss-independent term here
    snr_const = link_snr_db(
        link_model,
        _array_gain_dbi(gnb_array),
        _array_gain_dbi(ue_array),
        pathloss_db=0.0,
        n_rep=burst.n_rep,
        tx_split_count=tx_split_count,
    )

    blocks = []
    start = 0
    index = 0
    while start < trials:
        size = min(TRIAL_BLOCK_SIZE, trials - start)
        blocks.append((index, size))
        start += size
        index += 1

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(
                pool.map(
                    _block_misdetections_star,
                    [
                        (seed, b, n, link_model, params, snr_const)
                        for b, n in blocks
                    ],
                )
            )
    else:
        counts = [
            _block_misdetections(seed, b, n, link_model, params, snr_const)
            for b, n in blocks
        ]

    misdetections = sum(counts)
    p = misdetections / trials
    halfwidth = 1.96 * math.sqrt(p * (1.0 - p) / trials)
    return MisdetectionEstimate(
        estimate=p,
        confidence_halfwidth=halfwidth,
        trials=trials,
        misdetections=misdetections,
    )


def _block_misdetections_star(args) -> int:
    return _block_misdetections(*args)


def ss_block_bandwidth_hz(burst: SsBurstConfig) -> float:
    """Noise bandwidth of one SS block repetition: 240 subcarriers."""
    return 240.0 * burst.numerology.spacing_khz * 1000.0


def omni_ue_array() -> ArrayConfig:
    return ArrayConfig(elements=1, role=Role.UE_OMNI)
