"""Analytical and Monte Carlo evaluation of NR beam management at mmWave.

Closed-form latency and overhead models for directional initial access,
beam tracking and radio-link-failure recovery, plus a stochastic-geometry
simulation of SS-block misdetection. All timing math is exact rational
arithmetic (fractions.Fraction) so results carry no floating point error.
"""

from .beams import (
    ArrayConfig,
    BeamCodebook,
    BfArchitecture,
    BfKind,
    Role,
    beamwidth_for_elements,
    codebook,
    simultaneous_beams,
)
from .channel import (
    ChannelParams,
    DeploymentModel,
    LinkState,
    MisdetectionEstimate,
    PathlossParams,
    link_snr_db,
    misdetection_probability,
    pathloss_db,
    sample_deployment,
    state_probabilities,
)
from .config import Params, load_config, validate
from .errors import ValidationError
from .ia import (
    FrameworkConfig,
    FrameworkKind,
    IaLatency,
    SweepPlan,
    beam_report_delay,
    ia_delay,
    ia_total_latency,
    plan_for,
    rach_occasions,
    sweep_block_count,
)
from .numerology import (
    Numerology,
    SsBurstConfig,
    burst_tail_time,
    numerology_from_spacing,
    ss_burst_max_duration,
)
from .overhead import (
    OverheadReport,
    csi_overhead,
    overhead_report,
    report_overhead,
    ss_overhead,
    ss_resources,
    total_overhead,
)
from .tracking import (
    CsiOption,
    CsiRsConfig,
    TrackingScenario,
    csi_count,
    csi_offset,
    csi_window,
    max_neighbors,
    orthogonal_csi_capacity,
    rlf_delay,
    tracking_delay,
)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
