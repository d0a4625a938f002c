"""Discrete channels, information measures and wiretap leakage measurements."""

__version__ = "0.1.0"

from .channel import (
    MATERIALIZATION_CAP,
    Channel,
    ConcatChannel,
    DenseChannel,
    ProductChannel,
    RandomSource,
    apply_dist,
    bsc,
    concat,
    identity,
    materialize,
    new_dense,
    output_distribution,
    power,
    sample,
    transition_entry,
)
from .prob import (
    Distribution,
    JointDistribution,
    cond_entropy,
    cond_min_entropy,
    entropy,
    h,
    joint_entropy,
    min_entropy,
    neg_log_cond_min_entropy,
    neg_log_min_entropy,
    statistical_distance,
)
from .symmetry import (
    NotSymmetric,
    SymmetryWitness,
    brute_force_is_symmetric,
    find_symmetry_partition,
    is_strongly_symmetric,
)
from .wiretap import (
    LeakageReport,
    WiretapSetting,
    adversary_view,
    estimate_leakage_sd,
    input_guessing,
    leakage_sd,
    receiver_view,
)
