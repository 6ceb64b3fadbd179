"""Numerical laboratory for interpolation and Gagliardo-Nirenberg
inequalities over an extended exponent scale (Lebesgue, sup, weak Lorentz,
Holder) on uniformly sampled functions."""

from .exponents import (
    CriticalExponentError,
    Decision,
    ExtendedExponent,
    GnTuple,
    HolderDecomposition,
    classify,
    gn_solve,
    holder_decompose,
    interpolation_solve,
    iterated_conjugate,
    sobolev_conjugate,
    zeta_split,
)
from .grids import (
    DerivativeTensor,
    FamilySpec,
    GridFunction,
    dilate,
    generate,
    gradient,
    ingest,
    read_gfn,
    scale,
    write_gfn,
)
from .harness import (
    InequalityInstance,
    RatioReport,
    extremizer_search,
    gn_instance,
    instance_from_json,
    interpolation_instance,
    ratio,
    scale_invariance_suite,
    sweep,
)
from .isoperimetry import (
    DistanceField,
    RasterSet,
    ball_inner_measure,
    ball_raster,
    distance_transform,
    inner_parallel,
    lemma_bmr_check,
    outer_parallel,
    random_blob,
    read_rsn,
    write_rsn,
)
from .norms import (
    NormValue,
    OutOfScaleError,
    distribution_function,
    extended_norm,
    holder_seminorm_bb,
    holder_seminorm_naive,
    lebesgue_norm,
    scaling_exponent_check,
    weak_lorentz_norm,
)
from .prooflab import (
    BalanceResult,
    TruncationPair,
    balance_s,
    ball_inclusion_check,
    holder_range_seminorm,
    layer_cake_tail_bound,
    pointwise_estimate_check,
    split_seminorm_check,
    tail_moment_bound,
    truncate,
)

__version__ = "0.1.0"
