"""Evaluation of hierarchical composite (modular) systems.

Assessment scales (quantitative, ordinal, vector, count-poset, interval
multiset), scale transformations, and integration of component estimates
into total system estimates, with Pareto-layer and quality-ladder ranking.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .scales import (
    CountPosetScale,
    Estimate,
    INCOMPARABLE,
    MultisetScale,
    OrdinalScale,
    QualityVector,
    QuantScale,
    TIE,
    VectorScale,
    better_of,
    validate_estimate,
)
from .poset import (
    DLabel,
    IDEAL,
    PosetView,
    WORST,
    cover_edges,
    dominates_counts,
    dominates_quality,
    label_D,
    near_pareto_by_swap,
    pareto_layer,
    peel_layers,
)
from .multiset import (
    MedianResult,
    ScalePoset,
    build_scale_poset,
    counts_from_ordinals,
    enumerate_estimates,
    median_like,
    multiset_distance,
)
from .transforms import (
    OrdinalMap,
    ThresholdSpec,
    linear_map,
    ordinal_remap,
    poset_to_ordinal,
    quantize,
    utility_reduce,
    vectors_to_ordinal,
)
from .integrate import (
    IntegrationTable,
    TableInput,
    TopsisConfig,
    TopsisResult,
    compat_extended_poset,
    topsis_rank,
)
from .model import (
    Composition,
    DA,
    CompatTable,
    SystemModel,
    SystemNode,
    enumerate_compositions,
    evaluate,
    rank,
    validate_model,
)
from .io import export_dot, parse_model, serialize_model

__version__ = "0.1.0"
