"""Pairwise distributed Wasserstein-barycenter simulator and oracles."""

from .barycenter import (
    AlignedBarycenter,
    BarycenterProblem,
    barycenter_discrete_aligned,
    barycenter_discrete_bruteforce,
    barycenter_gaussian,
    barycenter_quantile1d,
    functional,
    gaussian_fixed_point_residual,
)
from .graph import (
    DIRECTED,
    SYMMETRIC,
    Edge,
    EdgeEvent,
    InteractionGraph,
    LambdaExtraction,
    evolution_matrix,
    expected_evolution_matrix,
    extract_lambda,
    graph_from_obj,
    graph_to_obj,
    product_update,
    rand_uniform,
    sample_edge,
    splitmix64,
    validate_graph,
)
from .interpolate import (
    displace,
    displace_discrete,
    displace_gaussian,
    displace_quantile1d,
)
from .linalg import (
    SpectralDecomposition,
    cross_sqrt,
    frobenius_norm,
    inv_sqrt_spd,
    sqrt_spd,
    sym_eig,
)
from .measures import (
    DiscreteUniform,
    Gaussian,
    Measure,
    Quantile1D,
    gaussian1d_to_quantile1d,
    measure_from_obj,
    measure_to_obj,
    measures_equal,
    norm_ppf,
    parse_measure,
    serialize_measure,
    validate_measure,
)
from .simulate import (
    SimulationConfig,
    SimulationState,
    Trace,
    TraceRecord,
    dirac_reduction_check,
    init_state,
    pairwise_spread,
    reference_error,
    run,
    step,
    u_metric,
    validate_config,
)
from .transport import w2, w2_discrete, w2_gaussian, w2_quantile1d

__version__ = "0.1.0"
