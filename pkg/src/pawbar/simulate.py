"""The pairwise-interpolation state machine.

One run iterates: sample an edge, displace the selected agent(s) along the
Wasserstein geodesic, accumulate the evolution-matrix product, and (for the
discrete class) propagate per-point provenance weights over the initial
support points.  A run is a deterministic function of its config: the only
randomness is the explicit splitmix64 edge-selection state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NonHomogeneous, SizeMismatch
from .graph import (
    DIRECTED,
    EdgeEvent,
    InteractionGraph,
    LambdaExtraction,
    evolution_matrix,
    extract_lambda,
    product_update,
    sample_edge,
    validate_graph,
)
from .interpolate import displace, lerp_matched_points
from .linalg import frobenius_norm
from .measures import (
    DiscreteUniform,
    Gaussian,
    Measure,
    Quantile1D,
    validate_measure,
)
from .transport import w2, w2_discrete


@dataclass
class SimulationConfig:
    graph: InteractionGraph
    measures: list[Measure]
    seed: int
    max_steps: int
    stop_tol: float = 1e-8
    reference: Optional[Measure] = None
    record_every: int = 1
    lambda_tol: float = 1e-12


@dataclass
class SimulationState:
    t: int
    measures: list[Measure]
    product: np.ndarray
    rng_state: int
    # Discrete class only: provenance[i] is an N x (n*N) matrix of convex
    # weights expressing agent i's current points over all initial points.
    provenance: Optional[list[np.ndarray]] = None


@dataclass
class TraceRecord:
    """Metrics of the pre-event state at time t plus the edge selected at t."""

    t: int
    i: int
    j: int
    spread: float
    u_metric: float
    ref_errors: Optional[list[float]] = None


@dataclass
class Trace:
    records: list[TraceRecord] = field(default_factory=list)
    final_measures: list[Measure] = field(default_factory=list)
    lam: Optional[np.ndarray] = None
    lam_spread: float = float("inf")
    stop_reason: str = ""
    steps: int = 0


def validate_config(cfg: SimulationConfig) -> None:
    """Graph, per-measure, and homogeneity checks; raises the named errors."""
    validate_graph(cfg.graph)
    if len(cfg.measures) != cfg.graph.n:
        raise NonHomogeneous(
            f"graph has {cfg.graph.n} agents but {len(cfg.measures)} measures given"
        )
    for m in cfg.measures:
        validate_measure(m)
    _check_same_class(cfg.measures)
    if cfg.reference is not None:
        validate_measure(cfg.reference)
        _check_same_class([cfg.measures[0], cfg.reference])
    if cfg.max_steps < 1:
        raise ValueError(f"max_steps must be positive, got {cfg.max_steps}")
    if cfg.stop_tol < 0:
        raise ValueError(f"stop_tol must be nonnegative, got {cfg.stop_tol}")
    if cfg.record_every < 1:
        raise ValueError(f"record_every must be positive, got {cfg.record_every}")


def _check_same_class(measures: list[Measure]) -> None:
    first = measures[0]
    for m in measures[1:]:
        if type(m) is not type(first):
            raise NonHomogeneous(
                f"mixed measure classes: {type(first).__name__} vs {type(m).__name__}"
            )
        if isinstance(first, DiscreteUniform):
            if m.n_points != first.n_points or m.dim != first.dim:
                raise SizeMismatch(
                    f"discrete supports differ: {first.n_points}x{first.dim} "
                    f"vs {m.n_points}x{m.dim}"
                )
        elif isinstance(first, Quantile1D):
            if m.n_levels != first.n_levels:
                raise SizeMismatch(
                    f"quantile grids differ: {first.n_levels} vs {m.n_levels}"
                )
        elif isinstance(first, Gaussian):
            if m.dim != first.dim:
                raise SizeMismatch(f"dimensions differ: {first.dim} vs {m.dim}")


def init_state(cfg: SimulationConfig) -> SimulationState:
    n = cfg.graph.n
    provenance = None
    if isinstance(cfg.measures[0], DiscreteUniform):
        npts = cfg.measures[0].n_points
        provenance = []
        for i in range(n):
            p = np.zeros((npts, n * npts))
            p[np.arange(npts), i * npts + np.arange(npts)] = 1.0
            provenance.append(p)
    return SimulationState(
        t=0,
        measures=list(cfg.measures),
        product=np.eye(n),
        rng_state=cfg.seed & ((1 << 64) - 1),
        provenance=provenance,
    )


def step(state: SimulationState, ev: EdgeEvent, mode: str) -> SimulationState:
    """Apply one edge event and return the successor state.

    Directed: agent i moves weight a_ij of the way toward agent j.  Symmetric:
    both endpoints adopt the midpoint.  The running matrix product and (for
    discrete measures) the provenance rows receive the same convex update.
    """
    i, j, a = ev.i, ev.j, ev.weight
    measures = list(state.measures)
    provenance = list(state.provenance) if state.provenance is not None else None
    mu_i, mu_j = measures[i], measures[j]

    if isinstance(mu_i, DiscreteUniform):
        _, sigma = w2_discrete(mu_i, mu_j)
        if mode == DIRECTED:
            measures[i] = DiscreteUniform(
                lerp_matched_points(mu_i.points, mu_j.points[sigma], a)
            )
            if provenance is not None:
                provenance[i] = (1.0 - a) * provenance[i] + a * provenance[j][sigma]
        else:
            pts = lerp_matched_points(mu_i.points, mu_j.points[sigma], 0.5)
            measures[i] = DiscreteUniform(pts)
            measures[j] = DiscreteUniform(pts.copy())
            if provenance is not None:
                rows = 0.5 * provenance[i] + 0.5 * provenance[j][sigma]
                provenance[i] = rows
                provenance[j] = rows.copy()
    else:
        if mode == DIRECTED:
            measures[i] = displace(mu_i, mu_j, a)
        else:
            mid = displace(mu_i, mu_j, 0.5)
            measures[i] = mid
            measures[j] = mid

    product = product_update(state.product, evolution_matrix(ev, len(measures), mode))
    return SimulationState(
        t=state.t + 1,
        measures=measures,
        product=product,
        rng_state=state.rng_state,
        provenance=provenance,
    )


def pairwise_spread(state: SimulationState) -> float:
    """max over agent pairs of the pairwise Wasserstein distance."""
    best = 0.0
    n = len(state.measures)
    for i in range(n):
        for j in range(i + 1, n):
            d = w2(state.measures[i], state.measures[j])
            if d > best:
                best = d
    return best


def _spread_leq(state: SimulationState, tol: float) -> bool:
    """pairwise_spread(state) <= tol, bailing out at the first violating pair."""
    n = len(state.measures)
    for i in range(n):
        for j in range(i + 1, n):
            if w2(state.measures[i], state.measures[j]) > tol:
                return False
    return True


def u_metric(state: SimulationState, graph: InteractionGraph) -> float:
    """Sum of pairwise distances over the graph's edges (the Lyapunov quantity)."""
    return float(
        sum(w2(state.measures[e.i], state.measures[e.j]) for e in graph.edges)
    )


def reference_error(m: Measure, ref: Measure) -> float:
    """Per-agent error to the reference measure.

    For Gaussians this is the Frobenius distance between covariances (the
    quantity plotted in the consensus-error curves); other classes use the
    Wasserstein distance.
    """
    if isinstance(m, Gaussian) and isinstance(ref, Gaussian):
        return frobenius_norm(m.cov - ref.cov)
    return w2(m, ref)


def _make_record(state: SimulationState, ev: EdgeEvent, cfg: SimulationConfig) -> TraceRecord:
    errors = None
    if cfg.reference is not None:
        errors = [reference_error(m, cfg.reference) for m in state.measures]
    return TraceRecord(
        t=state.t,
        i=ev.i,
        j=ev.j,
        spread=pairwise_spread(state),
        u_metric=u_metric(state, cfg.graph),
        ref_errors=errors,
    )


def run(cfg: SimulationConfig) -> Trace:
    """Run until the pairwise spread drops to stop_tol or max_steps is hit."""
    validate_config(cfg)
    state = init_state(cfg)
    trace = Trace()
    while True:
        if _spread_leq(state, cfg.stop_tol):
            trace.stop_reason = "spread"
            break
        if state.t >= cfg.max_steps:
            trace.stop_reason = "max_steps"
            break
        ev, rng_next = sample_edge(cfg.graph, state.rng_state, step=state.t)
        if state.t % cfg.record_every == 0:
            trace.records.append(_make_record(state, ev, cfg))
        state = step(state, ev, cfg.graph.mode)
        state.rng_state = rng_next
    trace.final_measures = state.measures
    lam, spread = extract_lambda(state.product, cfg.lambda_tol)
    trace.lam = lam
    trace.lam_spread = spread
    trace.steps = state.t
    return trace


def dirac_reduction_check(cfg: SimulationConfig, tol: float = 1e-12) -> bool:
    """Check that single-point measures reduce to plain vector averaging.

    Runs the measure simulation and, on the same event stream, the direct
    recursion x_i <- (1 - a) x_i + a x_j (both endpoints to the midpoint in
    symmetric mode).  True iff the trajectories agree within ``tol`` at every
    one of cfg.max_steps steps.
    """
    validate_config(cfg)
    if not all(isinstance(m, DiscreteUniform) and m.n_points == 1 for m in cfg.measures):
        raise ValueError("reduction check requires single-point discrete measures")
    state = init_state(cfg)
    x = np.array([m.points[0] for m in cfg.measures])
    for t in range(cfg.max_steps):
        ev, rng_next = sample_edge(cfg.graph, state.rng_state, step=t)
        state = step(state, ev, cfg.graph.mode)
        state.rng_state = rng_next
        if cfg.graph.mode == DIRECTED:
            x[ev.i] = (1.0 - ev.weight) * x[ev.i] + ev.weight * x[ev.j]
        else:
            mid = 0.5 * (x[ev.i] + x[ev.j])
            x[ev.i] = mid
            x[ev.j] = mid
        pts = np.array([m.points[0] for m in state.measures])
        if np.max(np.abs(pts - x)) > tol:
            return False
    return True
