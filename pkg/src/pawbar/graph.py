"""Interaction graph, edge-selection process, and evolution matrices.

Agents are indexed 0..n-1 in memory; the JSON wire format uses 1-based
indices (converted at the parse/serialize boundary).  The edge-selection
randomness is an explicit splitmix64 state threaded through calls, so a run
is a pure function of its seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import (
    BadEdge,
    BadProbability,
    BadWeight,
    NotConnected,
    NotStronglyConnected,
    SchemaError,
)

DIRECTED = "directed"
SYMMETRIC = "symmetric"

PROB_SUM_TOL = 1e-12

# splitmix64: state advances by the golden-gamma increment; output is the
# mixed state.  Uniform doubles take the top 53 bits / 2^53.
_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step: (output, new_state)."""
    state = (state + _GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    z ^= z >> 31
    return z, state


def rand_uniform(state: int) -> tuple[float, int]:
    """One uniform double in [0, 1): (value, new_state)."""
    z, state = splitmix64(state)
    return (z >> 11) * 2.0**-53, state


@dataclass
class Edge:
    """One interaction channel: ordered (i, j) when directed, unordered otherwise."""

    i: int
    j: int
    weight: float
    prob: float


@dataclass
class InteractionGraph:
    n: int
    mode: str
    edges: list[Edge] = field(default_factory=list)


class EdgeEvent(NamedTuple):
    """One sampled edge activation at time step ``step``."""

    step: int
    i: int
    j: int
    weight: float


class LambdaExtraction(NamedTuple):
    """Result of reading the convex vector off a converged matrix product.

    ``lam`` is None when the product has not converged; ``spread`` is the
    largest within-column range either way.
    """

    lam: Optional[np.ndarray]
    spread: float


def validate_graph(g: InteractionGraph) -> None:
    """Check structural invariants plus the mode's connectivity hypothesis."""
    if g.mode not in (DIRECTED, SYMMETRIC):
        raise BadEdge(f"unknown mode {g.mode!r}")
    if g.n < 2:
        raise BadEdge(f"need at least 2 agents, got {g.n}")
    if not g.edges:
        raise BadEdge("graph has no edges")
    seen = set()
    total_prob = 0.0
    for k, e in enumerate(g.edges):
        if not (0 <= e.i < g.n and 0 <= e.j < g.n):
            raise BadEdge(f"edge {k}: endpoint out of range")
        if e.i == e.j:
            raise BadEdge(f"edge {k}: self-loop at agent {e.i}")
        key = (e.i, e.j) if g.mode == DIRECTED else (min(e.i, e.j), max(e.i, e.j))
        if key in seen:
            raise BadEdge(f"edge {k}: duplicate of {key}")
        seen.add(key)
        if g.mode == SYMMETRIC:
            if e.weight != 0.5:
                raise BadWeight(f"edge {k}: symmetric mode fixes the weight at 1/2")
        elif not 0.0 < e.weight < 1.0:
            raise BadWeight(f"edge {k}: weight {e.weight} outside (0, 1)")
        if e.prob <= 0.0:
            raise BadProbability(f"edge {k}: selection probability {e.prob} not positive")
        total_prob += e.prob
    if abs(total_prob - 1.0) > PROB_SUM_TOL:
        raise BadProbability(f"selection probabilities sum to {total_prob!r}, not 1")
    if g.mode == DIRECTED:
        if not (_reachable(g, forward=True) and _reachable(g, forward=False)):
            raise NotStronglyConnected("digraph is not strongly connected")
    else:
        if not _reachable(g, forward=True, undirected=True):
            raise NotConnected("undirected graph is not connected")


def _reachable(g: InteractionGraph, forward: bool, undirected: bool = False) -> bool:
    """Whether every agent is reachable from agent 0 (in the given direction)."""
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for e in g.edges:
        if undirected:
            adj[e.i].append(e.j)
            adj[e.j].append(e.i)
        elif forward:
            adj[e.i].append(e.j)
        else:
            adj[e.j].append(e.i)
    seen = [False] * g.n
    seen[0] = True
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    return all(seen)


def sample_edge(g: InteractionGraph, rng_state: int, step: int = 0) -> tuple[EdgeEvent, int]:
    """Draw one edge by inverse CDF on a single uniform variate."""
    u, rng_state = rand_uniform(rng_state)
    acc = 0.0
    chosen = g.edges[-1]
    for e in g.edges:
        acc += e.prob
        if u < acc:
            chosen = e
            break
    weight = 0.5 if g.mode == SYMMETRIC else chosen.weight
    return EdgeEvent(step, chosen.i, chosen.j, weight), rng_state


def evolution_matrix(ev: EdgeEvent, n: int, mode: str) -> np.ndarray:
    """The row-stochastic matrix encoding one edge event's effect.

    Directed: row i becomes (1 - a) at column i and a at column j.  Symmetric:
    rows i and j both become 1/2 at columns i and j (doubly stochastic).
    """
    a = np.eye(n)
    if mode == DIRECTED:
        a[ev.i, ev.i] = 1.0 - ev.weight
        a[ev.i, ev.j] = ev.weight
    else:
        a[ev.i, ev.i] = a[ev.i, ev.j] = 0.5
        a[ev.j, ev.i] = a[ev.j, ev.j] = 0.5
    return a


def product_update(product: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Left-multiply the running product: state(t+1) = A(t) state(t)."""
    return a @ product


def extract_lambda(product: np.ndarray, tol: float = 1e-12) -> LambdaExtraction:
    """Read the convex vector lam from a product converged to ones * lam^T.

    Convergence criterion: every column's (max - min) over rows is <= tol;
    lam is then the column-wise mean.
    """
    product = np.asarray(product, dtype=float)
    spread = float(np.max(product.max(axis=0) - product.min(axis=0)))
    if spread > tol:
        return LambdaExtraction(None, spread)
    return LambdaExtraction(product.mean(axis=0), spread)


def expected_evolution_matrix(g: InteractionGraph) -> np.ndarray:
    """sum_e p_e A_e, the mean one-step update."""
    acc = np.zeros((g.n, g.n))
    for e in g.edges:
        ev = EdgeEvent(0, e.i, e.j, 0.5 if g.mode == SYMMETRIC else e.weight)
        acc += e.prob * evolution_matrix(ev, g.n, g.mode)
    return acc


# -- JSON wire format ----------------------------------------------------------
#
#   {"n": int, "mode": "directed"|"symmetric",
#    "edges": [{"i": int, "j": int, "weight": f64?, "prob": f64?}, ...]}
#
# Indices are 1-based on the wire.  ``weight`` is forbidden in symmetric mode;
# omitting every ``prob`` selects the uniform distribution over edges.


def graph_from_obj(obj, path: str = "$.graph") -> InteractionGraph:
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected an object, got {type(obj).__name__}")
    extra = set(obj) - {"n", "mode", "edges"}
    if extra:
        raise SchemaError(f"{path}.{sorted(extra)[0]}", "unknown field")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise SchemaError(f"{path}.n", "expected an integer")
    mode = obj.get("mode")
    if mode not in (DIRECTED, SYMMETRIC):
        raise SchemaError(f"{path}.mode", f"expected 'directed' or 'symmetric', got {mode!r}")
    raw_edges = obj.get("edges")
    if not isinstance(raw_edges, list) or not raw_edges:
        raise SchemaError(f"{path}.edges", "expected a nonempty array")
    probs: list[Optional[float]] = []
    edges: list[Edge] = []
    for k, re in enumerate(raw_edges):
        epath = f"{path}.edges[{k}]"
        if not isinstance(re, dict):
            raise SchemaError(epath, "expected an object")
        extra = set(re) - {"i", "j", "weight", "prob"}
        if extra:
            raise SchemaError(f"{epath}.{sorted(extra)[0]}", "unknown field")
        for fieldname in ("i", "j"):
            val = re.get(fieldname)
            if not isinstance(val, int) or isinstance(val, bool):
                raise SchemaError(f"{epath}.{fieldname}", "expected an integer")
            if not 1 <= val <= n:
                raise SchemaError(f"{epath}.{fieldname}", f"agent index {val} outside 1..{n}")
        if mode == SYMMETRIC:
            if "weight" in re:
                raise SchemaError(f"{epath}.weight", "weight is forbidden in symmetric mode")
            weight = 0.5
        else:
            weight = re.get("weight")
            if isinstance(weight, bool) or not isinstance(weight, (int, float)):
                raise SchemaError(f"{epath}.weight", "expected a number")
            weight = float(weight)
        prob = re.get("prob")
        if prob is not None:
            if isinstance(prob, bool) or not isinstance(prob, (int, float)):
                raise SchemaError(f"{epath}.prob", "expected a number")
            prob = float(prob)
        probs.append(prob)
        edges.append(Edge(re["i"] - 1, re["j"] - 1, weight, 0.0))
    given = [p for p in probs if p is not None]
    if not given:
        for e in edges:
            e.prob = 1.0 / len(edges)
    elif len(given) == len(edges):
        for e, p in zip(edges, probs):
            e.prob = p
    else:
        raise SchemaError(f"{path}.edges", "either give prob on every edge or on none")
    return InteractionGraph(n=n, mode=mode, edges=edges)


def graph_to_obj(g: InteractionGraph):
    edges = []
    for e in g.edges:
        entry = {"i": e.i + 1, "j": e.j + 1, "prob": e.prob}
        if g.mode == DIRECTED:
            entry["weight"] = e.weight
        edges.append(entry)
    return {"n": g.n, "mode": g.mode, "edges": edges}
