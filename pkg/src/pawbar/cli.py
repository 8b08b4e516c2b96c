"""Command-line front end.

    pawbar simulate  -c config.json -o trace.csv
    pawbar barycenter -m measures.json -l 0.2,0.3,0.5 -o out.json
    pawbar distance  a.json b.json
    pawbar validate  -c config.json

Exit codes: 0 ok, 1 input/validation error, 2 numerical failure.  The
environment variable PAWBAR_SEED overrides the config seed.

The simulation config is a single JSON document:

    {"graph": {...}, "measures": [...], "seed": u64, "max_steps": int,
     "stop_tol": f64?, "reference": measure?, "record_every": int?}

``pawbar simulate`` writes the trace CSV to the -o path and a JSON summary
(final measures, extracted convex vector or "not_converged", stop reason,
step count) to the sibling path with extension ``.summary.json``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .barycenter import (
    BarycenterProblem,
    barycenter_discrete_aligned,
    barycenter_gaussian,
    barycenter_quantile1d,
    functional,
    gaussian_fixed_point_residual,
)
from .errors import MixedClass, PawbarError, SchemaError
from .graph import graph_from_obj
from .measures import (
    DiscreteUniform,
    Gaussian,
    Quantile1D,
    measure_from_obj,
    measure_to_obj,
    validate_measure,
)
from .simulate import SimulationConfig, Trace, run, validate_config
from .transport import w2


def _load_json(path: str, what: str):
    try:
        with open(path, "rb") as fh:
            return json.loads(fh.read().decode("utf-8"))
    except OSError as exc:
        raise SchemaError("$", f"cannot read {what} {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON in {path}: {exc}") from exc


def _require_int(obj, key: str, path: str = "$") -> int:
    val = obj.get(key)
    if not isinstance(val, int) or isinstance(val, bool):
        raise SchemaError(f"{path}.{key}", "expected an integer")
    return val


def load_config(path: str, overrides: argparse.Namespace | None = None) -> SimulationConfig:
    """Parse a simulation config file, applying env/CLI seed overrides."""
    obj = _load_json(path, "config")
    if not isinstance(obj, dict):
        raise SchemaError("$", "config must be a JSON object")
    extra = set(obj) - {"graph", "measures", "seed", "max_steps", "stop_tol",
                        "reference", "record_every"}
    if extra:
        raise SchemaError(f"$.{sorted(extra)[0]}", "unknown field")
    graph = graph_from_obj(obj.get("graph"))
    raw_measures = obj.get("measures")
    if not isinstance(raw_measures, list) or not raw_measures:
        raise SchemaError("$.measures", "expected a nonempty array")
    measures = [
        measure_from_obj(m, f"$.measures[{i}]") for i, m in enumerate(raw_measures)
    ]
    seed = _require_int(obj, "seed")
    max_steps = _require_int(obj, "max_steps")
    stop_tol = obj.get("stop_tol", 1e-8)
    if isinstance(stop_tol, bool) or not isinstance(stop_tol, (int, float)) \
            or not math.isfinite(stop_tol):
        raise SchemaError("$.stop_tol", "expected a finite number")
    reference = None
    if obj.get("reference") is not None:
        reference = measure_from_obj(obj["reference"], "$.reference")
    record_every = _require_int(obj, "record_every") if "record_every" in obj else 1

    env_seed = os.environ.get("PAWBAR_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError as exc:
            raise SchemaError("PAWBAR_SEED", f"not an integer: {env_seed!r}") from exc
    if overrides is not None:
        if getattr(overrides, "seed", None) is not None:
            seed = overrides.seed
        if getattr(overrides, "max_steps", None) is not None:
            max_steps = overrides.max_steps
        if getattr(overrides, "stop_tol", None) is not None:
            stop_tol = overrides.stop_tol
    return SimulationConfig(
        graph=graph,
        measures=measures,
        seed=seed,
        max_steps=max_steps,
        stop_tol=float(stop_tol),
        reference=reference,
        record_every=record_every,
    )


def write_trace_csv(trace: Trace, n_agents: int, with_errors: bool, path: str) -> None:
    """Locale-independent CSV: dot decimals, newline-terminated rows, 1-based agents."""
    cols = ["t", "i", "j", "spread", "u_metric"]
    if with_errors:
        cols += [f"err_{k}" for k in range(1, n_agents + 1)]
    lines = [",".join(cols)]
    for rec in trace.records:
        row = [str(rec.t), str(rec.i + 1), str(rec.j + 1), repr(rec.spread),
               repr(rec.u_metric)]
        if with_errors:
            row += [repr(e) for e in rec.ref_errors]
        lines.append(",".join(row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def trace_summary_obj(trace: Trace):
    return {
        "lambda": trace.lam.tolist() if trace.lam is not None else "not_converged",
        "lambda_spread": trace.lam_spread,
        "final_measures": [measure_to_obj(m) for m in trace.final_measures],
        "stop_reason": trace.stop_reason,
        "steps": trace.steps,
    }


def summary_path_for(out_path: str) -> Path:
    return Path(out_path).with_suffix(".summary.json")


def _write_json(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh)
        fh.write("\n")


def _parse_lambda(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise SchemaError("-l", f"not a comma-separated float list: {text!r}") from exc


# Each subcommand splits into an input phase (parse + validate, exit code 1 on
# failure) and a compute phase (exit code 2 on numerical failure).

def prepare_simulate(args) -> SimulationConfig:
    cfg = load_config(args.config, overrides=args)
    validate_config(cfg)
    return cfg


def execute_simulate(cfg: SimulationConfig, args) -> int:
    trace = run(cfg)
    write_trace_csv(trace, cfg.graph.n, cfg.reference is not None, args.output)
    _write_json(trace_summary_obj(trace), summary_path_for(args.output))
    return 0


def prepare_barycenter(args) -> BarycenterProblem:
    raw = _load_json(args.measures, "measures file")
    if not isinstance(raw, list) or not raw:
        raise SchemaError("$", "measures file must hold a nonempty JSON array")
    measures = [measure_from_obj(m, f"$[{i}]") for i, m in enumerate(raw)]
    for m in measures:
        validate_measure(m)
    first = measures[0]
    for m in measures[1:]:
        if type(m) is not type(first):
            raise MixedClass(
                f"mixed measure classes: {type(first).__name__} vs {type(m).__name__}"
            )
    return BarycenterProblem(measures, _parse_lambda(args.weights))


def execute_barycenter(prob: BarycenterProblem, args) -> int:
    first = prob.measures[0]
    out = {}
    if isinstance(first, Quantile1D):
        bar = barycenter_quantile1d(prob)
    elif isinstance(first, Gaussian):
        bar = barycenter_gaussian(prob)
        out["residual"] = gaussian_fixed_point_residual(bar.cov, prob)
    else:
        aligned = barycenter_discrete_aligned(prob)
        bar = aligned.measure
        out["alignment_consistent"] = aligned.consistent
    out["barycenter"] = measure_to_obj(bar)
    out["functional"] = functional(bar, prob)
    _write_json(out, args.output)
    return 0


def prepare_distance(args):
    a = measure_from_obj(_load_json(args.a, "measure"), "$")
    b = measure_from_obj(_load_json(args.b, "measure"), "$")
    validate_measure(a)
    validate_measure(b)
    if type(a) is not type(b):
        raise MixedClass(
            f"mixed measure classes: {type(a).__name__} vs {type(b).__name__}"
        )
    return a, b


def execute_distance(pair, args) -> int:
    a, b = pair
    print(f"{w2(a, b):.17g}")
    return 0


def prepare_validate(args) -> SimulationConfig:
    cfg = load_config(args.config, overrides=None)
    validate_config(cfg)
    return cfg


def execute_validate(cfg: SimulationConfig, args) -> int:
    print("ok")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pawbar",
        description="Pairwise Wasserstein-barycenter simulator and oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run a simulation config")
    p_sim.add_argument("-c", "--config", required=True)
    p_sim.add_argument("-o", "--output", required=True, help="trace CSV path")
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--max-steps", dest="max_steps", type=int, default=None)
    p_sim.add_argument("--stop-tol", dest="stop_tol", type=float, default=None)
    p_sim.set_defaults(prepare=prepare_simulate, execute=execute_simulate)

    p_bar = sub.add_parser("barycenter", help="centralized barycenter oracle")
    p_bar.add_argument("-m", "--measures", required=True, help="JSON array of measures")
    p_bar.add_argument("-l", "--weights", required=True, help="comma-separated weights")
    p_bar.add_argument("-o", "--output", required=True)
    p_bar.set_defaults(prepare=prepare_barycenter, execute=execute_barycenter)

    p_dist = sub.add_parser("distance", help="Wasserstein distance of two measures")
    p_dist.add_argument("a")
    p_dist.add_argument("b")
    p_dist.set_defaults(prepare=prepare_distance, execute=execute_distance)

    p_val = sub.add_parser("validate", help="validate a simulation config")
    p_val.add_argument("-c", "--config", required=True)
    p_val.set_defaults(prepare=prepare_validate, execute=execute_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        prepared = args.prepare(args)
    except (SchemaError, ValueError, PawbarError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    try:
        return args.execute(prepared, args)
    except PawbarError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
