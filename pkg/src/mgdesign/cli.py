"""Command-line front end.

Subcommands: ``validate``, ``evaluate``, ``search``, ``refine``,
``rl-search``, ``pareto``, ``sensitivity``, ``lcoe-sweep``.  Every
command is reproducible: fixed inputs and seed give byte-identical
output files.  Flags can be defaulted through environment variables
with the ``MGDESIGN_`` prefix (``MGDESIGN_SCENARIO``, ``MGDESIGN_OUT``,
``MGDESIGN_SEED``, ``MGDESIGN_JOBS``).
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path

from . import optimize, sensitivity
from .dispatch import Design, InvalidDesignError, simulate_year, write_trace_csv
from .metrics import METRIC_FIELDS, MetricVector, cost_record, evaluate, metric_record, npc
from .optimize import (
    EmptyInputError,
    EmptySearchSpaceError,
    EvaluatedDesign,
    PolicyConfig,
    SearchSpace,
    Weights,
)
from .scenario import ScenarioValidationError, bundled_data_path, bundled_scenario, load_scenario


class ConfigError(ValueError):
    """Bad command-line or environment configuration."""


def _env(name: str, fallback: str | None = None) -> str | None:
    return os.environ.get(f"MGDESIGN_{name}", fallback)


def _add_common(parser: argparse.ArgumentParser, design: bool = False, space: bool = False) -> None:
    parser.add_argument("--scenario", default=_env("SCENARIO"),
                        help="scenario YAML (default: the bundled synthetic community)")
    parser.add_argument("--out", default=_env("OUT", "mgdesign_out"),
                        help="output directory (default: %(default)s)")
    parser.add_argument("--seed", type=int, default=int(_env("SEED", "42")),
                        help="random seed for stochastic commands (default: %(default)s)")
    parser.add_argument("--jobs", type=int, default=int(_env("JOBS", "1")),
                        help="parallelism hint (default: %(default)s)")
    if design:
        parser.add_argument("--design", required=True,
                            help="capacities, e.g. pv=418,wt=123,dg=0,bess=704,conv=255[,grid=300]")
    if space:
        parser.add_argument("--space", required=True,
                            help="lattice axes, e.g. pv=0:500:125,bess=0:800:200,conv=255")
        parser.add_argument("--grid-cap", type=float, default=None,
                            help="explicit grid capacity kW (default: largest diesel in the space)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mgdesign",
        description="Grid-tied community microgrid design toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scenario file against all invariants")
    _add_common(p)

    p = sub.add_parser("evaluate", help="simulate one design and report its metrics")
    _add_common(p, design=True)
    p.add_argument("--trace", action="store_true", help="also write the hourly dispatch trace")

    p = sub.add_parser("search", help="enumerate a capacity lattice and rank by cost")
    _add_common(p, space=True)
    p.add_argument("--budget", type=float, default=None, help="capital + first-year O&M budget in $")
    p.add_argument("--weights", default="0.25,0.25,0.25,0.25",
                   help="scalarization weights w_npc,w_rel,w_eff,w_co2 (default equal)")

    p = sub.add_parser("refine", help="derivative-free cost refinement from a starting design")
    _add_common(p, design=True)
    p.add_argument("--tolerance", type=float, default=1.0, help="stop once steps shrink below this (kW/kWh)")
    p.add_argument("--max-cycles", type=int, default=200)

    p = sub.add_parser("rl-search", help="policy-gradient Pareto front exploration")
    _add_common(p, space=True)
    p.add_argument("--episodes", type=int, default=500)
    p.add_argument("--learning-rate", type=float, default=0.2)

    p = sub.add_parser("pareto", help="flag non-dominated rows in a search results CSV")
    _add_common(p)
    p.add_argument("--results", required=True, help="CSV produced by the search command")

    p = sub.add_parser("sensitivity", help="metric deviations under load/PV/wind perturbations")
    _add_common(p, design=True)

    p = sub.add_parser("lcoe-sweep", help="LCOE response to economic parameters")
    _add_common(p, design=True)
    p.add_argument("--parameter", choices=[s.value for s in sensitivity.SweepParameter] + ["all"],
                   default="all")
    p.add_argument("--multipliers", default="0.8,0.9,1.0,1.1,1.2")
    return parser


def _load_scenario(args) -> "Scenario":
    if args.scenario:
        return load_scenario(args.scenario)
    return bundled_scenario()


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _print_metrics(metrics: MetricVector) -> None:
    record = metric_record(metrics)
    width = max(len(k) for k in record)
    for key, value in record.items():
        print(f"  {key:<{width}}  {value:,.6g}")


def _write_metrics_csv(metrics: MetricVector, design: Design, path: Path) -> None:
    header = list(optimize.DESIGN_FIELDS) + list(METRIC_FIELDS)
    values = [optimize.csv_cell(getattr(design, f)) for f in optimize.DESIGN_FIELDS]
    values += [optimize.csv_cell(getattr(metrics, f)) for f in METRIC_FIELDS]
    path.write_text(",".join(header) + "\n" + ",".join(values) + "\n", encoding="utf-8")


def cmd_validate(args) -> int:
    scenario = _load_scenario(args)
    source = args.scenario or str(bundled_data_path() / "scenario.yaml")
    print(f"scenario OK: {scenario.name} ({source})")
    print(f"  hours: {len(scenario.load)}  annual load: {scenario.load.values.sum():,.1f} kWh")
    return 0


def cmd_evaluate(args) -> int:
    scenario = _load_scenario(args)
    design = Design.from_string(args.design)
    out = _outdir(args)
    trace = simulate_year(scenario, design)
    metrics = evaluate(design, scenario, trace=trace)
    _, costs = npc(trace, design, scenario)
    print(f"design {args.design} on scenario {scenario.name}:")
    _print_metrics(metrics)
    _write_metrics_csv(metrics, design, out / "metrics.csv")
    record = cost_record(costs)
    lines = [",".join(record)] + [",".join(optimize.csv_cell(v) for v in record.values())]
    (out / "costs.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    if args.trace:
        write_trace_csv(trace, out / "trace.csv")
    print(f"wrote {out / 'metrics.csv'} and {out / 'costs.csv'}")
    return 0


def cmd_search(args) -> int:
    scenario = _load_scenario(args)
    space = SearchSpace.from_string(args.space, grid_cap_kw=args.grid_cap)
    weights = Weights.from_string(args.weights)
    out = _outdir(args)
    results = optimize.grid_search(scenario, space, budget_usd=args.budget, jobs=args.jobs)
    if not results:
        raise EmptyInputError("no feasible design in the search space")
    optimize.write_evaluations_csv(results, out / "results.csv")
    front = optimize.write_pareto_csv(results, out / "pareto.csv")
    best = optimize.select_best(results, weights)
    print(f"evaluated {space.candidate_count()} candidates, {len(results)} feasible, "
          f"{len(front)} non-dominated")
    print(f"lowest NPC: {_design_label(results[0].design)} at ${results[0].metrics.npc_usd:,.0f}")
    print(f"weighted pick ({args.weights}): {_design_label(best.design)}")
    _print_metrics(best.metrics)
    print(f"wrote {out / 'results.csv'} and {out / 'pareto.csv'}")
    return 0


def _design_label(design: Design) -> str:
    return (f"pv={design.pv_kw:g},wt={design.wt_kw:g},dg={design.dg_kw:g},"
            f"bess={design.bess_kwh:g},conv={design.converter_kw:g}")


def cmd_refine(args) -> int:
    scenario = _load_scenario(args)
    start = Design.from_string(args.design)
    out = _outdir(args)
    result = optimize.refine(
        start, lambda d: evaluate(d, scenario).npc_usd,
        tolerance=args.tolerance, max_cycles=args.max_cycles)
    metrics = evaluate(result.design, scenario)
    print(f"refined {_design_label(start)} -> {_design_label(result.design)} "
          f"in {result.cycles} cycles ({result.evaluations} evaluations)")
    _print_metrics(metrics)
    _write_metrics_csv(metrics, result.design, out / "refined.csv")
    print(f"wrote {out / 'refined.csv'}")
    return 0


def cmd_rl_search(args) -> int:
    scenario = _load_scenario(args)
    space = SearchSpace.from_string(args.space, grid_cap_kw=args.grid_cap)
    out = _outdir(args)
    config = PolicyConfig(episodes=args.episodes, learning_rate=args.learning_rate)
    result = optimize.policy_gradient_search(scenario, space, config, seed=args.seed)
    optimize.write_evaluations_csv(result.archive, out / "rl_archive.csv")
    optimize.write_evaluations_csv(result.front, out / "rl_pareto.csv", with_front_rank=True)
    print(f"{result.episodes_run} episodes, archive {len(result.archive)}, "
          f"front {len(result.front)}")
    for name, probs in result.probabilities.items():
        top = probs.argmax()
        values = space.axis_values()[name]
        print(f"  {name:<12} favors {values[top]:g} (p={probs[top]:.3f})")
    print(f"wrote {out / 'rl_archive.csv'} and {out / 'rl_pareto.csv'}")
    return 0


def cmd_pareto(args) -> int:
    out = _outdir(args)
    evaluations = _read_results_csv(Path(args.results))
    optimize.emit_pareto_plotdata(evaluations, out / "pareto_plotdata.csv")
    front = sum(1 for keep in optimize.pareto_mask([e.metrics for e in evaluations]) if keep)
    print(f"{len(evaluations)} points, {front} non-dominated")
    print(f"wrote {out / 'pareto_plotdata.csv'}")
    return 0


def _read_results_csv(path: Path) -> list[EvaluatedDesign]:
    if not path.exists():
        raise ConfigError(f"results file not found: {path}")
    evaluations: list[EvaluatedDesign] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            design = Design(
                pv_kw=float(row["pv_kw"]), wt_kw=float(row["wt_kw"]), dg_kw=float(row["dg_kw"]),
                bess_kwh=float(row["bess_kwh"]), converter_kw=float(row["converter_kw"]),
                grid_cap_kw=float(row["grid_cap_kw"]) if row.get("grid_cap_kw") else None)
            metrics = MetricVector(**{name: float(row[name]) for name in METRIC_FIELDS})
            feasible = row.get("feasible", "1") == "1"
            evaluations.append(EvaluatedDesign(design, metrics, feasible))
    if not evaluations:
        raise EmptyInputError(f"no rows in {path}")
    return evaluations


def cmd_sensitivity(args) -> int:
    scenario = _load_scenario(args)
    design = Design.from_string(args.design)
    out = _outdir(args)
    rows = sensitivity.deviation_table(scenario, design)
    sensitivity.write_deviation_csv(rows, out / "sensitivity.csv")
    print(f"{'parameter':<12} {'delta%':>7} {'dNPC%':>8} {'dRel':>8} {'dEff%':>8} {'dCO2%':>8}")
    for row in rows:
        print(f"{row.target.value:<12} {row.delta * 100:>7.0f} {row.npc_dev_pct:>8.2f} "
              f"{row.reliability_dev:>8.4f} {row.efficiency_dev_pct:>8.2f} {row.co2_dev_pct:>8.2f}")
    print(f"wrote {out / 'sensitivity.csv'}")
    return 0


def cmd_lcoe_sweep(args) -> int:
    scenario = _load_scenario(args)
    design = Design.from_string(args.design)
    out = _outdir(args)
    multipliers = [float(m) for m in args.multipliers.split(",")]
    parameters = (list(sensitivity.SweepParameter) if args.parameter == "all"
                  else [sensitivity.SweepParameter(args.parameter)])
    for parameter in parameters:
        curve = sensitivity.lcoe_sweep(scenario, design, parameter, multipliers)
        path = out / f"lcoe_{parameter.value}.csv"
        sensitivity.write_sweep_csv(curve, path)
        lo, hi = min(v for _, v in curve), max(v for _, v in curve)
        print(f"{parameter.value:<16} lcoe {lo:.4f} .. {hi:.4f} $/kWh  -> {path}")
    return 0


_COMMANDS = {
    "validate": cmd_validate,
    "evaluate": cmd_evaluate,
    "search": cmd_search,
    "refine": cmd_refine,
    "rl-search": cmd_rl_search,
    "pareto": cmd_pareto,
    "sensitivity": cmd_sensitivity,
    "lcoe-sweep": cmd_lcoe_sweep,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, InvalidDesignError, EmptySearchSpaceError, EmptyInputError,
            ScenarioValidationError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
