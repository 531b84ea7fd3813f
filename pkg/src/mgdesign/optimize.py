"""Design-space search: lattice enumeration, Pareto filtering, weighted
scalarization, derivative-free refinement, and a policy-gradient explorer.

All searches work on the four-objective :class:`~mgdesign.metrics.MetricVector`
orientation: lower cost, higher reliability, higher efficiency, lower
net CO2.  Every routine is deterministic for fixed inputs and seed.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .dispatch import Design
from .metrics import METRIC_FIELDS, MetricVector, capital_cost, evaluate, fixed_om_cost
from .scenario import Scenario


class EmptySearchSpaceError(ValueError):
    """The lattice contains no candidate designs."""


class EmptyInputError(ValueError):
    """An operation that needs at least one point received none."""


class DegenerateBoundsError(ValueError):
    """Normalization bounds with min > max."""


@dataclass(frozen=True)
class Range:
    """Inclusive lattice axis [lo, hi] with step ``delta``."""

    lo: float
    hi: float
    delta: float

    def values(self) -> np.ndarray:
        if self.delta <= 0.0:
            raise EmptySearchSpaceError(f"step must be > 0, got {self.delta}")
        if self.hi < self.lo:
            raise EmptySearchSpaceError(f"range [{self.lo}, {self.hi}] is empty")
        count = int(math.floor((self.hi - self.lo) / self.delta + 1e-9)) + 1
        return self.lo + self.delta * np.arange(count)

    @classmethod
    def fixed(cls, value: float) -> "Range":
        return cls(value, value, 1.0)


@dataclass(frozen=True)
class SearchSpace:
    """Per-dimension capacity lattice.

    ``grid_cap_kw = None`` applies the rule "grid capacity equals the
    largest diesel capacity in the space" when the diesel axis is
    non-trivial, otherwise leaves grid exchange limited by the tariff.
    """

    pv_kw: Range = field(default_factory=lambda: Range(0.0, 500.0, 25.0))
    wt_kw: Range = field(default_factory=lambda: Range(0.0, 300.0, 25.0))
    dg_kw: Range = field(default_factory=lambda: Range(0.0, 60.0, 60.0))
    bess_kwh: Range = field(default_factory=lambda: Range(0.0, 1000.0, 50.0))
    converter_kw: Range = field(default_factory=lambda: Range(0.0, 400.0, 25.0))
    grid_cap_kw: float | None = None

    AXES = ("pv_kw", "wt_kw", "dg_kw", "bess_kwh", "converter_kw")

    def axis_values(self) -> dict[str, np.ndarray]:
        return {name: getattr(self, name).values() for name in self.AXES}

    def effective_grid_cap(self) -> float | None:
        if self.grid_cap_kw is not None:
            return self.grid_cap_kw
        dg_max = float(self.dg_kw.values().max())
        return dg_max if dg_max > 0.0 else None

    def candidate_count(self) -> int:
        count = 1
        for values in self.axis_values().values():
            count *= len(values)
        return count

    def designs(self) -> Iterable[Design]:
        """All lattice designs in row-major axis order (pv outermost)."""
        axes = self.axis_values()
        grid_cap = self.effective_grid_cap()
        for pv in axes["pv_kw"]:
            for wt in axes["wt_kw"]:
                for dg in axes["dg_kw"]:
                    for bess in axes["bess_kwh"]:
                        for conv in axes["converter_kw"]:
                            yield Design(pv_kw=float(pv), wt_kw=float(wt), dg_kw=float(dg),
                                         bess_kwh=float(bess), converter_kw=float(conv),
                                         grid_cap_kw=grid_cap)

    def clip(self, design: Design) -> Design:
        """Clamp a design onto the axis-aligned bounding box (not the lattice)."""
        return replace(
            design,
            pv_kw=min(max(design.pv_kw, self.pv_kw.lo), self.pv_kw.hi),
            wt_kw=min(max(design.wt_kw, self.wt_kw.lo), self.wt_kw.hi),
            dg_kw=min(max(design.dg_kw, self.dg_kw.lo), self.dg_kw.hi),
            bess_kwh=min(max(design.bess_kwh, self.bess_kwh.lo), self.bess_kwh.hi),
            converter_kw=min(max(design.converter_kw, self.converter_kw.lo), self.converter_kw.hi),
        )

    @classmethod
    def from_string(cls, text: str, grid_cap_kw: float | None = None) -> "SearchSpace":
        """Parse ``pv=0:500:25,wt=0:300:25,bess=0:1000:50,...``.

        Axes not mentioned collapse to the fixed value 0.  A bare number
        fixes an axis, ``lo:hi:step`` spans it.
        """
        alias = {"pv": "pv_kw", "wt": "wt_kw", "dg": "dg_kw",
                 "bess": "bess_kwh", "conv": "converter_kw", "converter": "converter_kw"}
        ranges: dict[str, Range] = {name: Range.fixed(0.0) for name in cls.AXES}
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            name, _, spec_text = part.partition("=")
            key = alias.get(name.strip().lower())
            if key is None:
                raise EmptySearchSpaceError(f"unknown axis {name.strip()!r}")
            pieces = spec_text.split(":")
            try:
                if len(pieces) == 1:
                    ranges[key] = Range.fixed(float(pieces[0]))
                elif len(pieces) == 3:
                    ranges[key] = Range(float(pieces[0]), float(pieces[1]), float(pieces[2]))
                else:
                    raise ValueError
            except ValueError:
                raise EmptySearchSpaceError(f"bad axis spec {part!r}; use lo:hi:step or value") from None
        return cls(grid_cap_kw=grid_cap_kw, **ranges)


@dataclass(frozen=True)
class Weights:
    """Preference weights over (cost, reliability, efficiency, CO2).

    Each weight lies strictly inside (0, 1) and they sum to 1.
    """

    npc: float = 0.25
    reliability: float = 0.25
    efficiency: float = 0.25
    co2: float = 0.25

    def __post_init__(self) -> None:
        values = self.as_tuple()
        if not math.isclose(sum(values), 1.0, rel_tol=0.0, abs_tol=1e-9):
            raise ValueError(f"weights must sum to 1, got {sum(values)}")
        if any(not 0.0 < w < 1.0 for w in values):
            raise ValueError(f"each weight must be in (0, 1), got {values}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.npc, self.reliability, self.efficiency, self.co2)

    @classmethod
    def focus(cls, objective: str, epsilon: float = 1e-6) -> "Weights":
        """Nearly all weight on one objective (the w -> 1 limit)."""
        names = ("npc", "reliability", "efficiency", "co2")
        if objective not in names:
            raise ValueError(f"objective must be one of {names}, got {objective!r}")
        values = {name: epsilon for name in names}
        values[objective] = 1.0 - 3.0 * epsilon
        return cls(**values)

    @classmethod
    def from_string(cls, text: str) -> "Weights":
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"need 4 comma-separated weights, got {len(parts)}")
        return cls(*parts)


def default_weight_cycle() -> list[Weights]:
    """The 13-point simplex grid used to trace the front: the centroid,
    four single-objective emphases, four milder emphases, and four
    adjacent two-objective blends."""
    cycle = [Weights()]
    for name in ("npc", "reliability", "efficiency", "co2"):
        values = {"npc": 0.05, "reliability": 0.05, "efficiency": 0.05, "co2": 0.05}
        values[name] = 0.85
        cycle.append(Weights(**values))
    for name in ("npc", "reliability", "efficiency", "co2"):
        values = {"npc": 0.2, "reliability": 0.2, "efficiency": 0.2, "co2": 0.2}
        values[name] = 0.4
        cycle.append(Weights(**values))
    for pair in (("npc", "reliability"), ("reliability", "efficiency"),
                 ("efficiency", "co2"), ("co2", "npc")):
        values = {"npc": 0.15, "reliability": 0.15, "efficiency": 0.15, "co2": 0.15}
        values[pair[0]] = 0.35
        values[pair[1]] = 0.35
        cycle.append(Weights(**values))
    return cycle


@dataclass(frozen=True)
class EvaluatedDesign:
    """A design together with its metrics and feasibility verdict."""

    design: Design
    metrics: MetricVector
    feasible: bool = True
    violation_notes: tuple[str, ...] = ()


# ----------------------------------------------------------------------
# Pareto filtering
# ----------------------------------------------------------------------

def _minimization_matrix(points: Sequence[MetricVector]) -> np.ndarray:
    """Objectives as an (n, 4) matrix where lower is uniformly better."""
    m = np.array([p.objectives() for p in points], dtype=float)
    m[:, 1] *= -1.0  # reliability: higher is better
    m[:, 2] *= -1.0  # efficiency: higher is better
    return m


def pareto_mask(points: Sequence[MetricVector]) -> np.ndarray:
    """Boolean mask of the non-dominated points, in input order.

    A point is dominated when another point is at least as good in every
    objective and strictly better in one.  Duplicates do not dominate
    each other, so tied optima are all kept.
    """
    n = len(points)
    if n == 0:
        return np.zeros(0, dtype=bool)
    m = _minimization_matrix(points)
    dominated = np.zeros(n, dtype=bool)
    chunk = 256
    for start in range(0, n, chunk):
        block = m[start:start + chunk]  # candidates j
        le = (block[:, None, :] <= m[None, :, :]).all(axis=2)
        lt = (block[:, None, :] < m[None, :, :]).any(axis=2)
        dominated |= (le & lt).any(axis=0)
    return ~dominated


def pareto_filter(points: Sequence[MetricVector]) -> list[MetricVector]:
    """The maximal non-dominated subset, preserving input order."""
    mask = pareto_mask(points)
    return [p for p, keep in zip(points, mask) if keep]


def pareto_ranks(points: Sequence[MetricVector]) -> np.ndarray:
    """Non-dominated front index per point (0 = the Pareto front)."""
    n = len(points)
    ranks = np.full(n, -1, dtype=int)
    remaining = list(range(n))
    front = 0
    while remaining:
        mask = pareto_mask([points[i] for i in remaining])
        next_remaining = []
        for idx, keep in zip(remaining, mask):
            if keep:
                ranks[idx] = front
            else:
                next_remaining.append(idx)
        remaining = next_remaining
        front += 1
    return ranks


# ----------------------------------------------------------------------
# Scalarization
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class NormalizationBounds:
    """Per-objective (min, max) over a candidate pool, used to bring the
    four objectives onto a common [0, 1] scale."""

    npc: tuple[float, float]
    reliability: tuple[float, float]
    efficiency: tuple[float, float]
    co2: tuple[float, float]

    @classmethod
    def from_metrics(cls, points: Sequence[MetricVector]) -> "NormalizationBounds":
        if not points:
            raise EmptyInputError("cannot derive bounds from an empty pool")
        m = np.array([p.objectives() for p in points], dtype=float)
        lo, hi = m.min(axis=0), m.max(axis=0)
        return cls(npc=(lo[0], hi[0]), reliability=(lo[1], hi[1]),
                   efficiency=(lo[2], hi[2]), co2=(lo[3], hi[3]))

    def as_rows(self) -> tuple[tuple[float, float], ...]:
        return (self.npc, self.reliability, self.efficiency, self.co2)


def _term(value: float, bounds: tuple[float, float], maximize: bool) -> float:
    """Normalized minimization term in [0, 1]; an all-equal metric across
    the pool contributes nothing."""
    lo, hi = bounds
    if hi < lo:
        raise DegenerateBoundsError(f"bounds {bounds} have min > max")
    if hi == lo:
        return 0.0
    n = (value - lo) / (hi - lo)
    return 1.0 - n if maximize else n


def scalarize(m: MetricVector, weights: Weights, bounds: NormalizationBounds) -> float:
    """Weighted scalar score, lower is better.

    Cost and CO2 enter as their normalized values; reliability and
    efficiency as one minus theirs, so all four terms are minimized.
    """
    terms = (
        _term(m.npc_usd, bounds.npc, maximize=False),
        _term(m.reliability, bounds.reliability, maximize=True),
        _term(m.efficiency_pct, bounds.efficiency, maximize=True),
        _term(m.co2_kg_per_yr, bounds.co2, maximize=False),
    )
    w = weights.as_tuple()
    return sum(wi * ti for wi, ti in zip(w, terms))


def select_best(evaluations: Sequence[EvaluatedDesign], weights: Weights) -> EvaluatedDesign:
    """The scalarization argmin over a pool, normalizing over that pool."""
    if not evaluations:
        raise EmptyInputError("cannot select from an empty pool")
    bounds = NormalizationBounds.from_metrics([e.metrics for e in evaluations])
    scores = [scalarize(e.metrics, weights, bounds) for e in evaluations]
    return evaluations[int(np.argmin(scores))]


# ----------------------------------------------------------------------
# Grid search (lattice enumeration)
# ----------------------------------------------------------------------

def _evaluate_pair(task: tuple[Design, Scenario]) -> MetricVector:
    design, scenario = task
    return evaluate(design, scenario)


def grid_search(scenario: Scenario, space: SearchSpace,
                budget_usd: float | None = None,
                evaluate_fn: Callable[[Design], MetricVector] | None = None,
                jobs: int = 1) -> list[EvaluatedDesign]:
    """Evaluate every lattice design, keep the feasible ones, sort by NPC.

    Feasibility screens capital plus one year of size-based O&M against
    ``budget_usd`` before simulating, so infeasible designs cost nothing.
    Result order is deterministic regardless of ``jobs``: NPC ascending,
    lattice order breaking ties.  ``jobs > 1`` parallelizes the default
    evaluator across processes; a custom ``evaluate_fn`` always runs
    sequentially.
    """
    if space.candidate_count() == 0:
        raise EmptySearchSpaceError("search space has no candidates")

    candidates: list[tuple[int, Design]] = []
    for index, design in enumerate(space.designs()):
        if budget_usd is not None:
            upfront = capital_cost(design, scenario) + fixed_om_cost(design, scenario)
            if upfront > budget_usd:
                continue
        candidates.append((index, design))

    if evaluate_fn is not None or jobs <= 1:
        if evaluate_fn is None:
            evaluate_fn = lambda design: evaluate(design, scenario)
        metrics_list = [evaluate_fn(design) for _, design in candidates]
    else:
        from concurrent.futures import ProcessPoolExecutor

        tasks = [(design, scenario) for _, design in candidates]
        chunk = max(1, len(tasks) // (4 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            metrics_list = list(pool.map(_evaluate_pair, tasks, chunksize=chunk))

    results = [
        (metrics.npc_usd, index, EvaluatedDesign(design, metrics, True))
        for (index, design), metrics in zip(candidates, metrics_list)
    ]
    results.sort(key=lambda row: (row[0], row[1]))
    return [row[2] for row in results]


# ----------------------------------------------------------------------
# Derivative-free refinement (cyclic coordinate search)
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class RefineResult:
    design: Design
    objective_value: float
    cycles: int
    evaluations: int


#: Default coordinate steps, matching the default lattice resolution.
DEFAULT_STEPS = {"pv_kw": 25.0, "wt_kw": 25.0, "dg_kw": 60.0, "bess_kwh": 50.0, "converter_kw": 25.0}


def refine(start: Design, objective: Callable[[Design], float],
           space: SearchSpace | None = None,
           initial_steps: dict[str, float] | None = None,
           shrink: float = 0.5, tolerance: float = 1.0,
           max_cycles: int = 200) -> RefineResult:
    """Cyclic coordinate descent on a scalar objective (minimization).

    One capacity at a time is perturbed by +/- its current step; a move
    is accepted only if it strictly lowers the objective, so the
    incumbent score is non-increasing.  After a full cycle without an
    acceptance all steps shrink by ``shrink``; the search stops once
    every step is below ``tolerance`` or after ``max_cycles`` cycles.
    Capacities stay non-negative and inside ``space`` when given.
    """
    steps = dict(DEFAULT_STEPS if initial_steps is None else initial_steps)
    current = start if space is None else space.clip(start)
    best = objective(current)
    evaluations = 1
    cycles = 0

    while cycles < max_cycles and max(steps.values()) >= tolerance:
        cycles += 1
        improved = False
        for name, step in steps.items():
            if step <= 0.0:
                continue
            for direction in (+1.0, -1.0):
                value = getattr(current, name) + direction * step
                candidate = replace(current, **{name: max(value, 0.0)})
                if space is not None:
                    candidate = space.clip(candidate)
                if candidate == current:
                    continue
                score = objective(candidate)
                evaluations += 1
                if score < best:
                    current, best = candidate, score
                    improved = True
                    break
        if not improved:
            steps = {name: step * shrink for name, step in steps.items()}
    return RefineResult(design=current, objective_value=best, cycles=cycles,
                        evaluations=evaluations)


# ----------------------------------------------------------------------
# Policy-gradient search (REINFORCE over the capacity lattice)
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PolicyConfig:
    """Hyperparameters of the policy-gradient explorer."""

    episodes: int = 500
    learning_rate: float = 0.2
    baseline_decay: float = 0.99
    weight_cycle: tuple[Weights, ...] | None = None


@dataclass
class PolicySearchResult:
    """Archive of everything evaluated, its Pareto front, and the final
    per-axis action distributions."""

    archive: list[EvaluatedDesign]
    front: list[EvaluatedDesign]
    probabilities: dict[str, np.ndarray]
    theta: dict[str, np.ndarray]
    episodes_run: int


def _softmax(logits: np.ndarray) -> np.ndarray:
    z = logits - logits.max()
    e = np.exp(z)
    return e / e.sum()


def policy_gradient_search(scenario: Scenario | None, space: SearchSpace,
                           config: PolicyConfig = PolicyConfig(), seed: int = 42,
                           evaluate_fn: Callable[[Design], MetricVector] | None = None) -> PolicySearchResult:
    """Trace the Pareto front with single-step REINFORCE episodes.

    Each episode samples one lattice value per capacity axis from an
    independent softmax policy, evaluates the design, and rewards each
    objective by its min-max normalized value over the archive so far
    (oriented so higher is better).  The advantage is the
    preference-weighted reward minus per-objective exponential moving
    baselines, with the preference weights cycling over a fixed simplex
    grid so successive episodes pull toward different parts of the
    front.  The returned front is exactly the Pareto filter of the
    archive.  Deterministic for a fixed seed.
    """
    axes = space.axis_values()
    if any(len(v) == 0 for v in axes.values()):
        raise EmptySearchSpaceError("search space has no candidates")
    if evaluate_fn is None:
        if scenario is None:
            raise ValueError("scenario is required when no evaluate_fn is given")
        evaluate_fn = lambda design: evaluate(design, scenario)
    cycle = list(config.weight_cycle) if config.weight_cycle else default_weight_cycle()
    grid_cap = space.effective_grid_cap()

    rng = np.random.default_rng(seed)
    theta = {name: np.zeros(len(values)) for name, values in axes.items()}
    baselines = np.zeros(4)
    baseline_ready = False
    lo = np.full(4, np.inf)
    hi = np.full(4, -np.inf)
    archive: list[EvaluatedDesign] = []

    for episode in range(config.episodes):
        probs = {name: _softmax(logits) for name, logits in theta.items()}
        actions = {name: int(rng.choice(len(p), p=p)) for name, p in probs.items()}
        design = Design(
            pv_kw=float(axes["pv_kw"][actions["pv_kw"]]),
            wt_kw=float(axes["wt_kw"][actions["wt_kw"]]),
            dg_kw=float(axes["dg_kw"][actions["dg_kw"]]),
            bess_kwh=float(axes["bess_kwh"][actions["bess_kwh"]]),
            converter_kw=float(axes["converter_kw"][actions["converter_kw"]]),
            grid_cap_kw=grid_cap,
        )
        metrics = evaluate_fn(design)
        archive.append(EvaluatedDesign(design, metrics, True))

        # Orient all four objectives so higher is better, then normalize
        # against the running archive envelope.
        oriented = np.array([-metrics.npc_usd, metrics.reliability,
                             metrics.efficiency_pct, -metrics.co2_kg_per_yr])
        lo = np.minimum(lo, oriented)
        hi = np.maximum(hi, oriented)
        span = hi - lo
        rewards = np.where(span > 0.0, (oriented - lo) / np.where(span > 0.0, span, 1.0), 0.0)

        if not baseline_ready:
            baselines = rewards.copy()
            baseline_ready = True
        weights = np.array(cycle[episode % len(cycle)].as_tuple())
        advantage = float(weights @ (rewards - baselines))
        baselines = config.baseline_decay * baselines + (1.0 - config.baseline_decay) * rewards

        if config.learning_rate != 0.0 and advantage != 0.0:
            for name, p in probs.items():
                grad = -p
                grad[actions[name]] += 1.0
                theta[name] = theta[name] + config.learning_rate * advantage * grad

    final_probs = {name: _softmax(logits) for name, logits in theta.items()}
    front_mask = pareto_mask([e.metrics for e in archive])
    front = [e for e, keep in zip(archive, front_mask) if keep]
    return PolicySearchResult(archive=archive, front=front, probabilities=final_probs,
                              theta=theta, episodes_run=config.episodes)


# ----------------------------------------------------------------------
# Result files
# ----------------------------------------------------------------------

DESIGN_FIELDS = ("pv_kw", "wt_kw", "dg_kw", "bess_kwh", "converter_kw", "grid_cap_kw")


def csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_evaluations_csv(evaluations: Sequence[EvaluatedDesign], path: str | Path,
                          with_front_rank: bool = False) -> None:
    """One row per evaluated design: capacities, metrics, feasibility,
    and optionally the Pareto front rank and membership flag."""
    if not evaluations:
        raise EmptyInputError("no evaluations to write")
    header = list(DESIGN_FIELDS) + list(METRIC_FIELDS) + ["feasible"]
    ranks = None
    if with_front_rank:
        ranks = pareto_ranks([e.metrics for e in evaluations])
        header += ["non_dominated", "front_rank"]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for i, ev in enumerate(evaluations):
            row = [csv_cell(getattr(ev.design, name)) for name in DESIGN_FIELDS]
            row += [csv_cell(getattr(ev.metrics, name)) for name in METRIC_FIELDS]
            row.append(csv_cell(ev.feasible))
            if ranks is not None:
                row.append(csv_cell(bool(ranks[i] == 0)))
                row.append(csv_cell(int(ranks[i])))
            fh.write(",".join(row) + "\n")


def emit_pareto_plotdata(evaluations: Sequence[EvaluatedDesign], path: str | Path) -> None:
    """The trade-off cloud behind a Pareto plot: every point with its
    dominated/non-dominated flag and front rank."""
    write_evaluations_csv(evaluations, path, with_front_rank=True)


def write_pareto_csv(evaluations: Sequence[EvaluatedDesign], path: str | Path) -> list[EvaluatedDesign]:
    """Write only the non-dominated designs (rank column included);
    returns them in input order."""
    if not evaluations:
        raise EmptyInputError("no evaluations to write")
    mask = pareto_mask([e.metrics for e in evaluations])
    front = [e for e, keep in zip(evaluations, mask) if keep]
    write_evaluations_csv(front, path, with_front_rank=True)
    return front
