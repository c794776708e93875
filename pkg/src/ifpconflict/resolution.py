"""Conflict resolution by adjusting the most conflicting agent's preferences.

Each round picks the agent with the highest agent conflict and rewrites
exactly ``k`` of its issue pairs (together with their reciprocal cells).  The
new values minimise

    L = agent_conflict(target, I) after the change
        + rho * sum over ordered pairs i != j of |d mu| + |d nu|,
    rho = 1 / (m (m - 1) (n - 1)),

so conflict reduction is traded against how far the agent moves.  The
minimisation runs simulated annealing over (which pairs, which values); the
best of ``S`` independently seeded runs is applied.  Rounds repeat until the
group conflict drops to ``kappa``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .errors import (
    DegenerateLosses,
    GroupTooSmall,
    IFPSError,
    InvalidK,
    InvalidSigma,
    NoProgress,
    PlanInvalid,
)
from .ifps import (
    TOLERANCE,
    ConflictSituation,
    IntuitionisticFuzzyNumber,
    PreferenceMatrix,
)
from .measures import agent_conflict, agent_conflicts, group_conflict, ifn_distance, issue_conflicts
from .trisection import ThresholdPair, situation_thresholds

Pair = tuple[str, str]


@dataclass(frozen=True)
class Adjustment:
    pair: Pair
    old: IntuitionisticFuzzyNumber
    new: IntuitionisticFuzzyNumber

    @property
    def delta(self) -> tuple[float, float]:
        return (self.new.mu - self.old.mu, self.new.nu - self.old.nu)


@dataclass(frozen=True)
class AdjustmentPlan:
    """Replacement values for ``k`` issue pairs of one agent.

    Each key ``(i, j)`` sets position ``(i, j)`` to the given IFN; position
    ``(j, i)`` receives the mirrored value.
    """

    target: str
    new_values: tuple[tuple[Pair, IntuitionisticFuzzyNumber], ...]

    def __init__(self, target: str,
                 new_values: Mapping[Pair, IntuitionisticFuzzyNumber | tuple[float, float]]
                 | Iterable[tuple[Pair, IntuitionisticFuzzyNumber | tuple[float, float]]]):
        items = new_values.items() if isinstance(new_values, Mapping) else new_values
        norm = []
        for pair, value in items:
            if not isinstance(value, IntuitionisticFuzzyNumber):
                value = IntuitionisticFuzzyNumber(float(value[0]), float(value[1]))
            norm.append((tuple(pair), value))
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "new_values", tuple(norm))

    @property
    def k(self) -> int:
        return len(self.new_values)

    @property
    def selected_pairs(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(p) for p, _ in self.new_values)

    def as_dict(self) -> dict[Pair, IntuitionisticFuzzyNumber]:
        return dict(self.new_values)


@dataclass(frozen=True)
class SAParams:
    initial_temperature: float = 0.05
    cooling_rate: float = 0.97
    steps_per_run: int = 2000
    value_step: float = 0.15
    swap_probability: float = 0.2

    def __post_init__(self):
        if not self.initial_temperature > 0:
            raise IFPSError("initial_temperature must be positive")
        if not 0 < self.cooling_rate < 1:
            raise IFPSError("cooling_rate must lie in (0, 1)")
        if int(self.steps_per_run) != self.steps_per_run or self.steps_per_run < 1:
            raise IFPSError("steps_per_run must be a positive integer")
        if not self.value_step > 0:
            raise IFPSError("value_step must be positive")
        if not 0 <= self.swap_probability <= 1:
            raise IFPSError("swap_probability must lie in [0, 1]")


class SAResult(NamedTuple):
    plan: AdjustmentPlan
    objective: float


def _check_plan(situation: ConflictSituation, plan: AdjustmentPlan) -> list[tuple[int, int, float, float]]:
    situation.agent_index(plan.target)
    cells = []
    seen: set[frozenset[int]] = set()
    for (i, j), value in plan.new_values:
        try:
            r, c = situation.issue_index(i), situation.issue_index(j)
        except IFPSError as exc:
            raise PlanInvalid(f"pair ({i}, {j}): {exc}") from None
        if r == c:
            raise PlanInvalid(f"pair ({i}, {j}) is a diagonal position")
        key = frozenset((r, c))
        if key in seen:
            raise PlanInvalid(f"pair ({i}, {j}) is selected twice")
        seen.add(key)
        mu, nu = value.mu, value.nu
        if not (0 <= mu <= 1 and 0 <= nu <= 1):
            raise PlanInvalid(f"pair ({i}, {j}): ({mu}, {nu}) outside [0, 1]")
        if mu + nu > 1 + TOLERANCE:
            raise PlanInvalid(f"pair ({i}, {j}): mu + nu = {mu + nu} > 1")
        cells.append((r, c, mu, nu))
    return cells


def apply_plan(situation: ConflictSituation, plan: AdjustmentPlan) -> ConflictSituation:
    cells = _check_plan(situation, plan)
    mu = np.array(situation.preferences[plan.target].mu)
    for r, c, m_new, n_new in cells:
        mu[r, c] = m_new
        mu[c, r] = n_new
    return situation.with_matrix(plan.target, PreferenceMatrix.from_mu(mu))


def balance_weight(situation: ConflictSituation) -> float:
    """``rho = 1 / (m (m - 1) (n - 1))``."""
    if situation.n < 2:
        raise GroupTooSmall("adjustment needs at least two agents")
    m = situation.m
    return 1.0 / (m * (m - 1) * (situation.n - 1))


def adjustment_penalty(before: ConflictSituation, after: ConflictSituation, agent: str) -> float:
    """Sum of ``|d mu| + |d nu|`` over all ordered off-diagonal pairs of ``agent``."""
    p, q = before.preferences[agent], after.preferences[agent]
    off = ~np.eye(before.m, dtype=bool)
    return float((np.abs(q.mu - p.mu) + np.abs(q.nu - p.nu))[off].sum())


def objective(situation: ConflictSituation, plan: AdjustmentPlan) -> float:
    after = apply_plan(situation, plan)
    rho = balance_weight(situation)
    return agent_conflict(after, plan.target) + rho * adjustment_penalty(situation, after, plan.target)


# -- annealing -----------------------------------------------------------------

class _PairCosts:
    """Per-pair decomposition of the objective for one target agent.

    ``L = 2 rho * (sum_p C_p(x_p) + sum_selected |x_p - x0_p|_1)`` where
    ``C_p(x)`` is the summed IFN distance from ``x`` to every other agent's
    value on unordered pair ``p``.  A move touches one pair, so ``dL`` costs
    O(n).
    """

    def __init__(self, situation: ConflictSituation, target: str):
        ka = situation.agent_index(target)
        self.scale = 2.0 * balance_weight(situation)
        mu = situation.mu_tensor
        others = [b for b in range(situation.n) if b != ka]
        self.pairs = list(combinations(range(situation.m), 2))
        self.x0 = [(float(mu[ka, r, c]), float(mu[ka, c, r])) for r, c in self.pairs]
        self.other_mu = [mu[others, r, c] for r, c in self.pairs]
        self.other_nu = [mu[others, c, r] for r, c in self.pairs]
        self.base = [self.conflict(p, *self.x0[p]) for p in range(len(self.pairs))]
        self.base_total = sum(self.base)

    def conflict(self, p: int, mu: float, nu: float) -> float:
        return float(ifn_distance(mu, nu, self.other_mu[p], self.other_nu[p]).sum())

    def gain(self, p: int, mu: float, nu: float) -> float:
        """Change in the bracketed sum when pair ``p`` takes value ``(mu, nu)``."""
        m0, n0 = self.x0[p]
        return self.conflict(p, mu, nu) + abs(mu - m0) + abs(nu - n0) - self.base[p]

    def total(self, gains: Iterable[float]) -> float:
        return self.scale * (self.base_total + sum(gains))


def _project(mu: float, nu: float) -> tuple[float, float]:
    mu = min(max(mu, 0.0), 1.0)
    nu = min(max(nu, 0.0), 1.0)
    s = mu + nu
    if s > 1.0:
        mu, nu = mu / s, nu / s
        nu = min(nu, 1.0 - mu)
    return mu, nu


def max_pairs(m: int) -> int:
    return m * (m - 1) // 2


def _check_k(situation: ConflictSituation, k: int) -> None:
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= max_pairs(situation.m):
        raise InvalidK(f"k must be an integer in [1, {max_pairs(situation.m)}], got {k!r}")


def initial_pairs(situation: ConflictSituation, target: str, k: int) -> list[Pair]:
    """The ``k`` pairs where ``target`` disagrees most with everybody else."""
    costs = _PairCosts(situation, target)
    order = sorted(range(len(costs.pairs)), key=lambda p: -costs.base[p])
    return [(situation.issues[costs.pairs[p][0]], situation.issues[costs.pairs[p][1]])
            for p in order[:k]]


def sa_optimize(situation: ConflictSituation, target: str, k: int,
                params: SAParams | None = None, seed: int = 0) -> SAResult:
    """One annealing run; returns the best state visited and its objective."""
    params = params or SAParams()
    situation.agent_index(target)
    _check_k(situation, k)
    k = int(k)
    costs = _PairCosts(situation, target)
    rng = np.random.default_rng(seed)
    npairs = len(costs.pairs)

    order = sorted(range(npairs), key=lambda p: -costs.base[p])
    selected = order[:k]
    values = [costs.x0[p] for p in selected]
    gains = [0.0] * k
    current = costs.total(gains)
    best = current
    best_state = (list(selected), list(values))
    temperature = params.initial_temperature

    for _ in range(int(params.steps_per_run)):
        slot = int(rng.integers(k))
        if k < npairs and rng.random() < params.swap_probability:
            chosen = set(selected)
            pool = [p for p in range(npairs) if p not in chosen]
            p_new = pool[int(rng.integers(len(pool)))]
            v_new = costs.x0[p_new]
        else:
            p_new = selected[slot]
            mu, nu = values[slot]
            step = params.value_step
            v_new = _project(mu + rng.uniform(-step, step), nu + rng.uniform(-step, step))
        g_new = costs.gain(p_new, *v_new)
        delta = costs.scale * (g_new - gains[slot])
        if delta <= 0 or rng.random() < math.exp(-delta / temperature):
            selected[slot], values[slot], gains[slot] = p_new, v_new, g_new
            current = costs.total(gains)
            if current < best:
                best = current
                best_state = (list(selected), list(values))
        temperature *= params.cooling_rate

    sel, vals = best_state
    plan = AdjustmentPlan(target, [
        ((situation.issues[costs.pairs[p][0]], situation.issues[costs.pairs[p][1]]),
         IntuitionisticFuzzyNumber(*v))
        for p, v in sorted(zip(sel, vals))
    ])
    return SAResult(plan, best)


def best_of_runs(situation: ConflictSituation, target: str, k: int, runs: int,
                 params: SAParams | None = None, seed: int = 0) -> tuple[int, list[SAResult]]:
    """Run ``sa_optimize`` with seeds ``seed + s``; return (index of best, all results)."""
    if runs < 1:
        raise IFPSError("the number of annealing runs S must be at least 1")
    results = [sa_optimize(situation, target, k, params, seed + s) for s in range(runs)]
    best = min(range(runs), key=lambda s: results[s].objective)
    return best, results


# -- outer loop ------------------------------------------------------------------

@dataclass(frozen=True)
class IterationRecord:
    t: int
    target: str
    plan: AdjustmentPlan
    adjustments: tuple[Adjustment, ...]
    objective: float
    run_objectives: tuple[float, ...]
    group_conflict: float
    thresholds: ThresholdPair | None
    situation: ConflictSituation = field(repr=False)


@dataclass
class ResolutionTrace:
    initial: ConflictSituation
    kappa: float
    sigma: float
    iterations: list[IterationRecord] = field(default_factory=list)

    @property
    def final(self) -> ConflictSituation:
        return self.iterations[-1].situation if self.iterations else self.initial

    @property
    def initial_cm(self) -> float:
        return group_conflict(self.initial)

    @property
    def final_cm(self) -> float:
        return group_conflict(self.final)

    def situations(self) -> list[ConflictSituation]:
        """The situation before any change followed by the one after each iteration."""
        return [self.initial] + [rec.situation for rec in self.iterations]

    def agent_conflict_series(self) -> list[dict[str, float]]:
        return [agent_conflicts(s) for s in self.situations()]

    def issue_conflict_series(self) -> list[dict[str, float]]:
        return [issue_conflicts(s) for s in self.situations()]


def resolve(situation: ConflictSituation, kappa: float, k: int, S: int, sigma: float,
            params: SAParams | None = None, seed: int = 0,
            max_iterations: int = 50) -> ResolutionTrace:
    """Adjust agents one at a time until the group conflict is at most ``kappa``.

    Iteration ``t`` runs its ``S`` annealing runs with seeds
    ``seed + (t - 1) * S + s``.  Raises :class:`NoProgress` (carrying the
    partial trace) if ``max_iterations`` rounds do not suffice.
    """
    if not 0 < kappa < 1:
        raise IFPSError(f"kappa must lie in (0, 1), got {kappa}")
    if not 0 < sigma < 0.5:
        raise InvalidSigma(f"sigma must lie in (0, 0.5), got {sigma}")
    _check_k(situation, k)
    if S < 1:
        raise IFPSError("the number of annealing runs S must be at least 1")
    params = params or SAParams()

    trace = ResolutionTrace(situation, kappa, sigma)
    current = situation
    cm = group_conflict(current)
    while cm > kappa:
        t = len(trace.iterations) + 1
        if t > max_iterations:
            raise NoProgress(
                f"group conflict {cm:.4f} still above kappa={kappa} after {max_iterations} iterations",
                trace,
            )
        per_agent = agent_conflicts(current)
        target = max(current.agents, key=lambda a: per_agent[a])
        best, runs = best_of_runs(current, target, k, S, params, seed + (t - 1) * S)
        plan = runs[best].plan
        updated = apply_plan(current, plan)
        before = current.preferences[target]
        adjustments = tuple(
            Adjustment(pair, before.entry(current.issue_index(pair[0]), current.issue_index(pair[1])), value)
            for pair, value in plan.new_values
        )
        try:
            thresholds = situation_thresholds(updated, sigma)
        except DegenerateLosses:
            thresholds = None
        cm = group_conflict(updated)
        trace.iterations.append(IterationRecord(
            t=t, target=target, plan=plan, adjustments=adjustments,
            objective=runs[best].objective,
            run_objectives=tuple(r.objective for r in runs),
            group_conflict=cm, thresholds=thresholds, situation=updated,
        ))
        current = updated
    return trace
