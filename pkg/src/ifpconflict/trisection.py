"""Three-way classification of agent pairs, agents and issues.

Every trisection cuts a conflict measure with a ``(lower, upper)`` pair:
``value >= upper`` is strong conflict, ``lower < value < upper`` is weak
(neutral), ``value <= lower`` is no conflict (alliance).

The thresholds can be derived from data: the mean bundle conflict over agent
pairs gives the loss of misclassifying a conflicting pair as allied
(``lambda_ns``), its complement the opposite loss (``lambda_sn``), and a
scaling ``sigma`` in (0, 0.5) prices the deferred (weak) action.  Minimising
the expected loss then reduces to closed-form thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Generic, Hashable, Iterable, Mapping, TypeVar

from .errors import DegenerateLosses, GroupTooSmall, InvalidSigma, InvalidThresholds
from .ifps import ConflictSituation
from .measures import ConflictMatrix, agent_conflicts, conflict_matrix, issue_conflicts
from .rounding import round_half_away

T = TypeVar("T", bound=Hashable)

STRONG, WEAK, NONE = "strong", "weak", "none"


@dataclass(frozen=True)
class ThresholdPair:
    lower: float
    upper: float

    def __post_init__(self):
        if not (0.0 <= self.lower < self.upper <= 1.0):
            raise InvalidThresholds(
                f"thresholds must satisfy 0 <= lower < upper <= 1, got ({self.lower}, {self.upper})"
            )

    def classify(self, value: float) -> str:
        if value >= self.upper:
            return STRONG
        if value <= self.lower:
            return NONE
        return WEAK


@dataclass(frozen=True)
class LossProfile:
    lambda_sn: float
    lambda_ns: float
    sigma: float

    def __post_init__(self):
        if not (0.0 < self.sigma < 0.5):
            raise InvalidSigma(f"sigma must lie in (0, 0.5), got {self.sigma}")
        for name in ("lambda_sn", "lambda_ns"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise DegenerateLosses(f"{name} must lie in [0, 1], got {v}")

    def expected_losses(self, conflict: float) -> dict[str, float]:
        """Expected loss of each action for a pair whose bundle conflict is ``conflict``.

        ``conflict`` plays the role of the probability that the pair is in
        conflict.  Keys are the classes the actions assign to.
        """
        return {
            STRONG: self.lambda_sn * (1.0 - conflict),
            WEAK: self.sigma * self.lambda_ns * conflict + self.sigma * self.lambda_sn * (1.0 - conflict),
            NONE: self.lambda_ns * conflict,
        }


@dataclass(frozen=True)
class Trisection(Generic[T]):
    strong: frozenset
    weak: frozenset
    none: frozenset

    @property
    def universe(self) -> frozenset:
        return self.strong | self.weak | self.none

    def class_of(self, element: T) -> str:
        for name in (STRONG, WEAK, NONE):
            if element in getattr(self, name):
                return name
        raise KeyError(element)

    def cardinalities(self) -> tuple[int, int, int]:
        return len(self.strong), len(self.weak), len(self.none)


@dataclass(frozen=True)
class Coalitions:
    """Row view of the pair trisection for one agent."""

    conflict: frozenset
    neutral: frozenset
    alliance: frozenset


def _cut(values: Mapping[T, float], thresholds: ThresholdPair,
         precision: int | None) -> Trisection[T]:
    buckets: dict[str, set] = {STRONG: set(), WEAK: set(), NONE: set()}
    for element, value in values.items():
        if precision is not None:
            value = round_half_away(value, precision)
        buckets[thresholds.classify(value)].add(element)
    return Trisection(*(frozenset(buckets[k]) for k in (STRONG, WEAK, NONE)))


def derive_losses(situation: ConflictSituation,
                  issues: Iterable[str] | None = None) -> tuple[float, float]:
    """``(lambda_sn, lambda_ns)``: mean of ``1 - CF_J`` and of ``CF_J`` over ordered pairs a != b."""
    n = situation.n
    if n < 2:
        raise GroupTooSmall("loss derivation needs at least two agents")
    grid = conflict_matrix(situation, issues).values
    lambda_ns = float(grid.sum() / (n * (n - 1)))
    return 1.0 - lambda_ns, lambda_ns


def thresholds_from_sigma(losses: LossProfile) -> ThresholdPair:
    sn, ns, s = losses.lambda_sn, losses.lambda_ns, losses.sigma
    if sn <= 0.0 or ns <= 0.0:
        raise DegenerateLosses(f"both losses must be positive, got ({sn}, {ns})")
    upper = sn * (1 - s) / (sn * (1 - s) + s * ns)
    lower = s * sn / (s * sn + ns * (1 - s))
    if not lower < upper:
        # a loss below float resolution relative to the other collapses both thresholds
        raise DegenerateLosses(f"losses ({sn}, {ns}) are too lopsided to separate the thresholds")
    return ThresholdPair(lower, upper)


def situation_thresholds(situation: ConflictSituation, sigma: float,
                         issues: Iterable[str] | None = None) -> ThresholdPair:
    """Convenience: derive losses from ``situation`` and turn them into thresholds."""
    sn, ns = derive_losses(situation, issues)
    return thresholds_from_sigma(LossProfile(sn, ns, sigma))


def risk_classify(losses: LossProfile, conflict: float) -> str:
    """Minimum expected-loss action, ties resolved towards the outer classes."""
    risk = losses.expected_losses(conflict)
    best = min(risk.values())
    for name in (STRONG, NONE, WEAK):
        if risk[name] <= best:
            return name
    raise AssertionError("unreachable")


def trisect_pairs(conflicts: ConflictMatrix, thresholds: ThresholdPair,
                  precision: int | None = None) -> Trisection[tuple[str, str]]:
    """Classify every ordered agent pair ``(a, b)``, self-pairs included.

    ``precision`` rounds each conflict value (half away from zero) before the
    comparison, which is how tabulated two-decimal values are classified.
    """
    values = {(a, b): conflicts[a, b] for a in conflicts.agents for b in conflicts.agents}
    return _cut(values, thresholds, precision)


def agent_coalitions(conflicts: ConflictMatrix, agent: str, thresholds: ThresholdPair,
                     precision: int | None = None) -> Coalitions:
    tri = _cut(conflicts.row(agent), thresholds, precision)
    return Coalitions(tri.strong, tri.weak, tri.none)


def trisect_agents(situation: ConflictSituation, issues: Iterable[str] | None,
                   thresholds: ThresholdPair, precision: int | None = None) -> Trisection[str]:
    return _cut(agent_conflicts(situation, issues), thresholds, precision)


def trisect_issues(situation: ConflictSituation, agents: Iterable[str] | None,
                   thresholds: ThresholdPair, precision: int | None = None) -> Trisection[str]:
    return _cut(issue_conflicts(situation, agents), thresholds, precision)


def trisect_values(values: Mapping[T, float], thresholds: ThresholdPair,
                   precision: int | None = None) -> Trisection[T]:
    """Trisect any precomputed ``{element: measure}`` mapping."""
    return _cut(values, thresholds, precision)

