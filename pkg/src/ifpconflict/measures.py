"""Conflict between agents, computed from the distance between their IFN preferences.

Five quantities, from finest to coarsest:

* ``pair_conflict``   two agents on one ordered issue pair
* ``bundle_conflict`` two agents averaged over every ordered pair of a bundle
* ``agent_conflict``  one agent against everybody else on a bundle
* ``issue_conflict``  a group of agents on one issue (against all other issues)
* ``group_conflict``  a group of agents on a bundle
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import BundleTooSmall, EmptyGroup, GroupTooSmall, UnknownAgent
from .ifps import ConflictSituation, resolve_agents, resolve_issues
from .rounding import round_half_away


def ifn_distance(mu_a, nu_a, mu_b, nu_b):
    """Half the L1 distance between two IFNs over (mu, nu, pi); broadcasts."""
    d_mu = np.subtract(mu_a, mu_b)
    d_nu = np.subtract(nu_a, nu_b)
    # pi_a - pi_b == -(d_mu + d_nu)
    return 0.5 * (np.abs(d_mu) + np.abs(d_nu) + np.abs(d_mu + d_nu))


@lru_cache(maxsize=64)
def _pair_tensor(situation: ConflictSituation) -> np.ndarray:
    """``cf[a, b, i, j]`` for every agent pair and ordered issue pair."""
    mu = situation.mu_tensor
    nu = np.swapaxes(mu, 1, 2)
    cf = ifn_distance(mu[:, None], nu[:, None], mu[None, :], nu[None, :])
    cf.setflags(write=False)
    return cf


def pair_tensor(situation: ConflictSituation) -> np.ndarray:
    return _pair_tensor(situation)


def _bundle(situation: ConflictSituation, issues) -> list[int]:
    idx = resolve_issues(situation, issues)
    if len(idx) < 2:
        raise BundleTooSmall(f"an issue bundle needs at least two issues, got {len(idx)}")
    return idx


def pair_conflict(situation: ConflictSituation, a: str, b: str, i: str, j: str) -> float:
    ka, kb = situation.agent_index(a), situation.agent_index(b)
    ri, rj = situation.issue_index(i), situation.issue_index(j)
    mu = situation.mu_tensor
    return float(ifn_distance(mu[ka, ri, rj], mu[ka, rj, ri], mu[kb, ri, rj], mu[kb, rj, ri]))


def _bundle_grid(situation: ConflictSituation, idx: list[int]) -> np.ndarray:
    cf = _pair_tensor(situation)[:, :, idx][:, :, :, idx]
    size = len(idx)
    # diagonal terms are CF_ii == 0, so summing the full block is safe
    return cf.sum(axis=(2, 3)) / (size * (size - 1))


def bundle_conflict(situation: ConflictSituation, a: str, b: str,
                    issues: Iterable[str] | None = None) -> float:
    """Mean of ``pair_conflict`` over ordered pairs ``i != j`` of the bundle (default: all issues)."""
    ka, kb = situation.agent_index(a), situation.agent_index(b)
    idx = _bundle(situation, issues)
    return float(_bundle_grid(situation, idx)[ka, kb])


@dataclass(frozen=True)
class ConflictMatrix:
    """Symmetric agent-by-agent grid of bundle conflicts with a zero diagonal."""

    agents: tuple[str, ...]
    values: np.ndarray

    def index(self, agent: str) -> int:
        try:
            return self.agents.index(agent)
        except ValueError:
            raise UnknownAgent(f"unknown agent {agent!r}") from None

    def __getitem__(self, pair: tuple[str, str]) -> float:
        a, b = pair
        return float(self.values[self.index(a), self.index(b)])

    def row(self, agent: str) -> dict[str, float]:
        k = self.index(agent)
        return {b: float(v) for b, v in zip(self.agents, self.values[k])}

    def rounded(self, decimals: int = 2) -> "ConflictMatrix":
        vals = np.vectorize(lambda x: round_half_away(x, decimals))(self.values)
        return ConflictMatrix(self.agents, vals)

    @classmethod
    def from_upper(cls, agents, upper: Iterable[float]) -> "ConflictMatrix":
        """Build from the upper triangle listed row by row (as printed in tables)."""
        n = len(agents)
        vals = np.zeros((n, n))
        rows, cols = np.triu_indices(n, k=1)
        upper = list(upper)
        if len(upper) != len(rows):
            raise ValueError(f"expected {len(rows)} upper-triangle values, got {len(upper)}")
        vals[rows, cols] = upper
        vals[cols, rows] = upper
        return cls(tuple(agents), vals)


def conflict_matrix(situation: ConflictSituation,
                    issues: Iterable[str] | None = None) -> ConflictMatrix:
    idx = _bundle(situation, issues)
    vals = _bundle_grid(situation, idx)
    # exact symmetry; the two triangles are sums of identical terms in different order
    vals = np.triu(vals, 1) + np.triu(vals, 1).T
    vals.setflags(write=False)
    return ConflictMatrix(situation.agents, vals)


def agent_conflicts(situation: ConflictSituation,
                    issues: Iterable[str] | None = None) -> dict[str, float]:
    """``agent_conflict`` for every agent, in agent order."""
    grid = conflict_matrix(situation, issues).values
    n = situation.n
    if n == 1:
        return {situation.agents[0]: 0.0}
    return {a: float(v) for a, v in zip(situation.agents, grid.sum(axis=1) / (n - 1))}


def agent_conflict(situation: ConflictSituation, a: str,
                   issues: Iterable[str] | None = None) -> float:
    """Average bundle conflict of ``a`` against the other agents; 0 for a lone agent."""
    situation.agent_index(a)
    return agent_conflicts(situation, issues)[a]


def _group(situation: ConflictSituation, agents) -> list[int]:
    idx = resolve_agents(situation, agents)
    if len(idx) < 2:
        raise GroupTooSmall(f"an agent group needs at least two agents, got {len(idx)}")
    return idx


def issue_conflicts(situation: ConflictSituation,
                    agents: Iterable[str] | None = None) -> dict[str, float]:
    """``issue_conflict`` of the group (default: all agents) for every issue."""
    idx = _group(situation, agents)
    cf = _pair_tensor(situation)[idx][:, idx]
    size, m = len(idx), situation.m
    # self-pairs and CF_ii are both zero, so plain sums equal the off-diagonal sums
    totals = cf.sum(axis=(0, 1, 3))
    norm = (m - 1) * size * (size - 1)
    return {i: float(t / norm) for i, t in zip(situation.issues, totals)}


def issue_conflict(situation: ConflictSituation, agents: Iterable[str] | None, i: str) -> float:
    situation.issue_index(i)
    return issue_conflicts(situation, agents)[i]


def group_conflict(situation: ConflictSituation, agents: Iterable[str] | None = None,
                   issues: Iterable[str] | None = None) -> float:
    """Unweighted mean of ``agent_conflict`` (taken against all agents) over the group."""
    idx = resolve_agents(situation, agents)
    if not idx:
        raise EmptyGroup("group_conflict needs at least one agent")
    per_agent = agent_conflicts(situation, issues)
    return float(np.mean([per_agent[situation.agents[k]] for k in idx]))
