"""Intuitionistic fuzzy preference situations: value types, validation and file I/O.

A situation holds, for every agent, an ``m x m`` matrix of intuitionistic fuzzy
numbers ``(mu, nu)`` over ordered issue pairs.  Matrices are reciprocal
(``mu(i, j) == nu(j, i)``) with ``(0.5, 0.5)`` on the diagonal, so the
membership grid alone determines the matrix; that is the compact file format.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from types import MappingProxyType
from typing import IO, Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    IFPSError,
    OutOfRange,
    ParseError,
    SimplexViolation,
    UnknownAgent,
    UnknownIssue,
    ValidationError,
)

# Absorbs decimal-text rounding in loaded data; exact inputs pass untouched.
TOLERANCE = 1e-9


@dataclass(frozen=True)
class IntuitionisticFuzzyNumber:
    mu: float
    nu: float

    @property
    def pi(self) -> float:
        """Hesitation degree ``1 - mu - nu``."""
        return 1.0 - self.mu - self.nu

    def as_tuple(self) -> tuple[float, float]:
        return (self.mu, self.nu)

    def __iter__(self):
        yield self.mu
        yield self.nu


IFN = IntuitionisticFuzzyNumber


def make_ifn(mu: float, nu: float, tol: float = TOLERANCE) -> IntuitionisticFuzzyNumber:
    mu = float(mu)
    nu = float(nu)
    for name, value in (("mu", mu), ("nu", nu)):
        if not (-tol <= value <= 1.0 + tol) or np.isnan(value):
            raise OutOfRange(f"{name}={value!r} is outside [0, 1]")
    if mu + nu > 1.0 + tol:
        raise SimplexViolation(f"mu + nu = {mu + nu!r} exceeds 1")
    return IntuitionisticFuzzyNumber(mu, nu)


@dataclass(frozen=True)
class Violation:
    """One broken matrix invariant at cell ``(row, col)``."""

    row: int
    col: int
    rule: str  # "range", "simplex", "reciprocity" or "diagonal"
    message: str
    agent: str | None = None

    def __str__(self) -> str:
        where = f"agent {self.agent} " if self.agent is not None else ""
        return f"{where}({self.row},{self.col}) {self.rule}: {self.message}"


def _readonly(values: Any) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


class PreferenceMatrix:
    """Square grid of IFNs; ``mu[r, c]`` and ``nu[r, c]`` describe issue pair (r, c).

    The constructor only checks shape. Use :func:`validate_matrix` for the
    reciprocity / diagonal / simplex invariants.
    """

    __slots__ = ("mu", "nu")

    def __init__(self, mu: Any, nu: Any):
        mu = _readonly(mu)
        nu = _readonly(nu)
        if mu.ndim != 2 or mu.shape[0] != mu.shape[1]:
            raise IFPSError(f"preference grid must be square, got shape {mu.shape}")
        if nu.shape != mu.shape:
            raise IFPSError(f"mu shape {mu.shape} and nu shape {nu.shape} differ")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)

    def __setattr__(self, name, value):
        raise AttributeError("PreferenceMatrix is immutable")

    @classmethod
    def from_mu(cls, mu: Any) -> "PreferenceMatrix":
        mu = np.array(mu, dtype=float)
        return cls(mu, mu.T)

    @property
    def size(self) -> int:
        return self.mu.shape[0]

    @property
    def pi(self) -> np.ndarray:
        return 1.0 - self.mu - self.nu

    def entry(self, row: int, col: int) -> IntuitionisticFuzzyNumber:
        return IntuitionisticFuzzyNumber(float(self.mu[row, col]), float(self.nu[row, col]))

    def __getitem__(self, rc: tuple[int, int]) -> IntuitionisticFuzzyNumber:
        return self.entry(*rc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PreferenceMatrix):
            return NotImplemented
        return np.array_equal(self.mu, other.mu) and np.array_equal(self.nu, other.nu)

    def __hash__(self):
        return hash((self.mu.tobytes(), self.nu.tobytes()))

    def __repr__(self) -> str:
        return f"PreferenceMatrix(size={self.size})"


def validate_matrix(matrix: PreferenceMatrix, tol: float = TOLERANCE) -> list[Violation]:
    """Return every violated invariant of ``matrix``; an empty list means valid."""
    mu, nu = matrix.mu, matrix.nu
    m = matrix.size
    report: list[Violation] = []
    for r in range(m):
        for c in range(m):
            a, b = float(mu[r, c]), float(nu[r, c])
            if not (-tol <= a <= 1 + tol and -tol <= b <= 1 + tol):
                report.append(Violation(r, c, "range", f"(mu, nu)=({a}, {b}) outside [0, 1]"))
            elif a + b > 1 + tol:
                report.append(Violation(r, c, "simplex", f"mu + nu = {a + b:.6g} > 1"))
            if r == c:
                if abs(a - 0.5) > tol or abs(b - 0.5) > tol:
                    report.append(Violation(r, c, "diagonal", f"expected (0.5, 0.5), got ({a}, {b})"))
            elif abs(a - float(nu[c, r])) > tol:
                report.append(
                    Violation(r, c, "reciprocity", f"mu({r},{c})={a} != nu({c},{r})={float(nu[c, r])}")
                )
    return report


@dataclass(frozen=True)
class ConflictSituation:
    """Agents, issues and one reciprocal preference matrix per agent."""

    agents: tuple[str, ...]
    issues: tuple[str, ...]
    preferences: Mapping[str, PreferenceMatrix]
    _mu: np.ndarray = field(init=False, repr=False, compare=False)
    _agent_pos: Mapping[str, int] = field(init=False, repr=False, compare=False)
    _issue_pos: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        agents = tuple(self.agents)
        issues = tuple(self.issues)
        object.__setattr__(self, "agents", agents)
        object.__setattr__(self, "issues", issues)
        if len(agents) < 1:
            raise IFPSError("a situation needs at least one agent")
        if len(issues) < 2:
            raise IFPSError("a situation needs at least two issues")
        for kind, ids in (("agent", agents), ("issue", issues)):
            dupes = sorted({x for x in ids if ids.count(x) > 1})
            if dupes:
                raise IFPSError(f"duplicate {kind} identifier(s): {dupes}")
        if set(self.preferences) != set(agents):
            raise IFPSError("preferences must hold exactly one matrix per agent")
        prefs = {a: self.preferences[a] for a in agents}
        report = []
        for a, matrix in prefs.items():
            if matrix.size != len(issues):
                raise IFPSError(f"agent {a}: matrix size {matrix.size} != {len(issues)} issues")
            report += [replace(v, agent=a) for v in validate_matrix(matrix)]
        if report:
            raise ValidationError(report)
        object.__setattr__(self, "preferences", MappingProxyType(prefs))
        object.__setattr__(self, "_mu", _readonly([prefs[a].mu for a in agents]))
        object.__setattr__(self, "_agent_pos", {a: k for k, a in enumerate(agents)})
        object.__setattr__(self, "_issue_pos", {i: k for k, i in enumerate(issues)})

    @classmethod
    def from_mu(cls, agents: Sequence[str], issues: Sequence[str],
                mu: Mapping[str, Any]) -> "ConflictSituation":
        return cls(tuple(agents), tuple(issues),
                   {a: PreferenceMatrix.from_mu(mu[a]) for a in agents})

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def m(self) -> int:
        return len(self.issues)

    @property
    def mu_tensor(self) -> np.ndarray:
        """Membership grids stacked as ``(n, m, m)``, in agent order."""
        return self._mu

    def agent_index(self, agent: str) -> int:
        try:
            return self._agent_pos[agent]
        except (KeyError, TypeError):
            raise UnknownAgent(f"unknown agent {agent!r}") from None

    def issue_index(self, issue: str) -> int:
        try:
            return self._issue_pos[issue]
        except (KeyError, TypeError):
            raise UnknownIssue(f"unknown issue {issue!r}") from None

    def with_matrix(self, agent: str, matrix: PreferenceMatrix) -> "ConflictSituation":
        self.agent_index(agent)
        prefs = dict(self.preferences)
        prefs[agent] = matrix
        return ConflictSituation(self.agents, self.issues, prefs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConflictSituation):
            return NotImplemented
        return (self.agents == other.agents and self.issues == other.issues
                and all(self.preferences[a] == other.preferences[a] for a in self.agents))

    def __hash__(self):
        return hash((self.agents, self.issues, self._mu.tobytes()))


# -- file format -------------------------------------------------------------

def _id_list(obj: Mapping[str, Any], key: str) -> list[str]:
    if key not in obj:
        raise ParseError("missing required field", location=key)
    ids = obj[key]
    if not isinstance(ids, list) or not all(isinstance(x, str) for x in ids):
        raise ParseError("expected a list of strings", location=key)
    seen = set()
    for pos, x in enumerate(ids):
        if x in seen:
            raise ParseError(f"duplicate identifier {x!r}", location=f"{key}[{pos}]")
        seen.add(x)
    return ids


def _grid(value: Any, m: int, location: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != m:
        raise ParseError(f"expected {m} rows", location=location)
    for r, row in enumerate(value):
        if not isinstance(row, list) or len(row) != m:
            raise ParseError(f"expected {m} columns", location=f"{location}[{r}]")
        for c, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise ParseError(f"expected a number, got {x!r}", location=f"{location}[{r}][{c}]")
    return np.array(value, dtype=float)


def parse_situation(obj: Any) -> ConflictSituation:
    """Build a situation from already-decoded JSON data."""
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    agents = _id_list(obj, "agents")
    issues = _id_list(obj, "issues")
    if not agents:
        raise ParseError("at least one agent is required", location="agents")
    if len(issues) < 2:
        raise ParseError("at least two issues are required", location="issues")
    m = len(issues)
    grids = {}
    for key in ("mu", "nu"):
        if key not in obj:
            if key == "mu":
                raise ParseError("missing required field", location="mu")
            continue
        block = obj[key]
        if not isinstance(block, dict):
            raise ParseError("expected an object keyed by agent", location=key)
        extra = sorted(set(block) - set(agents))
        if extra:
            raise ParseError(f"grid for undeclared agent(s) {extra}", location=key)
        missing = [a for a in agents if a not in block]
        if missing:
            raise ParseError(f"no grid for agent(s) {missing}", location=key)
        grids[key] = {a: _grid(block[a], m, f"{key}.{a}") for a in agents}

    report: list[Violation] = []
    prefs = {}
    for a in agents:
        mu = grids["mu"][a]
        nu = grids["nu"][a] if "nu" in grids else mu.T
        matrix = PreferenceMatrix(mu, nu)
        report += [replace(v, agent=a) for v in validate_matrix(matrix)]
        prefs[a] = matrix
    if report:
        raise ValidationError(report)
    return ConflictSituation(tuple(agents), tuple(issues), prefs)


def load_situation(source: str | os.PathLike | IO | bytes) -> ConflictSituation:
    """Load a situation from a path, an open text/binary stream or raw bytes."""
    if isinstance(source, (str, os.PathLike)):
        text = Path(source).read_text(encoding="utf-8")
    elif isinstance(source, (bytes, bytearray)):
        text = bytes(source).decode("utf-8")
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, location=f"line {exc.lineno}, column {exc.colno}") from None
    return parse_situation(obj)


def dump_situation(situation: ConflictSituation, verbose: bool = False) -> dict:
    out: dict[str, Any] = {
        "agents": list(situation.agents),
        "issues": list(situation.issues),
        "mu": {a: situation.preferences[a].mu.tolist() for a in situation.agents},
    }
    if verbose:
        out["nu"] = {a: situation.preferences[a].nu.tolist() for a in situation.agents}
    return out


def dumps_situation(situation: ConflictSituation, verbose: bool = False) -> str:
    return json.dumps(dump_situation(situation, verbose), indent=2) + "\n"


def save_situation(situation: ConflictSituation, path: str | os.PathLike | IO,
                   verbose: bool = False) -> None:
    text = dumps_situation(situation, verbose)
    if isinstance(path, (str, os.PathLike)):
        Path(path).write_text(text, encoding="utf-8")
    else:
        path.write(text)


def resolve_issues(situation: ConflictSituation, issues: Iterable[str] | None) -> list[int]:
    """Issue identifiers -> sorted positional indices; ``None`` selects all."""
    if issues is None:
        return list(range(situation.m))
    if isinstance(issues, str):
        issues = [issues]
    return sorted({situation.issue_index(i) for i in issues})


def resolve_agents(situation: ConflictSituation, agents: Iterable[str] | None) -> list[int]:
    if agents is None:
        return list(range(situation.n))
    if isinstance(agents, str):
        agents = [agents]
    return sorted({situation.agent_index(a) for a in agents})


def bundled_path(name: str = "middle-east.json") -> Path:
    """Filesystem path of a dataset shipped inside the package."""
    return Path(__file__).with_name("data") / name


def middle_east() -> ConflictSituation:
    """The six-agent, five-issue Middle East situation."""
    return load_situation(bundled_path("middle-east.json"))


__all__ = [
    "IFN", "IntuitionisticFuzzyNumber", "PreferenceMatrix", "ConflictSituation", "Violation",
    "TOLERANCE", "make_ifn", "validate_matrix", "parse_situation", "load_situation",
    "dump_situation", "dumps_situation", "save_situation", "middle_east", "bundled_path",
]
