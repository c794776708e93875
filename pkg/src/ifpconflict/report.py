"""Analysis reports, trace serialisation and plot-ready CSV series.

Machine formats (JSON, CSV) carry full precision; only the human-readable
tables round to two decimals.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import DegenerateLosses, GroupTooSmall, IFPSError, InvalidSigma
from .ifps import ConflictSituation, resolve_agents, resolve_issues
from .measures import ConflictMatrix, agent_conflicts, conflict_matrix, group_conflict, issue_conflicts
from .resolution import ResolutionTrace
from .rounding import fmt
from .trisection import (
    LossProfile,
    ThresholdPair,
    Trisection,
    derive_losses,
    thresholds_from_sigma,
    trisect_pairs,
    trisect_values,
)

LEVELS = ("pairs", "agents", "issues")


@dataclass(frozen=True)
class AnalysisReport:
    agents: tuple[str, ...]
    issues: tuple[str, ...]
    bundle: tuple[str, ...]
    group: tuple[str, ...]
    conflicts: ConflictMatrix
    agent_cm: dict[str, float]
    issue_cm: dict[str, float] | None
    group_cm: float
    losses: tuple[float, float] | None
    sigma: float | None
    thresholds: ThresholdPair
    pairs: Trisection
    agent_trisection: Trisection
    issue_trisection: Trisection | None
    precision: int | None = None

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def m(self) -> int:
        return len(self.issues)

    def coalitions(self, agent: str) -> tuple[list[str], list[str], list[str]]:
        out = []
        for cls in (self.pairs.strong, self.pairs.weak, self.pairs.none):
            out.append([b for b in self.agents if (agent, b) in cls])
        return tuple(out)


def build_report(situation: ConflictSituation, sigma: float | None = None,
                 thresholds: ThresholdPair | None = None,
                 issues: Iterable[str] | None = None, agents: Iterable[str] | None = None,
                 precision: int | None = None) -> AnalysisReport:
    """Run every measure and trisection.

    ``issues`` is the bundle J used for pair and agent measures (and the loss
    derivation); ``agents`` is the group B for issue measures and the group
    conflict.  Explicit ``thresholds`` win over ``sigma``.
    """
    if thresholds is None and sigma is None:
        raise InvalidSigma("either sigma or explicit thresholds are required")
    j_idx = resolve_issues(situation, issues)
    b_idx = resolve_agents(situation, agents)
    bundle = tuple(situation.issues[k] for k in j_idx)
    group = tuple(situation.agents[k] for k in b_idx)

    grid = conflict_matrix(situation, bundle)
    agent_cm = agent_conflicts(situation, bundle)
    issue_cm = issue_conflicts(situation, group) if len(group) >= 2 else None
    losses = None
    if situation.n >= 2:
        losses = derive_losses(situation, bundle)
    if thresholds is None:
        if losses is None:
            raise GroupTooSmall("thresholds from sigma need at least two agents")
        thresholds = thresholds_from_sigma(LossProfile(losses[0], losses[1], sigma))
    return AnalysisReport(
        agents=situation.agents,
        issues=situation.issues,
        bundle=bundle,
        group=group,
        conflicts=grid,
        agent_cm=agent_cm,
        issue_cm=issue_cm,
        group_cm=group_conflict(situation, group, bundle),
        losses=losses,
        sigma=sigma,
        thresholds=thresholds,
        pairs=trisect_pairs(grid, thresholds, precision),
        agent_trisection=trisect_values(agent_cm, thresholds, precision),
        issue_trisection=trisect_values(issue_cm, thresholds, precision) if issue_cm else None,
        precision=precision,
    )


def _ordered(universe: Sequence[str], members: Iterable) -> list:
    members = set(members)
    return [x for x in universe if x in members]


def report_to_dict(report: AnalysisReport, levels: Sequence[str] = LEVELS) -> dict[str, Any]:
    out: dict[str, Any] = {
        "n": report.n,
        "m": report.m,
        "bundle": list(report.bundle),
        "group": list(report.group),
        "conflict_matrix": {
            "agents": list(report.agents),
            "values": report.conflicts.values.tolist(),
        },
        "agent_cm": report.agent_cm,
        "issue_cm": report.issue_cm,
        "group_cm": report.group_cm,
        "sigma": report.sigma,
        "losses": None if report.losses is None else {
            "lambda_sn": report.losses[0], "lambda_ns": report.losses[1]},
        "thresholds": {"lower": report.thresholds.lower, "upper": report.thresholds.upper},
        "precision": report.precision,
        "trisections": {},
    }
    tris = out["trisections"]
    if "pairs" in levels:
        tris["pairs"] = {
            a: dict(zip(("conflict", "neutral", "alliance"), report.coalitions(a)))
            for a in report.agents
        }
    if "agents" in levels:
        t = report.agent_trisection
        tris["agents"] = {k: _ordered(report.agents, getattr(t, k)) for k in ("strong", "weak", "none")}
    if "issues" in levels and report.issue_trisection is not None:
        t = report.issue_trisection
        tris["issues"] = {k: _ordered(report.issues, getattr(t, k)) for k in ("strong", "weak", "none")}
    return out


def _set(items: Sequence[str]) -> str:
    return "{" + ", ".join(items) + "}" if items else "{}"


def render_table(report: AnalysisReport, levels: Sequence[str] = LEVELS) -> str:
    lines = [f"agents n={report.n}, issues m={report.m}; bundle J={_set(report.bundle)}"]
    width = max(len(a) for a in report.agents) + 2
    lines.append("")
    lines.append("conflict matrix CF_J(a, b)")
    lines.append(" " * width + "".join(f"{b:>7}" for b in report.agents))
    for a in report.agents:
        row = report.conflicts.row(a)
        lines.append(f"{a:<{width}}" + "".join(f"{fmt(row[b]):>7}" for b in report.agents))
    lines.append("")
    lines.append("agent conflict CM(a, J): " + ", ".join(f"{a}={fmt(v)}" for a, v in report.agent_cm.items()))
    if report.issue_cm is not None:
        lines.append(f"issue conflict CM(B, i), B={_set(report.group)}: "
                     + ", ".join(f"{i}={fmt(v)}" for i, v in report.issue_cm.items()))
    lines.append(f"group conflict CM(B, J): {fmt(report.group_cm)}")
    if report.losses is not None:
        lines.append(f"losses: lambda_SN={fmt(report.losses[0])}, lambda_NS={fmt(report.losses[1])}")
    source = f"sigma={report.sigma}" if report.sigma is not None else "explicit"
    lines.append(f"thresholds ({source}): lower={fmt(report.thresholds.lower)}, "
                 f"upper={fmt(report.thresholds.upper)}")
    data = report_to_dict(report, levels)["trisections"]
    if "pairs" in data:
        lines.append("")
        lines.append("coalitions (conflict | neutral | alliance)")
        for a, row in data["pairs"].items():
            lines.append(f"  {a}: {_set(row['conflict'])} | {_set(row['neutral'])} | {_set(row['alliance'])}")
    for level, (s, w, n) in (("agents", ("SA", "WA", "NA")), ("issues", ("SI", "WI", "NI"))):
        if level in data:
            t = data[level]
            lines.append("")
            lines.append(f"{level}: {s}={_set(t['strong'])}, {w}={_set(t['weak'])}, {n}={_set(t['none'])}")
    return "\n".join(lines) + "\n"


def render_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow([repr(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def render_csv(report: AnalysisReport, levels: Sequence[str] = LEVELS) -> str:
    """Long format: ``quantity,key,column,value``."""
    rows: list[Sequence[Any]] = [("quantity", "key", "column", "value")]
    for a in report.agents:
        for b, v in report.conflicts.row(a).items():
            rows.append(("cf", a, b, v))
    for a, v in report.agent_cm.items():
        rows.append(("agent_cm", a, "", v))
    for i, v in (report.issue_cm or {}).items():
        rows.append(("issue_cm", i, "", v))
    rows.append(("group_cm", "", "", report.group_cm))
    if report.losses is not None:
        rows.append(("lambda_sn", "", "", report.losses[0]))
        rows.append(("lambda_ns", "", "", report.losses[1]))
    rows.append(("threshold", "lower", "", report.thresholds.lower))
    rows.append(("threshold", "upper", "", report.thresholds.upper))
    data = report_to_dict(report, levels)["trisections"]
    for a, row in data.get("pairs", {}).items():
        for cls in ("conflict", "neutral", "alliance"):
            for b in row[cls]:
                rows.append(("coalition", a, b, cls))
    for level in ("agents", "issues"):
        for cls, members in data.get(level, {}).items():
            for x in members:
                rows.append((level, x, "", cls))
    return _csv(rows)


# -- resolution output -------------------------------------------------------------

def trace_to_dict(trace: ResolutionTrace) -> dict[str, Any]:
    iterations = []
    for rec in trace.iterations:
        iterations.append({
            "t": rec.t,
            "target": rec.target,
            "adjustments": [
                {"pair": list(adj.pair), "old": list(adj.old.as_tuple()),
                 "new": list(adj.new.as_tuple()), "delta": list(adj.delta)}
                for adj in rec.adjustments
            ],
            "L": rec.objective,
            "run_L": list(rec.run_objectives),
            "cm": rec.group_conflict,
            "alpha_lower": None if rec.thresholds is None else rec.thresholds.lower,
            "alpha_upper": None if rec.thresholds is None else rec.thresholds.upper,
        })
    return {
        "kappa": trace.kappa,
        "sigma": trace.sigma,
        "initial_cm": trace.initial_cm,
        "iterations": iterations,
        "final_cm": trace.final_cm,
    }


def render_trace_table(trace: ResolutionTrace) -> str:
    header = f"{'t':>3}  {'a*':<6}{'pair':<12}{'old -> new':<28}{'delta':<18}{'L':>8}{'CM':>9}  (lower, upper)"
    lines = [f"initial CM(A,I) = {trace.initial_cm:.4f}, kappa = {trace.kappa}", header]
    for rec in trace.iterations:
        thr = ("n/a" if rec.thresholds is None
               else f"({fmt(rec.thresholds.lower)}, {fmt(rec.thresholds.upper)})")
        for row, adj in enumerate(rec.adjustments):
            pair = f"({adj.pair[0]},{adj.pair[1]})"
            change = f"({fmt(adj.old.mu)},{fmt(adj.old.nu)}) -> ({fmt(adj.new.mu)},{fmt(adj.new.nu)})"
            delta = f"({fmt(adj.delta[0])},{fmt(adj.delta[1])})"
            if row == 0:
                lines.append(f"{rec.t:>3}  {rec.target:<6}{pair:<12}{change:<28}{delta:<18}"
                             f"{rec.objective:>8.4f}{rec.group_conflict:>9.4f}  {thr}")
            else:
                lines.append(f"{'':>3}  {'':<6}{pair:<12}{change:<28}{delta:<18}")
    lines.append(f"final CM(A,I) = {trace.final_cm:.4f} after {len(trace.iterations)} iteration(s)")
    return "\n".join(lines) + "\n"


def figure_thresholds(trace: ResolutionTrace) -> ThresholdPair:
    """Thresholds of the last iteration (or of the untouched situation)."""
    for rec in reversed(trace.iterations):
        if rec.thresholds is not None:
            return rec.thresholds
    sn, ns = derive_losses(trace.initial)
    return thresholds_from_sigma(LossProfile(sn, ns, trace.sigma))


def cardinality_series(trace: ResolutionTrace, level: str,
                       thresholds: ThresholdPair) -> str:
    """CSV ``iteration,strong,weak,none`` for the agent or issue trisection."""
    rows: list[Sequence[Any]] = [("iteration", "strong", "weak", "none")]
    series = trace.agent_conflict_series() if level == "agents" else trace.issue_conflict_series()
    for t, values in enumerate(series):
        rows.append((t, *trisect_values(values, thresholds).cardinalities()))
    return _csv(rows)


def conflict_series(trace: ResolutionTrace, level: str) -> str:
    """CSV ``iteration,<agent...>`` or ``iteration,<issue...>`` of conflict measures."""
    names = trace.initial.agents if level == "agents" else trace.initial.issues
    series = trace.agent_conflict_series() if level == "agents" else trace.issue_conflict_series()
    rows: list[Sequence[Any]] = [("iteration", *names)]
    for t, values in enumerate(series):
        rows.append((t, *(values[x] for x in names)))
    return _csv(rows)


def figure_files(trace: ResolutionTrace, thresholds: ThresholdPair | None = None) -> dict[str, str]:
    """File-name suffix -> CSV text for every per-iteration figure series.

    The cardinality series are omitted when no thresholds are given and the
    losses of the situation are degenerate.
    """
    files = {}
    try:
        thresholds = thresholds or figure_thresholds(trace)
    except DegenerateLosses:
        thresholds = None
    if thresholds is not None:
        files["agent_trisection.csv"] = cardinality_series(trace, "agents", thresholds)
        files["issue_trisection.csv"] = cardinality_series(trace, "issues", thresholds)
    files["agent_cm.csv"] = conflict_series(trace, "agents")
    files["issue_cm.csv"] = conflict_series(trace, "issues")
    return files


# -- sigma sensitivity --------------------------------------------------------------

def sensitivity_series(situation: ConflictSituation, sigmas: Sequence[float],
                       issues: Iterable[str] | None = None) -> list[tuple[float, float, float]]:
    """``(sigma, lower, upper)`` rows; checks lower is nondecreasing and upper nonincreasing."""
    sn, ns = derive_losses(situation, issues)
    rows = []
    for s in sigmas:
        thr = thresholds_from_sigma(LossProfile(sn, ns, float(s)))
        rows.append((float(s), thr.lower, thr.upper))
    for (s0, lo0, up0), (s1, lo1, up1) in zip(rows, rows[1:]):
        if s1 > s0 and (lo1 < lo0 or up1 > up0):
            raise IFPSError(f"threshold series not monotone between sigma={s0} and sigma={s1}")
    return rows


def sigma_grid(lo: float, hi: float, steps: int) -> list[float]:
    if not (0 < lo <= hi < 0.5):
        raise InvalidSigma(f"sigma range must lie inside (0, 0.5), got [{lo}, {hi}]")
    if steps < 1 or (steps == 1 and lo != hi):
        raise IFPSError("steps must be >= 2 for a non-degenerate range")
    # rounding keeps grid points such as 0.44 exact in the output
    return [round(float(x), 12) for x in np.linspace(lo, hi, steps)]


def render_sensitivity(rows: Sequence[tuple[float, float, float]]) -> str:
    return _csv([("sigma", "alpha_lower", "alpha_upper"), *rows])


__all__ = [
    "AnalysisReport", "build_report", "report_to_dict", "render_table", "render_json", "render_csv",
    "trace_to_dict", "render_trace_table", "figure_files", "figure_thresholds",
    "cardinality_series", "conflict_series", "sensitivity_series", "sigma_grid",
    "render_sensitivity",
]
