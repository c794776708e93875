"""Recompute every published number for the bundled Middle East situation and compare.

    python3 scripts/reproduce_middle_east.py
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

import golden  # noqa: E402
from ifpconflict import (  # noqa: E402
    AdjustmentPlan,
    ThresholdPair,
    agent_coalitions,
    agent_conflicts,
    apply_plan,
    conflict_matrix,
    derive_losses,
    group_conflict,
    issue_conflicts,
    middle_east,
    objective,
    pair_conflict,
    situation_thresholds,
    trisect_agents,
    trisect_issues,
)
from ifpconflict.rounding import fmt, round_half_away  # noqa: E402


def check(label: str, got, expected) -> bool:
    ok = got == expected
    print(f"[{'ok' if ok else 'MISMATCH'}] {label}: {got}" + ("" if ok else f" (expected {expected})"))
    return ok


def main() -> int:
    s = middle_east()
    results = []
    for (a, b), table in ((("a2", "a4"), golden.PAIR_CONFLICT_A2_A4), (("a3", "a4"), golden.PAIR_CONFLICT_A3_A4)):
        got = {p: round_half_away(pair_conflict(s, a, b, *p)) for p in table}
        results.append(check(f"pair conflicts {a} vs {b}", got, table))

    grid = conflict_matrix(s)
    upper = tuple(round_half_away(grid[a, b]) for k, a in enumerate(s.agents) for b in s.agents[k + 1:])
    results.append(check("bundle conflict matrix", upper, golden.BUNDLE_CONFLICT_UPPER))
    results.append(check("agent conflict", {a: round_half_away(v) for a, v in agent_conflicts(s).items()},
                         golden.AGENT_CM))
    results.append(check("issue conflict", {i: round_half_away(v) for i, v in issue_conflicts(s).items()},
                         golden.ISSUE_CM))
    results.append(check("group conflict", round_half_away(group_conflict(s)), golden.GROUP_CM))
    results.append(check("losses", tuple(round_half_away(x) for x in derive_losses(s)), golden.LOSSES))
    thr = situation_thresholds(s, golden.SIGMA)
    results.append(check("thresholds", (round_half_away(thr.lower), round_half_away(thr.upper)),
                         golden.THRESHOLDS))

    for cut, table in (((0.40, 0.60), golden.COALITIONS_040_060), ((0.41, 0.53), golden.COALITIONS_041_053)):
        got = {}
        for a in s.agents:
            c = agent_coalitions(grid, a, ThresholdPair(*cut), precision=2)
            got[a] = (set(c.conflict), set(c.neutral), set(c.alliance))
        results.append(check(f"coalitions at {cut}", got, table))
    for level, fn, cases in (("agents", trisect_agents, golden.AGENT_TRISECTIONS),
                             ("issues", trisect_issues, golden.ISSUE_TRISECTIONS)):
        for cut, *expected in cases:
            tri = fn(s, None, ThresholdPair(*cut), precision=2)
            results.append(check(f"{level} trisection at {cut}",
                                 [set(tri.strong), set(tri.weak), set(tri.none)], expected))

    plan = AdjustmentPlan("a1", golden.FIRST_STEP_PLAN)
    L, cm = objective(s, plan), group_conflict(apply_plan(s, plan))
    print(f"first adjustment step: L = {L:.4f} (published {golden.FIRST_STEP_L}), "
          f"CM = {cm:.4f} (published {golden.FIRST_STEP_CM})")
    results.append(abs(L - golden.FIRST_STEP_L) <= 0.005 and abs(cm - golden.FIRST_STEP_CM) <= 0.005)
    print(f"\n{sum(results)}/{len(results)} checks reproduced; CM(a6) unrounded = {fmt(agent_conflicts(s)['a6'], 4)}")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
