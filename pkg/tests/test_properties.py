"""Randomised property suites; each runs at least 200 generated cases."""

import itertools
from collections import Counter

import numpy as np
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from ifpconflict import (
    LossProfile,
    ThresholdPair,
    apply_plan,
    bundle_conflict,
    conflict_matrix,
    derive_losses,
    pair_conflict,
    thresholds_from_sigma,
    trisect_agents,
    trisect_issues,
    trisect_pairs,
    validate_matrix,
)
from strategies import situations, situations_with_plan

EXAMPLES = 200
CALLS: Counter = Counter()

suite = settings(max_examples=EXAMPLES, deadline=None,
                 suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
sigmas = st.floats(min_value=1e-3, max_value=0.5 - 1e-3)
EPS = 1e-12


def _threshold_pairs():
    return st.tuples(st.floats(0.0, 1.0), st.floats(0.0, 1.0)).filter(lambda p: p[0] != p[1]).map(
        lambda p: ThresholdPair(min(p), max(p)))


@suite
@given(situations(min_agents=3))
def test_conflict_metric(s):
    CALLS["metric"] += 1
    a, b, c = s.agents[:3]
    for i, j in itertools.permutations(s.issues, 2):
        ab, bc, ac = (pair_conflict(s, x, y, i, j) for x, y in ((a, b), (b, c), (a, c)))
        assert 0.0 <= ab <= 1.0 + EPS
        assert pair_conflict(s, a, a, i, j) == 0.0
        assert ab == pair_conflict(s, b, a, i, j)
        assert ab + bc >= ac - EPS
    ab, bc, ac = (bundle_conflict(s, x, y) for x, y in ((a, b), (b, c), (a, c)))
    assert 0.0 <= ab <= 1.0 + EPS
    assert bundle_conflict(s, a, a) == 0.0
    assert ab == bundle_conflict(s, b, a)
    assert ab + bc >= ac - EPS


@suite
@given(situations())
def test_pair_swap(s):
    CALLS["pair_swap"] += 1
    for a, b in itertools.product(s.agents, repeat=2):
        for i, j in itertools.combinations(s.issues, 2):
            assert pair_conflict(s, a, b, i, j) == pair_conflict(s, a, b, j, i)


@suite
@given(situations(), _threshold_pairs())
def test_trisection_partition(s, thr):
    CALLS["partition"] += 1
    pairs = set(itertools.product(s.agents, repeat=2))
    for tri, universe in ((trisect_pairs(conflict_matrix(s), thr), pairs),
                          (trisect_agents(s, None, thr), set(s.agents)),
                          (trisect_issues(s, None, thr), set(s.issues))):
        assert not (tri.strong & tri.weak or tri.strong & tri.none or tri.weak & tri.none)
        assert tri.universe == universe


@suite
@given(situations(), sigmas)
def test_threshold_ordering(s, sigma):
    sn, ns = derive_losses(s)
    assume(min(sn, ns) > 1e-9)
    CALLS["ordering"] += 1
    thr = thresholds_from_sigma(LossProfile(sn, ns, sigma))
    assert 0.0 <= thr.lower < thr.upper <= 1.0


@suite
@given(situations(), sigmas, sigmas)
def test_sigma_monotonicity(s, s1, s2):
    assume(abs(s1 - s2) > 1e-6)
    lo_s, hi_s = min(s1, s2), max(s1, s2)
    sn, ns = derive_losses(s)
    assume(min(sn, ns) > 1e-9)
    CALLS["monotonicity"] += 1
    a = thresholds_from_sigma(LossProfile(sn, ns, lo_s))
    b = thresholds_from_sigma(LossProfile(sn, ns, hi_s))
    assert a.lower < b.lower
    assert a.upper > b.upper


@suite
@given(situations_with_plan())
def test_apply_plan_feasibility(case):
    CALLS["feasibility"] += 1
    s, plan = case
    after = apply_plan(s, plan)
    changed = set()
    for pair, value in plan.new_values:
        r, c = s.issue_index(pair[0]), s.issue_index(pair[1])
        assert after.preferences[plan.target].entry(r, c).as_tuple() == value.as_tuple()
        changed |= {(r, c), (c, r)}
    for a in after.agents:
        assert validate_matrix(after.preferences[a]) == []
        before_mu, after_mu = s.preferences[a].mu, after.preferences[a].mu
        for r, c in zip(*np.nonzero(before_mu != after_mu)):
            assert a == plan.target and (r, c) in changed


PROPERTIES = {
    "metric": test_conflict_metric,
    "pair_swap": test_pair_swap,
    "partition": test_trisection_partition,
    "ordering": test_threshold_ordering,
    "monotonicity": test_sigma_monotonicity,
    "feasibility": test_apply_plan_feasibility,
}
