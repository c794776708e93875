import itertools
import time

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ifpconflict import (
    BundleTooSmall,
    ConflictMatrix,
    ConflictSituation,
    EmptyGroup,
    GroupTooSmall,
    agent_conflict,
    agent_conflicts,
    bundle_conflict,
    conflict_matrix,
    group_conflict,
    issue_conflict,
    issue_conflicts,
    pair_conflict,
)
from ifpconflict.rounding import fmt, round_half_away
from strategies import situations

import golden


def _identical(n=3, m=3):
    grid = np.full((m, m), 0.5)
    grid[0, 1], grid[1, 0] = 0.8, 0.1
    agents = [f"a{k}" for k in range(n)]
    return ConflictSituation.from_mu(agents, [f"i{k}" for k in range(m)], {a: grid for a in agents})


class TestRounding:
    @pytest.mark.parametrize("x,expected", [(0.585, 0.59), (0.125, 0.13), (-0.125, -0.13), (0.5004, 0.5)])
    def test_half_away(self, x, expected):
        assert round_half_away(x) == expected

    def test_fmt(self):
        assert fmt(0.4) == "0.40"


class TestPairConflict:
    def test_worked_values(self, middle_east):
        assert round_half_away(pair_conflict(middle_east, "a2", "a4", "i2", "i1")) == 0.85
        assert round_half_away(pair_conflict(middle_east, "a3", "a4", "i2", "i1")) == 0.77

    @pytest.mark.parametrize("a,b,table", [("a2", "a4", golden.PAIR_CONFLICT_A2_A4),
                                           ("a3", "a4", golden.PAIR_CONFLICT_A3_A4)])
    def test_tables(self, middle_east, a, b, table):
        got = {p: round_half_away(pair_conflict(middle_east, a, b, *p)) for p in table}
        assert got == table

    def test_self_zero(self, middle_east):
        for a, i, j in itertools.product(middle_east.agents, middle_east.issues, middle_east.issues):
            assert pair_conflict(middle_east, a, a, i, j) == 0.0


class TestBundleConflict:
    def test_worked_values(self, middle_east):
        assert round_half_away(bundle_conflict(middle_east, "a4", "a5")) == 0.40
        assert round_half_away(bundle_conflict(middle_east, "a1", "a2")) == 0.90

    def test_self_zero(self, middle_east):
        assert bundle_conflict(middle_east, "a3", "a3", ["i1", "i4"]) == 0.0

    def test_bundle_too_small(self, middle_east):
        with pytest.raises(BundleTooSmall):
            bundle_conflict(middle_east, "a1", "a2", ["i1"])

    def test_sub_bundle(self, middle_east):
        direct = np.mean([pair_conflict(middle_east, "a1", "a3", i, j)
                          for i, j in itertools.combinations(["i2", "i3", "i5"], 2)])
        assert bundle_conflict(middle_east, "a1", "a3", ["i5", "i2", "i3"]) == pytest.approx(direct)


class TestConflictMatrix:
    def test_matches_table(self, middle_east):
        expected = ConflictMatrix.from_upper(golden.AGENTS, golden.BUNDLE_CONFLICT_UPPER)
        assert np.array_equal(conflict_matrix(middle_east).rounded(2).values, expected.values)

    def test_symmetric_zero_diagonal(self, middle_east):
        v = conflict_matrix(middle_east, ["i1", "i3", "i4"]).values
        assert np.array_equal(v, v.T)
        assert not np.diag(v).any()

    def test_identical_agents(self):
        assert not conflict_matrix(_identical()).values.any()

    def test_runtime(self, middle_east):
        start = time.perf_counter()
        conflict_matrix(middle_east.with_matrix("a1", middle_east.preferences["a1"]))
        assert time.perf_counter() - start < 1.0


class TestAgentConflict:
    def test_values(self, middle_east):
        got = {a: round_half_away(v) for a, v in agent_conflicts(middle_east).items()}
        assert got == golden.AGENT_CM
        assert round_half_away(agent_conflict(middle_east, "a1")) == 0.63

    def test_single_agent(self):
        s = ConflictSituation.from_mu(["a"], ["x", "y"], {"a": [[0.5, 0.2], [0.3, 0.5]]})
        assert agent_conflict(s, "a") == 0.0


class TestIssueConflict:
    def test_values(self, middle_east):
        got = {i: round_half_away(v) for i, v in issue_conflicts(middle_east).items()}
        assert got == golden.ISSUE_CM
        assert round_half_away(issue_conflict(middle_east, None, "i5")) == 0.59

    def test_identical_pair(self):
        s = _identical(n=2)
        assert issue_conflict(s, ["a0", "a1"], "i0") == 0.0

    def test_single_agent_group(self, middle_east):
        with pytest.raises(GroupTooSmall):
            issue_conflicts(middle_east, ["a1"])


class TestGroupConflict:
    def test_value(self, middle_east):
        assert round_half_away(group_conflict(middle_east)) == golden.GROUP_CM

    def test_singleton_group(self, middle_east):
        assert group_conflict(middle_east, ["a4"]) == agent_conflict(middle_east, "a4")

    def test_identical(self):
        assert group_conflict(_identical()) == 0.0

    def test_empty(self, middle_east):
        with pytest.raises(EmptyGroup):
            group_conflict(middle_east, [])


class TestProperties:
    @given(situations())
    def test_pair_swap_identity(self, s):
        for a, b in itertools.product(s.agents, repeat=2):
            for i, j in itertools.combinations(s.issues, 2):
                assert pair_conflict(s, a, b, i, j) == pair_conflict(s, a, b, j, i)

    @given(situations())
    def test_decomposition(self, s):
        a, b = s.agents[0], s.agents[-1]
        mean = np.mean([pair_conflict(s, a, b, i, j) for i, j in itertools.combinations(s.issues, 2)])
        assert bundle_conflict(s, a, b) == pytest.approx(mean, abs=1e-12)

    @given(situations())
    def test_agent_row_mean(self, s):
        grid = conflict_matrix(s).values
        for k, a in enumerate(s.agents):
            row = np.delete(grid[k], k)
            assert agent_conflict(s, a) == pytest.approx(row.mean(), abs=1e-12)

    @given(situations(), st.randoms())
    def test_reordering_invariance(self, s, st_perm):
        agents, issues = list(s.agents), list(s.issues)
        st_perm.shuffle(agents)
        st_perm.shuffle(issues)
        order = [s.issue_index(i) for i in issues]
        shuffled = ConflictSituation.from_mu(
            agents, issues, {a: s.preferences[a].mu[np.ix_(order, order)] for a in agents})
        for a in s.agents:
            assert agent_conflict(shuffled, a) == pytest.approx(agent_conflict(s, a), abs=1e-12)
        ic, ic2 = issue_conflicts(s), issue_conflicts(shuffled)
        for i in s.issues:
            assert ic2[i] == pytest.approx(ic[i], abs=1e-12)
        assert group_conflict(shuffled) == pytest.approx(group_conflict(s), abs=1e-12)
        cm, cm2 = conflict_matrix(s), conflict_matrix(shuffled)
        for a, b in itertools.product(s.agents, repeat=2):
            assert cm2[a, b] == pytest.approx(cm[a, b], abs=1e-12)
