"""Published two-decimal values for the bundled Middle East situation."""

AGENTS = ("a1", "a2", "a3", "a4", "a5", "a6")
ISSUES = ("i1", "i2", "i3", "i4", "i5")

# upper triangles of pair conflicts per issue pair, row by row
PAIR_CONFLICT_A2_A4 = {
    ("i1", "i2"): 0.85, ("i1", "i3"): 0.07, ("i1", "i4"): 0.79, ("i1", "i5"): 0.09,
    ("i2", "i3"): 0.77, ("i2", "i4"): 0.05, ("i2", "i5"): 0.75,
    ("i3", "i4"): 0.87, ("i3", "i5"): 0.08,
    ("i4", "i5"): 0.85,
}
PAIR_CONFLICT_A3_A4 = {
    ("i1", "i2"): 0.77, ("i1", "i3"): 0.78, ("i1", "i4"): 0.75, ("i1", "i5"): 0.75,
    ("i2", "i3"): 0.72, ("i2", "i4"): 0.04, ("i2", "i5"): 0.78,
    ("i3", "i4"): 0.78, ("i3", "i5"): 0.70,
    ("i4", "i5"): 0.74,
}

# bundle conflict over all issues, upper triangle row by row
BUNDLE_CONFLICT_UPPER = (
    0.90, 0.68, 0.40, 0.53, 0.64,
    0.44, 0.52, 0.47, 0.36,
    0.68, 0.48, 0.59,
    0.40, 0.44,
    0.48,
)

AGENT_CM = {"a1": 0.63, "a2": 0.54, "a3": 0.57, "a4": 0.49, "a5": 0.47, "a6": 0.50}
ISSUE_CM = {"i1": 0.50, "i2": 0.53, "i3": 0.52, "i4": 0.53, "i5": 0.59}
GROUP_CM = 0.53
LOSSES = (0.47, 0.53)
SIGMA = 0.44
THRESHOLDS = (0.41, 0.53)

# (conflict, neutral, alliance) coalitions per agent
COALITIONS_040_060 = {
    "a1": ({"a2", "a3", "a6"}, {"a5"}, {"a1", "a4"}),
    "a2": ({"a1"}, {"a3", "a4", "a5"}, {"a2", "a6"}),
    "a3": ({"a1", "a4"}, {"a2", "a5", "a6"}, {"a3"}),
    "a4": ({"a3"}, {"a2", "a6"}, {"a1", "a4", "a5"}),
    "a5": (set(), {"a1", "a2", "a3", "a6"}, {"a4", "a5"}),
    "a6": ({"a1"}, {"a3", "a4", "a5"}, {"a2", "a6"}),
}
COALITIONS_041_053 = {
    "a1": ({"a2", "a3", "a5", "a6"}, set(), {"a1", "a4"}),
    "a2": ({"a1"}, {"a3", "a4", "a5"}, {"a2", "a6"}),
    "a3": ({"a1", "a4", "a6"}, {"a2", "a5"}, {"a3"}),
    "a4": ({"a3"}, {"a2", "a6"}, {"a1", "a4", "a5"}),
    "a5": ({"a1"}, {"a2", "a3", "a6"}, {"a4", "a5"}),
    "a6": ({"a1", "a3"}, {"a4", "a5"}, {"a2", "a6"}),
}

# (thresholds, strong, weak, none)
AGENT_TRISECTIONS = [
    ((0.50, 0.60), {"a1"}, {"a2", "a3"}, {"a4", "a5", "a6"}),
    ((0.41, 0.53), {"a1", "a2", "a3"}, {"a4", "a5", "a6"}, set()),
]
ISSUE_TRISECTIONS = [
    ((0.52, 0.55), {"i5"}, {"i2", "i4"}, {"i1", "i3"}),
    ((0.41, 0.53), {"i2", "i4", "i5"}, {"i1", "i3"}, set()),
]

# first resolution step: a1 rewrites two pairs
FIRST_STEP_PLAN = {("i3", "i4"): (0.43, 0.45), ("i3", "i5"): (0.41, 0.48)}
FIRST_STEP_L = 0.5943
FIRST_STEP_CM = 0.5090
# ten annealing runs of the first step landed in this objective range
FIRST_STEP_L_RANGE = (0.5943, 0.5984)
FINAL_CM = 0.4612
