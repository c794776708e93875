"""Three-way conflict analysis for intuitionistic fuzzy preference situations."""

from .errors import *  # noqa: F401,F403
from .ifps import (
    IFN,
    ConflictSituation,
    IntuitionisticFuzzyNumber,
    PreferenceMatrix,
    Violation,
    dump_situation,
    load_situation,
    make_ifn,
    middle_east,
    parse_situation,
    save_situation,
    validate_matrix,
)
from .measures import (
    ConflictMatrix,
    agent_conflict,
    agent_conflicts,
    bundle_conflict,
    conflict_matrix,
    group_conflict,
    issue_conflict,
    issue_conflicts,
    pair_conflict,
)
from .resolution import (
    Adjustment,
    AdjustmentPlan,
    IterationRecord,
    ResolutionTrace,
    SAParams,
    apply_plan,
    objective,
    resolve,
    sa_optimize,
)
from .trisection import (
    Coalitions,
    LossProfile,
    ThresholdPair,
    Trisection,
    agent_coalitions,
    derive_losses,
    situation_thresholds,
    thresholds_from_sigma,
    trisect_agents,
    trisect_issues,
    trisect_pairs,
)

__version__ = "0.1.0"
