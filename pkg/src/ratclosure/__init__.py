"""Rational closure and preferential entailment for conditional knowledge bases.

A knowledge base is a finite set of defeasible rules ``a |~ b`` ("if a,
normally b").  This package decides membership in the base's rational
closure, decides preferential entailment, exposes the rank machinery behind
both, and cross-validates every answer against model-theoretic and
exact-rational probabilistic oracles.
"""

from .closure import (
    QueryResult,
    Witness,
    find_witness,
    in_rational_closure,
    pref_entails,
    pref_entails_result,
    verify_witness,
)
from .formulas import (
    FALSE,
    TRUE,
    And,
    FalseConst,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    ParseError,
    Signature,
    TrueConst,
    UnknownVariableError,
    Var,
    World,
    conjoin,
    disjoin,
    evaluate,
    format_formula,
    free_vars,
    parse_formula,
)
from .kb import (
    ConditionalAssertion,
    KnowledgeBase,
    exceptional_subset,
    is_exceptional,
    load_kb,
    loads_kb,
    material_counterpart,
    material_kb,
    parse_assertion,
)
from .models import (
    EmptyModelError,
    EpsilonDistribution,
    RankedWorldModel,
    ZeroProbabilityError,
    build_closure_model,
    conditional_probability,
    count_ranked_models,
    enumerate_ranked_models,
    epsilon_distribution,
    format_model,
    oracle_pref_entails,
    satisfies,
    worlds_at_minimal_rank,
)
from .ranks import Rank, RankPartition, partition, rank
from .sat import (
    FormulaSet,
    ResourceLimitError,
    SatCounter,
    entails,
    enumerate_models,
    satisfiable,
)

__version__ = "0.1.0"
