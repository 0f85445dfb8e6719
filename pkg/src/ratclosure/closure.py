"""Rational-closure membership, preferential entailment, and witnesses.

Membership in the rational closure is decided by rank comparison: ``a |~ b``
is in the closure iff the rank of ``a`` is strictly below the rank of
``a & !b``, or ``a`` has no rank at all (the no-rank case is checked first;
it subsumes every consequent).

Preferential entailment reduces to a closure query: ``a |~ b`` is
preferentially entailed by K iff ``a |~ false`` is in the rational closure of
``K + {a |~ !b}``.  The enumeration oracle in :mod:`ratclosure.models` is the
independent check of that reduction and never the production path.

A witness is a short certificate of *non*-entailment: a sequence of pairs
``(I_k, f_k)`` of index sets into the KB and worlds, where ``psi_I`` below is
the conjunction of the indexed material counterparts and ``phi_I`` the
disjunction of the indexed antecedents.  It is valid iff

1. ``f_k`` satisfies ``psi(I_k)`` for every step,
2. ``f_k`` satisfies ``phi(I_k)`` for every interior step,
3. ``I_{k+1} = I_k ∩ {j : f_k does not satisfy antecedent j}``,
4. ``I_0`` is the full index set,
5. ``f_k`` falsifies the query antecedent on every interior step, and
6. the final world satisfies ``antecedent & !consequent``.

Index sets strictly shrink along the prefix, so witnesses have at most
``len(kb) + 1`` steps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formulas import (
    FALSE,
    And,
    Formula,
    Not,
    World,
    conjoin,
    disjoin,
    evaluate,
)
from .kb import ConditionalAssertion, KnowledgeBase, material_counterpart
from .ranks import Rank, RankPartition, partition, rank
from .sat import (
    DEFAULT_MODEL_CAP,
    FormulaSet,
    SatCounter,
    enumerate_models,
)


@dataclass(frozen=True)
class QueryResult:
    """Outcome of a closure query plus the rank evidence behind it."""

    answer: bool
    rank_antecedent: Rank
    rank_refuter: Rank
    sat_calls: int


def in_rational_closure(
    kb: KnowledgeBase,
    assertion: ConditionalAssertion,
    *,
    precomputed: RankPartition | None = None,
) -> QueryResult:
    """Decide membership of ``assertion`` in the rational closure of ``kb``.

    ``precomputed`` lets callers reuse one partition across many queries
    against the same KB; ``sat_calls`` then counts only this query's rank
    walks.  The counter is per-query, never global.
    """
    counter = SatCounter()
    part = precomputed if precomputed is not None else partition(kb, counter=counter)
    rank_antecedent = rank(part, assertion.antecedent, counter=counter)
    refuter = And(assertion.antecedent, Not(assertion.consequent))
    rank_refuter = rank(part, refuter, counter=counter)
    if not rank_antecedent.is_finite:
        answer = True
    else:
        answer = rank_antecedent < rank_refuter
    return QueryResult(answer, rank_antecedent, rank_refuter, counter.count)


def _dix_reduction(
    kb: KnowledgeBase, assertion: ConditionalAssertion
) -> tuple[KnowledgeBase, ConditionalAssertion]:
    reduced = kb.with_assertion(
        ConditionalAssertion(assertion.antecedent, Not(assertion.consequent))
    )
    return reduced, ConditionalAssertion(assertion.antecedent, FALSE)


def pref_entails_result(
    kb: KnowledgeBase, assertion: ConditionalAssertion
) -> QueryResult:
    """Like :func:`pref_entails` but exposing the reduction's query result."""
    reduced, query = _dix_reduction(kb, assertion)
    return in_rational_closure(reduced, query)


def pref_entails(kb: KnowledgeBase, assertion: ConditionalAssertion) -> bool:
    """True iff ``kb`` preferentially entails ``assertion``."""
    return pref_entails_result(kb, assertion).answer


# ---------------------------------------------------------------------------
# Witnesses of non-entailment
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """A nonempty sequence of (index set, world) pairs."""

    steps: tuple[tuple[frozenset[int], World], ...]

    def __post_init__(self) -> None:
        if not self.steps:
            raise ValueError("a witness has at least one step")


def _psi(kb: KnowledgeBase, indices: frozenset[int]) -> Formula:
    return conjoin(material_counterpart(kb[j]) for j in sorted(indices))


def _phi(kb: KnowledgeBase, indices: frozenset[int]) -> Formula:
    return disjoin(kb[j].antecedent for j in sorted(indices))


def verify_witness(
    kb: KnowledgeBase, assertion: ConditionalAssertion, witness: Witness
) -> bool:
    """Check all six witness conditions; raises ``IndexError`` on bad indices."""
    full = frozenset(range(len(kb)))
    for indices, _ in witness.steps:
        if not indices <= full:
            raise IndexError(f"witness references missing assertions {sorted(indices - full)}")
    steps = witness.steps
    last = len(steps) - 1
    if steps[0][0] != full:
        return False
    for k, (indices, world) in enumerate(steps):
        if not evaluate(world, _psi(kb, indices)):
            return False
        if k < last:
            if not evaluate(world, _phi(kb, indices)):
                return False
            if evaluate(world, assertion.antecedent):
                return False
            successor = frozenset(
                j for j in indices if not evaluate(world, kb[j].antecedent)
            )
            if steps[k + 1][0] != successor:
                return False
        else:
            if not evaluate(world, assertion.antecedent):
                return False
            if evaluate(world, assertion.consequent):
                return False
    return True


def find_witness(
    kb: KnowledgeBase,
    assertion: ConditionalAssertion,
    *,
    cap: int = DEFAULT_MODEL_CAP,
) -> Witness | None:
    """Search for a witness; returns one iff the assertion is not entailed.

    Depth-first and deterministic: at each step the terminal candidates are
    tried before the interior ones, candidate worlds come in enumeration
    order, and distinct worlds inducing the same successor index set are
    explored only once (the remainder of the search depends only on the index
    set).  Index sets strictly shrink, bounding the depth by ``len(kb) + 1``.
    """
    sig = kb.working_signature(assertion.antecedent, assertion.consequent)
    alpha, beta = assertion.antecedent, assertion.consequent
    dead_ends: set[frozenset[int]] = set()

    def search(indices: frozenset[int]) -> tuple[tuple[frozenset[int], World], ...] | None:
        if indices in dead_ends:
            return None
        psi = _psi(kb, indices)
        terminal = FormulaSet((psi, alpha, Not(beta)), sig)
        for world in enumerate_models(terminal, cap=cap):
            return ((indices, world),)
        interior = FormulaSet((psi, Not(alpha), _phi(kb, indices)), sig)
        tried: set[frozenset[int]] = set()
        for world in enumerate_models(interior, cap=cap):
            successor = frozenset(
                j for j in indices if not evaluate(world, kb[j].antecedent)
            )
            if successor in tried:
                continue
            tried.add(successor)
            rest = search(successor)
            if rest is not None:
                return ((indices, world),) + rest
        dead_ends.add(indices)
        return None

    steps = search(frozenset(range(len(kb))))
    return Witness(steps) if steps is not None else None
