"""The decreasing chain C0 ⊇ C1 ⊇ ... and the rank it assigns to formulas.

C0 is the knowledge base itself and each next level keeps only the assertions
exceptional for the current one.  Finite bases force a fixpoint within
``len(kb) + 1`` steps; it may be nonempty (a completely exceptional sub-base).
A formula's rank is the first level it is not exceptional for; formulas
exceptional even for the fixpoint have no rank.

Ranks are plain machine naturals: finite bases never need transfinite levels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .formulas import Formula, Not
from .kb import KnowledgeBase, exceptional_subset, material_kb
from .sat import FormulaSet, SatCounter, entails


@total_ordering
@dataclass(frozen=True)
class Rank:
    """Either ``Finite(n)`` or ``NoRank`` (value ``None``).

    ``NoRank`` is strictly greater than every finite rank and not less than
    itself, so rank comparisons can treat it as +infinity.
    """

    value: int | None

    @classmethod
    def finite(cls, n: int) -> "Rank":
        if n < 0:
            raise ValueError("ranks are naturals")
        return cls(n)

    @classmethod
    def no_rank(cls) -> "Rank":
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __lt__(self, other: "Rank") -> bool:
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __str__(self) -> str:
        return "none" if self.value is None else str(self.value)


@dataclass(frozen=True)
class RankPartition:
    """The chain ``[C0, C1, ..., Ck]`` down to (and including) its fixpoint.

    ``levels[i+1]`` is the exceptional subset of ``levels[i]``; the chain
    stops at the first ``Ck`` with ``E(Ck) = Ck`` and does not repeat it, so
    the sequence is strictly decreasing throughout.  ``materials[i]`` caches
    the material counterparts of ``levels[i]`` so that each rank query costs
    one satisfiability decision per level.
    """

    levels: tuple[KnowledgeBase, ...]
    materials: tuple[FormulaSet, ...]

    @property
    def fixpoint(self) -> KnowledgeBase:
        return self.levels[-1]

    def __len__(self) -> int:
        return len(self.levels)


def partition(kb: KnowledgeBase, *, counter: SatCounter | None = None) -> RankPartition:
    """Compute the chain from ``kb`` to its fixpoint.

    Deterministic; performs at most ``sum(len(Ci))`` satisfiability decisions,
    one per assertion per level.
    """
    levels = [kb]
    while True:
        nxt = exceptional_subset(levels[-1], counter=counter)
        if nxt == levels[-1]:
            break
        levels.append(nxt)
    return RankPartition(tuple(levels), tuple(material_kb(l) for l in levels))


def rank(
    part: RankPartition, formula: Formula, *, counter: SatCounter | None = None
) -> Rank:
    """Least level index for which ``formula`` is not exceptional.

    Returns ``NoRank`` when the formula is exceptional for the fixpoint.
    Variables foreign to the partition's KB extend the working language for
    this query only.
    """
    sig = part.levels[0].working_signature(formula)
    goal = Not(formula)
    for i, mats in enumerate(part.materials):
        fs = mats if sig is part.levels[0].signature else FormulaSet(mats.formulas, sig)
        if not entails(fs, goal, counter=counter):
            return Rank.finite(i)
    return Rank.no_rank()
