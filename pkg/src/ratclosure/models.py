"""Ranked-world-model semantics, the enumeration oracle, and ε-probabilities.

A ranked world model assigns a natural rank to some of the worlds of a
signature (absent worlds satisfy nothing); used ranks are contiguous from 0
and every level is nonempty.  States are identified with worlds, one state
per world: minimality only ever depends on the lowest-ranked occurrence of a
world, so duplicate states never change what a model satisfies.

The oracle enumerates *every* such model over a (small, guarded) signature
and checks an assertion against all models of a knowledge base.  It is an
independent semantic check of the rank-based decision procedure and is kept
deliberately separate from it.

The ε-family puts exact-rational probabilities on a model: within a rank all
worlds weigh the same, and the total weight of rank ``n+1`` is ``eps`` times
the total weight of rank ``n``.  Those two principles pin the distribution
uniquely.  All arithmetic is :class:`fractions.Fraction`; no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

import numpy as np

from .formulas import And, Formula, Signature, World, evaluate
from .kb import ConditionalAssertion, KnowledgeBase
from .ranks import partition
from .sat import (
    DEFAULT_MODEL_CAP,
    ResourceLimitError,
    truth_table_mask,
)

DEFAULT_ORACLE_MAX_VARIABLES = 3


class EmptyModelError(ValueError):
    """An operation needed a model with a nonempty domain."""


class ZeroProbabilityError(ValueError):
    """Conditioning on a formula of probability zero."""


@dataclass(frozen=True)
class RankedWorldModel:
    """Worlds of one signature stacked into nonempty, contiguous rank levels."""

    signature: Signature
    levels: tuple[tuple[World, ...], ...]

    def __post_init__(self) -> None:
        seen: set[World] = set()
        for level in self.levels:
            if not level:
                raise ValueError("rank levels must be nonempty and contiguous")
            for world in level:
                if world.signature != self.signature:
                    raise ValueError("world signature mismatch")
                if world in seen:
                    raise ValueError(f"world ranked twice: {world}")
                seen.add(world)

    @classmethod
    def from_rank_map(
        cls, signature: Signature, rank_of: Mapping[World, int]
    ) -> "RankedWorldModel":
        if not rank_of:
            return cls(signature, ())
        top = max(rank_of.values())
        buckets: list[list[World]] = [[] for _ in range(top + 1)]
        for world, r in rank_of.items():
            buckets[r].append(world)
        levels = []
        for bucket in buckets:
            if not bucket:
                raise ValueError("used ranks must be contiguous from 0")
            levels.append(tuple(sorted(bucket, key=World.position)))
        return cls(signature, tuple(levels))

    @property
    def max_rank(self) -> int:
        """Highest used rank; -1 for the empty-domain model."""
        return len(self.levels) - 1

    def rank_of(self, world: World) -> int | None:
        for r, level in enumerate(self.levels):
            if world in level:
                return r
        return None

    def domain(self) -> Iterator[World]:
        for level in self.levels:
            yield from level

    def domain_size(self) -> int:
        return sum(len(level) for level in self.levels)


def satisfies(model: RankedWorldModel, assertion: ConditionalAssertion) -> bool:
    """True iff every minimal-rank domain world satisfying the antecedent
    satisfies the consequent; vacuously true when no domain world does."""
    for level in model.levels:
        hits = [w for w in level if evaluate(w, assertion.antecedent)]
        if hits:
            return all(evaluate(w, assertion.consequent) for w in hits)
    return True


def format_model(model: RankedWorldModel) -> str:
    """One line per domain world: ``rank <n>: <v=0/1 ...>``, ranks ascending,
    worlds in enumeration order within each rank."""
    lines = []
    for r, level in enumerate(model.levels):
        for world in sorted(level, key=World.position):
            lines.append(f"rank {r}: {world}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Exhaustive enumeration of ranked models
# ---------------------------------------------------------------------------

def _nonempty_submasks(mask: int) -> Iterator[int]:
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def _ordered_partitions(mask: int, max_levels: int) -> Iterator[tuple[int, ...]]:
    """All ways to split the set bits of ``mask`` into an ordered sequence of
    at most ``max_levels`` nonempty blocks."""
    if mask == 0:
        yield ()
        return
    if max_levels == 0:
        return
    for first in _nonempty_submasks(mask):
        rest = mask ^ first
        for tail in _ordered_partitions(rest, max_levels - 1):
            yield (first,) + tail


def _iter_level_masks(
    n_worlds: int, max_rank: int
) -> Iterator[tuple[int, ...]]:
    """Every model over ``n_worlds`` worlds as a tuple of level bitmasks."""
    universe = (1 << n_worlds) - 1
    for domain in range(universe + 1):
        yield from _ordered_partitions(domain, max_rank + 1)


def count_ranked_models(n_worlds: int, max_rank: int) -> int:
    """Closed-form count of the models the enumerator yields."""
    from math import comb

    max_levels = max_rank + 1
    # ordered[k][l]: ordered partitions of k elements into <= l nonempty blocks
    ordered = [[1] * (max_levels + 1)]
    for k in range(1, n_worlds + 1):
        row = [0] * (max_levels + 1)
        for l in range(1, max_levels + 1):
            row[l] = sum(
                comb(k, j) * ordered[k - j][l - 1] for j in range(1, k + 1)
            )
        ordered.append(row)
    return sum(
        comb(n_worlds, k) * ordered[k][max_levels] for k in range(n_worlds + 1)
    )


def enumerate_ranked_models(
    signature: Signature,
    max_rank: int,
    *,
    max_variables: int = DEFAULT_ORACLE_MAX_VARIABLES,
) -> Iterator[RankedWorldModel]:
    """Every ranked world model over ``signature`` using ranks 0..max_rank.

    Each partial map appears exactly once and used ranks are contiguous from
    0.  Guarded: refuses signatures above ``max_variables`` (the model count
    explodes combinatorially).
    """
    if len(signature) > max_variables:
        raise ResourceLimitError(
            f"enumeration over {len(signature)} variables exceeds the guard "
            f"of {max_variables}"
        )
    n_worlds = signature.world_count()
    if not 0 <= max_rank <= n_worlds - 1:
        raise ValueError("max_rank must lie in 0 .. world count - 1")
    worlds = [signature.world_at(i) for i in range(n_worlds)]
    for level_masks in _iter_level_masks(n_worlds, max_rank):
        levels = tuple(
            tuple(worlds[i] for i in range(n_worlds) if level_mask >> i & 1)
            for level_mask in level_masks
        )
        yield RankedWorldModel(signature, levels)


# ---------------------------------------------------------------------------
# Enumeration oracle (vectorised)
# ---------------------------------------------------------------------------

_matrix_cache: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}
_survivor_cache: dict[tuple, np.ndarray] = {}
_ABSENT = np.int8(127)


def _rank_matrix(n_worlds: int, max_rank: int) -> tuple[np.ndarray, np.ndarray]:
    """All models as one int8 matrix: row = model, column = world, entry =
    rank with 127 for absent.  Cached per (world count, max rank).

    Built by dynamic programming over domain bitmasks: the exact partitions
    of a set are the partitions of each proper subset shifted one rank up,
    with the removed elements forming the new bottom rank.
    """
    key = (n_worlds, max_rank)
    cached = _matrix_cache.get(key)
    if cached is not None:
        return cached
    bits_of = [
        [i for i in range(n_worlds) if mask >> i & 1]
        for mask in range(1 << n_worlds)
    ]
    empty = np.full((1, n_worlds), _ABSENT, dtype=np.int8)
    exact: list[np.ndarray] = [empty]
    for mask in range(1, 1 << n_worlds):
        pieces = []
        for bottom in _nonempty_submasks(mask):
            base = exact[mask ^ bottom]
            # shifting one rank up must keep every row within max_rank
            row_max = np.where(base != _ABSENT, base, np.int8(-1)).max(axis=1)
            base = base[row_max + 1 <= max_rank]
            if base.shape[0] == 0:
                continue
            block = base.copy()
            present = block != _ABSENT
            block[present] += 1
            block[:, bits_of[bottom]] = 0
            pieces.append(block)
        exact.append(
            np.vstack(pieces) if pieces else np.empty((0, n_worlds), dtype=np.int8)
        )
    rows = np.vstack(exact)
    expected = count_ranked_models(n_worlds, max_rank)
    if rows.shape[0] != expected:
        raise AssertionError(
            f"model matrix has {rows.shape[0]} rows, expected {expected}"
        )
    present = rows != _ABSENT
    _matrix_cache[key] = (rows, present)
    return rows, present


def _min_rank_over(ranks: np.ndarray, columns: list[int]) -> np.ndarray:
    """Per-row minimum rank over the given world columns (127 if none)."""
    acc = np.full(ranks.shape[0], _ABSENT, dtype=np.int8)
    for c in columns:
        np.minimum(acc, ranks[:, c], out=acc)
    return acc


def _satisfaction_vector(
    ranks: np.ndarray, amask: int, bmask: int
) -> np.ndarray:
    """Boolean vector: which model rows satisfy the assertion (amask, bmask).

    A row satisfies the assertion iff the minimal rank of its present
    antecedent-and-consequent worlds lies strictly below the minimal rank of
    its present antecedent-but-not-consequent worlds (absent counts as 127),
    or no present world satisfies the antecedent at all.
    """
    n_worlds = ranks.shape[1]
    good_cols = [i for i in range(n_worlds) if (amask & bmask) >> i & 1]
    bad_cols = [i for i in range(n_worlds) if (amask & ~bmask) >> i & 1]
    min_good = _min_rank_over(ranks, good_cols)
    min_bad = _min_rank_over(ranks, bad_cols)
    return (min_good < min_bad) | ((min_good == _ABSENT) & (min_bad == _ABSENT))


def _kb_survivors(
    n_worlds: int, max_rank: int, kb_masks: tuple[tuple[int, int], ...]
) -> np.ndarray:
    """Compressed rank matrix of the models satisfying every KB assertion."""
    key = (n_worlds, max_rank, kb_masks)
    cached = _survivor_cache.get(key)
    if cached is not None:
        return cached
    current, _ = _rank_matrix(n_worlds, max_rank)
    for amask, bmask in kb_masks:
        keep = _satisfaction_vector(current, amask, bmask)
        current = current[keep]
    if len(_survivor_cache) >= 16:
        _survivor_cache.clear()
    _survivor_cache[key] = current
    return current


def oracle_pref_entails(
    kb: KnowledgeBase,
    assertion: ConditionalAssertion,
    *,
    max_rank: int | None = None,
    max_variables: int = DEFAULT_ORACLE_MAX_VARIABLES,
) -> bool:
    """Brute-force preferential entailment: true iff every enumerated ranked
    model satisfying all of ``kb`` satisfies ``assertion``.

    ``max_rank`` defaults to world count - 1, which is always enough levels:
    a model over n worlds never uses more.  Purely semantic; shares no code
    path with the rank-based decision procedure.
    """
    sig = kb.working_signature(assertion.antecedent, assertion.consequent)
    if len(sig) > max_variables:
        raise ResourceLimitError(
            f"oracle over {len(sig)} variables exceeds the guard of {max_variables}"
        )
    n_worlds = sig.world_count()
    if max_rank is None:
        max_rank = n_worlds - 1
    kb_masks = tuple(
        (
            truth_table_mask(a.antecedent, sig),
            truth_table_mask(a.consequent, sig),
        )
        for a in kb
    )
    survivors = _kb_survivors(n_worlds, max_rank, kb_masks)
    sat = _satisfaction_vector(
        survivors,
        truth_table_mask(assertion.antecedent, sig),
        truth_table_mask(assertion.consequent, sig),
    )
    return bool(sat.all())


# ---------------------------------------------------------------------------
# The closure model
# ---------------------------------------------------------------------------

def build_closure_model(
    kb: KnowledgeBase, *, cap: int = DEFAULT_MODEL_CAP
) -> RankedWorldModel:
    """Rank every world by the first chain level whose material counterparts
    it satisfies; worlds satisfying no level are absent.

    The resulting model satisfies exactly the rational closure of ``kb``.
    Only the topmost (fixpoint) level can come out empty; it is dropped so
    levels stay contiguous, which never changes what the model satisfies.
    """
    sig = kb.signature
    if sig.world_count() > cap:
        raise ResourceLimitError(
            f"2**{len(sig)} worlds exceed the enumeration cap of {cap}"
        )
    part = partition(kb)
    levels: list[tuple[World, ...]] = []
    covered = 0
    for mats in part.materials:
        level_mask = (1 << sig.world_count()) - 1
        for f in mats.formulas:
            level_mask &= truth_table_mask(f, sig)
        fresh = level_mask & ~covered
        if fresh:
            levels.append(
                tuple(
                    sig.world_at(i)
                    for i in range(sig.world_count())
                    if fresh >> i & 1
                )
            )
        covered |= level_mask
    return RankedWorldModel(sig, tuple(levels))


# ---------------------------------------------------------------------------
# ε-semantics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EpsilonDistribution:
    """The unique distribution on a model's domain with uniform weights
    within each rank and geometric decay ``eps`` between rank totals."""

    epsilon: Fraction
    model: RankedWorldModel
    level_world_weight: tuple[Fraction, ...]

    def weight_of(self, world: World) -> Fraction:
        r = self.model.rank_of(world)
        if r is None:
            return Fraction(0)
        return self.level_world_weight[r]

    def formula_weight(self, formula: Formula) -> Fraction:
        total = Fraction(0)
        for r, level in enumerate(self.model.levels):
            per_world = self.level_world_weight[r]
            for world in level:
                if evaluate(world, formula):
                    total += per_world
        return total


def epsilon_distribution(
    model: RankedWorldModel, eps: Fraction
) -> EpsilonDistribution:
    """Exact-rational weights: rank totals proportional to ``eps**rank``,
    split equally within each rank, summing to one."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie strictly between 0 and 1")
    if not model.levels:
        raise EmptyModelError("cannot weight an empty-domain model")
    level_totals = [eps ** r for r in range(len(model.levels))]
    grand_total = sum(level_totals)
    per_world = tuple(
        level_totals[r] / (len(level) * grand_total)
        for r, level in enumerate(model.levels)
    )
    return EpsilonDistribution(eps, model, per_world)


def conditional_probability(
    dist: EpsilonDistribution, consequent: Formula, antecedent: Formula
) -> Fraction:
    """Exact ``P(consequent | antecedent)`` under ``dist``.

    Raises :class:`ZeroProbabilityError` when the antecedent has weight zero
    (the distribution is not proper for that query).
    """
    denominator = dist.formula_weight(antecedent)
    if denominator == 0:
        raise ZeroProbabilityError(
            f"antecedent has probability zero: {antecedent}"
        )
    numerator = dist.formula_weight(And(antecedent, consequent))
    return numerator / denominator


def worlds_at_minimal_rank(model: RankedWorldModel, formula: Formula) -> int:
    """Number of domain worlds at the lowest rank containing a world that
    satisfies ``formula``; 0 when no domain world does."""
    for level in model.levels:
        if any(evaluate(w, formula) for w in level):
            return len(level)
    return 0
