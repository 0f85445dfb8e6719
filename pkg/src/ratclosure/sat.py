"""Satisfiability and classical entailment over logically finite signatures.

Two independent decision procedures back every query: direct truth-table
evaluation over the full world enumeration (signatures up to
``DEFAULT_ENUM_THRESHOLD`` variables), and DPLL over a structural
Tseitin-style clausification for everything larger.  Auxiliary clausification
variables never appear in reported models.

Truth tables are held as big integers: bit ``i`` states whether the world at
enumeration position ``i`` satisfies the formula.  That keeps the small-case
path a handful of bitwise operations per connective.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .formulas import (
    And,
    FalseConst,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Signature,
    TrueConst,
    Var,
    World,
    free_vars,
)

DEFAULT_ENUM_THRESHOLD = 16
DEFAULT_MODEL_CAP = 2 ** 24


class ResourceLimitError(RuntimeError):
    """A query would enumerate more worlds or models than its cap allows."""


class SatCounter:
    """Counts individual satisfiability decisions, one per ``satisfiable`` call."""

    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0

    def bump(self) -> None:
        self.count += 1


@dataclass(frozen=True)
class FormulaSet:
    """A finite set of formulas together with a covering signature."""

    formulas: tuple[Formula, ...]
    signature: Signature

    def __post_init__(self) -> None:
        for f in self.formulas:
            missing = free_vars(f) - set(self.signature.variables)
            if missing:
                raise ValueError(f"signature does not cover {sorted(missing)}")

    def with_formula(self, formula: Formula) -> "FormulaSet":
        sig = self.signature.extended(free_vars(formula))
        return FormulaSet(self.formulas + (formula,), sig)


# ---------------------------------------------------------------------------
# Truth-table path
# ---------------------------------------------------------------------------

_var_mask_cache: dict[tuple[int, int], int] = {}


def _var_mask(nvars: int, index: int) -> int:
    """Truth-table mask of variable ``index`` over ``nvars`` variables."""
    key = (nvars, index)
    cached = _var_mask_cache.get(key)
    if cached is not None:
        return cached
    # variable j is true at position i iff bit (nvars-1-j) of i is clear
    block = 1 << (nvars - 1 - index)
    mask = (1 << block) - 1
    width = block * 2
    total = 1 << nvars
    while width < total:
        mask |= mask << width
        width *= 2
    _var_mask_cache[key] = mask
    return mask


def truth_table_mask(formula: Formula, signature: Signature) -> int:
    """Big-integer truth table of ``formula`` over ``signature``'s worlds."""
    nvars = len(signature)
    full = (1 << (1 << nvars)) - 1
    if isinstance(formula, Var):
        return _var_mask(nvars, signature.index(formula.name))
    if isinstance(formula, TrueConst):
        return full
    if isinstance(formula, FalseConst):
        return 0
    if isinstance(formula, Not):
        return full ^ truth_table_mask(formula.operand, signature)
    left = truth_table_mask(formula.left, signature)
    right = truth_table_mask(formula.right, signature)
    if isinstance(formula, And):
        return left & right
    if isinstance(formula, Or):
        return left | right
    if isinstance(formula, Implies):
        return (full ^ left) | right
    if isinstance(formula, Iff):
        return full ^ (left ^ right)
    raise TypeError(f"not a formula node: {formula!r}")


def _conjunction_mask(formulas: tuple[Formula, ...], signature: Signature) -> int:
    mask = (1 << signature.world_count()) - 1
    for f in formulas:
        mask &= truth_table_mask(f, signature)
        if mask == 0:
            break
    return mask


def _iter_set_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# DPLL path
# ---------------------------------------------------------------------------

def _tseitin(formulas: tuple[Formula, ...], signature: Signature):
    """Clausify structurally; returns (clauses, variable count).

    User variable ``j`` maps to DIMACS-style variable ``j + 1``; fresh
    auxiliary variables name the subformulas.
    """
    clauses: list[tuple[int, ...]] = []
    lit_of: dict[Formula, int] = {}
    counter = [len(signature)]

    def fresh() -> int:
        counter[0] += 1
        return counter[0]

    def lit(node: Formula) -> int:
        if isinstance(node, Var):
            return signature.index(node.name) + 1
        known = lit_of.get(node)
        if known is not None:
            return known
        x = fresh()
        lit_of[node] = x
        if isinstance(node, TrueConst):
            clauses.append((x,))
        elif isinstance(node, FalseConst):
            clauses.append((-x,))
        elif isinstance(node, Not):
            a = lit(node.operand)
            clauses.extend([(-x, -a), (x, a)])
        elif isinstance(node, And):
            a, b = lit(node.left), lit(node.right)
            clauses.extend([(-x, a), (-x, b), (x, -a, -b)])
        elif isinstance(node, Or):
            a, b = lit(node.left), lit(node.right)
            clauses.extend([(-x, a, b), (x, -a), (x, -b)])
        elif isinstance(node, Implies):
            a, b = lit(node.left), lit(node.right)
            clauses.extend([(-x, -a, b), (x, a), (x, -b)])
        elif isinstance(node, Iff):
            a, b = lit(node.left), lit(node.right)
            clauses.extend([(-x, -a, b), (-x, a, -b), (x, a, b), (x, -a, -b)])
        else:
            raise TypeError(f"not a formula node: {node!r}")
        return x

    for f in formulas:
        clauses.append((lit(f),))
    return clauses, counter[0]


def _dpll(clauses: list[tuple[int, ...]], nvars: int) -> dict[int, bool] | None:
    """Chronological-backtracking DPLL with unit propagation."""
    assign: dict[int, bool] = {}
    trail: list[int] = []
    decisions: list[tuple[int, int, bool]] = []  # (trail mark, var, flipped?)

    def lit_value(lit: int) -> bool | None:
        v = assign.get(abs(lit))
        if v is None:
            return None
        return v if lit > 0 else not v

    def set_lit(lit: int) -> None:
        assign[abs(lit)] = lit > 0
        trail.append(abs(lit))

    def propagate() -> bool:
        changed = True
        while changed:
            changed = False
            for clause in clauses:
                unassigned = 0
                open_count = 0
                satisfied = False
                for lit in clause:
                    v = lit_value(lit)
                    if v is True:
                        satisfied = True
                        break
                    if v is None:
                        open_count += 1
                        unassigned = lit
                        if open_count > 1:
                            break
                if satisfied:
                    continue
                if open_count == 0:
                    return False
                if open_count == 1:
                    set_lit(unassigned)
                    changed = True
        return True

    def backtrack() -> bool:
        while decisions:
            mark, var, flipped = decisions.pop()
            while len(trail) > mark:
                assign.pop(trail.pop(), None)
            if not flipped:
                decisions.append((mark, var, True))
                set_lit(-var)
                return True
        return False

    while True:
        if propagate():
            choice = next((v for v in range(1, nvars + 1) if v not in assign), None)
            if choice is None:
                return dict(assign)
            decisions.append((len(trail), choice, False))
            set_lit(choice)
        elif not backtrack():
            return None


def _dpll_satisfiable(fs: FormulaSet) -> bool:
    clauses, nvars = _tseitin(fs.formulas, fs.signature)
    return _dpll(clauses, nvars) is not None


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def satisfiable(
    fs: FormulaSet,
    *,
    counter: SatCounter | None = None,
    enum_threshold: int = DEFAULT_ENUM_THRESHOLD,
) -> bool:
    """True iff some world over the signature satisfies every formula."""
    if counter is not None:
        counter.bump()
    if len(fs.signature) <= enum_threshold:
        return _conjunction_mask(fs.formulas, fs.signature) != 0
    return _dpll_satisfiable(fs)


def entails(
    fs: FormulaSet,
    goal: Formula,
    *,
    counter: SatCounter | None = None,
    enum_threshold: int = DEFAULT_ENUM_THRESHOLD,
) -> bool:
    """True iff every world satisfying ``fs`` satisfies ``goal``."""
    return not satisfiable(
        fs.with_formula(Not(goal)), counter=counter, enum_threshold=enum_threshold
    )


def enumerate_models(
    fs: FormulaSet,
    *,
    cap: int = DEFAULT_MODEL_CAP,
    enum_threshold: int = DEFAULT_ENUM_THRESHOLD,
) -> Iterator[World]:
    """Exactly the satisfying worlds, in world-enumeration order.

    Raises :class:`ResourceLimitError` when ``2**len(signature)`` exceeds
    ``cap``.  Above the truth-table threshold, models come from DPLL with
    blocking clauses over the user variables only, so clausification
    auxiliaries never leak out.
    """
    sig = fs.signature
    if sig.world_count() > cap:
        raise ResourceLimitError(
            f"2**{len(sig)} worlds exceed the enumeration cap of {cap}"
        )
    if len(sig) <= enum_threshold:
        mask = _conjunction_mask(fs.formulas, sig)
        for position in _iter_set_bits(mask):
            yield sig.world_at(position)
        return

    clauses, nvars = _tseitin(fs.formulas, sig)
    blocking: list[tuple[int, ...]] = []
    positions = []
    while True:
        model = _dpll(clauses + blocking, nvars)
        if model is None:
            break
        values = tuple(model.get(j + 1, True) for j in range(len(sig)))
        positions.append(World(sig, values).position())
        blocking.append(
            tuple((-(j + 1) if values[j] else (j + 1)) for j in range(len(sig)))
        )
    for position in sorted(positions):
        yield sig.world_at(position)
