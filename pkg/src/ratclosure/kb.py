"""Conditional assertions, knowledge bases, and exceptionality.

A conditional assertion ``a |~ b`` is a defeasible rule ("if a, normally b"),
not material implication.  Its material counterpart ``a -> b`` is what the
classical machinery works on: a formula is exceptional for a knowledge base
exactly when the material counterparts of the base classically entail its
negation.

KB file format: UTF-8 text, one ``<formula> |~ <formula>`` per line, blank
lines and ``#`` comments ignored, with an optional leading ``vars: a b c``
header that pins (and may be extended by) the signature.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from . import formulas
from .formulas import (
    Formula,
    Implies,
    Not,
    Signature,
    free_vars,
    variables_in_order,
)
from .sat import FormulaSet, SatCounter, entails


@dataclass(frozen=True)
class ConditionalAssertion:
    """A pair of formulas read ``antecedent |~ consequent``."""

    antecedent: Formula
    consequent: Formula

    def __str__(self) -> str:
        return f"{self.antecedent} |~ {self.consequent}"


@dataclass(frozen=True)
class KnowledgeBase:
    """A finite, duplicate-free list of conditional assertions.

    Duplicates are removed up to AST equality on construction; the signature
    covers every free variable of every assertion.  Values are immutable, so
    they hash and can back caches.
    """

    assertions: tuple[ConditionalAssertion, ...]
    signature: Signature

    def __post_init__(self) -> None:
        covered = set(self.signature.variables)
        for a in self.assertions:
            missing = (free_vars(a.antecedent) | free_vars(a.consequent)) - covered
            if missing:
                raise ValueError(f"signature does not cover {sorted(missing)}")
        if len(set(self.assertions)) != len(self.assertions):
            raise ValueError("assertions must be deduplicated; use from_assertions")

    @classmethod
    def from_assertions(
        cls,
        assertions: Iterable[ConditionalAssertion],
        signature: Signature | None = None,
    ) -> "KnowledgeBase":
        """Build a KB, deduplicating and inferring/extending the signature.

        Without an explicit signature, variables are ordered by first
        occurrence across the assertion list.
        """
        deduped: list[ConditionalAssertion] = []
        seen: set[ConditionalAssertion] = set()
        for a in assertions:
            if a not in seen:
                seen.add(a)
                deduped.append(a)
        base = signature if signature is not None else Signature(())
        order: list[str] = []
        for a in deduped:
            order.extend(variables_in_order(a.antecedent, a.consequent))
        return cls(tuple(deduped), base.extended(order))

    def __len__(self) -> int:
        return len(self.assertions)

    def __iter__(self) -> Iterator[ConditionalAssertion]:
        return iter(self.assertions)

    def __getitem__(self, index: int) -> ConditionalAssertion:
        return self.assertions[index]

    def with_assertion(self, assertion: ConditionalAssertion) -> "KnowledgeBase":
        """This KB plus one assertion (a no-op if already present)."""
        if assertion in self.assertions:
            return self
        return KnowledgeBase.from_assertions(
            self.assertions + (assertion,), self.signature
        )

    def subset(self, keep: Iterable[ConditionalAssertion]) -> "KnowledgeBase":
        keep_set = set(keep)
        return KnowledgeBase(
            tuple(a for a in self.assertions if a in keep_set), self.signature
        )

    def working_signature(self, *extra: Formula) -> Signature:
        """The KB signature extended with any fresh variables of ``extra``.

        Query formulas may mention variables foreign to the KB; entailment by
        the material counterparts is unaffected by unused variables, so the
        working language simply grows for that query.
        """
        sig = self.signature
        for f in extra:
            sig = sig.extended(variables_in_order(f))
        return sig


def material_counterpart(assertion: ConditionalAssertion) -> Formula:
    """The classical formula ``antecedent -> consequent``."""
    return Implies(assertion.antecedent, assertion.consequent)


def material_kb(kb: KnowledgeBase) -> FormulaSet:
    """Element-wise material counterparts of the KB, over its signature."""
    return FormulaSet(tuple(material_counterpart(a) for a in kb), kb.signature)


def is_exceptional(
    kb: KnowledgeBase, formula: Formula, *, counter: SatCounter | None = None
) -> bool:
    """True iff the material counterparts classically entail ``!formula``."""
    mats = material_kb(kb)
    sig = kb.working_signature(formula)
    if sig is not kb.signature:
        mats = FormulaSet(mats.formulas, sig)
    return entails(mats, Not(formula), counter=counter)


def exceptional_subset(
    kb: KnowledgeBase, *, counter: SatCounter | None = None
) -> KnowledgeBase:
    """The sub-KB of assertions whose antecedent is exceptional for ``kb``."""
    mats = material_kb(kb)
    keep = [
        a for a in kb if entails(mats, Not(a.antecedent), counter=counter)
    ]
    return kb.subset(keep)


# ---------------------------------------------------------------------------
# KB files
# ---------------------------------------------------------------------------

def parse_assertion(text: str) -> ConditionalAssertion:
    """Parse one ``<formula> |~ <formula>`` string."""
    antecedent, consequent = formulas.parse_conditional(text)
    return ConditionalAssertion(antecedent, consequent)


def loads_kb(text: str) -> KnowledgeBase:
    """Parse KB file content."""
    signature: Signature | None = None
    assertions: list[ConditionalAssertion] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars:"):
            if assertions or signature is not None:
                raise ValueError("vars: header must come before any assertion")
            signature = Signature(tuple(line[len("vars:"):].split()))
            continue
        assertions.append(parse_assertion(line))
    return KnowledgeBase.from_assertions(assertions, signature)


def load_kb(path: str) -> KnowledgeBase:
    """Read and parse a KB file."""
    with open(path, "r", encoding="utf-8") as handle:
        return loads_kb(handle.read())
