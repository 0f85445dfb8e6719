"""Shared fixtures and generators for the test suite."""

from __future__ import annotations

import random

import pytest

from ratclosure import (
    And,
    ConditionalAssertion,
    Iff,
    Implies,
    KnowledgeBase,
    Not,
    Or,
    Signature,
    Var,
    loads_kb,
)

PENGUIN_TEXT = """\
# penguin triangle
penguin |~ bird
penguin |~ !fly
bird |~ fly
"""

NIXON_TEXT = """\
# nixon diamond
republican |~ !pacifist
quaker |~ pacifist
"""


@pytest.fixture
def penguin_kb() -> KnowledgeBase:
    return loads_kb(PENGUIN_TEXT)


@pytest.fixture
def nixon_kb() -> KnowledgeBase:
    return loads_kb(NIXON_TEXT)


def random_formula(rng: random.Random, names: list[str], depth: int = 2):
    """A random formula AST over the given variable names."""
    roll = rng.random()
    if depth == 0 or roll < 0.30:
        return Var(rng.choice(names))
    if roll < 0.42:
        return Not(random_formula(rng, names, depth - 1))
    op = rng.choice([And, Or, Implies, Iff])
    return op(
        random_formula(rng, names, depth - 1),
        random_formula(rng, names, depth - 1),
    )


def random_kb(
    rng: random.Random,
    names: list[str],
    max_assertions: int = 4,
    depth: int = 2,
) -> KnowledgeBase:
    """A random KB over a pinned signature (so world enumeration is stable)."""
    count = rng.randint(1, max_assertions)
    assertions = [
        ConditionalAssertion(
            random_formula(rng, names, depth), random_formula(rng, names, depth)
        )
        for _ in range(count)
    ]
    return KnowledgeBase.from_assertions(assertions, Signature(tuple(names)))
