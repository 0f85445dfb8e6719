"""Knowledge bases, material counterparts, and exceptionality."""

from __future__ import annotations

import random

import pytest

from conftest import PENGUIN_TEXT, random_formula, random_kb
from ratclosure import (
    FALSE,
    TRUE,
    And,
    ConditionalAssertion,
    Implies,
    KnowledgeBase,
    Not,
    Or,
    Signature,
    Var,
    exceptional_subset,
    is_exceptional,
    loads_kb,
    material_counterpart,
    material_kb,
    oracle_pref_entails,
    parse_assertion,
    parse_formula,
)


def test_material_counterpart_examples():
    a = parse_assertion("penguin |~ bird")
    assert material_counterpart(a) == Implies(Var("penguin"), Var("bird"))
    assert material_counterpart(parse_assertion("true |~ false")) == Implies(TRUE, FALSE)
    assert material_counterpart(parse_assertion("a & b |~ c")) == Implies(
        And(Var("a"), Var("b")), Var("c")
    )


def test_material_kb_penguin(penguin_kb):
    got = material_kb(penguin_kb).formulas
    assert got == (
        parse_formula("penguin -> bird"),
        parse_formula("penguin -> !fly"),
        parse_formula("bird -> fly"),
    )


def test_material_kb_nixon(nixon_kb):
    assert material_kb(nixon_kb).formulas == (
        parse_formula("republican -> !pacifist"),
        parse_formula("quaker -> pacifist"),
    )


def test_material_kb_empty():
    kb = KnowledgeBase.from_assertions([])
    assert material_kb(kb).formulas == ()


def test_exceptional_nixon_conjunction(nixon_kb):
    assert is_exceptional(nixon_kb, parse_formula("republican & quaker")) is True
    assert is_exceptional(nixon_kb, parse_formula("republican")) is False


def test_false_is_always_exceptional(penguin_kb, nixon_kb):
    for kb in (penguin_kb, nixon_kb, KnowledgeBase.from_assertions([])):
        assert is_exceptional(kb, FALSE) is True


def test_exceptional_subset_penguin(penguin_kb):
    got = exceptional_subset(penguin_kb)
    assert got.assertions == penguin_kb.assertions[:2]
    assert got.signature == penguin_kb.signature


def test_exceptional_subset_nixon_is_empty(nixon_kb):
    assert exceptional_subset(nixon_kb).assertions == ()


def test_exceptional_subset_of_empty_kb():
    kb = KnowledgeBase.from_assertions([])
    assert exceptional_subset(kb).assertions == ()


def test_exceptional_subset_is_a_subset_property():
    rng = random.Random(7)
    for _ in range(25):
        kb = random_kb(rng, ["a", "b", "c"])
        sub = exceptional_subset(kb)
        assert set(sub.assertions) <= set(kb.assertions)


def test_exceptionality_of_disjunction_is_conjunction_of_exceptionality():
    rng = random.Random(11)
    names = ["a", "b", "c"]
    for _ in range(25):
        kb = random_kb(rng, names)
        f = random_formula(rng, names)
        g = random_formula(rng, names)
        assert is_exceptional(kb, Or(f, g)) == (
            is_exceptional(kb, f) and is_exceptional(kb, g)
        )


def test_exceptionality_invariant_under_equivalent_antecedents():
    rng = random.Random(13)
    names = ["a", "b", "c"]
    for _ in range(25):
        kb = random_kb(rng, names)
        f = random_formula(rng, names)
        doubled = Not(Not(f))
        assert is_exceptional(kb, f) == is_exceptional(kb, doubled)


def test_exceptionality_agrees_with_the_semantic_oracle():
    rng = random.Random(17)
    names = ["a", "b"]
    for _ in range(15):
        kb = random_kb(rng, names, max_assertions=3)
        f = random_formula(rng, names)
        oracle = oracle_pref_entails(kb, ConditionalAssertion(TRUE, Not(f)))
        assert is_exceptional(kb, f) == oracle


def test_foreign_query_variables_extend_the_working_language():
    kb = loads_kb("p |~ q")
    assert is_exceptional(kb, parse_formula("p & r")) is False
    assert is_exceptional(kb, parse_formula("p & !q & r")) is True


# ---------------------------------------------------------------------------
# KB files
# ---------------------------------------------------------------------------

def test_kb_file_round_trip_penguin():
    kb = loads_kb(PENGUIN_TEXT)
    assert kb.signature.variables == ("penguin", "bird", "fly")
    assert [str(a) for a in kb] == [
        "penguin |~ bird",
        "penguin |~ !fly",
        "bird |~ fly",
    ]


def test_kb_file_vars_header_pins_and_extends():
    kb = loads_kb("vars: z a\na |~ b\n")
    assert kb.signature.variables == ("z", "a", "b")


def test_kb_file_vars_header_must_lead():
    with pytest.raises(ValueError):
        loads_kb("a |~ b\nvars: a b\n")


def test_kb_file_ignores_blank_lines_and_comments():
    kb = loads_kb("\n# only a comment\n\na |~ b  # inline\n")
    assert len(kb) == 1


def test_kb_deduplicates_up_to_ast_equality():
    kb = loads_kb("a |~ b\na |~ b\na|~b\n")
    assert len(kb) == 1
    # logically equivalent but structurally different assertions are kept
    kb2 = loads_kb("a |~ b\na |~ !!b\n")
    assert len(kb2) == 2


def test_with_assertion_dedupes_and_extends_signature():
    kb = loads_kb("a |~ b")
    same = kb.with_assertion(parse_assertion("a |~ b"))
    assert same is kb
    grown = kb.with_assertion(parse_assertion("c |~ d"))
    assert grown.signature.variables == ("a", "b", "c", "d")


def test_empty_kb_is_legal_everywhere():
    kb = KnowledgeBase.from_assertions([], Signature(("a",)))
    assert len(kb) == 0
    assert is_exceptional(kb, Var("a")) is False
    assert exceptional_subset(kb).assertions == ()
