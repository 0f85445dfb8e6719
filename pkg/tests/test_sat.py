"""Satisfiability, entailment, and model enumeration."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratclosure import (
    And,
    FormulaSet,
    Not,
    ResourceLimitError,
    SatCounter,
    Signature,
    Var,
    World,
    entails,
    enumerate_models,
    evaluate,
    parse_formula,
    satisfiable,
)

P = Var("p")


def fs(sig_names, *texts):
    sig = Signature(tuple(sig_names))
    return FormulaSet(tuple(parse_formula(t) for t in texts), sig)


def brute_models(formula_set):
    """Independent oracle: evaluate every world one by one."""
    return [
        w
        for w in formula_set.signature.worlds()
        if all(evaluate(w, f) for f in formula_set.formulas)
    ]


def test_contradiction_unsatisfiable():
    assert satisfiable(fs("p", "p", "!p")) is False


def test_empty_set_satisfiable():
    assert satisfiable(fs("p")) is True


def test_penguin_material_contradiction():
    # p -> !f together with b -> f kills the p & b worlds
    s = fs("pbf", "p -> !f", "b -> f", "p", "b")
    assert brute_models(s) == []
    assert satisfiable(s) is False


def test_entails_nixon_exceptional_conjunction():
    s = fs(("r", "q", "p"), "r -> !p", "q -> p")
    assert entails(s, parse_formula("!(r & q)")) is True


def test_entails_tautology_from_nothing():
    assert entails(fs("a"), parse_formula("a | !a")) is True


def test_entails_has_countermodel():
    s = fs(("p", "b", "f"), "p -> b", "p -> !f")
    assert entails(s, parse_formula("!p")) is False
    assert any(w.value("p") for w in brute_models(s))


def test_enumerate_models_single_variable():
    sig = Signature(("p",))
    models = list(enumerate_models(FormulaSet((P,), sig)))
    assert models == [World(sig, (True,))]


def test_enumerate_models_empty_set_gives_all_worlds():
    sig = Signature(("a", "b"))
    assert len(list(enumerate_models(FormulaSet((), sig)))) == 4


def test_enumerate_models_penguin_materials():
    s = fs(("penguin", "bird", "fly"), "penguin -> bird", "penguin -> !fly", "bird -> fly")
    got = [w.values for w in enumerate_models(s)]
    assert got == [
        (False, True, True),
        (False, False, True),
        (False, False, False),
    ]
    assert got == [w.values for w in brute_models(s)]


def test_resource_guard_on_enumeration():
    sig = Signature(tuple(f"v{i}" for i in range(8)))
    with pytest.raises(ResourceLimitError):
        list(enumerate_models(FormulaSet((), sig), cap=100))


def test_counter_counts_decisions():
    counter = SatCounter()
    satisfiable(fs("p", "p"), counter=counter)
    entails(fs("p", "p"), P, counter=counter)
    assert counter.count == 2


# ---------------------------------------------------------------------------
# Cross-checks between the two decision paths and against enumeration
# ---------------------------------------------------------------------------

NAMES = ("p", "q", "r", "s", "t")


def formulas_strategy(names=NAMES):
    atoms = st.sampled_from([Var(n) for n in names])
    return st.recursive(
        atoms,
        lambda children: st.one_of(
            children.map(Not),
            st.tuples(children, children).map(lambda x: And(*x)),
            st.tuples(children, children).map(
                lambda x: parse_formula(f"({x[0]}) | ({x[1]})")
            ),
            st.tuples(children, children).map(
                lambda x: parse_formula(f"({x[0]}) -> ({x[1]})")
            ),
        ),
        max_leaves=10,
    )


@given(st.lists(formulas_strategy(), max_size=4), formulas_strategy())
@settings(max_examples=60, deadline=None)
def test_entails_agrees_with_model_enumeration(formulas, goal):
    s = FormulaSet(tuple(formulas), Signature(NAMES))
    expected = all(evaluate(w, goal) for w in enumerate_models(s))
    assert entails(s, goal) == expected


@given(st.lists(formulas_strategy(), max_size=4))
@settings(max_examples=60, deadline=None)
def test_truth_table_and_dpll_paths_agree(formulas):
    s = FormulaSet(tuple(formulas), Signature(NAMES))
    enumerated = satisfiable(s)  # 5 variables: truth-table path
    via_dpll = satisfiable(s, enum_threshold=0)  # force clausification + DPLL
    assert enumerated == via_dpll


@given(st.lists(formulas_strategy(), max_size=3), formulas_strategy())
@settings(max_examples=40, deadline=None)
def test_satisfiable_is_antitone_in_the_formula_set(formulas, extra):
    sig = Signature(NAMES)
    bigger = FormulaSet(tuple(formulas) + (extra,), sig)
    smaller = FormulaSet(tuple(formulas), sig)
    if satisfiable(bigger):
        assert satisfiable(smaller)


@given(st.lists(formulas_strategy(), max_size=3), formulas_strategy(), formulas_strategy())
@settings(max_examples=40, deadline=None)
def test_deduction_theorem(formulas, a, b):
    sig = Signature(NAMES)
    s = FormulaSet(tuple(formulas), sig)
    lhs = entails(FormulaSet(tuple(formulas) + (a,), sig), b)
    rhs = entails(s, parse_formula(f"({a}) -> ({b})"))
    assert lhs == rhs


def test_cross_check_at_twelve_variables():
    names = tuple(f"y{i}" for i in range(12))
    sig = Signature(names)
    s = FormulaSet(
        (
            parse_formula("y0 -> y1 & y2"),
            parse_formula("y3 | y4 | y5"),
            parse_formula("!(y6 & y7) -> (y8 <-> y9)"),
        ),
        sig,
    )
    goal = parse_formula("y0 -> y2")
    expected = all(evaluate(w, goal) for w in enumerate_models(s))
    assert entails(s, goal) == expected is True
    goal2 = parse_formula("y10")
    assert entails(s, goal2) == all(evaluate(w, goal2) for w in enumerate_models(s))


def test_dpll_path_handles_wide_signatures():
    names = tuple(f"x{i}" for i in range(20))
    sig = Signature(names)
    chain = [parse_formula(f"x{i} -> x{i+1}") for i in range(19)]
    s = FormulaSet(tuple(chain) + (Var("x0"),), sig)
    assert satisfiable(s) is True
    assert entails(s, Var("x19")) is True
    assert entails(s, Not(Var("x19"))) is False


def test_dpll_model_enumeration_hides_auxiliary_variables():
    names = tuple(f"x{i}" for i in range(3))
    sig = Signature(names)
    s = FormulaSet((parse_formula("x0 | (x1 & !x2)"),), sig)
    small = list(enumerate_models(s))
    forced = list(enumerate_models(s, enum_threshold=0))
    assert [w.values for w in small] == [w.values for w in forced]
    assert all(set(w.as_dict()) == set(names) for w in forced)
