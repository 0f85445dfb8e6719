"""A guided tour of the library on the classic penguin triangle.

Run with:  python demos/penguin_walkthrough.py
"""

from fractions import Fraction

from ratclosure import (
    build_closure_model,
    conditional_probability,
    epsilon_distribution,
    find_witness,
    format_model,
    in_rational_closure,
    loads_kb,
    parse_assertion,
    parse_formula,
    partition,
    pref_entails,
    rank,
    verify_witness,
)

# Three defeasible rules: penguins are birds, penguins don't fly, birds fly.
# Classically their material counterparts say "there are no penguins"; the
# point of the whole exercise is to do better than that.
kb = loads_kb("""
penguin |~ bird
penguin |~ !fly
bird |~ fly
""")

print("== the level chain ==")
part = partition(kb)
for i, level in enumerate(part.levels):
    print(f"C{i}: {[str(a) for a in level.assertions]}")

print("\n== ranks ==")
for text in ("bird", "penguin", "penguin & fly", "fly & !fly"):
    print(f"rank({text}) = {rank(part, parse_formula(text))}")

print("\n== closure membership vs. preferential entailment ==")
for text in (
    "bird & penguin |~ !fly",   # specificity wins: penguins keep not flying
    "penguin & black |~ !fly",  # irrelevant detail changes nothing
    "bird & !fly |~ penguin",   # but non-flying birds need not be penguins
):
    a = parse_assertion(text)
    closure = in_rational_closure(kb, a, precomputed=part).answer
    preferential = pref_entails(kb, a)
    print(f"{text:28s} closure={closure!s:5s} preferential={preferential}")

print("\n== a certificate of non-entailment ==")
a = parse_assertion("bird & !fly |~ penguin")
witness = find_witness(kb, a)
assert witness is not None and verify_witness(kb, a, witness)
for k, (indices, world) in enumerate(witness.steps):
    print(f"step {k}: I={sorted(indices)} world: {world}")

print("\n== the closure's ranked world model ==")
model = build_closure_model(kb)
print(format_model(model))

print("\n== exact conditional probabilities ==")
for eps in (Fraction(1, 10), Fraction(1, 100)):
    dist = epsilon_distribution(model, eps)
    p = conditional_probability(dist, parse_formula("!fly"), parse_formula("penguin"))
    print(f"P(!fly | penguin) at eps={eps}: {p}")
