"""Deciding equations: validity transfer and its sharp edge.

Run with: python demos/03_equations.py
"""

from convalg import ConvAlgebra, check_equation, parse_equation
from convalg.catalog import chain, cyclic_group, get_structure, n5

z2 = cyclic_group(2)
assoc = parse_equation(
    {"lhs": "(op * (op * x y) z)", "rhs": "(op * x (op * y z))"},
    z2.signature)

# Over any distributive lattice the convolved group operation satisfies
# every negation-free equation the complex algebra satisfies, so it is
# associative.
for name, lat in [("chain3", chain(3)), ("chain4", chain(4))]:
    verdict = check_equation(assoc, ConvAlgebra(lat, z2))
    print(f"associativity over {name}: {verdict.status}"
          f" ({verdict.tried} assignments)")

# Distributivity is not cosmetic: over the pentagon N5 associativity fails,
# and the checker returns the least counterexample in enumeration order.
verdict = check_equation(assoc, ConvAlgebra(n5(), z2))
print("\nassociativity over N5:", verdict.status)
print("witness:", {k: v.labels() for k, v in verdict.assignment.items()})

# Sampling mode draws seeded random assignments; a reported counterexample
# is always a real one, and the seed makes reruns identical.
sampled = check_equation(assoc, ConvAlgebra(n5(), z2), mode="sample",
                         samples=200, seed=0)
print("\nsampled run:", sampled.status, "after", sampled.tried, "draws")

# Join convolutions preserve joins but not meets in general; on a small
# Kripke frame the checker pins down exactly where meet-preservation dies.
frame = get_structure("frame2-succ")
hom = parse_equation(
    {"lhs": "(op f (meet x y))", "rhs": "(meet (op f x) (op f y))"},
    frame.signature)
verdict = check_equation(hom, ConvAlgebra(chain(2), frame))
print("\ndiamond preserves meets on a two-world frame:", verdict.status)
print("witness:", {k: v.labels() for k, v in verdict.assignment.items()})
