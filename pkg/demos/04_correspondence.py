"""Correspondence: frame properties vs algebraic laws, and quantifiers.

Run with: python demos/04_correspondence.py
"""

from convalg import ConvAlgebra, build_structure, full_structure, signature
from convalg.catalog import chain
from convalg.checks import check_closure_correspondence, check_monadic_axioms

lat = chain(3)
sig = signature(("f", 1, "join"))

# The unary convolution of a binary relation is a finitely additive
# closure operator exactly when the relation is reflexive and transitive.
# The checker computes both sides of each biconditional independently:
# the inequalities as equation checks, the frame properties by scanning.
cases = {
    "identity relation": {(0, 0), (1, 1)},
    "strict arrow":      {(0, 1)},
    "preorder":          {(0, 0), (1, 1), (0, 1)},
    "empty relation":    set(),
}
for name, rel in cases.items():
    frame = build_structure(2, sig, [rel])
    report = check_closure_correspondence(lat, frame)
    print(f"{name:18s} reflexive={report.stats['reflexive']!s:5s}"
          f" transitive={report.stats['transitive']!s:5s} -> {report.status}")

# Over the all-pairs relation the join convolution collapses a function to
# the constant at its join and the meet convolution to the constant at its
# meet: existential and universal quantifiers in algebraic clothing.
frame = full_structure(3, extended=True)
algebra = ConvAlgebra(lat, frame)
alpha = algebra.function([0, 1, 2])
print("\nalpha      =", alpha.labels())
print("dia(alpha) =", algebra.op("dia", (alpha,)).labels())
print("box(alpha) =", algebra.op("box", (alpha,)).labels())

# Together with the pointwise Heyting structure this is a monadic algebra:
# the interaction axioms hold exhaustively at every small carrier size.
for n in (1, 2, 3):
    print(f"monadic axioms at carrier {n}:",
          check_monadic_axioms(lat, n).status)
