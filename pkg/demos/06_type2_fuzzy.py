"""Truth-value grids: type-2 operations by convolution.

Run with: python demos/06_type2_fuzzy.py
"""

from convalg import ConvAlgebra, SubsetAlgebra, check_equation
from convalg.catalog import chain, grid_labels, type2_structure
from convalg.suites import type2_equation_pool

# Discretize the unit interval to a symmetric grid and view its own
# min/max/negation/constants as relations; convolving those over the grid
# chain yields the type-2 truth-value operations.
n = 3
structure, names = type2_structure(n)
print("grid points:", grid_labels(n))
print("structure:", structure)

lat = chain(n)
algebra = ConvAlgebra(lat, structure)
alpha = algebra.function([2, 1, 0])   # a decreasing membership profile
beta = algebra.function([0, 2, 1])
print("\nalpha          =", alpha.labels())
print("beta           =", beta.labels())
print("alpha (+) beta =", algebra.op(names["sqcup"], (alpha, beta)).labels())
print("alpha (*) beta =", algebra.op(names["sqcap"], (alpha, beta)).labels())
print("negation of alpha:", algebra.op(names["star"], (alpha,)).labels())
print("constants:", algebra.op(names["one0"], ()).labels(),
      algebra.op(names["one1"], ()).labels())

# The classic surprise of this algebra: both operations are idempotent and
# commutative, yet absorption fails, so it is not a lattice.
subsets = SubsetAlgebra(structure)
for label, eq in type2_equation_pool():
    va = check_equation(eq, algebra)
    vb = check_equation(eq, subsets)
    agree = "agree" if va.is_valid == vb.is_valid else "DISAGREE"
    print(f"{label:16s} convolution={va.status:18s}"
          f" subsets={vb.status:18s} {agree}")
