"""The function space L^X and its convolution operations.

Run with: python demos/02_convolution.py
"""

from convalg import (ConvAlgebra, SubsetAlgebra, build_lattice,
                     delta_decompose, iso_phi)
from convalg.catalog import chain, cyclic_group

# Take the two-element group as a relational structure: its multiplication
# becomes a ternary relation (inputs first, output last), inversion a
# binary relation, and the identity a unary relation.
z2 = cyclic_group(2)
print("group as a structure:", z2)

# Functions from the carrier into the three-element chain form the algebra
# L^X.  The ternary relation induces a binary operation: the value of
# alpha * beta at x joins alpha(x1) /\ beta(x2) over all x1 + x2 = x.
lat = build_lattice(["0", "m", "1"], [("0", "m"), ("m", "1")])
algebra = ConvAlgebra(lat, z2)
alpha = algebra.function([1, 2])   # the function (m, 1)
beta = algebra.function([2, 1])
print("\n(m,1) * (1,m) =", algebra.op("*", (alpha, beta)).labels())

# Unary and nullary relations give converse and the identity constant.
print("converse of (m,1):", algebra.op("conv", (alpha,)).labels())
print("identity constant :", algebra.op("id", ()).labels())

# Over the two-element chain the construction is the familiar powerset
# algebra: sending a function to the set of points where it is top is an
# isomorphism onto the complex algebra.
two = chain(2)
small = ConvAlgebra(two, z2)
subsets = SubsetAlgebra(z2)
f = small.function([1, 0])
g = small.function([0, 1])
print("\nphi(f * g) =", sorted(iso_phi(small.op("*", (f, g)))))
print("phi(f) * phi(g) =", sorted(subsets.op("*", (iso_phi(f), iso_phi(g)))))

# Every function is the join of its one-point restrictions; this is the
# finite-support decomposition that powers the equation-transfer argument.
print("\ndelta decomposition of (m,1):",
      [d.labels() for d in delta_decompose(alpha)])

# Enumeration is lexicographic and deterministic, which is what makes
# counterexamples reproducible.
print("\nall nine functions into the chain:",
      [f.labels() for f in algebra.elements()])
