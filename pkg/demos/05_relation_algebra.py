"""Group convolutions: relation-algebra axioms and residuation.

Run with: python demos/05_relation_algebra.py
"""

from convalg import ConvAlgebra, build_lattice
from convalg.catalog import boolean, chain, cyclic_group
from convalg.checks import check_relation_algebra, check_residuation

z2 = cyclic_group(2)

# Convolving a group over a Heyting lattice produces a near-relation
# algebra: composition, converse and the identity satisfy the classical
# axioms, with De Morgan's law holding only in a double-negation form.
for name, lat in [("chain3", chain(3)), ("boolean2", boolean(2))]:
    report = check_relation_algebra(lat, z2)
    print(f"{name}: axioms -> {report.status},"
          f" original De Morgan holds: {report.stats['original_de_morgan_holds']}")

# Over the non-Boolean chain the original law must fail; the checker keeps
# a concrete witness around.
report = check_relation_algebra(chain(3), z2)
print("\nwitness against the original De Morgan over chain3:")
for key, val in report.stats["de_morgan_witness"].items():
    print(f"  {key} = {val}")

# Composition is residuated: a\\b is the largest c with a;c <= b.  At the
# complement of the identity the residuals coincide with the negated
# converse, and double residuation computes double negation.
labelled = build_lattice(["0", "m", "1"], [("0", "m"), ("m", "1")])
algebra = ConvAlgebra(labelled, z2)
unit = algebra.op("id", ())
zero_prime = algebra.neg(unit)
print("\n1' =", unit.labels(), " 0' =", zero_prime.labels())
carrier = algebra.carrier_list()
alpha = algebra.function([1, 2])
over = algebra.bot()
for cand in carrier:
    if algebra.le(algebra.op("*", (alpha, cand)), zero_prime):
        over = algebra.join(over, cand)
print("a\\0' for a=(m,1):", over.labels())
print("neg(conv(a))     :", algebra.neg(algebra.op("conv", (alpha,))).labels())

for name, lat in [("chain3", chain(3)), ("boolean2", boolean(2))]:
    report = check_residuation(lat, z2)
    print(f"\n{name}: residuation laws -> {report.status}; "
          f"(0'/a)\\0' = a for all a: {report.stats['collapses_to_identity']}")
