"""Building finite lattices and computing with them.

Run with: python demos/01_lattices.py
"""

from convalg import build_lattice, derive, lattice_to_json

# A lattice is declared by naming its elements and listing order pairs;
# the constructor closes the order transitively and precomputes the
# meet/join tables, so failures (cycles, missing bounds) surface here.
chain3 = build_lattice(["0", "m", "1"], [("0", "m"), ("m", "1")])
print("three-element chain:", chain3)
print("  bottom/top:", chain3.labels[chain3.bottom], chain3.labels[chain3.top])
print("  distributive?", chain3.is_distributive, " boolean?", chain3.is_boolean)

# The diamond M3 is the classic non-distributive example: the three atoms
# satisfy a /\ (b \/ c) = a while (a /\ b) \/ (a /\ c) = 0.
m3 = build_lattice(["0", "a", "b", "c", "1"],
                   [("0", "a"), ("0", "b"), ("0", "c"),
                    ("a", "1"), ("b", "1"), ("c", "1")])
a, b, c = (m3.index(x) for x in "abc")
print("\nM3 distributive?", m3.is_distributive)
print("  a /\\ (b \\/ c) =", m3.labels[m3.meet([a, m3.join([b, c])])])
print("  (a /\\ b) \\/ (a /\\ c) =",
      m3.labels[m3.join([m3.meet([a, b]), m3.meet([a, c])])])

# Meets and joins of arbitrary element sets; the empty set follows the
# usual conventions (empty meet = top, empty join = bottom).
print("\nempty join is bottom:", chain3.labels[chain3.join([])])
print("empty meet is top:   ", chain3.labels[chain3.meet([])])

# Every finite distributive lattice carries a Heyting implication: a -> b
# is the largest c with a /\ c <= b, and negation is a -> bottom.
m = chain3.index("m")
print("\nHeyting structure on the chain:")
print("  m -> 0 =", chain3.labels[chain3.heyting_implies(m, 0)])
print("  not(not(m)) =", chain3.labels[
    chain3.pseudocomplement(chain3.pseudocomplement(m))], "(not m in general!)")

# Derived lattices: order dual, binary product, generated sublattice.
dual = derive(chain3, "dual")
print("\ndual chain bottom:", dual.labels[dual.bottom])
two = build_lattice(["0", "1"], [("0", "1")])
square = derive(two, "product", two)
print("2 x 2 is the four-element Boolean lattice:", square.is_boolean)
b2 = build_lattice(["0", "a", "b", "1"],
                   [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
sub, embedding = b2.generated_sublattice([b2.index("a")])
print("sublattice generated by one atom of 2x2:",
      [b2.labels[e] for e in embedding])

# The JSON form is canonical (sorted labels, full order matrix), so equal
# lattices serialize identically regardless of how they were entered.
print("\ncanonical JSON:", lattice_to_json(chain3))
