"""Convolution algebras of relational structures over finite lattices.

The package builds finite bounded lattices, relational structures of
extended type, the function spaces L^X with join/meet convolution
operations, the matching subset (complex) algebras, a negation-free
equation language, and mechanical verifiers for the structural laws the
construction satisfies at desk scale.
"""

from .convolution import (ConvAlgebra, LFunction, SubsetAlgebra,
                          delta_decompose, enumerate_functions, iso_phi,
                          iso_phi_inv, is_lattice_morphism,
                          lfunction_from_labels, lift_lattice_morphism,
                          product_iso, product_iso_inv, pullback_pmorphism,
                          DEFAULT_BUDGET)
from .lattice import (FiniteLattice, build_lattice, derive,
                      lattice_from_json, lattice_to_json)
from .structures import (RelSpec, RelStructure, Signature, build_structure,
                         disjoint_union, from_group, full_structure,
                         is_p_morphism, signature, structure_from_json,
                         structure_to_json)
from .terms import (Equation, Verdict, check_equation, eval_term,
                    parse_equation, parse_term, to_sexpr)
from . import catalog, checks, errors, suites

__all__ = [
    "ConvAlgebra", "LFunction", "SubsetAlgebra", "FiniteLattice",
    "RelSpec", "RelStructure", "Signature", "Equation", "Verdict",
    "DEFAULT_BUDGET",
    "build_lattice", "derive", "lattice_from_json", "lattice_to_json",
    "build_structure", "disjoint_union", "from_group", "full_structure",
    "is_p_morphism", "signature", "structure_from_json", "structure_to_json",
    "delta_decompose", "enumerate_functions", "iso_phi", "iso_phi_inv",
    "is_lattice_morphism", "lfunction_from_labels", "lift_lattice_morphism",
    "product_iso", "product_iso_inv", "pullback_pmorphism",
    "check_equation", "eval_term", "parse_equation", "parse_term", "to_sexpr",
    "catalog", "checks", "errors", "suites",
]

__version__ = "0.1.0"
