"""Function spaces L^X, their convolution operations, and subset algebras.

The join convolution of an (n+1)-ary relation R sends functions a1..an to
the function whose value at x is the join over all (x1,..,xn,x) in R of
a1(x1) /\\ ... /\\ an(xn); the dual (meet) convolution swaps joins and meets.
Empty joins are bottom and empty meets are top throughout, which also fixes
the nullary conventions.

Single applications are vectorized: meets of up to 62-element lattices are
folded through the meet table with fancy indexing and joins are reduced as
bitwise ANDs of up-set masks (the up-set of a join is the intersection of
the up-sets).  Larger lattices fall back to plain table folds.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import (ArityMismatch, BudgetExceeded, NotAMorphism,
                     NotAPMorphism, NotAProductLattice, NotTwoElement,
                     UnknownElement, WrongMode)
from .lattice import FiniteLattice
from .structures import JOIN, MEET, RelStructure, is_p_morphism

DEFAULT_BUDGET = 1_000_000
_MEMO_CAP = 300_000
_INTERN_CAP = 100_000


class LFunction:
    """An element of L^X: a tuple of lattice-element indices, one per point."""

    __slots__ = ("values", "lattice", "_np", "_hash")

    def __init__(self, values: Iterable[int], lattice: FiniteLattice):
        vals = tuple(int(v) for v in values)
        for v in vals:
            if not 0 <= v < lattice.size:
                raise UnknownElement(f"value {v} outside lattice of size {lattice.size}")
        self.values = vals
        self.lattice = lattice
        arr = np.array(vals, dtype=np.int64)
        arr.flags.writeable = False
        self._np = arr
        self._hash = hash((lattice, vals))

    def __eq__(self, other):
        return (isinstance(other, LFunction)
                and self.values == other.values
                and (self.lattice is other.lattice or self.lattice == other.lattice))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"LFunction({self.labels()})"

    def labels(self) -> list[str]:
        return [self.lattice.labels[v] for v in self.values]

    def le(self, other: "LFunction") -> bool:
        return bool(self.lattice.leq[self._np, other._np].all())


def lfunction_from_labels(labels: Sequence[str], lattice: FiniteLattice) -> LFunction:
    return LFunction([lattice.index(str(x)) for x in labels], lattice)


class ConvAlgebra:
    """The convolution algebra of a structure over a finite lattice.

    When ``ordered`` is set the structure must carry an order and the
    algebra's carrier is restricted to the order-preserving functions;
    operations themselves stay defined on all of L^X.
    """

    def __init__(self, lattice: FiniteLattice, structure: RelStructure,
                 ordered: bool = False):
        if ordered and structure.order is None:
            raise ValueError("ordered algebra needs an ordered structure")
        self.lattice = lattice
        self.structure = structure
        self.ordered = ordered
        self._rel = [self._compile_relation(i) for i in range(len(structure.signature))]
        if structure.order is not None:
            xs, ys = np.where(structure.order)
            self._order_pairs = (xs, ys)
        else:
            self._order_pairs = None
        self._intern: dict = {}
        self._memo: dict = {}
        self._carrier: list[LFunction] | None = None
        self._bot = self._lf((lattice.bottom,) * structure.carrier_size)
        self._top = self._lf((lattice.top,) * structure.carrier_size)

    def _compile_relation(self, i: int):
        spec = self.structure.signature.rel_specs[i]
        tuples = sorted(self.structure.relations[i], key=lambda t: (t[-1],) + t[:-1])
        if spec.arity == 0:
            present = np.array(sorted(t[0] for t in tuples), dtype=np.int64)
            return {"spec": spec, "present": present}
        outs = np.array([t[-1] for t in tuples], dtype=np.int64)
        cols = np.array([t[:-1] for t in tuples], dtype=np.int64).reshape(len(tuples), spec.arity)
        seg = np.flatnonzero(np.diff(outs, prepend=outs[0] - 1 if len(outs) else 0)) \
            if len(outs) else np.array([], dtype=np.int64)
        return {"spec": spec, "outs": outs, "cols": cols,
                "seg": seg, "present": outs[seg] if len(outs) else outs}

    # -- element plumbing ----------------------------------------------------

    def _lf(self, values: tuple) -> LFunction:
        found = self._intern.get(values)
        if found is None:
            found = LFunction(values, self.lattice)
            if len(self._intern) < _INTERN_CAP:
                self._intern[values] = found
        return found

    def function(self, values: Iterable[int]) -> LFunction:
        return self._lf(tuple(int(v) for v in values))

    def bot(self) -> LFunction:
        return self._bot

    def top(self) -> LFunction:
        return self._top

    def _check_arg(self, a: LFunction):
        if a.lattice != self.lattice or len(a.values) != self.structure.carrier_size:
            raise UnknownElement("function does not live in this algebra")

    def is_order_preserving(self, a: LFunction) -> bool:
        if self._order_pairs is None:
            return True
        xs, ys = self._order_pairs
        return bool(self.lattice.leq[a._np[xs], a._np[ys]].all())

    def space_size(self) -> int:
        return self.lattice.size ** self.structure.carrier_size

    def elements(self, budget: int | None = None):
        """All carrier elements in lexicographic, carrier-index-major order.

        The order on lattice elements is their build index; when the
        algebra is ordered only order-preserving functions are yielded.
        """
        cap = DEFAULT_BUDGET if budget is None else budget
        if self.space_size() > cap:
            raise BudgetExceeded(self.space_size(), cap)
        for values in product(range(self.lattice.size),
                              repeat=self.structure.carrier_size):
            f = self._lf(values)
            if self.ordered and not self.is_order_preserving(f):
                continue
            yield f

    def carrier_list(self, budget: int | None = None) -> list[LFunction]:
        if self._carrier is None:
            self._carrier = list(self.elements(budget))
        return self._carrier

    def carrier_count(self, budget: int | None = None) -> int:
        if not self.ordered:
            return self.space_size()
        return len(self.carrier_list(budget))

    def random_element(self, rng) -> LFunction:
        if self.ordered:
            carrier = self.carrier_list()
            return carrier[rng.randrange(len(carrier))]
        k = self.lattice.size
        return self._lf(tuple(rng.randrange(k)
                              for _ in range(self.structure.carrier_size)))

    # -- pointwise lattice structure ------------------------------------------
    # Results are memoized alongside relation applications (negative keys),
    # which keeps exhaustive equation checks close to dictionary speed.

    def meet(self, a: LFunction, b: LFunction) -> LFunction:
        key = (-1, a, b)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._lf(tuple(self.lattice.meet_np[a._np, b._np].tolist()))
            if len(self._memo) < _MEMO_CAP:
                self._memo[key] = hit
        return hit

    def join(self, a: LFunction, b: LFunction) -> LFunction:
        key = (-2, a, b)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._lf(tuple(self.lattice.join_np[a._np, b._np].tolist()))
            if len(self._memo) < _MEMO_CAP:
                self._memo[key] = hit
        return hit

    def neg(self, a: LFunction) -> LFunction:
        key = (-3, a)
        hit = self._memo.get(key)
        if hit is None:
            lat = self.lattice
            hit = self._lf(tuple(lat.heyting_implies(v, lat.bottom)
                                 for v in a.values))
            if len(self._memo) < _MEMO_CAP:
                self._memo[key] = hit
        return hit

    def imp(self, a: LFunction, b: LFunction) -> LFunction:
        key = (-4, a, b)
        hit = self._memo.get(key)
        if hit is None:
            lat = self.lattice
            hit = self._lf(tuple(lat.heyting_implies(x, y)
                                 for x, y in zip(a.values, b.values)))
            if len(self._memo) < _MEMO_CAP:
                self._memo[key] = hit
        return hit

    def le(self, a: LFunction, b: LFunction) -> bool:
        return a.le(b)

    # -- convolution operations ------------------------------------------------

    def conv(self, rel, args: Sequence[LFunction]) -> LFunction:
        """Join convolution of relation ``rel`` applied to ``args``."""
        i = self.structure.relation(rel)
        if self._rel[i]["spec"].mode != JOIN:
            raise WrongMode(f"relation {self._rel[i]['spec'].name!r} is meet-convolved")
        return self._apply(i, tuple(args))

    def dual_conv(self, rel, args: Sequence[LFunction]) -> LFunction:
        """Meet convolution of relation ``rel`` applied to ``args``."""
        i = self.structure.relation(rel)
        if self._rel[i]["spec"].mode != MEET:
            raise WrongMode(f"relation {self._rel[i]['spec'].name!r} is join-convolved")
        return self._apply(i, tuple(args))

    def op(self, rel, args: Sequence[LFunction]) -> LFunction:
        """Apply a relation's operation, dispatching on its declared mode."""
        return self._apply(self.structure.relation(rel), tuple(args))

    def op_resolver(self, name):
        """Pre-resolve a relation name to a one-argument applier."""
        i = self.structure.relation(name)
        return lambda args: self._apply(i, args)

    def _apply(self, i: int, args: tuple) -> LFunction:
        info = self._rel[i]
        spec = info["spec"]
        if len(args) != spec.arity:
            raise ArityMismatch(
                f"relation {spec.name!r} expects {spec.arity} arguments, got {len(args)}")
        for a in args:
            self._check_arg(a)
        key = (i, args)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out = self._eval(info, spec, args)
        if len(self._memo) < _MEMO_CAP:
            self._memo[key] = out
        return out

    def _eval(self, info, spec, args: tuple) -> LFunction:
        lat = self.lattice
        n_car = self.structure.carrier_size
        unit = lat.bottom if spec.mode == JOIN else lat.top
        if spec.arity == 0:
            mark = lat.top if spec.mode == JOIN else lat.bottom
            vals = [unit] * n_car
            for x in info["present"].tolist():
                vals[x] = mark
            return self._lf(tuple(vals))
        outs = info["outs"]
        if len(outs) == 0:
            return self._lf((unit,) * n_car)
        cols = info["cols"]
        inner = lat.meet_np if spec.mode == JOIN else lat.join_np
        vals = args[0]._np[cols[:, 0]]
        for k in range(1, spec.arity):
            vals = inner[vals, args[k]._np[cols[:, k]]]
        if lat.upmask is not None:
            if spec.mode == JOIN:
                masks = lat.upmask[vals]
                reduced = np.bitwise_and.reduceat(masks, info["seg"])
                idx = np.searchsorted(lat._up_sorted, reduced)
                elems = lat._up_perm[idx]
            else:
                masks = lat.downmask[vals]
                reduced = np.bitwise_and.reduceat(masks, info["seg"])
                idx = np.searchsorted(lat._down_sorted, reduced)
                elems = lat._down_perm[idx]
            res = np.full(n_car, unit, dtype=np.int64)
            res[info["present"]] = elems
            return self._lf(tuple(res.tolist()))
        # Fallback fold for lattices too large for 62-bit masks.
        outer = lat.join_table if spec.mode == JOIN else lat.meet_table
        res = [unit] * n_car
        for v, x in zip(vals.tolist(), outs.tolist()):
            res[x] = outer[res[x]][v]
        return self._lf(tuple(res))


class SubsetAlgebra:
    """The complex algebra: subsets of the carrier with relational images.

    Join relations act by relational image; meet relations by the dual
    image (x is in the output iff every predecessor tuple meets the
    arguments somewhere).
    """

    def __init__(self, structure: RelStructure):
        self.structure = structure
        self._full = frozenset(range(structure.carrier_size))
        self._preds = [
            {x: [t[:-1] for t in rel if t[-1] == x]
             for x in range(structure.carrier_size)}
            for rel in structure.relations
        ]

    def bot(self) -> frozenset:
        return frozenset()

    def top(self) -> frozenset:
        return self._full

    def meet(self, a: frozenset, b: frozenset) -> frozenset:
        return a & b

    def join(self, a: frozenset, b: frozenset) -> frozenset:
        return a | b

    def neg(self, a: frozenset) -> frozenset:
        return self._full - a

    def imp(self, a: frozenset, b: frozenset) -> frozenset:
        return (self._full - a) | b

    def le(self, a: frozenset, b: frozenset) -> bool:
        return a <= b

    def space_size(self) -> int:
        return 2 ** self.structure.carrier_size

    def carrier_count(self, budget: int | None = None) -> int:
        return self.space_size()

    def elements(self, budget: int | None = None):
        cap = DEFAULT_BUDGET if budget is None else budget
        if self.space_size() > cap:
            raise BudgetExceeded(self.space_size(), cap)
        n = self.structure.carrier_size
        for mask in range(1 << n):
            yield frozenset(i for i in range(n) if mask >> i & 1)

    def carrier_list(self, budget: int | None = None) -> list[frozenset]:
        return list(self.elements(budget))

    def random_element(self, rng) -> frozenset:
        mask = rng.randrange(self.space_size())
        return frozenset(i for i in range(self.structure.carrier_size)
                         if mask >> i & 1)

    def op(self, rel, args: Sequence[frozenset]) -> frozenset:
        return self._apply(self.structure.relation(rel), tuple(args))

    def op_resolver(self, name):
        """Pre-resolve a relation name to a one-argument applier."""
        i = self.structure.relation(name)
        return lambda args: self._apply(i, args)

    def _apply(self, i: int, args: tuple) -> frozenset:
        spec = self.structure.signature.rel_specs[i]
        if len(args) != spec.arity:
            raise ArityMismatch(
                f"relation {spec.name!r} expects {spec.arity} arguments, got {len(args)}")
        preds = self._preds[i]
        out = set()
        if spec.mode == JOIN:
            for x, ts in preds.items():
                if any(all(t[j] in args[j] for j in range(spec.arity)) for t in ts):
                    out.add(x)
        else:
            for x, ts in preds.items():
                if all(any(t[j] in args[j] for j in range(spec.arity)) for t in ts):
                    out.add(x)
        return frozenset(out)


# -- canonical isomorphisms ---------------------------------------------------


def _require_two_element(lat: FiniteLattice):
    if lat.size != 2:
        raise NotTwoElement(f"lattice has {lat.size} elements, need exactly 2")


def iso_phi(alpha: LFunction) -> frozenset:
    """Send a 2-valued function to the set of points where it is top."""
    _require_two_element(alpha.lattice)
    top = alpha.lattice.top
    return frozenset(x for x, v in enumerate(alpha.values) if v == top)


def iso_phi_inv(subset: frozenset, lattice: FiniteLattice, carrier_size: int) -> LFunction:
    _require_two_element(lattice)
    return LFunction(
        [lattice.top if x in subset else lattice.bottom for x in range(carrier_size)],
        lattice)


def is_lattice_morphism(phi: Sequence[int], dom: FiniteLattice, cod: FiniteLattice):
    """Check bounds, binary meets and joins; returns (ok, witness)."""
    phi = [int(v) for v in phi]
    if len(phi) != dom.size or any(not 0 <= v < cod.size for v in phi):
        return False, {"kind": "not a total map"}
    if phi[dom.bottom] != cod.bottom:
        return False, {"kind": "bottom"}
    if phi[dom.top] != cod.top:
        return False, {"kind": "top"}
    for a in range(dom.size):
        for b in range(dom.size):
            if phi[dom.meet_table[a][b]] != cod.meet_table[phi[a]][phi[b]]:
                return False, {"kind": "meet", "pair": (dom.labels[a], dom.labels[b])}
            if phi[dom.join_table[a][b]] != cod.join_table[phi[a]][phi[b]]:
                return False, {"kind": "join", "pair": (dom.labels[a], dom.labels[b])}
    return True, None


def lift_lattice_morphism(phi: Sequence[int], cod: FiniteLattice,
                          alpha: LFunction, validate: bool = True) -> LFunction:
    """Post-compose a function with a lattice morphism, pointwise.

    On finite lattices preserving binary joins and bottom already gives
    preservation of arbitrary joins, so validation checks bounds and the
    binary tables only.
    """
    if validate:
        ok, witness = is_lattice_morphism(phi, alpha.lattice, cod)
        if not ok:
            raise NotAMorphism(f"map fails to be a lattice morphism: {witness}")
    return LFunction([phi[v] for v in alpha.values], cod)


def pullback_pmorphism(p: Sequence[int], dom: RelStructure, cod: RelStructure,
                       beta: LFunction, validate: bool = True) -> LFunction:
    """Pre-compose a function on the codomain with a p-morphism."""
    if validate:
        ok, witness = is_p_morphism(p, dom, cod)
        if not ok:
            raise NotAPMorphism(f"map fails the p-morphism condition: {witness}")
    return LFunction([beta.values[p[x]] for x in range(dom.carrier_size)],
                     beta.lattice)


def product_iso(alpha: LFunction) -> tuple[LFunction, LFunction]:
    """Split a function into a product lattice into its component functions."""
    lat = alpha.lattice
    if lat.factors is None:
        raise NotAProductLattice("function's lattice was not built as a product")
    first, second = lat.factors
    pairs = [lat.unpair_index(v) for v in alpha.values]
    return (LFunction([i for i, _ in pairs], first),
            LFunction([j for _, j in pairs], second))


def product_iso_inv(beta: LFunction, gamma: LFunction,
                    prod: FiniteLattice) -> LFunction:
    """Merge component functions back into the product lattice."""
    if prod.factors is None:
        raise NotAProductLattice("target lattice was not built as a product")
    if beta.lattice != prod.factors[0] or gamma.lattice != prod.factors[1]:
        raise NotAProductLattice("component lattices do not match the product factors")
    if len(beta.values) != len(gamma.values):
        raise ArityMismatch("component functions have different carriers")
    return LFunction([prod.pair_index(i, j)
                      for i, j in zip(beta.values, gamma.values)], prod)


def enumerate_functions(algebra: ConvAlgebra, budget: int | None = None):
    """Deterministic enumeration of the algebra's carrier (budget-guarded)."""
    return algebra.elements(budget)


def delta_decompose(alpha: LFunction) -> list[LFunction]:
    """One-point functions below alpha whose join recovers alpha."""
    lat = alpha.lattice
    out = []
    for x, v in enumerate(alpha.values):
        if v != lat.bottom:
            vals = [lat.bottom] * len(alpha.values)
            vals[x] = v
            out.append(LFunction(vals, lat))
    return out
