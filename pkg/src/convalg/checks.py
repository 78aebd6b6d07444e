"""Mechanical verifiers for the workbench's structural laws.

Each checker returns a Report: status "pass" or "fail" with a concrete
finite witness on failure.  Checkers only assert laws under their
hypotheses (typically a distributive lattice); outside them they run the
same computation and report status "observed" without asserting.

Budgets: a check is exhaustive when its assignment space fits the budget
(default 10^6 evaluations) and otherwise falls back to seeded sampling,
recording that downgrade in its stats.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import product

from .convolution import (DEFAULT_BUDGET, ConvAlgebra, SubsetAlgebra,
                          is_lattice_morphism, iso_phi,
                          lift_lattice_morphism, product_iso,
                          product_iso_inv, pullback_pmorphism)
from .errors import NotHeyting, SignatureMismatch, WrongMode
from .lattice import FiniteLattice, build_lattice
from .structures import (JOIN, MEET, RelStructure, build_structure,
                         disjoint_union, from_group, full_structure,
                         is_p_morphism, signature)
from .terms import (Bot, Equation, Join, Meet, Neg, RelOp, Top, Var,
                    check_equation, describe_element)


@dataclass
class Report:
    checker: str
    instance: str
    status: str  # "pass" | "fail" | "observed"
    witness: object = None
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_dict(self) -> dict:
        out = {"checker": self.checker, "instance": self.instance,
               "status": self.status, "stats": self.stats}
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _chain2() -> FiniteLattice:
    return build_lattice(["0", "1"], [("0", "1")])


def _z2_structure() -> RelStructure:
    return from_group([[0, 1], [1, 0]])


def _describe_assignment(algebra, env: dict) -> dict:
    return {k: describe_element(algebra, v) for k, v in sorted(env.items())}


def _eq_verdicts(algebra, equations, mode="auto", samples=None, seed=0,
                 budget=None):
    """Run a list of (label, Equation, expected_valid|None) over an algebra.

    Returns (failures, stats) where a failure records the label and either
    the unexpected counterexample or the unexpected validity.
    """
    failures = []
    sampled = 0
    tried = 0
    for label, eq, expect in equations:
        v = check_equation(eq, algebra, mode=mode, samples=samples, seed=seed,
                           budget=budget)
        tried += v.tried
        if v.status == "valid_sampled":
            sampled += 1
        if expect is None:
            continue
        if expect and not v.is_valid:
            failures.append({"law": label, "equation": str(eq),
                             "assignment": _describe_assignment(algebra, v.assignment)})
        if not expect and v.is_valid:
            failures.append({"law": label, "equation": str(eq),
                             "unexpected": "valid"})
    return failures, {"assignments": tried, "sampled_laws": sampled}


# -- operator laws (additivity / multiplicativity) ---------------------------


def check_operator(algebra: ConvAlgebra, rel, mode: str | None = None,
                   budget: int | None = None, seed: int = 0,
                   instance: str | None = None) -> Report:
    """Additivity (join relations) or multiplicativity (meet relations).

    For each argument position the binary law and the empty-family law are
    checked over all assignments; on a finite lattice those two together
    give complete additivity.  When the whole function space has at most
    16 elements an explicit scan over argument subsets is run as well
    (budget permitting), as a direct reading of the complete law.
    """
    cap = DEFAULT_BUDGET if budget is None else budget
    i = algebra.structure.relation(rel)
    spec = algebra.structure.signature.rel_specs[i]
    additive = spec.mode == JOIN
    if mode is not None:
        want = "additive" if additive else "multiplicative"
        if mode != want:
            raise WrongMode(f"relation {spec.name!r} supports only the {want} law")
    name = instance or f"{spec.name}:{spec.arity}{'+' if additive else '-'}"
    hypothesis = algebra.lattice.is_distributive

    comb, unit = (Join, Bot()) if additive else (Meet, Top())
    equations = []
    for k in range(spec.arity):
        others = [Var(f"z{j}") for j in range(spec.arity)]
        lhs_args = list(others)
        lhs_args[k] = comb(Var("x"), Var("y"))
        one = list(others)
        one[k] = Var("x")
        two = list(others)
        two[k] = Var("y")
        equations.append((
            f"binary@{k}",
            Equation(RelOp(spec.name, tuple(lhs_args)),
                     comb(RelOp(spec.name, tuple(one)), RelOp(spec.name, tuple(two)))),
            True))
        empty_args = list(others)
        empty_args[k] = unit
        equations.append((
            f"empty@{k}",
            Equation(RelOp(spec.name, tuple(empty_args)), unit),
            True))
    failures, stats = _eq_verdicts(algebra, equations, seed=seed, budget=cap)
    stats["positions"] = spec.arity

    # Direct scan over joins/meets of argument subsets for tiny spaces.
    if spec.arity >= 1 and algebra.space_size() <= 16:
        carrier = algebra.carrier_list(cap)
        q = len(carrier)
        est = (2 ** q) * spec.arity * (q ** (spec.arity - 1))
        fold = algebra.join if additive else algebra.meet
        start = algebra.bot() if additive else algebra.top()
        rng = random.Random(seed)
        if est <= cap:
            subset_iter = ((k, fixed, mask)
                           for k in range(spec.arity)
                           for fixed in product(carrier, repeat=spec.arity - 1)
                           for mask in range(2 ** q))
            stats["subset_scan"] = "exhaustive"
        else:
            count = min(2000, cap)
            subset_iter = ((rng.randrange(spec.arity),
                            tuple(carrier[rng.randrange(q)]
                                  for _ in range(spec.arity - 1)),
                            rng.randrange(2 ** q))
                           for _ in range(count))
            stats["subset_scan"] = "sampled"
        checked = 0
        for k, fixed, mask in subset_iter:
            subset = [carrier[j] for j in range(q) if mask >> j & 1]
            folded = start
            for s in subset:
                folded = fold(folded, s)
            args = list(fixed[:k]) + [folded] + list(fixed[k:])
            lhs = algebra.op(spec.name, args)
            rhs = start
            for s in subset:
                args_s = list(fixed[:k]) + [s] + list(fixed[k:])
                rhs = fold(rhs, algebra.op(spec.name, args_s))
            checked += 1
            if lhs != rhs:
                failures.append({
                    "law": f"subset@{k}",
                    "subset": [f.labels() for f in subset],
                    "fixed": [f.labels() for f in fixed]})
                break
        stats["subset_instances"] = checked
    elif spec.arity == 0:
        stats["note"] = "nullary operation, laws hold vacuously"

    status = "pass" if not failures else "fail"
    if not hypothesis:
        status = "observed"
        stats["laws_hold"] = not failures
    return Report("operator", name, status,
                  witness=failures[0] if failures else None, stats=stats)


# -- finite support ------------------------------------------------------------


def check_finitely_supported(algebra: ConvAlgebra, rel,
                             budget: int | None = None, seed: int = 0,
                             instance: str | None = None) -> Report:
    """Delta reconstruction of operation outputs.

    Join convolutions: the output at any argument tuple equals the join
    over all point combinations of the operation applied to one-point
    restrictions (value kept at one point, bottom elsewhere).  Meet
    convolutions obey the dual law with co-one-point restrictions (value
    kept at one point, top elsewhere) and a meet.  A seeded sample of
    tuples below (resp. above) the arguments is also checked to stay on
    the right side of the output; on a finite carrier, where every
    function has finite support, the general form reduces to that.
    """
    cap = DEFAULT_BUDGET if budget is None else budget
    i = algebra.structure.relation(rel)
    spec = algebra.structure.signature.rel_specs[i]
    name = instance or f"{spec.name}:{spec.arity}"
    lat = algebra.lattice
    n_car = algebra.structure.carrier_size
    joinish = spec.mode == JOIN
    if spec.arity == 0:
        return Report("finite-support", name, "pass",
                      stats={"note": "nullary operation, no arguments"})

    q = algebra.space_size()
    total = q ** spec.arity
    rng = random.Random(seed)
    if total <= cap:
        tuples = product(algebra.carrier_list(cap), repeat=spec.arity)
        checked_mode = "exhaustive"
    else:
        count = min(2000, cap)
        tuples = (tuple(algebra.random_element(rng) for _ in range(spec.arity))
                  for _ in range(count))
        checked_mode = "sampled"

    fill = lat.bottom if joinish else lat.top
    fold = algebra.join if joinish else algebra.meet
    witness = None
    checked = 0
    for args in tuples:
        checked += 1
        lhs = algebra.op(spec.name, args)
        rhs = algebra.bot() if joinish else algebra.top()
        for points in product(range(n_car), repeat=spec.arity):
            deltas = []
            for arg, x in zip(args, points):
                vals = [fill] * n_car
                vals[x] = arg.values[x]
                deltas.append(algebra.function(vals))
            rhs = fold(rhs, algebra.op(spec.name, deltas))
        if lhs != rhs:
            witness = {"args": [a.labels() for a in args],
                       "output": lhs.labels(), "delta_fold": rhs.labels()}
            break
        bent = []
        for arg in args:
            if joinish:
                vals = [rng.choice([c for c in range(lat.size) if lat.leq[c, v]])
                        for v in arg.values]
            else:
                vals = [rng.choice([c for c in range(lat.size) if lat.leq[v, c]])
                        for v in arg.values]
            bent.append(algebra.function(vals))
        out = algebra.op(spec.name, bent)
        sided = algebra.le(out, lhs) if joinish else algebra.le(lhs, out)
        if not sided:
            witness = {"args": [a.labels() for a in args],
                       "comparand": [b.labels() for b in bent]}
            break
    status = "pass" if witness is None else "fail"
    return Report("finite-support", name, status, witness=witness,
                  stats={"tuples": checked, "mode": checked_mode,
                         "form": "delta-join" if joinish else "delta-meet"})


# -- closure / interior correspondence ----------------------------------------


def _relation_scan(structure: RelStructure, i: int = 0):
    rel = structure.relations[i]
    n = structure.carrier_size
    reflexive = all((x, x) in rel for x in range(n))
    transitive = all((a, c) in rel
                     for (a, b) in rel for (b2, c) in rel if b == b2)
    return reflexive, transitive


def check_closure_correspondence(lat: FiniteLattice, frame: RelStructure,
                                 budget: int | None = None,
                                 instance: str | None = None) -> Report:
    """Unary convolution is a closure operator iff the relation is a preorder.

    Both sides of each biconditional are computed independently: the
    inequalities run as equation checks over L^X, reflexivity and
    transitivity by scanning the relation.  The dual statement is checked
    three ways: the meet convolution over L, the join convolution over the
    order dual of L, and the interior laws themselves.
    """
    if not lat.is_distributive:
        raise NotHeyting("closure correspondence is stated for distributive lattices")
    if len(frame.signature) != 1 or frame.signature.rel_specs[0].arity != 1:
        raise SignatureMismatch("frame must carry exactly one binary relation")
    rname = frame.signature.rel_specs[0].name
    reflexive, transitive = _relation_scan(frame)
    name = instance or f"|X|={frame.carrier_size},R({len(frame.relations[0])})"

    def f(t):
        return RelOp(rname, (t,))

    x = Var("x")
    join_frame = RelStructure(frame.carrier_size,
                              signature((rname, 1, JOIN)), [frame.relations[0]])
    meet_frame = RelStructure(frame.carrier_size,
                              signature((rname, 1, MEET)), [frame.relations[0]])
    conv = ConvAlgebra(lat, join_frame)
    dual_conv = ConvAlgebra(lat, meet_frame)
    dual_lat_conv = ConvAlgebra(lat.dual(), join_frame)

    # a <= f(a)  /  f(f(a)) <= f(a), with x <= y encoded as x v y = y.
    checks = [
        ("reflexive/closure", conv, Equation(Join(x, f(x)), f(x)), reflexive),
        ("transitive/closure", conv, Equation(Join(f(f(x)), f(x)), f(x)), transitive),
        ("operator/join", conv,
         Equation(f(Join(x, Var("y"))), Join(f(x), f(Var("y")))), True),
        ("operator/zero", conv, Equation(f(Bot()), Bot()), True),
        ("reflexive/interior", dual_conv, Equation(Meet(x, f(x)), f(x)), reflexive),
        ("transitive/interior", dual_conv,
         Equation(Meet(f(x), f(f(x))), f(x)), transitive),
        ("dual-operator/meet", dual_conv,
         Equation(f(Meet(x, Var("y"))), Meet(f(x), f(Var("y")))), True),
        ("dual-operator/one", dual_conv, Equation(f(Top()), Top()), True),
        ("reflexive/dual-lattice", dual_lat_conv,
         Equation(Join(x, f(x)), f(x)), reflexive),
        ("transitive/dual-lattice", dual_lat_conv,
         Equation(Join(f(f(x)), f(x)), f(x)), transitive),
    ]
    tried = 0
    for label, algebra, eq, expect in checks:
        v = check_equation(eq, algebra, budget=budget)
        tried += v.tried
        if v.is_valid != expect:
            witness = {"biconditional": label, "equation": str(eq),
                       "equation_valid": v.is_valid,
                       "relation_scan": {"reflexive": reflexive,
                                         "transitive": transitive}}
            if v.assignment is not None:
                witness["assignment"] = _describe_assignment(algebra, v.assignment)
            return Report("closure-correspondence", name, "fail",
                          witness=witness, stats={"assignments": tried})
    return Report("closure-correspondence", name, "pass",
                  stats={"assignments": tried, "reflexive": reflexive,
                         "transitive": transitive})


# -- monadic algebra -----------------------------------------------------------


def check_monadic_axioms(lat: FiniteLattice, n: int,
                         budget: int | None = None,
                         instance: str | None = None) -> Report:
    """Quantifier pair over the all-pairs relation: closure, interior, and
    the three interaction axioms, all exhaustive.

    Also verifies the pointwise description directly: the join convolution
    sends a function to the constant at its join, the meet convolution to
    the constant at its meet.
    """
    if not lat.is_distributive:
        raise NotHeyting("monadic axioms are stated over Heyting-capable lattices")
    structure = full_structure(n, extended=True)
    algebra = ConvAlgebra(lat, structure)
    name = instance or f"n={n}"

    for alpha in algebra.elements(budget):
        dia = algebra.op("dia", (alpha,))
        box = algebra.op("box", (alpha,))
        cj = lat.join(alpha.values)
        cm = lat.meet(alpha.values)
        if set(dia.values) != {cj} or set(box.values) != {cm}:
            return Report("monadic", name, "fail",
                          witness={"alpha": alpha.labels(),
                                   "dia": dia.labels(), "box": box.labels()},
                          stats={})

    def dia(t):
        return RelOp("dia", (t,))

    def box(t):
        return RelOp("box", (t,))

    x, y = Var("x"), Var("y")
    equations = [
        ("closure/increasing", Equation(Join(x, dia(x)), dia(x)), True),
        ("closure/idempotent", Equation(dia(dia(x)), dia(x)), True),
        ("closure/zero", Equation(dia(Bot()), Bot()), True),
        ("closure/additive", Equation(dia(Join(x, y)), Join(dia(x), dia(y))), True),
        ("interior/decreasing", Equation(Meet(x, box(x)), box(x)), True),
        ("interior/idempotent", Equation(box(box(x)), box(x)), True),
        ("interior/one", Equation(box(Top()), Top()), True),
        ("interior/multiplicative", Equation(box(Meet(x, y)), Meet(box(x), box(y))), True),
        ("axiom1", Equation(box(dia(x)), dia(x)), True),
        ("axiom2", Equation(dia(box(x)), box(x)), True),
        ("axiom3", Equation(dia(Meet(dia(x), y)), Meet(dia(x), dia(y))), True),
    ]
    failures, stats = _eq_verdicts(algebra, equations, mode="exhaustive",
                                   budget=budget)
    status = "pass" if not failures else "fail"
    return Report("monadic", name, status,
                  witness=failures[0] if failures else None, stats=stats)


# -- the all-pairs frame equation ----------------------------------------------


def check_nabla_equation(lat: FiniteLattice, n: int,
                         budget: int | None = None,
                         instance: str | None = None) -> Report:
    """f(a) /\\ f(b) = f(f(a) /\\ b) over the all-pairs frame.

    Asserted valid for distributive lattices (finiteness supplies the
    frame law); for non-distributive lattices the outcome is reported
    without assertion, since the stated equivalence concerns distributive
    lattices only.
    """
    structure = full_structure(n)
    algebra = ConvAlgebra(lat, structure)
    name = instance or f"n={n}"

    def f(t):
        return RelOp("f", (t,))

    a, b = Var("a"), Var("b")
    eq = Equation(Meet(f(a), f(b)), f(Meet(f(a), b)))
    v = check_equation(eq, algebra, budget=budget)
    stats = {"assignments": v.tried, "verdict": v.status}
    if not lat.is_distributive:
        return Report("nabla-equation", name, "observed",
                      witness=None if v.is_valid
                      else {"assignment": _describe_assignment(algebra, v.assignment)},
                      stats=stats)
    if v.is_valid:
        return Report("nabla-equation", name, "pass", stats=stats)
    return Report("nabla-equation", name, "fail",
                  witness={"assignment": _describe_assignment(algebra, v.assignment)},
                  stats=stats)


# -- associativity over the two-element group -----------------------------------


def check_z2_associativity(lat: FiniteLattice, budget: int | None = None,
                           instance: str | None = None) -> Report:
    """Associativity of the convolved group operation iff distributivity.

    Both sides of the biconditional are decided independently: the
    associativity equation exhaustively over pairs, distributivity by a
    fresh triple scan of the tables.
    """
    algebra = ConvAlgebra(lat, _z2_structure())
    name = instance or f"|L|={lat.size}"

    def star(u, v):
        return RelOp("*", (u, v))

    x, y, z = Var("x"), Var("y"), Var("z")
    eq = Equation(star(star(x, y), z), star(x, star(y, z)))
    v = check_equation(eq, algebra, mode="exhaustive", budget=budget)
    associative = v.is_valid

    meet, join = lat.meet_table, lat.join_table
    distributive = all(
        meet[a][join[b][c]] == join[meet[a][b]][meet[a][c]]
        for a in range(lat.size) for b in range(lat.size) for c in range(lat.size))

    stats = {"assignments": v.tried, "associative": associative,
             "distributive": distributive}
    witness = None
    if not associative:
        witness = {"assignment": _describe_assignment(algebra, v.assignment)}
    if associative != distributive:
        return Report("z2-associativity", name, "fail",
                      witness={"associative": associative,
                               "distributive": distributive,
                               "counterexample": witness}, stats=stats)
    return Report("z2-associativity", name, "pass", witness=witness, stats=stats)


# -- relation-algebra axioms over group convolutions ----------------------------


def _group_terms():
    def semi(u, v):
        return RelOp("*", (u, v))

    def conv(u):
        return RelOp("conv", (u,))

    return semi, conv, RelOp("id", ())


def _expect_group_signature(structure: RelStructure):
    names = [s.name for s in structure.signature.rel_specs]
    if names != ["*", "conv", "id"]:
        raise SignatureMismatch(
            f"expected a group structure with relations ['*', 'conv', 'id'], got {names}")


def check_relation_algebra(lat: FiniteLattice, group: RelStructure,
                           budget: int | None = None,
                           samples: int | None = None, seed: int = 0,
                           instance: str | None = None) -> Report:
    """Relation-algebra style axioms for the convolved group operations.

    Axioms 1-7 and the double-negation form of De Morgan's law must hold
    over any distributive lattice; the original De Morgan form must hold
    exactly when the lattice is Boolean.  Checks are exhaustive within
    budget and seeded-sampled beyond it (or when ``samples`` is forced).
    """
    if not lat.is_distributive:
        raise NotHeyting("the axioms use the pseudocomplement")
    _expect_group_signature(group)
    algebra = ConvAlgebra(lat, group)
    name = instance or f"|L|={lat.size},|G|={group.carrier_size}"
    semi, conv, unit = _group_terms()
    a, b, c = Var("a"), Var("b"), Var("c")

    mode = "auto" if samples is None else "sample"
    equations = [
        ("1:associative", Equation(semi(a, semi(b, c)), semi(semi(a, b), c)), True),
        ("2:right-unit", Equation(semi(a, unit), a), True),
        ("2:left-unit", Equation(semi(unit, a), a), True),
        ("3:left-additive", Equation(semi(Join(a, b), c),
                                     Join(semi(a, c), semi(b, c))), True),
        ("3:right-additive", Equation(semi(a, Join(b, c)),
                                      Join(semi(a, b), semi(a, c))), True),
        ("4:involution", Equation(conv(conv(a)), a), True),
        ("5:converse-join", Equation(conv(Join(a, b)), Join(conv(a), conv(b))), True),
        ("6:converse-product", Equation(conv(semi(a, b)), semi(conv(b), conv(a))), True),
        ("7:triangle", Equation(Join(semi(conv(a), Neg(semi(a, b))), Neg(b)),
                                Neg(b)), True),
    ]
    failures, stats = _eq_verdicts(algebra, equations, mode=mode,
                                   samples=samples, seed=seed, budget=budget)

    def triple_agreement(first_uses_negneg: bool):
        """Scan the three-way equivalence of De Morgan's inequalities."""
        cap = DEFAULT_BUDGET if budget is None else budget
        if samples is None and algebra.space_size() ** 3 <= cap:
            triples = product(algebra.carrier_list(cap), repeat=3)
            how = "exhaustive"
        else:
            rng = random.Random(seed)
            count = samples if samples is not None else 10_000
            triples = ((algebra.random_element(rng), algebra.random_element(rng),
                        algebra.random_element(rng)) for _ in range(count))
            how = "sampled"
        for fa, fb, fc in triples:
            nc = algebra.neg(fc)
            bound = algebra.neg(nc) if first_uses_negneg else fc
            one = algebra.le(algebra.op("*", (fa, fb)), bound)
            two = algebra.le(algebra.op("*", (algebra.op("conv", (fa,)), nc)),
                             algebra.neg(fb))
            three = algebra.le(algebra.op("*", (nc, algebra.op("conv", (fb,)))),
                               algebra.neg(fa))
            if not one == two == three:
                return {"a": fa.labels(), "b": fb.labels(), "c": fc.labels(),
                        "bounds": [one, two, three]}, how
        return None, how

    witness8p, how8p = triple_agreement(first_uses_negneg=True)
    stats["de_morgan_scan"] = how8p
    if witness8p is not None:
        failures.append({"law": "8':modified-de-morgan", **witness8p})

    witness8, _ = triple_agreement(first_uses_negneg=False)
    original_holds = witness8 is None
    stats["original_de_morgan_holds"] = original_holds
    stats["lattice_boolean"] = lat.is_boolean
    if original_holds != lat.is_boolean:
        failures.append({"law": "8:original-de-morgan",
                         "holds": original_holds,
                         "boolean": lat.is_boolean, "witness": witness8})
    elif witness8 is not None:
        stats["de_morgan_witness"] = witness8

    status = "pass" if not failures else "fail"
    return Report("relation-algebra", name, status,
                  witness=failures[0] if failures else None, stats=stats)


# -- residuation over group convolutions ----------------------------------------


def check_residuation(lat: FiniteLattice, group: RelStructure,
                      budget: int | None = None,
                      instance: str | None = None) -> Report:
    """Brute-force residuals of the convolved product and their laws.

    a\\b is the join of {c : a;c <= b} and b/a the join of {c : c;a <= b};
    the checker verifies the residuation law, the description of the
    residuals at the complement of the unit, the double-negation identity,
    and that collapsing to the identity happens exactly for Boolean lattices.
    """
    if not lat.is_distributive:
        raise NotHeyting("residuation checks use the pseudocomplement")
    _expect_group_signature(group)
    algebra = ConvAlgebra(lat, group)
    name = instance or f"|L|={lat.size},|G|={group.carrier_size}"
    carrier = algebra.carrier_list(budget)
    unit = algebra.op("id", ())
    zero_prime = algebra.neg(unit)

    def rdiv(x, y):  # x \ y
        out = algebra.bot()
        for cand in carrier:
            if algebra.le(algebra.op("*", (x, cand)), y):
                out = algebra.join(out, cand)
        return out

    def ldiv(y, x):  # y / x
        out = algebra.bot()
        for cand in carrier:
            if algebra.le(algebra.op("*", (cand, x)), y):
                out = algebra.join(out, cand)
        return out

    checked = 0
    for fa in carrier:
        over = rdiv(fa, zero_prime)
        under = ldiv(zero_prime, fa)
        neg_conv = algebra.neg(algebra.op("conv", (fa,)))
        if not (over == neg_conv == under):
            return Report("residuation", name, "fail",
                          witness={"law": "residual-at-unit-complement",
                                   "a": fa.labels(),
                                   "a\\0'": over.labels(), "0'/a": under.labels(),
                                   "neg(conv(a))": neg_conv.labels()},
                          stats={"checked": checked})
        nn = algebra.neg(algebra.neg(fa))
        left = rdiv(ldiv(zero_prime, fa), zero_prime)
        right = ldiv(zero_prime, rdiv(fa, zero_prime))
        if not (left == nn == right):
            return Report("residuation", name, "fail",
                          witness={"law": "double-negation",
                                   "a": fa.labels(), "(0'/a)\\0'": left.labels(),
                                   "negneg": nn.labels()},
                          stats={"checked": checked})
        if rdiv(unit, fa) != fa:  # unit law: 1' \ a = a
            return Report("residuation", name, "fail",
                          witness={"law": "unit", "a": fa.labels()},
                          stats={"checked": checked})
        checked += 1

    collapse_witness = next(
        (fa for fa in carrier
         if rdiv(ldiv(zero_prime, fa), zero_prime) != fa), None)
    collapses = collapse_witness is None
    if collapses != lat.is_boolean:
        return Report("residuation", name, "fail",
                      witness={"law": "gbi-collapse", "collapses": collapses,
                               "boolean": lat.is_boolean},
                      stats={"checked": checked})

    for fa in carrier:
        for fb in carrier:
            target = rdiv(fa, fb)
            for fc in carrier:
                if algebra.le(algebra.op("*", (fa, fc)), fb) != algebra.le(fc, target):
                    return Report("residuation", name, "fail",
                                  witness={"law": "residuation",
                                           "a": fa.labels(), "b": fb.labels(),
                                           "c": fc.labels()},
                                  stats={"checked": checked})
    stats = {"elements": len(carrier), "collapses_to_identity": collapses,
             "boolean": lat.is_boolean}
    if collapse_witness is not None:
        stats["collapse_witness"] = collapse_witness.labels()
    return Report("residuation", name, "pass", stats=stats)


# -- equation transfer -----------------------------------------------------------


def check_equation_transfer(lattices, structure: RelStructure, pool,
                            budget: int | None = None, seed: int = 0,
                            instance: str | None = None) -> Report:
    """Verdicts over L^X against the two-element base and the subset algebra.

    pool is a list of (label, Equation) in the negation-free fragment.
    Distributive lattices must agree with the base exactly; other lattices
    are only required to transfer validity downward (valid in L^X implies
    valid over subsets).
    """
    name = instance or f"|X|={structure.carrier_size},pool={len(pool)}"
    base = ConvAlgebra(_chain2(), structure)
    subsets = SubsetAlgebra(structure)
    failures = []
    tried = 0
    base_verdicts = {}
    for label, eq in pool:
        if eq.uses_heyting():
            raise NotHeyting(f"equation {label!r} leaves the negation-free fragment")
        vb = check_equation(eq, base, budget=budget, seed=seed)
        vs = check_equation(eq, subsets, budget=budget, seed=seed)
        tried += vb.tried + vs.tried
        base_verdicts[label] = vb
        if vb.is_valid != vs.is_valid:
            failures.append({"equation": label, "lattice": "2",
                             "base": vb.status, "subsets": vs.status})
    for lat in lattices:
        algebra = ConvAlgebra(lat, structure)
        for label, eq in pool:
            v = check_equation(eq, algebra, budget=budget, seed=seed)
            tried += v.tried
            vb = base_verdicts[label]
            if lat.is_distributive:
                agree = v.is_valid == vb.is_valid
            else:
                agree = vb.is_valid or not v.is_valid
            if not agree:
                item = {"equation": label, "text": str(eq),
                        "lattice_size": lat.size,
                        "over_L": v.status, "over_2": vb.status}
                if v.assignment is not None:
                    item["assignment"] = _describe_assignment(algebra, v.assignment)
                failures.append(item)
    status = "pass" if not failures else "fail"
    return Report("equation-transfer", name, status,
                  witness=failures[0] if failures else None,
                  stats={"assignments": tried, "lattices": len(list(lattices)),
                         "equations": len(pool)})


# -- the subset-algebra isomorphism ---------------------------------------------


def check_subset_isomorphism(structure: RelStructure,
                             instance: str | None = None) -> Report:
    """The top-set map is a bijective homomorphism from the two-element
    convolution algebra onto the subset algebra, for every relation mode."""
    name = instance or repr(structure)
    two = _chain2()
    algebra = ConvAlgebra(two, structure)
    subsets = SubsetAlgebra(structure)
    funcs = algebra.carrier_list()
    images = [iso_phi(f) for f in funcs]
    if len(set(images)) != len(funcs) or set(images) != set(subsets.elements()):
        return Report("subset-iso", name, "fail",
                      witness={"kind": "not a bijection"}, stats={})
    checked = 0
    if iso_phi(algebra.bot()) != subsets.bot() or iso_phi(algebra.top()) != subsets.top():
        return Report("subset-iso", name, "fail",
                      witness={"kind": "bounds"}, stats={})
    for f in funcs:
        for g in funcs:
            checked += 1
            if iso_phi(algebra.meet(f, g)) != subsets.meet(iso_phi(f), iso_phi(g)):
                return Report("subset-iso", name, "fail",
                              witness={"kind": "meet", "f": f.labels(),
                                       "g": g.labels()}, stats={})
            if iso_phi(algebra.join(f, g)) != subsets.join(iso_phi(f), iso_phi(g)):
                return Report("subset-iso", name, "fail",
                              witness={"kind": "join", "f": f.labels(),
                                       "g": g.labels()}, stats={})
    for spec in structure.signature.rel_specs:
        for args in product(funcs, repeat=spec.arity):
            checked += 1
            lhs = iso_phi(algebra.op(spec.name, args))
            rhs = subsets.op(spec.name, [iso_phi(a) for a in args])
            if lhs != rhs:
                return Report("subset-iso", name, "fail",
                              witness={"kind": "operation", "relation": spec.name,
                                       "args": [a.labels() for a in args],
                                       "function_side": sorted(lhs),
                                       "subset_side": sorted(rhs)},
                              stats={"checked": checked})
    return Report("subset-iso", name, "pass", stats={"checked": checked})


# -- functorial behaviour ----------------------------------------------------------


def _reduct(structure: RelStructure, keep: list[str]) -> RelStructure:
    idx = [structure.signature.index(n) for n in keep]
    sig = signature(*((structure.signature.rel_specs[i].name,
                       structure.signature.rel_specs[i].arity,
                       structure.signature.rel_specs[i].mode) for i in idx))
    return RelStructure(structure.carrier_size, sig,
                        [structure.relations[i] for i in idx], structure.order)


def _commutes_with_ops(push, dom: ConvAlgebra, cod: ConvAlgebra):
    """push: element of dom -> element of cod; verify it is a homomorphism."""
    funcs = dom.carrier_list()
    if push(dom.bot()) != cod.bot() or push(dom.top()) != cod.top():
        return {"kind": "bounds"}
    for f in funcs:
        for g in funcs:
            if push(dom.meet(f, g)) != cod.meet(push(f), push(g)):
                return {"kind": "meet", "f": f.labels(), "g": g.labels()}
            if push(dom.join(f, g)) != cod.join(push(f), push(g)):
                return {"kind": "join", "f": f.labels(), "g": g.labels()}
    for spec in dom.structure.signature.rel_specs:
        for args in product(funcs, repeat=spec.arity):
            if push(dom.op(spec.name, args)) != cod.op(spec.name,
                                                       [push(a) for a in args]):
                return {"kind": "operation", "relation": spec.name,
                        "args": [a.labels() for a in args]}
    return None


def check_structural_isos(lattice: FiniteLattice | None = None,
                          instance: str | None = None) -> Report:
    """Functorial behaviour on fixed small instances.

    Covers: the product-lattice split being a bijective homomorphism; the
    algebra over a disjoint union decomposing blockwise as a product; a
    validated lattice morphism lifting to a homomorphism that preserves
    and reflects one-one/onto; a p-morphism pulling back to a homomorphism
    preserving pointwise meets and joins; and order-preserving carriers
    being closed under every operation.
    """
    lat = lattice if lattice is not None else build_lattice(
        ["0", "m", "1"], [("0", "m"), ("m", "1")])
    name = instance or f"|L|={lat.size}"
    two = _chain2()
    z2 = _z2_structure()
    subchecks = []

    # Product lattice split (componentwise in the lattice coordinate).
    prod = two.product(two)
    ap = ConvAlgebra(prod, z2)
    a1 = ConvAlgebra(two, z2)
    a2 = ConvAlgebra(two, z2)
    witness = None
    for alpha in ap.carrier_list():
        b, c = product_iso(alpha)
        if product_iso_inv(b, c, prod) != alpha:
            witness = {"kind": "split-merge", "alpha": alpha.labels()}
            break
    if witness is None:
        first = lambda e: a1.function(product_iso(e)[0].values)
        second = lambda e: a2.function(product_iso(e)[1].values)
        witness = _commutes_with_ops(first, ap, a1) or _commutes_with_ops(second, ap, a2)
    subchecks.append(("product-split", witness))

    # Disjoint union decomposes as a product of algebras.
    frame_sig = signature(("f", 1, JOIN))
    fx = RelStructure(1, frame_sig, [{(0, 0)}])
    fy = RelStructure(2, frame_sig, [{(0, 1), (1, 1)}])
    union = disjoint_union(fx, fy)
    au = ConvAlgebra(lat, union)
    ax = ConvAlgebra(lat, fx)
    ay = ConvAlgebra(lat, fy)
    witness = None
    if au.space_size() != ax.space_size() * ay.space_size():
        witness = {"kind": "counting"}
    else:
        cut = fx.carrier_size
        for alpha in au.carrier_list():
            out = au.op("f", (alpha,))
            left = ax.op("f", (ax.function(alpha.values[:cut]),))
            right = ay.op("f", (ay.function(alpha.values[cut:]),))
            if out.values != left.values + right.values:
                witness = {"kind": "blockwise", "alpha": alpha.labels()}
                break
    subchecks.append(("coproduct-to-product", witness))

    # Lattice morphism lift: chain3 -> chain2 collapsing the middle up.
    chain3 = build_lattice(["0", "m", "1"], [("0", "m"), ("m", "1")])
    phi = [0, 1, 1]
    ok, w = is_lattice_morphism(phi, chain3, two)
    witness = None if ok else {"kind": "validation", "detail": w}
    if witness is None:
        dom = ConvAlgebra(chain3, z2)
        cod = ConvAlgebra(two, z2)
        push = lambda e: cod.function(lift_lattice_morphism(phi, two, e).values)
        witness = _commutes_with_ops(push, dom, cod)
    subchecks.append(("morphism-lift", witness))

    # One-one/onto preservation and reflection for lifted morphisms.
    cases = [
        ("embedding", two, chain3, [0, 2], True, False),
        ("quotient", chain3, two, [0, 0, 1], False, True),
        ("identity", chain3, chain3, [0, 1, 2], True, True),
        ("collapse", chain3, chain3, [0, 0, 2], False, False),
    ]
    witness = None
    for label, dom_lat, cod_lat, table, inj, surj in cases:
        ok, w = is_lattice_morphism(table, dom_lat, cod_lat)
        if not ok:
            witness = {"kind": "validation", "case": label, "detail": w}
            break
        if (len(set(table)) == len(table)) != inj or (set(table) == set(range(cod_lat.size))) != surj:
            witness = {"kind": "case-setup", "case": label}
            break
        dom = ConvAlgebra(dom_lat, z2)
        cod = ConvAlgebra(cod_lat, z2)
        images = [tuple(table[v] for v in f.values) for f in dom.carrier_list()]
        lifted_inj = len(set(images)) == len(images)
        lifted_surj = set(images) == {f.values for f in cod.carrier_list()}
        if lifted_inj != inj or lifted_surj != surj:
            witness = {"kind": "one-one/onto", "case": label,
                       "lifted_one_one": lifted_inj, "lifted_onto": lifted_surj}
            break
    subchecks.append(("one-one-onto", witness))

    # p-morphism pullback: the mod-2 quotient on product/converse reducts.
    z4 = _reduct(from_group([[(a + b) % 4 for b in range(4)] for a in range(4)]),
                 ["*", "conv"])
    z2r = _reduct(z2, ["*", "conv"])
    p = [0, 1, 0, 1]
    ok, w = is_p_morphism(p, z4, z2r)
    witness = None if ok else {"kind": "p-morphism validation", "detail": w}
    if witness is None:
        src = ConvAlgebra(lat, z2r)
        dst = ConvAlgebra(lat, z4)
        pull = lambda e: dst.function(pullback_pmorphism(p, z4, z2r, e,
                                                         validate=False).values)
        witness = _commutes_with_ops(pull, src, dst)
        if witness is None:
            images = [pull(f) for f in src.carrier_list()]
            if len(set(images)) != len(images):
                witness = {"kind": "onto p-morphism must pull back one-one"}
    subchecks.append(("pmorphism-pullback", witness))

    # Ordered structures: operation images are order preserving and the
    # order-preserving carrier is closed under everything.
    nabla = {(a, b) for a in range(2) for b in range(2)}
    up = {(0, 0), (0, 1), (1, 1)}
    down = {(0, 0), (1, 0), (1, 1)}
    ordered = build_structure(2, signature(("dia", 1, JOIN), ("box", 1, MEET)),
                              [up, down], order_pairs=[(0, 1)])
    plain = ConvAlgebra(lat, ordered)
    restricted = ConvAlgebra(lat, ordered, ordered=True)
    witness = None
    for alpha in plain.carrier_list():
        for rel in ("dia", "box"):
            if not plain.is_order_preserving(plain.op(rel, (alpha,))):
                witness = {"kind": "image-not-monotone", "relation": rel,
                           "alpha": alpha.labels()}
                break
        if witness:
            break
    if witness is None:
        carrier = set(restricted.carrier_list())
        for alpha in carrier:
            for beta in carrier:
                if restricted.meet(alpha, beta) not in carrier \
                        or restricted.join(alpha, beta) not in carrier:
                    witness = {"kind": "carrier-not-closed"}
                    break
            if witness:
                break
        if witness is None:
            for alpha in carrier:
                for rel in ("dia", "box"):
                    if restricted.op(rel, (alpha,)) not in carrier:
                        witness = {"kind": "carrier-not-closed", "relation": rel}
                        break
    subchecks.append(("ordered-closure", witness))

    failures = [{"subcheck": label, "witness": w}
                for label, w in subchecks if w is not None]
    status = "pass" if not failures else "fail"
    return Report("structural-isos", name, status,
                  witness=failures[0] if failures else None,
                  stats={"subchecks": [label for label, _ in subchecks]})


def default_equation_pool(sig) -> list:
    """Negation-free candidate equations (valid and invalid) for a signature."""
    x, y = Var("x"), Var("y")
    pool = [
        ("meet-commutes", Equation(Meet(x, y), Meet(y, x))),
        ("join-commutes", Equation(Join(x, y), Join(y, x))),
        ("absorb-mj", Equation(Meet(x, Join(x, y)), x)),
        ("absorb-jm", Equation(Join(x, Meet(x, y)), x)),
        ("meet-idem", Equation(Meet(x, x), x)),
        ("join-idem", Equation(Join(x, x), x)),
        ("meet-top", Equation(Meet(x, Top()), x)),
        ("join-bot", Equation(Join(x, Bot()), x)),
    ]
    for spec in sig.rel_specs:
        f = spec.name

        def op(*args, _f=f):
            return RelOp(_f, tuple(args))

        if spec.arity == 1 and spec.mode == JOIN:
            pool += [
                (f"{f}-additive", Equation(op(Join(x, y)), Join(op(x), op(y)))),
                (f"{f}-zero", Equation(op(Bot()), Bot())),
                (f"{f}-meet-hom", Equation(op(Meet(x, y)), Meet(op(x), op(y)))),
                (f"{f}-increasing", Equation(Join(x, op(x)), op(x))),
                (f"{f}-idempotent", Equation(op(op(x)), op(x))),
            ]
        elif spec.arity == 1 and spec.mode == MEET:
            pool += [
                (f"{f}-multiplicative", Equation(op(Meet(x, y)), Meet(op(x), op(y)))),
                (f"{f}-one", Equation(op(Top()), Top())),
                (f"{f}-join-hom", Equation(op(Join(x, y)), Join(op(x), op(y)))),
                (f"{f}-decreasing", Equation(Meet(x, op(x)), op(x))),
            ]
        elif spec.arity == 2 and spec.mode == JOIN:
            pool += [
                (f"{f}-left-additive",
                 Equation(op(Join(x, y), y), Join(op(x, y), op(y, y)))),
                (f"{f}-left-zero", Equation(op(Bot(), x), Bot())),
                (f"{f}-right-zero", Equation(op(x, Bot()), Bot())),
                (f"{f}-commutes", Equation(op(x, y), op(y, x))),
                (f"{f}-left-meet-hom",
                 Equation(op(Meet(x, y), y), Meet(op(x, y), op(y, y)))),
            ]
        elif spec.arity == 2 and spec.mode == MEET:
            pool += [
                (f"{f}-left-multiplicative",
                 Equation(op(Meet(x, y), y), Meet(op(x, y), op(y, y)))),
                (f"{f}-left-one", Equation(op(Top(), x), Top())),
                (f"{f}-commutes", Equation(op(x, y), op(y, x))),
            ]
        elif spec.arity == 0:
            mark = op()
            pool += [
                (f"{f}-join-idem", Equation(Join(mark, mark), mark)),
                (f"{f}-meet-top", Equation(Meet(mark, Top()), mark)),
            ]
    return pool
