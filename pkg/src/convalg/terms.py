"""Negation-free term language with optional Heyting extension.

Grammar (s-expressions): atoms are variable names, keywords ``bot`` and
``top``, forms ``(meet t t)``, ``(join t t)``, ``(op NAME t ...)``,
``(neg t)``, ``(imp t t)``.  ``(var x)`` is accepted as an alternate
spelling of a bare variable; the printer always emits the bare form.

Terms evaluate over a convolution algebra, a subset algebra, or a bare
lattice.  Equations are decided by exhaustive enumeration of assignments
in a documented order, or by seeded sampling; the least counterexample in
enumeration order is reported, so failures are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Union

from .convolution import DEFAULT_BUDGET, ConvAlgebra, SubsetAlgebra
from .errors import (ArityMismatch, BudgetExceeded, NotHeyting,
                     TermSyntaxError, UnboundVariable, UnknownOperation)
from .lattice import FiniteLattice
from .structures import Signature


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Meet:
    lhs: "Term"
    rhs: "Term"


@dataclass(frozen=True)
class Join:
    lhs: "Term"
    rhs: "Term"


@dataclass(frozen=True)
class RelOp:
    name: str
    args: tuple["Term", ...]


@dataclass(frozen=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True)
class Imp:
    lhs: "Term"
    rhs: "Term"


Term = Union[Var, Bot, Top, Meet, Join, RelOp, Neg, Imp]

_KEYWORDS = {"bot", "top", "meet", "join", "op", "neg", "imp", "var"}


def term_variables(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, (Bot, Top)):
        return set()
    if isinstance(t, (Meet, Join, Imp)):
        return term_variables(t.lhs) | term_variables(t.rhs)
    if isinstance(t, Neg):
        return term_variables(t.arg)
    out = set()
    for a in t.args:
        out |= term_variables(a)
    return out


def uses_heyting(t: Term) -> bool:
    """True when the term leaves the negation-free fragment."""
    if isinstance(t, (Neg,)):
        return True
    if isinstance(t, Imp):
        return True
    if isinstance(t, (Meet, Join)):
        return uses_heyting(t.lhs) or uses_heyting(t.rhs)
    if isinstance(t, RelOp):
        return any(uses_heyting(a) for a in t.args)
    return False


def to_sexpr(t: Term) -> str:
    """Canonical printer; parse(to_sexpr(t)) round-trips."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Bot):
        return "bot"
    if isinstance(t, Top):
        return "top"
    if isinstance(t, Meet):
        return f"(meet {to_sexpr(t.lhs)} {to_sexpr(t.rhs)})"
    if isinstance(t, Join):
        return f"(join {to_sexpr(t.lhs)} {to_sexpr(t.rhs)})"
    if isinstance(t, Neg):
        return f"(neg {to_sexpr(t.arg)})"
    if isinstance(t, Imp):
        return f"(imp {to_sexpr(t.lhs)} {to_sexpr(t.rhs)})"
    parts = " ".join(to_sexpr(a) for a in t.args)
    return f"(op {t.name} {parts})" if parts else f"(op {t.name})"


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _read(tokens: list[str], pos: int):
    if pos >= len(tokens):
        raise TermSyntaxError("unexpected end of input")
    tok = tokens[pos]
    if tok == ")":
        raise TermSyntaxError("unexpected ')'")
    if tok != "(":
        return tok, pos + 1
    items = []
    pos += 1
    while pos < len(tokens) and tokens[pos] != ")":
        item, pos = _read(tokens, pos)
        items.append(item)
    if pos >= len(tokens):
        raise TermSyntaxError("missing ')'")
    return items, pos + 1


def _build(node, sig: Signature | None) -> Term:
    if isinstance(node, str):
        if node == "bot":
            return Bot()
        if node == "top":
            return Top()
        if node in _KEYWORDS:
            raise TermSyntaxError(f"keyword {node!r} used as a variable")
        return Var(node)
    if not node:
        raise TermSyntaxError("empty form '()'")
    head = node[0]
    if not isinstance(head, str):
        raise TermSyntaxError("form head must be a symbol")
    rest = node[1:]
    if head == "var":
        if len(rest) != 1 or not isinstance(rest[0], str):
            raise TermSyntaxError("(var NAME) takes one symbol")
        return _build(rest[0], sig)
    if head in ("meet", "join", "imp"):
        if len(rest) != 2:
            raise TermSyntaxError(f"({head} t t) takes two subterms")
        cls = {"meet": Meet, "join": Join, "imp": Imp}[head]
        return cls(_build(rest[0], sig), _build(rest[1], sig))
    if head == "neg":
        if len(rest) != 1:
            raise TermSyntaxError("(neg t) takes one subterm")
        return Neg(_build(rest[0], sig))
    if head == "op":
        if not rest or not isinstance(rest[0], str):
            raise TermSyntaxError("(op NAME t ...) needs an operation name")
        name = rest[0]
        args = tuple(_build(a, sig) for a in rest[1:])
        if sig is not None:
            spec = next((s for s in sig.rel_specs if s.name == name), None)
            if spec is None:
                raise UnknownOperation(f"signature has no operation {name!r}")
            if spec.arity != len(args):
                raise ArityMismatch(
                    f"operation {name!r} takes {spec.arity} arguments, got {len(args)}")
        return RelOp(name, args)
    raise TermSyntaxError(f"unknown form head {head!r}")


def parse_term(text: str, sig: Signature | None = None) -> Term:
    tokens = _tokenize(text)
    if not tokens:
        raise TermSyntaxError("empty input")
    node, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise TermSyntaxError(f"trailing input after term: {tokens[pos:]}")
    return _build(node, sig)


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def variables(self) -> list[str]:
        return sorted(term_variables(self.lhs) | term_variables(self.rhs))

    def uses_heyting(self) -> bool:
        return uses_heyting(self.lhs) or uses_heyting(self.rhs)

    def __str__(self):
        return f"{to_sexpr(self.lhs)} = {to_sexpr(self.rhs)}"


def parse_equation(doc, sig: Signature | None = None) -> Equation:
    """Load {"lhs": "<s-expr>", "rhs": "<s-expr>"}."""
    return Equation(parse_term(doc["lhs"], sig), parse_term(doc["rhs"], sig))


# -- evaluation ---------------------------------------------------------------


class _LatticeView:
    """Adapter letting a bare lattice act as an algebra without operations."""

    def __init__(self, lat: FiniteLattice):
        self.lattice = lat

    def bot(self):
        return self.lattice.bottom

    def top(self):
        return self.lattice.top

    def meet(self, a, b):
        return self.lattice.meet_table[a][b]

    def join(self, a, b):
        return self.lattice.join_table[a][b]

    def neg(self, a):
        return self.lattice.pseudocomplement(a)

    def imp(self, a, b):
        return self.lattice.heyting_implies(a, b)

    def le(self, a, b):
        return bool(self.lattice.leq[a, b])

    def op(self, name, args):
        raise UnknownOperation(f"a bare lattice has no operation {name!r}")

    def op_resolver(self, name):
        raise UnknownOperation(f"a bare lattice has no operation {name!r}")

    def elements(self, budget=None):
        return iter(range(self.lattice.size))

    def carrier_list(self, budget=None):
        return list(range(self.lattice.size))

    def carrier_count(self, budget=None):
        return self.lattice.size

    def random_element(self, rng):
        return rng.randrange(self.lattice.size)


Algebra = Union[ConvAlgebra, SubsetAlgebra, FiniteLattice]


def _view(algebra):
    return _LatticeView(algebra) if isinstance(algebra, FiniteLattice) else algebra


def _check_heyting(algebra):
    if isinstance(algebra, ConvAlgebra) and not algebra.lattice.is_distributive:
        raise NotHeyting("neg/imp need a distributive lattice")
    if isinstance(algebra, _LatticeView) and not algebra.lattice.is_distributive:
        raise NotHeyting("neg/imp need a distributive lattice")


def eval_term(t: Term, algebra: Algebra, assignment: dict):
    """Compositional evaluation; relation symbols dispatch by their mode."""
    a = _view(algebra)
    return _eval(t, a, assignment)


def _eval(t: Term, a, env: dict):
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise UnboundVariable(f"variable {t.name!r} is not assigned") from None
    if isinstance(t, Bot):
        return a.bot()
    if isinstance(t, Top):
        return a.top()
    if isinstance(t, Meet):
        return a.meet(_eval(t.lhs, a, env), _eval(t.rhs, a, env))
    if isinstance(t, Join):
        return a.join(_eval(t.lhs, a, env), _eval(t.rhs, a, env))
    if isinstance(t, Neg):
        _check_heyting(a)
        return a.neg(_eval(t.arg, a, env))
    if isinstance(t, Imp):
        _check_heyting(a)
        return a.imp(_eval(t.lhs, a, env), _eval(t.rhs, a, env))
    return a.op(t.name, tuple(_eval(x, a, env) for x in t.args))


def _compile(t: Term, a, pos: dict):
    """Compile a term to a closure over a positional assignment tuple.

    Used by the exhaustive/sampled checkers, where per-assignment dispatch
    would dominate; `eval_term` keeps the plain recursive route.
    """
    if isinstance(t, Var):
        i = pos[t.name]
        return lambda env: env[i]
    if isinstance(t, Bot):
        c = a.bot()
        return lambda env: c
    if isinstance(t, Top):
        c = a.top()
        return lambda env: c
    if isinstance(t, (Meet, Join, Imp)):
        if isinstance(t, Imp):
            _check_heyting(a)
        fn = {Meet: a.meet, Join: a.join, Imp: a.imp}[type(t)]
        left = _compile(t.lhs, a, pos)
        right = _compile(t.rhs, a, pos)
        return lambda env: fn(left(env), right(env))
    if isinstance(t, Neg):
        _check_heyting(a)
        fn = a.neg
        sub = _compile(t.arg, a, pos)
        return lambda env: fn(sub(env))
    call = a.op_resolver(t.name)
    subs = tuple(_compile(x, a, pos) for x in t.args)
    if not subs:
        c = call(())
        return lambda env: c
    if len(subs) == 1:
        s0, = subs
        return lambda env: call((s0(env),))
    if len(subs) == 2:
        s0, s1 = subs
        return lambda env: call((s0(env), s1(env)))
    return lambda env: call(tuple(s(env) for s in subs))


# -- validity checking ---------------------------------------------------------


@dataclass
class Verdict:
    """Outcome of an equation check.

    status is one of valid_exhaustive, valid_sampled, counterexample.
    The assignment of a counterexample re-evaluates to distinct sides.
    """

    status: str
    assignment: dict | None = None
    tried: int = 0
    samples: int | None = None
    seed: int | None = None
    budget: int | None = None

    @property
    def is_valid(self) -> bool:
        return self.status in ("valid_exhaustive", "valid_sampled")

    def to_json(self, describe=None) -> dict:
        out = {"status": self.status, "stats": {"assignments": self.tried}}
        if self.budget is not None:
            out["stats"]["budget"] = self.budget
        if self.status == "valid_sampled":
            out["samples"] = self.samples
            out["seed"] = self.seed
        if self.assignment is not None:
            desc = describe if describe is not None else _default_describe
            out["assignment"] = {k: desc(v) for k, v in sorted(self.assignment.items())}
        return out


def _default_describe(elem):
    if hasattr(elem, "labels") and callable(elem.labels):
        return elem.labels()
    if isinstance(elem, frozenset):
        return sorted(elem)
    return elem


def describe_element(algebra, elem):
    """JSON-friendly rendering of a carrier element."""
    if isinstance(algebra, FiniteLattice):
        return algebra.labels[elem]
    return _default_describe(elem)


def check_equation(eq: Equation, algebra: Algebra, mode: str = "auto",
                   samples: int | None = None, seed: int = 0,
                   budget: int | None = None) -> Verdict:
    """Decide an equation over the algebra's carrier.

    mode 'exhaustive' raises BudgetExceeded when the assignment space is
    larger than the budget; mode 'sample' draws ``samples`` assignments
    from a generator seeded with ``seed``; mode 'auto' picks exhaustive
    when affordable and otherwise samples.  Sampling is sound (reported
    counterexamples are real) but not complete.
    """
    cap = DEFAULT_BUDGET if budget is None else budget
    a = _view(algebra)
    names = eq.variables()
    total = a.carrier_count(cap) ** len(names)
    pos = {name: k for k, name in enumerate(names)}
    lhs = _compile(eq.lhs, a, pos)
    rhs = _compile(eq.rhs, a, pos)

    if mode == "auto":
        mode = "exhaustive" if total <= cap else "sample"
    if mode == "exhaustive":
        if total > cap:
            raise BudgetExceeded(total, cap)
        carrier = a.carrier_list(cap)
        tried = 0
        for combo in product(carrier, repeat=len(names)):
            tried += 1
            if lhs(combo) != rhs(combo):
                return Verdict("counterexample", assignment=dict(zip(names, combo)),
                               tried=tried, budget=cap)
        return Verdict("valid_exhaustive", tried=tried, budget=cap)
    if mode == "sample":
        n = samples if samples is not None else min(cap, 10_000)
        rng = random.Random(seed)
        for k in range(n):
            combo = tuple(a.random_element(rng) for _ in names)
            if lhs(combo) != rhs(combo):
                return Verdict("counterexample", assignment=dict(zip(names, combo)),
                               tried=k + 1, samples=n, seed=seed, budget=cap)
        return Verdict("valid_sampled", tried=n, samples=n, seed=seed, budget=cap)
    raise ValueError(f"unknown mode {mode!r}")
