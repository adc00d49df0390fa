"""Seeded random and exhaustive instance generators for the test suites."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .model import Model, PointedModel
from .oracles import EXISTS, FORALL, QbfInstance
from .syntax import (
    ANGEL,
    BOTTOM,
    DEMON,
    TOP,
    And,
    Atom,
    Flavor,
    Iff,
    Implies,
    Next,
    Not,
    Or,
    Quantified,
    Release,
    StratA,
    StratD,
    StratU,
    Until,
    atoms_of,
)

__all__ = [
    "DEFAULT_SEED",
    "STATE_NAMES",
    "random_model",
    "random_pointed",
    "random_formula",
    "random_ctl",
    "random_qbf",
    "all_models",
]

DEFAULT_SEED = 20240917
STATE_NAMES = ("s0", "s1", "s2", "s3", "s4", "s5")
_COALITIONS = (
    frozenset({ANGEL, DEMON}),
    frozenset({ANGEL}),
    frozenset({DEMON}),
    frozenset(),
)


def random_model(
    rng: random.Random,
    max_states: int = 3,
    atoms: tuple[str, ...] = ("p", "q", "r"),
    max_cost: int = 3,
    min_states: int = 1,
) -> Model:
    """A serial model with random edges, valuation and explicit costs."""
    k = rng.randint(min_states, max_states)
    states = STATE_NAMES[:k]
    edges = set()
    for s in states:
        succ = [t for t in states if rng.random() < 0.5]
        if not succ:
            succ = [rng.choice(states)]
        edges |= {(s, t) for t in succ}
    valuation = {a: frozenset(s for s in states if rng.random() < 0.5) for a in atoms}
    costs = {(s, t): rng.randint(1, max_cost) for s in states for t in states}
    return Model(states, frozenset(edges), valuation, costs, 1)


def random_pointed(rng: random.Random, **kwargs) -> PointedModel:
    m = random_model(rng, **kwargs)
    return PointedModel(m, rng.choice(m.states))


def _strat(rng: random.Random, flavor: Flavor, path, max_budget: int):
    dual = rng.random() < 0.5
    if flavor is Flavor.SDL:
        return StratD(rng.randint(0, max_budget), path, dual)
    if flavor is Flavor.SCL:
        return StratA(rng.randint(0, max_budget), path, dual)
    return StratU(rng.choice(_COALITIONS), rng.randint(0, max_budget), rng.randint(0, max_budget), path, dual)


def random_formula(
    rng: random.Random,
    flavor: Flavor | str,
    depth: int = 3,
    atoms: tuple[str, ...] = ("p", "q", "r"),
    max_budget: int = 2,
    next_only: bool = False,
    connectives: tuple[str, ...] = ("not", "and", "or", "implies", "iff"),
    path_negation: bool = True,
) -> object:
    """A random state formula of at most ``depth`` nested operators."""
    flavor = Flavor.parse(flavor)

    def state(d: int):
        if d <= 0 or rng.random() < 0.2:
            r = rng.random()
            if r < 0.08:
                return TOP
            if r < 0.16:
                return BOTTOM
            return Atom(rng.choice(atoms))
        kind = rng.choice(list(connectives) + ["strat", "strat"])
        if kind == "not":
            return Not(state(d - 1))
        if kind == "strat":
            return _strat(rng, flavor, path(d - 1), max_budget)
        cls = {"and": And, "or": Or, "implies": Implies, "iff": Iff}[kind]
        return cls(state(d - 1), state(d - 1))

    def path(d: int):
        if next_only:
            kind = "X"
        else:
            kind = rng.choice(["X", "U", "R"])
        if kind == "X":
            p = Next(state(d))
        elif kind == "U":
            p = Until(state(d), state(d))
        else:
            p = Release(state(d), state(d))
        if path_negation and rng.random() < 0.15:
            p = Not(p)
        return p

    return state(depth)


def random_ctl(rng: random.Random, depth: int = 3, atoms: tuple[str, ...] = ("p", "q", "r")) -> object:
    """A random CTL formula of at most ``depth`` nested operators."""

    def go(d: int):
        if d <= 0 or rng.random() < 0.2:
            r = rng.random()
            if r < 0.08:
                return TOP
            if r < 0.16:
                return BOTTOM
            return Atom(rng.choice(atoms))
        kind = rng.choice(["not", "and", "or", "implies", "temporal", "temporal", "temporal"])
        if kind == "not":
            return Not(go(d - 1))
        if kind in ("and", "or", "implies"):
            cls = {"and": And, "or": Or, "implies": Implies}[kind]
            return cls(go(d - 1), go(d - 1))
        quant = rng.choice("AE")
        op = rng.choice("XFGUR")
        if op in "UR":
            return Quantified(quant, op, go(d - 1), go(d - 1))
        return Quantified(quant, op, go(d - 1))

    return go(depth)


def random_qbf(rng: random.Random, max_vars: int = 2, max_connectives: int = 6) -> QbfInstance:
    """A closed QBF with 1..``max_vars`` variables and a small matrix."""
    n = rng.randint(1, max_vars)
    names = [f"p{i}" for i in range(1, n + 1)]
    budget = [rng.randint(1, max_connectives)]

    def go():
        if budget[0] <= 0 or rng.random() < 0.25:
            return Atom(rng.choice(names))
        budget[0] -= 1
        kind = rng.choice(["not", "and", "or", "implies", "iff"])
        if kind == "not":
            return Not(go())
        cls = {"and": And, "or": Or, "implies": Implies, "iff": Iff}[kind]
        return cls(go(), go())

    matrix = go()
    # every variable must occur so the instance really has n quantifiers in play
    for v in names:
        if v not in atoms_of(matrix):
            matrix = And(matrix, Or(Atom(v), Not(Atom(v))))
    prefix = tuple((rng.choice((FORALL, EXISTS)), v) for v in names)
    return QbfInstance(prefix, matrix)


def all_models(max_states: int = 3, atom: str = "p") -> Iterator[Model]:
    """Every serial model on 1..``max_states`` states over a fixed template.

    The template puts ``atom`` on the first state and gives the pair
    ``(s_i, s_j)`` the cost ``1 + (i + 2j) mod 3``.
    """
    for k in range(1, max_states + 1):
        states = STATE_NAMES[:k]
        costs = {(states[i], states[j]): 1 + (i + 2 * j) % 3 for i in range(k) for j in range(k)}
        rows = []
        for s in states:
            options = [frozenset((s, t) for t in succ) for r in range(1, k + 1) for succ in itertools.combinations(states, r)]
            rows.append(options)
        for choice in itertools.product(*rows):
            edges = frozenset().union(*choice)
            yield Model(states, edges, {atom: frozenset({states[0]})}, costs, 1)
