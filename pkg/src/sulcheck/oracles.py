"""Slow reference implementations used to cross-check the checker.

Nothing here imports the update enumerators or the checker: every oracle
works straight from the definitions, with plain sets and ``itertools``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable

from .errors import FormulaSyntaxError, FragmentError, QbfError, SizeBoundError
from .model import Edge, Model, PointedModel
from .syntax import (
    ANGEL,
    DEMON,
    And,
    Atom,
    Bottom,
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
    Top,
    Until,
    atoms_of,
    parse_formula,
    subformulas,
    to_text,
)

__all__ = [
    "QbfInstance",
    "parse_qbf",
    "qbf_to_text",
    "qbf_eval",
    "dualize_qbf",
    "ctl_check",
    "ctl_sat_set",
    "brute_force_next",
    "brute_submodels",
    "brute_supermodels",
    "brute_updates",
]

FORALL = "forall"
EXISTS = "exists"


# -- QBF ------------------------------------------------------------------------


@dataclass(frozen=True)
class QbfInstance:
    """A closed prenex QBF: ``prefix`` pairs a quantifier with a variable."""

    prefix: tuple[tuple[str, str], ...]
    matrix: object

    def __post_init__(self) -> None:
        names = [v for _, v in self.prefix]
        for q, _ in self.prefix:
            if q not in (FORALL, EXISTS):
                raise QbfError(f"unknown quantifier {q!r}")
        if len(set(names)) != len(names):
            raise QbfError("a variable is quantified more than once")
        for g in subformulas(self.matrix):
            if not isinstance(g, (Atom, Top, Bottom, Not, And, Or, Implies, Iff)):
                raise QbfError(f"matrix must be propositional, found {type(g).__name__}")
        free = atoms_of(self.matrix) - set(names)
        if free:
            raise QbfError(f"free variables in matrix: {', '.join(sorted(free))}")

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for _, v in self.prefix)


def parse_qbf(text: str) -> QbfInstance:
    """Parse ``forall p1 exists p2 : (p1 -> p2)``.

    A quantifier may bind several variables (``forall p q : ...``); the
    matrix uses the propositional part of the formula syntax.
    """
    if ":" not in text:
        raise QbfError("expected '<prefix> : <matrix>'")
    head, body = text.split(":", 1)
    prefix = []
    quant = None
    for tok in head.split():
        if tok in (FORALL, EXISTS):
            quant = tok
            continue
        if quant is None:
            raise QbfError(f"variable {tok!r} is not preceded by a quantifier")
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            raise QbfError(f"invalid variable name {tok!r}")
        prefix.append((quant, tok))
    try:
        matrix = parse_formula(body)
    except FormulaSyntaxError as exc:
        raise QbfError(f"matrix: {exc}") from None
    return QbfInstance(tuple(prefix), matrix)


def qbf_to_text(q: QbfInstance) -> str:
    head = " ".join(f"{quant} {var}" for quant, var in q.prefix)
    return f"{head} : {to_text(q.matrix)}"


def _prop(f, env: dict[str, bool]) -> bool:
    if isinstance(f, Atom):
        return env[f.name]
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not _prop(f.arg, env)
    if isinstance(f, And):
        return _prop(f.left, env) and _prop(f.right, env)
    if isinstance(f, Or):
        return _prop(f.left, env) or _prop(f.right, env)
    if isinstance(f, Implies):
        return (not _prop(f.left, env)) or _prop(f.right, env)
    if isinstance(f, Iff):
        return _prop(f.left, env) == _prop(f.right, env)
    raise QbfError(f"not propositional: {f!r}")


def qbf_eval(q: QbfInstance) -> bool:
    """Truth of ``q`` by recursive expansion over the prefix."""

    def go(i: int, env: dict[str, bool]) -> bool:
        if i == len(q.prefix):
            return _prop(q.matrix, env)
        quant, var = q.prefix[i]
        branches = (go(i + 1, {**env, var: b}) for b in (False, True))
        return any(branches) if quant == EXISTS else all(branches)

    return go(0, {})


def dualize_qbf(q: QbfInstance) -> QbfInstance:
    """The instance equivalent to the negation of ``q``."""
    flip = {FORALL: EXISTS, EXISTS: FORALL}
    return QbfInstance(tuple((flip[a], v) for a, v in q.prefix), Not(q.matrix))


# -- CTL --------------------------------------------------------------------------


def ctl_sat_set(m: Model, f) -> frozenset[str]:
    """States of ``m`` satisfying the CTL formula ``f`` (costs are ignored)."""
    states = frozenset(m.states)
    succ = {s: frozenset(m.successors(s)) for s in m.states}

    def ex(z):
        return frozenset(s for s in states if succ[s] & z)

    def ax(z):
        return frozenset(s for s in states if succ[s] <= z)

    def lfp(step):
        z = frozenset()
        while True:
            nz = step(z)
            if nz == z:
                return z
            z = nz

    def gfp(step):
        z = states
        while True:
            nz = step(z)
            if nz == z:
                return z
            z = nz

    def sat(g) -> frozenset[str]:
        if isinstance(g, Top):
            return states
        if isinstance(g, Bottom):
            return frozenset()
        if isinstance(g, Atom):
            return m.extension(g.name) & states
        if isinstance(g, Not):
            return states - sat(g.arg)
        if isinstance(g, And):
            return sat(g.left) & sat(g.right)
        if isinstance(g, Or):
            return sat(g.left) | sat(g.right)
        if isinstance(g, Implies):
            return (states - sat(g.left)) | sat(g.right)
        if isinstance(g, Iff):
            a, b = sat(g.left), sat(g.right)
            return (a & b) | ((states - a) & (states - b))
        if isinstance(g, Quantified):
            pre = ex if g.quant == "E" else ax
            a = sat(g.left)
            if g.op == "X":
                return pre(a)
            if g.op == "F":
                return lfp(lambda z: a | pre(z))
            if g.op == "G":
                return gfp(lambda z: a & pre(z))
            b = sat(g.right)
            if g.op == "U":
                return lfp(lambda z: b | (a & pre(z)))
            if g.op == "R":
                return gfp(lambda z: b & (a | pre(z)))
        raise TypeError(f"not a CTL formula: {g!r}")

    return sat(f)


def ctl_check(m: Model, s: str, f) -> bool:
    return s in ctl_sat_set(m, f)


# -- literal memoryless semantics for the next-time fragment ---------------------


def _cost(m: Model, pairs: Iterable[Edge]) -> int:
    return sum(m.cost(a, b) for a, b in pairs)


def _powerset(items: list) -> Iterable[tuple]:
    return itertools.chain.from_iterable(itertools.combinations(items, r) for r in range(len(items) + 1))


def _is_serial(states, edges) -> bool:
    sources = {a for a, _ in edges}
    return all(s in sources for s in states)


def _demon_moves(m: Model, budget: int) -> list[frozenset[Edge]]:
    return [
        frozenset(c)
        for c in _powerset(sorted(m.edges))
        if _cost(m, c) <= budget and _is_serial(m.states, m.edges - set(c))
    ]


def _angel_moves(m: Model, budget: int) -> list[frozenset[Edge]]:
    absent = sorted(p for p in itertools.product(m.states, repeat=2) if p not in m.edges)
    return [frozenset(c) for c in _powerset(absent) if _cost(m, c) <= budget]


def _successors(edges, s: str) -> list[str]:
    return sorted(b for a, b in edges if a == s)


def brute_force_next(pm: PointedModel, f, max_states: int = 3, max_budget: int = 2) -> bool:
    """Evaluate ``f`` by enumerating memoryless strategies.

    Every strategic node must wrap ``X`` (possibly under negations).  For
    such a node the only pointed model a strategy is ever consulted on is
    the starting one, so a strategy is one budget-respecting edge set for
    that pointed model, and the quantifiers over strategies and paths are
    taken as written in the semantics.
    """
    if len(pm.model.states) > max_states:
        raise SizeBoundError(f"model has {len(pm.model.states)} states, the bound is {max_states}")
    for g in subformulas(f):
        if isinstance(g, (Until, Release)):
            raise FragmentError("brute_force_next only handles the next-time fragment")
        if isinstance(g, (StratD, StratA)) and g.budget > max_budget:
            raise SizeBoundError(f"budget {g.budget} exceeds the bound {max_budget}")
        if isinstance(g, StratU) and max(g.angel_budget, g.demon_budget) > max_budget:
            raise SizeBoundError("budget exceeds the bound")
    return _bf_state(pm.model, pm.point, f)


def _bf_state(m: Model, s: str, f) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        return m.holds(f.name, s)
    if isinstance(f, Not):
        return not _bf_state(m, s, f.arg)
    if isinstance(f, And):
        return _bf_state(m, s, f.left) and _bf_state(m, s, f.right)
    if isinstance(f, Or):
        return _bf_state(m, s, f.left) or _bf_state(m, s, f.right)
    if isinstance(f, Implies):
        return (not _bf_state(m, s, f.left)) or _bf_state(m, s, f.right)
    if isinstance(f, Iff):
        return _bf_state(m, s, f.left) == _bf_state(m, s, f.right)
    if isinstance(f, (StratD, StratA, StratU)):
        value = _bf_strat(m, s, f)
        return (not value) if f.dual else value
    raise FragmentError(f"unexpected node {type(f).__name__} in a state position")


def _bf_path(m: Model, s: str, path) -> bool:
    """Does the path starting with step ``m, s -> ...`` satisfy ``path``?

    ``m`` is the model after the update of the first round, ``s`` the
    traveller's new state; only ``X`` and negation can occur.
    """
    if isinstance(path, Not):
        return not _bf_path(m, s, path.arg)
    if isinstance(path, Next):
        return _bf_state(m, s, path.arg)
    raise FragmentError("strategic operators must wrap X")


def _bf_strat(m: Model, s: str, f) -> bool:
    # the dual operator [.]path is read as not <.> not path
    path = Not(f.path) if f.dual else f.path

    def outcomes(edges) -> list[tuple[Model, str]]:
        nm = _rebuild(m, edges)
        return [(nm, t) for t in _successors(edges, s)]

    def all_paths(edges) -> bool:
        return all(_bf_path(nm, t, path) for nm, t in outcomes(edges))

    if isinstance(f, StratD):
        return any(all_paths(m.edges - b) for b in _demon_moves(m, f.budget))
    if isinstance(f, StratA):
        return any(all_paths(m.edges | a) for a in _angel_moves(m, f.budget))
    adds = _angel_moves(m, f.angel_budget)
    rems = _demon_moves(m, f.demon_budget)
    star = lambda a, b: (m.edges - b) | a  # noqa: E731
    if f.coalition == {DEMON}:
        return any(all(all_paths(star(a, b)) for a in adds) for b in rems)
    if f.coalition == {ANGEL}:
        return any(all(all_paths(star(a, b)) for b in rems) for a in adds)
    if f.coalition == {ANGEL, DEMON}:
        return any(all_paths(star(a, b)) for a in adds for b in rems)
    return all(all_paths(star(a, b)) for a in adds for b in rems)


def _rebuild(m: Model, edges) -> Model:
    return Model(m.states, frozenset(edges), m.valuation, m.costs, m.default_cost)


# -- powerset filters for the accessibility relations ------------------------------


def _canon(pairs) -> list[Edge]:
    return sorted(pairs)


def brute_submodels(m: Model, budget: int) -> list[list[Edge]]:
    """All removable edge sets, as sorted lists, in lexicographic order."""
    out = [_canon(b) for b in _demon_moves(m, budget)]
    return sorted(out)


def brute_supermodels(m: Model, budget: int) -> list[list[Edge]]:
    out = [_canon(a) for a in _angel_moves(m, budget)]
    return sorted(out)


def brute_updates(m: Model, angel_budget: int, demon_budget: int) -> list[tuple[list[Edge], list[Edge]]]:
    """Every ``X`` subset of ``S x S`` split into additions ``X - E`` and removals ``X & E``."""
    out = []
    pairs = list(itertools.product(m.states, repeat=2))
    for x in _powerset(pairs):
        x = set(x)
        add = x - m.edges
        rem = x & m.edges
        if _cost(m, add) > angel_budget or _cost(m, rem) > demon_budget:
            continue
        if not _is_serial(m.states, m.edges - rem):
            continue
        out.append((_canon(add), _canon(rem)))
    return sorted(out)
