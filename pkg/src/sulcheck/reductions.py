"""Builders for the constructions around the logics.

* QBF to SDL/SCL reductions (the PSPACE-hardness gadgets),
* the CTL embedding,
* the two model families separated by ``<d:1> F p``,
* the worked example models, as fixtures.
"""

from __future__ import annotations

from functools import reduce

from .errors import QbfError
from .model import Model, PointedModel, add_edges, remove_edges
from .oracles import EXISTS, QbfInstance
from .syntax import (
    ANGEL,
    BOTTOM,
    DEMON,
    TOP,
    And,
    Atom,
    Bottom,
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
    Top,
    Until,
    dia,
)

__all__ = [
    "reduction_atoms",
    "build_sdl_reduction",
    "build_scl_reduction",
    "translate_ctl",
    "build_distinguishing_family",
    "build_figure_fixtures",
    "FIXTURE_POINTS",
]


def reduction_atoms(var: str) -> tuple[str, str]:
    """Names of the atoms marking the true and the false copy of ``var``."""
    return f"{var}_1", f"{var}_0"


def _conj(parts):
    return reduce(And, parts)


def _substitute(f, mapping):
    if isinstance(f, Atom):
        return mapping[f.name]
    if isinstance(f, (Top, Bottom)):
        return f
    if isinstance(f, Not):
        return Not(_substitute(f.arg, mapping))
    return type(f)(_substitute(f.left, mapping), _substitute(f.right, mapping))


def _reduction_states(n: int) -> list[str]:
    return ["s"] + [f"s{i}" for i in range(1, 2 * n + 1)]


def _gadget(q: QbfInstance, flavor: Flavor):
    n = len(q.prefix)
    if n == 0:
        raise QbfError("the reduction needs at least one quantified variable")
    names = q.variables
    valuation = {}
    for i, var in enumerate(names, start=1):
        t, f = reduction_atoms(var)
        valuation[t] = frozenset({f"s{i}"})
        valuation[f] = frozenset({f"s{n + i}"})

    def reach(atom: str):
        return dia(dia(Atom(atom), flavor), flavor)

    def chosen(k: int):
        parts = []
        for i, var in enumerate(names, start=1):
            t, f = reduction_atoms(var)
            if i <= k:
                parts.append(Iff(reach(f), Not(reach(t))))
            elif flavor is Flavor.SDL:
                parts.append(And(reach(f), reach(t)))
            else:
                parts.append(And(Not(reach(f)), Not(reach(t))))
        return _conj(parts)

    body = _substitute(q.matrix, {v: reach(reduction_atoms(v)[0]) for v in names})
    cls = StratD if flavor is Flavor.SDL else StratA
    # the first quantifier is the outermost operator
    for k in range(n, 0, -1):
        quant = q.prefix[k - 1][0]
        if quant == EXISTS:
            body = cls(1, Next(And(chosen(k), body)))
        else:
            body = cls(1, Next(Implies(chosen(k), body)), dual=True)
    return valuation, body


def build_sdl_reduction(q: QbfInstance) -> tuple[PointedModel, object]:
    """Star model with a costly self-loop at the centre and the SDL formula."""
    valuation, formula = _gadget(q, Flavor.SDL)
    n = len(q.prefix)
    states = _reduction_states(n)
    edges = {("s", "s")}
    for x in states[1:]:
        edges |= {("s", x), (x, "s")}
    model = Model(tuple(states), frozenset(edges), valuation, {("s", "s"): 2}, 1)
    return PointedModel(model, "s"), formula


def build_scl_reduction(q: QbfInstance) -> tuple[PointedModel, object]:
    """Inward star where every pair costs 1, and the SCL formula."""
    valuation, formula = _gadget(q, Flavor.SCL)
    n = len(q.prefix)
    states = _reduction_states(n)
    edges = {(x, "s") for x in states}
    model = Model(tuple(states), frozenset(edges), valuation, {}, 1)
    return PointedModel(model, "s"), formula


# -- CTL embedding ------------------------------------------------------------------


def _heart(path, flavor: Flavor):
    if flavor is Flavor.SDL:
        return StratD(0, path)
    if flavor is Flavor.SCL:
        return StratA(0, path)
    return StratU(frozenset({ANGEL, DEMON}), 0, 0, path)


def translate_ctl(f, flavor: Flavor | str):
    """Translate CTL into the budget-0 fragment of ``flavor``.

    Universal operators map directly; existential ones go through the usual
    dualities, e.g. ``E(a U b)`` becomes ``!<.>((!a) R (!b))``.
    """
    flavor = Flavor.parse(flavor)

    def t(g):
        if isinstance(g, (Top, Bottom, Atom)):
            return g
        if isinstance(g, Not):
            return Not(t(g.arg))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(t(g.left), t(g.right))
        if not isinstance(g, Quantified):
            raise TypeError(f"not a CTL formula: {g!r}")
        a = t(g.left)
        b = t(g.right) if g.right is not None else None
        h = lambda p: _heart(p, flavor)  # noqa: E731
        if g.quant == "A":
            if g.op == "X":
                return h(Next(a))
            if g.op == "U":
                return h(Until(a, b))
            if g.op == "R":
                return h(Release(a, b))
            if g.op == "F":
                return h(Until(TOP, a))
            return h(Release(BOTTOM, a))
        if g.op == "X":
            return Not(h(Next(Not(a))))
        if g.op == "U":
            return Not(h(Release(Not(a), Not(b))))
        if g.op == "R":
            return Not(h(Until(Not(a), Not(b))))
        if g.op == "F":
            return Not(h(Release(BOTTOM, Not(a))))
        return Not(h(Until(TOP, Not(a))))

    return t(f)


# -- model families -------------------------------------------------------------------


def _family_member(n: int, fan: int) -> PointedModel:
    chain = [f"s{i}" for i in range(1, n + 2)]
    targets = [f"t{j}" for j in range(1, fan + 1)]
    edges = {(chain[i], chain[i + 1]) for i in range(len(chain) - 1)}
    edges |= {(chain[-1], t) for t in targets}
    edges |= {(t, t) for t in targets}
    model = Model(tuple(chain + targets), frozenset(edges), {"p": frozenset({"t1"})}, {}, 1)
    return PointedModel(model, "s1")


def build_distinguishing_family(n: int) -> tuple[PointedModel, PointedModel]:
    """Chain ``s1 .. s(n+1)`` fanning out to ``n+2`` (resp. ``n+3``) sinks."""
    if n < 1:
        raise ValueError("the family is defined for n >= 1")
    return _family_member(n, n + 2), _family_member(n, n + 3)


# -- worked-example fixtures -------------------------------------------------------------

FIXTURE_POINTS = {
    "fig1.M1": "s0",
    "fig1.M2": "s3",
    "fig2.M3": "s1",
    "fig2.M4": "s3",
    "fig3.M1": "s",
    "fig3.M2": "s",
    "fig3.M3": "s",
    "fig3.M4": "s",
    "fig6.MPsi": "s",
}

# in the access-control model only two absent pairs are cheap candidates
# (cost 1); every other pair costs more than any budget used with it
FIG1_DEFAULT_COST = 4


def _fig1_m1() -> Model:
    costs = {
        ("s0", "s0"): 3,
        ("s0", "s1"): 3,
        ("s0", "s2"): 2,
        ("s0", "s3"): 2,
        ("s1", "s1"): 3,
        ("s2", "s0"): 1,
        ("s2", "s2"): 2,
        ("s2", "s3"): 1,
        ("s3", "s3"): 2,
        ("s1", "s0"): 1,
        ("s3", "s2"): 1,
    }
    edges = [e for e in costs if e not in (("s1", "s0"), ("s3", "s2"))]
    valuation = {"error": {"s1"}, "server": {"s2", "s3"}, "admin": {"s3"}}
    return Model(("s0", "s1", "s2", "s3"), frozenset(edges), valuation, costs, FIG1_DEFAULT_COST)


def _two_state(edges, cost: int) -> Model:
    return Model(("s", "t"), frozenset(edges), {"p": frozenset({"s"})}, {}, cost)


def build_figure_fixtures() -> dict[str, PointedModel]:
    """The example models keyed ``fig1.M1`` ... ``fig6.MPsi``."""
    from .oracles import parse_qbf

    m1 = _fig1_m1()
    m2 = remove_edges(m1, [("s2", "s3"), ("s0", "s3")])
    m3 = add_edges(m1, [("s1", "s0")])
    m4 = remove_edges(add_edges(m2, [("s3", "s2")]), [("s3", "s3")])
    full = [("s", "s"), ("s", "t"), ("t", "s"), ("t", "t")]
    models = {
        "fig1.M1": m1,
        "fig1.M2": m2,
        "fig2.M3": m3,
        "fig2.M4": m4,
        "fig3.M1": _two_state(full, 1),
        "fig3.M2": _two_state(full, 2),
        "fig3.M3": _two_state([("s", "s"), ("t", "t")], 1),
        "fig3.M4": Model(("s",), frozenset({("s", "s")}), {"p": frozenset({"s"})}, {}, 1),
        "fig6.MPsi": build_sdl_reduction(parse_qbf("forall p1 exists p2 : p1 -> p2"))[0].model,
    }
    return {name: PointedModel(m, FIXTURE_POINTS[name]) for name, m in models.items()}
