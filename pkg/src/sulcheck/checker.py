"""Alternating model checking for the strategic logics.

A strategic node ``<.>path`` is played as a game between the proponent, the
antagonist and the traveller.  One round consists of three choice layers:

1. the first update part (the proponent's, or the whole update),
2. the second update part (the antagonist's, trivial for single agents),
3. the traveller's move along the updated relation.

Whether each layer is existential or universal depends on the operator and on
its ``dual`` flag.  ``X`` is evaluated by one round of explicit search.  ``U``
and ``R`` are solved on the finite arena of reachable positions ``(edges,
state)``: a layered attractor assigns each position the least round in which
the step-indexed loop succeeds, and the verdict compares that rank with
``br_depth``.  This is the same value the bounded while-loop computes, without
re-exploring positions once per step index.
"""

from __future__ import annotations

import sys
import threading
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .errors import (
    BudgetViolationError,
    NoWitnessAvailable,
    ResourceCapExceeded,
    TableGapError,
)
from .model import Edge, EdgeSet, Model, PointedModel
from .syntax import (
    ANGEL,
    DEMON,
    And,
    Atom,
    Bottom,
    Flavor,
    Iff,
    Implies,
    Next,
    Not,
    Or,
    StratA,
    StratD,
    StratU,
    Top,
    Until,
    flavor_of,
    to_nnf,
    to_text,
)
from .updates import UpdateChoice, addition_masks, removal_masks

__all__ = [
    "DEFAULT_SUL_DEPTH_CAP",
    "CheckerConfig",
    "CheckStats",
    "GamePosition",
    "TableEntry",
    "StrategyTable",
    "Verdict",
    "br_depth",
    "check",
    "holds",
    "extract_witness",
    "verify_witness",
]

DEFAULT_SUL_DEPTH_CAP = 10_000

EXISTS = True
FORALL = False


@dataclass(frozen=True)
class CheckerConfig:
    """Knobs of the checker; none of them may change a verdict.

    ``engine`` selects ``"arena"`` (the default attractor solver) or
    ``"literal"``, a direct transcription of the step-indexed recursion that
    is only practical on tiny instances and exists as a cross-check.
    ``normalize=False`` evaluates the formula as written, treating state
    negations by complement instead of rewriting to NNF first.
    """

    memoization: bool = True
    max_positions: int | None = None
    sul_depth_cap: int | None = DEFAULT_SUL_DEPTH_CAP
    parallel: bool = False
    engine: str = "arena"
    normalize: bool = True

    def __post_init__(self) -> None:
        for name in ("max_positions", "sul_depth_cap"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.engine not in ("arena", "literal"):
            raise ValueError(f"unknown engine {self.engine!r}")


@dataclass(frozen=True)
class CheckStats:
    positions: int = 0
    memo_hits: int = 0

    def to_json(self) -> dict:
        return {"positions": self.positions, "memo_hits": self.memo_hits}


@dataclass(frozen=True)
class GamePosition:
    """A pointed model, the formula still to be established and the step index."""

    pointed: PointedModel
    formula: object
    step_index: int = 0


@dataclass(frozen=True)
class TableEntry:
    digest: str
    point: str
    edges: tuple[Edge, ...]
    choice: UpdateChoice

    def to_json(self) -> dict:
        return {
            "digest": self.digest,
            "point": self.point,
            "edges": [list(e) for e in self.edges],
            "choice": self.choice.to_json(),
        }


@dataclass(frozen=True)
class StrategyTable:
    """A memoryless strategy: pointed-model digest to the proponent's update."""

    operator: str
    entries: tuple[TableEntry, ...]

    @cached_property
    def _index(self) -> dict[str, UpdateChoice]:
        return {e.digest: e.choice for e in self.entries}

    def lookup(self, pm: PointedModel) -> UpdateChoice | None:
        return self._index.get(pm.digest())

    def __len__(self) -> int:
        return len(self.entries)

    def to_json(self) -> dict:
        return {"operator": self.operator, "entries": [e.to_json() for e in self.entries]}


@dataclass(frozen=True)
class Verdict:
    value: bool
    witness: StrategyTable | None = None
    trace: tuple[tuple[UpdateChoice, str], ...] | None = None
    stats: CheckStats = field(default_factory=CheckStats, compare=False)

    def __bool__(self) -> bool:
        return self.value

    def to_json(self, include_stats: bool = True) -> dict:
        out = {
            "value": self.value,
            "witness": None if self.witness is None else self.witness.to_json(),
            "trace": None
            if self.trace is None
            else [{"choice": c.to_json(), "move": mv} for c, mv in self.trace],
        }
        if include_stats:
            out["stats"] = self.stats.to_json()
        return out


def br_depth(m: Model, flavor: Flavor | str, cap: int | None = DEFAULT_SUL_DEPTH_CAP) -> int:
    """Per-branch step bound of the alternating loops.

    The update-logic bound is astronomically large, so it saturates at ``cap``.
    """
    flavor = Flavor.parse(flavor)
    k = len(m.states)
    if flavor is Flavor.SDL:
        return (len(m.edges) + 1) * k
    if flavor is Flavor.SCL:
        return (k * k - len(m.edges) + 1) * k
    if cap is None:
        return (1 << (k * k)) * k
    # saturate without materializing 2^(k^2) for large k
    if k * k >= cap.bit_length() + 1:
        return cap
    return min(cap, (1 << (k * k)) * k)


def _true_br_depth(m: Model, flavor: Flavor) -> int:
    return br_depth(m, flavor, cap=None)


# -- operator modes -----------------------------------------------------------


@dataclass(frozen=True)
class _Mode:
    flavor: Flavor
    first: str  # "rem", "add" or "both"
    second: str | None  # None, "add" or "rem"
    quants: tuple[bool, bool, bool]
    angel_budget: int
    demon_budget: int
    proponent_parts: frozenset[str]


def _mode(node) -> _Mode:
    if isinstance(node, StratD):
        m = _Mode(Flavor.SDL, "rem", None, (EXISTS, FORALL, FORALL), 0, node.budget, frozenset({DEMON}))
    elif isinstance(node, StratA):
        m = _Mode(Flavor.SCL, "add", None, (EXISTS, FORALL, FORALL), node.budget, 0, frozenset({ANGEL}))
    else:
        c = node.coalition
        ab, db = node.angel_budget, node.demon_budget
        if c == {DEMON}:
            m = _Mode(Flavor.SUL, "rem", "add", (EXISTS, FORALL, FORALL), ab, db, c)
        elif c == {ANGEL}:
            m = _Mode(Flavor.SUL, "add", "rem", (EXISTS, FORALL, FORALL), ab, db, c)
        elif c == {ANGEL, DEMON}:
            m = _Mode(Flavor.SUL, "both", None, (EXISTS, FORALL, FORALL), ab, db, c)
        else:
            m = _Mode(Flavor.SUL, "both", None, (FORALL, FORALL, FORALL), ab, db, c)
    if node.dual:
        q = tuple(not x for x in m.quants)
        m = _Mode(m.flavor, m.first, m.second, q, m.angel_budget, m.demon_budget, m.proponent_parts)
    return m


def _quantify(q: bool, it) -> bool:
    return any(it) if q else all(it)


# -- the evaluator ------------------------------------------------------------


class _Arena:
    """Positions of one U/R game, with the AND-OR structure between them."""

    def __init__(self):
        self.status: dict = {}  # position -> "target" | "dead" | "cont"
        self.children: dict = {}  # node -> list of child nodes
        self.choices: dict = {}  # position -> list of (add, rem) per first-layer child
        self.quant: dict = {}
        self.parents: dict = {}
        self.won: dict = {}


class _Evaluator:
    def __init__(self, model: Model, cfg: CheckerConfig):
        self.base = model
        self.cfg = cfg
        self.k = model.k
        self.row = (1 << self.k) - 1
        self.memo: dict = {}
        self.rem_cache: dict = {}
        self.add_cache: dict = {}
        self.choice_cache: dict = {}
        self.derived: dict = {}
        self.keep: list = []
        self.positions = 0
        self.memo_hits = 0
        self.lock = threading.Lock()
        self.arenas: dict = {}

    # bookkeeping

    def _count(self, n: int = 1) -> None:
        with self.lock:
            self.positions += n
            cap = self.cfg.max_positions
            if cap is not None and self.positions > cap:
                raise ResourceCapExceeded("position cap exceeded", self.positions)

    def removals(self, mask: int, budget: int) -> tuple[int, ...]:
        key = (mask, budget)
        r = self.rem_cache.get(key)
        if r is None:
            r = tuple(removal_masks(self.base, mask, budget))
            self.rem_cache[key] = r
        return r

    def additions(self, mask: int, budget: int) -> tuple[int, ...]:
        key = (mask, budget)
        r = self.add_cache.get(key)
        if r is None:
            r = tuple(addition_masks(self.base, mask, budget))
            self.add_cache[key] = r
        return r

    def first_choices(self, mode: _Mode, mask: int):
        """List of ``(add, rem, results)``; ``results`` are the second layer's outcomes."""
        key = (mask, mode.first, mode.second, mode.angel_budget, mode.demon_budget)
        r = self.choice_cache.get(key)
        if r is not None:
            return r
        out = []
        if mode.first == "rem" and mode.second is None:
            for rem in self.removals(mask, mode.demon_budget):
                out.append((0, rem, (mask & ~rem,)))
        elif mode.first == "add" and mode.second is None:
            for add in self.additions(mask, mode.angel_budget):
                out.append((add, 0, (mask | add,)))
        elif mode.first == "both":
            rems = self.removals(mask, mode.demon_budget)
            for add in self.additions(mask, mode.angel_budget):
                for rem in rems:
                    out.append((add, rem, ((mask & ~rem) | add,)))
        elif mode.first == "rem":
            adds = self.additions(mask, mode.angel_budget)
            for rem in self.removals(mask, mode.demon_budget):
                out.append((0, rem, tuple((mask & ~rem) | add for add in adds)))
        else:
            rems = self.removals(mask, mode.demon_budget)
            for add in self.additions(mask, mode.angel_budget):
                out.append((add, 0, tuple((mask & ~rem) | add for rem in rems)))
        if self.cfg.memoization:
            self.choice_cache[key] = out
        return out

    def succ(self, mask: int, s: int) -> list[int]:
        row = (mask >> (s * self.k)) & self.row
        out = []
        while row:
            low = row & -row
            out.append(low.bit_length() - 1)
            row ^= low
        return out

    # state formulas

    def state(self, f, mask: int, s: int) -> bool:
        if isinstance(f, Atom):
            return bool(self.base.atom_masks.get(f.name, 0) >> s & 1)
        if isinstance(f, Top):
            return True
        if isinstance(f, Bottom):
            return False
        if isinstance(f, Not):
            return not self.state(f.arg, mask, s)
        if isinstance(f, And):
            return self.state(f.left, mask, s) and self.state(f.right, mask, s)
        if isinstance(f, Or):
            return self.state(f.left, mask, s) or self.state(f.right, mask, s)
        if isinstance(f, Implies):
            return (not self.state(f.left, mask, s)) or self.state(f.right, mask, s)
        if isinstance(f, Iff):
            return self.state(f.left, mask, s) == self.state(f.right, mask, s)
        if isinstance(f, (StratD, StratA, StratU)):
            if not self.cfg.memoization:
                return self.game(f, mask, s)
            key = (mask, s, id(f))
            v = self.memo.get(key)
            if v is None:
                v = self.game(f, mask, s)
                self.memo[key] = v
            else:
                with self.lock:
                    self.memo_hits += 1
            return v
        raise TypeError(f"path formula {to_text(f)!r} used as a state formula")

    def path_of(self, node):
        """The node's path with any leading negations pushed inside."""
        p = node.path
        if not isinstance(p, Not):
            return p
        cached = self.derived.get(id(node))
        if cached is None:
            cached = to_nnf(p)
            self.derived[id(node)] = cached
            self.keep.append((node, cached))
        return cached

    # one round

    def step(self, mode: _Mode, mask: int, s: int, pred: Callable[[int, int], bool], parallel: bool = False) -> bool:
        q1, q2, q3 = mode.quants

        def outcome(choice) -> bool:
            _, _, results = choice
            return _quantify(q2, (_quantify(q3, (pred(r, t) for t in self.succ(r, s))) for r in results))

        choices = self.first_choices(mode, mask)
        if parallel and len(choices) > 1:
            with ThreadPoolExecutor() as pool:
                values = list(pool.map(outcome, choices))
            return any(values) if q1 else all(values)
        return _quantify(q1, (outcome(c) for c in choices))

    def game(self, node, mask: int, s: int, parallel: bool = False) -> bool:
        mode = _mode(node)
        path = self.path_of(node)
        if isinstance(path, Next):
            child = path.arg

            def pred(r: int, t: int) -> bool:
                self._count()
                return self.state(child, r, t)

            return self.step(mode, mask, s, pred, parallel)
        bound = self.bound(mode)
        if self.cfg.engine == "literal":
            return self.literal(node, mode, path, mask, s, bound)
        until = isinstance(path, Until)
        arena = self.solve(node, mode, path, mask, s)
        rank = arena.won.get((mask, s))
        reached = rank is not None and rank <= bound[0]
        if rank is not None and rank > bound[0] and bound[0] < bound[1]:
            raise ResourceCapExceeded(
                f"update-logic depth cap {bound[0]} reached before the game was decided", self.positions
            )
        return reached if until else not reached

    def bound(self, mode: _Mode) -> tuple[int, int]:
        """(effective bound, true bound) for the node's logic."""
        if mode.flavor is Flavor.SUL:
            return br_depth(self.base, mode.flavor, self.cfg.sul_depth_cap), _true_br_depth(self.base, mode.flavor)
        b = br_depth(self.base, mode.flavor)
        return b, b

    # U and R on the arena

    def solve(self, node, mode: _Mode, path, mask: int, s: int) -> _Arena:
        """Attractor for U, or for the refutation of R (with dual quantifiers)."""
        until = isinstance(path, Until)
        q1, q2, q3 = mode.quants if until else tuple(not q for q in mode.quants)
        left, right = path.left, path.right
        a = _Arena()
        start = (mask, s)
        queue = deque([start])
        a.status[start] = None
        self._count()
        while queue:
            pos = queue.popleft()
            pm, ps = pos
            r = self.state(right, pm, ps)
            if until:
                status = "target" if r else ("cont" if self.state(left, pm, ps) else "dead")
            else:
                status = "target" if not r else ("dead" if self.state(left, pm, ps) else "cont")
            a.status[pos] = status
            if status != "cont":
                continue
            kids = []
            picks = []
            for idx, (add, rem, results) in enumerate(self.first_choices(mode, pm)):
                tnodes = []
                for res in results:
                    t = ("T", res, ps)
                    if t not in a.children:
                        succs = []
                        for nxt in self.succ(res, ps):
                            p2 = (res, nxt)
                            succs.append(p2)
                            if p2 not in a.status:
                                a.status[p2] = None
                                self._count()
                                queue.append(p2)
                        a.children[t] = succs
                        a.quant[t] = q3
                    if t not in tnodes:
                        tnodes.append(t)
                if mode.second is None:
                    child = tnodes[0]
                else:
                    child = ("F", pm, ps, idx)
                    a.children[child] = tnodes
                    a.quant[child] = q2
                if child not in kids:
                    kids.append(child)
                picks.append((child, add, rem, results))
            a.children[pos] = kids
            a.quant[pos] = q1
            a.choices[pos] = picks

        remaining = {}
        for n, kids in a.children.items():
            remaining[n] = 1 if a.quant[n] else len(kids)
            for c in kids:
                a.parents.setdefault(c, []).append(n)
        layer = [p for p, st in a.status.items() if st == "target"]
        for p in layer:
            a.won[p] = 0
        rnd = 0
        while layer:
            nxt = []
            stack = list(layer)
            while stack:
                n = stack.pop()
                for par in a.parents.get(n, ()):
                    if par in a.won:
                        continue
                    remaining[par] -= 1
                    if remaining[par] == 0:
                        if len(par) == 2:
                            a.won[par] = rnd + 1
                            nxt.append(par)
                        else:
                            a.won[par] = rnd
                            stack.append(par)
            layer = nxt
            rnd += 1
        self.arenas[(id(node), start)] = (a, until)
        self.keep.append(node)
        return a

    # the literal step-indexed recursion

    def literal(self, node, mode: _Mode, path, mask: int, s: int, bound: tuple[int, int]) -> bool:
        until = isinstance(path, Until)
        limit = bound[0]
        memo: dict = {}
        if sys.getrecursionlimit() < 20_000:
            sys.setrecursionlimit(20_000)

        def val(m: int, t: int, i: int) -> bool:
            key = (m, t, i)
            if self.cfg.memoization and key in memo:
                return memo[key]
            self._count()
            if i > limit:
                if limit < bound[1]:
                    raise ResourceCapExceeded(
                        f"update-logic depth cap {limit} reached before the game was decided", self.positions
                    )
                v = not until
            elif until:
                if self.state(path.right, m, t):
                    v = True
                elif not self.state(path.left, m, t):
                    v = False
                else:
                    v = self.step(mode, m, t, lambda r, u: val(r, u, i + 1))
            else:
                if not self.state(path.right, m, t):
                    v = False
                elif self.state(path.left, m, t):
                    v = True
                else:
                    v = self.step(mode, m, t, lambda r, u: val(r, u, i + 1))
            memo[key] = v
            return v

        return val(mask, s, 0)


# -- public API -----------------------------------------------------------------


def _prepare(f, cfg: CheckerConfig):
    flavor_of(f)
    return to_nnf(f) if cfg.normalize else f


def holds(pm: PointedModel, f, cfg: CheckerConfig | None = None) -> bool:
    """Just the truth value of ``pm |= f``."""
    return check(pm, f, cfg).value


def check(pm: PointedModel, f, cfg: CheckerConfig | None = None) -> Verdict:
    """Decide ``pm |= f``.

    When the formula is an existential strategic operator owned by a nonempty
    coalition and the verdict is true, the verdict carries a memoryless
    witness table and a sample play that follows it.
    """
    cfg = cfg or CheckerConfig()
    g = _prepare(f, cfg)
    ev = _Evaluator(pm.model, cfg)
    mask = pm.model.edge_mask
    s = pm.model.index[pm.point]
    if isinstance(g, (StratD, StratA, StratU)) and cfg.parallel:
        value = ev.game(g, mask, s, parallel=True)
    else:
        value = ev.state(g, mask, s)
    witness = trace = None
    if value and _has_witness(g) and cfg.engine == "arena":
        witness, trace = _extract(ev, g, mask, s)
    return Verdict(value, witness, trace, CheckStats(ev.positions, ev.memo_hits))


def _has_witness(g) -> bool:
    if not isinstance(g, (StratD, StratA, StratU)) or g.dual:
        return False
    return not (isinstance(g, StratU) and not g.coalition)


def _extract(ev: _Evaluator, node, mask: int, s: int):
    mode = _mode(node)
    path = ev.path_of(node)
    base = ev.base
    chosen: dict = {}
    order: list = []

    if isinstance(path, Next):
        child = path.arg
        for add, rem, results in ev.first_choices(mode, mask):
            if all(all(ev.state(child, r, t) for t in ev.succ(r, s)) for r in results):
                chosen[(mask, s)] = (add, rem, results)
                order.append((mask, s))
                break
    else:
        a, until = ev.arenas.get((id(node), (mask, s)), (None, None))
        if a is None:
            a = ev.solve(node, mode, path, mask, s)
            until = isinstance(path, Until)
        seen = {(mask, s)}
        queue = deque([(mask, s)])
        while queue:
            pos = queue.popleft()
            if a.status.get(pos) != "cont":
                continue
            rank = a.won.get(pos)
            pick = None
            for c in a.choices[pos]:
                w = a.won.get(c[0])
                if until and w is not None and w < rank:
                    pick = c
                    break
                if not until and w is None:
                    pick = c
                    break
            if pick is None:
                # only reachable when the depth bound cut the game short
                pick = max(a.choices[pos], key=lambda c: a.won.get(c[0], 1 << 62))
            _, add, rem, results = pick
            chosen[pos] = (add, rem, results)
            order.append(pos)
            for r in results:
                for t in ev.succ(r, pos[1]):
                    if (r, t) not in seen:
                        seen.add((r, t))
                        queue.append((r, t))

    entries = []
    for pos in order:
        add, rem, _ = chosen[pos]
        m = base.with_mask(pos[0])
        point = base.states[pos[1]]
        choice = UpdateChoice(EdgeSet.from_mask(base, add), EdgeSet.from_mask(base, rem))
        entries.append(TableEntry(PointedModel(m, point).digest(), point, tuple(m.sorted_edges()), choice))
    table = StrategyTable(to_text(node), tuple(entries))

    trace = []
    pos = (mask, s)
    visited = set()
    while pos in chosen and pos not in visited:
        visited.add(pos)
        add, rem, results = chosen[pos]
        r = results[0]
        t = ev.succ(r, pos[1])[0]
        choice = UpdateChoice(EdgeSet.from_mask(base, add), EdgeSet.from_mask(base, rem))
        trace.append((choice, base.states[t]))
        pos = (r, t)
    return table, tuple(trace)


def extract_witness(pm: PointedModel, f, cfg: CheckerConfig | None = None) -> StrategyTable:
    """Run the checker and return its strategy table.

    Raises :class:`NoWitnessAvailable` when the outermost operator is not an
    existential strategic operator of a nonempty coalition, or when the
    formula does not hold.
    """
    cfg = cfg or CheckerConfig()
    g = _prepare(f, cfg)
    if not _has_witness(g):
        raise NoWitnessAvailable("the outermost operator is not an existential strategic operator")
    v = check(pm, g, CheckerConfig(**{**cfg.__dict__, "engine": "arena"}))
    if not v.value or v.witness is None:
        raise NoWitnessAvailable("the formula does not hold, so there is no winning strategy")
    return v.witness


# -- independent replay ---------------------------------------------------------


def verify_witness(pm: PointedModel, f, table: StrategyTable, cfg: CheckerConfig | None = None) -> bool:
    """Replay ``table`` against every antagonist update and traveller move.

    State subformulas are evaluated with :func:`check`; the top-level game is
    replayed here without the arena solver.
    """
    cfg = cfg or CheckerConfig()
    g = to_nnf(f)
    if not _has_witness(g):
        raise NoWitnessAvailable("the outermost operator is not an existential strategic operator")
    path = g.path
    model = pm.model
    mode = _mode(g)
    sub_cache: dict = {}

    def sat(sub, m: Model, point: str) -> bool:
        key = (m.edge_mask, point, id(sub))
        if key not in sub_cache:
            sub_cache[key] = check(PointedModel(m, point), sub, cfg).value
        return sub_cache[key]

    def moves(m: Model, point: str) -> list[tuple[Model, str]]:
        current = PointedModel(m, point)
        choice = table.lookup(current)
        if choice is None:
            raise TableGapError(point)
        _validate(choice, m, mode)
        add_mask = m.mask_of(choice.additions.pairs)
        rem_mask = m.mask_of(choice.removals.pairs)
        mask = m.edge_mask
        if mode.second == "add":
            results = [(mask & ~rem_mask) | a for a in addition_masks(m, mask, mode.angel_budget)]
        elif mode.second == "rem":
            results = [(mask & ~r) | add_mask for r in removal_masks(m, mask, mode.demon_budget)]
        else:
            results = [(mask & ~rem_mask) | add_mask]
        out = []
        for r in results:
            nm = m.with_mask(r)
            for t in nm.successors(point):
                out.append((nm, t))
        return out

    start = (model, pm.point)
    if isinstance(path, Next):
        return all(sat(path.arg, m, t) for m, t in moves(*start))

    until = isinstance(path, Until)
    bound = br_depth(model, mode.flavor, cfg.sul_depth_cap)
    key = lambda mt: (mt[0].edge_mask, mt[1])  # noqa: E731
    graph: dict = {}
    queue = deque([start])
    seen = {key(start)}
    while queue:
        m, point = queue.popleft()
        if until:
            if sat(path.right, m, point):
                graph[key((m, point))] = None
                continue
            if not sat(path.left, m, point):
                return False
        else:
            if not sat(path.right, m, point):
                return False
            if sat(path.left, m, point):
                graph[key((m, point))] = None
                continue
        nxt = moves(m, point)
        graph[key((m, point))] = [key(x) for x in nxt]
        for x in nxt:
            if key(x) not in seen:
                seen.add(key(x))
                queue.append(x)
    if not until:
        return True
    # every play must reach the target: no cycle and no play longer than the bound
    depth: dict = {}
    state: dict = {}
    for root in graph:
        if root in depth:
            continue
        stack = [(root, iter(graph[root] or ()))]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if state.get(nxt) == 1:
                    return False
                if nxt not in depth:
                    state[nxt] = 1
                    stack.append((nxt, iter(graph[nxt] or ())))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                state[node] = 2
                kids = graph[node] or ()
                depth[node] = 0 if graph[node] is None else 1 + max(depth[c] for c in kids)
    return depth[key(start)] <= bound


def _validate(choice: UpdateChoice, m: Model, mode: _Mode) -> None:
    adds = choice.additions.pairs
    rems = choice.removals.pairs
    if adds and ANGEL not in mode.proponent_parts:
        raise BudgetViolationError("strategy adds edges although the angel is not in the coalition")
    if rems and DEMON not in mode.proponent_parts:
        raise BudgetViolationError("strategy removes edges although the demon is not in the coalition")
    if any(e in m.edges for e in adds):
        raise BudgetViolationError("strategy adds an edge that is already present")
    if any(e not in m.edges for e in rems):
        raise BudgetViolationError("strategy removes an edge that is not present")
    add_cost = sum(m.cost(*e) for e in adds)
    rem_cost = sum(m.cost(*e) for e in rems)
    if add_cost > mode.angel_budget:
        raise BudgetViolationError(f"additions cost {add_cost} exceeds the angel's budget {mode.angel_budget}")
    if rem_cost > mode.demon_budget:
        raise BudgetViolationError(f"removals cost {rem_cost} exceeds the demon's budget {mode.demon_budget}")
    left = {a for a, _ in m.edges - rems}
    for st in m.states:
        if st not in left:
            raise BudgetViolationError(f"removals leave state {st!r} without successors")
