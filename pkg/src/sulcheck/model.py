"""Weighted serial digraphs, pointed models and the primitive edge updates.

A model is immutable.  Every operation returns a new model, so values can be
shared freely between threads and used as dictionary keys.

Internally each ordered pair of states ``(s_i, s_j)`` is also addressed by a
bit ``i * k + j`` where ``k`` is the number of states and ``i``/``j`` are the
positions of the states in lexicographic order.  Bit order therefore coincides
with the canonical order of edges, which the enumerators rely on.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import (
    CostOverflowError,
    DuplicateStateError,
    EdgeAlreadyPresentError,
    EdgeNotPresentError,
    ModelError,
    ModelSyntaxError,
    NonPositiveCostError,
    SerialityError,
    UndeclaredStateError,
)

__all__ = [
    "U64_MAX",
    "Edge",
    "Model",
    "PointedModel",
    "EdgeSet",
    "parse_model",
    "parse_model_with_point",
    "serialize_model",
    "model_size",
    "remove_edges",
    "add_edges",
    "apply_update",
    "checked_sum",
]

U64_MAX = 2**64 - 1

Edge = tuple[str, str]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def checked_sum(values: Iterable[int]) -> int:
    """Sum naturals, raising :class:`CostOverflowError` past ``2**64 - 1``."""
    total = 0
    for v in values:
        total += v
        if total > U64_MAX:
            raise CostOverflowError(total)
    return total


def _check_cost(value: int) -> int:
    if value < 1:
        raise NonPositiveCostError(value)
    if value > U64_MAX:
        raise CostOverflowError(value)
    return value


@dataclass(frozen=True)
class Model:
    """A weighted model ``(S, ->, V, C)``.

    ``costs`` holds the explicit entries of the cost function; every other
    ordered pair costs ``default_cost``.  Entries equal to the default are
    dropped so that equal cost functions compare equal.
    """

    states: tuple[str, ...]
    edges: frozenset[Edge]
    valuation: tuple[tuple[str, frozenset[str]], ...] = ()
    costs: tuple[tuple[Edge, int], ...] = ()
    default_cost: int = 1

    def __post_init__(self) -> None:
        if not self.states:
            raise ModelError("a model needs at least one state")
        seen = set()
        for s in self.states:
            if s in seen:
                raise DuplicateStateError(s)
            seen.add(s)
        object.__setattr__(self, "states", tuple(sorted(self.states)))
        edges = frozenset((a, b) for a, b in self.edges)
        for a, b in edges:
            for x in (a, b):
                if x not in seen:
                    raise UndeclaredStateError(x, "edge")
        object.__setattr__(self, "edges", edges)

        val = {}
        for atom, ext in (self.valuation.items() if isinstance(self.valuation, Mapping) else self.valuation):
            ext = frozenset(ext)
            for x in ext:
                if x not in seen:
                    raise UndeclaredStateError(x, f"atom {atom}")
            val[atom] = val.get(atom, frozenset()) | ext
        object.__setattr__(self, "valuation", tuple(sorted(val.items())))

        _check_cost(self.default_cost)
        entries = {}
        for (a, b), c in (self.costs.items() if isinstance(self.costs, Mapping) else self.costs):
            for x in (a, b):
                if x not in seen:
                    raise UndeclaredStateError(x, "cost")
            _check_cost(c)
            if c != self.default_cost:
                entries[(a, b)] = c
        object.__setattr__(self, "costs", tuple(sorted(entries.items())))

        out = {s: False for s in self.states}
        for a, _ in edges:
            out[a] = True
        for s in self.states:
            if not out[s]:
                raise SerialityError(s)

    # -- lookups -----------------------------------------------------------

    @cached_property
    def _cost_map(self) -> dict[Edge, int]:
        return dict(self.costs)

    @cached_property
    def _val_map(self) -> dict[str, frozenset[str]]:
        return dict(self.valuation)

    def cost(self, source: str, target: str) -> int:
        return self._cost_map.get((source, target), self.default_cost)

    @property
    def atoms(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.valuation)

    def extension(self, atom: str) -> frozenset[str]:
        """States where ``atom`` holds (empty for unknown atoms)."""
        return self._val_map.get(atom, frozenset())

    def holds(self, atom: str, state: str) -> bool:
        return state in self._val_map.get(atom, ())

    def true_atoms(self, state: str) -> frozenset[str]:
        return frozenset(a for a, ext in self.valuation if state in ext)

    def successors(self, state: str) -> list[str]:
        return sorted(b for a, b in self.edges if a == state)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def all_pairs(self) -> Iterator[Edge]:
        for a in self.states:
            for b in self.states:
                yield (a, b)

    # -- bit-level view used by the enumerators and the checker -----------

    @cached_property
    def index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    @property
    def k(self) -> int:
        return len(self.states)

    @cached_property
    def pair_costs(self) -> tuple[int, ...]:
        """Cost of every ordered pair, indexed by bit."""
        return tuple(self.cost(a, b) for a in self.states for b in self.states)

    @cached_property
    def edge_mask(self) -> int:
        return self.mask_of(self.edges)

    @cached_property
    def atom_masks(self) -> dict[str, int]:
        idx = self.index
        return {a: sum(1 << idx[s] for s in ext) for a, ext in self.valuation}

    def bit(self, edge: Edge) -> int:
        idx = self.index
        return idx[edge[0]] * self.k + idx[edge[1]]

    def mask_of(self, pairs: Iterable[Edge]) -> int:
        idx = self.index
        k = self.k
        m = 0
        for a, b in pairs:
            try:
                m |= 1 << (idx[a] * k + idx[b])
            except KeyError as exc:
                raise UndeclaredStateError(exc.args[0]) from None
        return m

    def pairs_of(self, mask: int) -> list[Edge]:
        """Ordered pairs encoded by ``mask``, in canonical order."""
        k = self.k
        st = self.states
        out = []
        while mask:
            low = mask & -mask
            b = low.bit_length() - 1
            out.append((st[b // k], st[b % k]))
            mask ^= low
        return out

    def mask_cost(self, mask: int) -> int:
        pc = self.pair_costs
        total = 0
        while mask:
            low = mask & -mask
            total += pc[low.bit_length() - 1]
            mask ^= low
        if total > U64_MAX:
            raise CostOverflowError(total)
        return total

    def with_mask(self, mask: int) -> "Model":
        """Same states, valuation and costs with the edge relation ``mask``."""
        if mask == self.edge_mask:
            return self
        return _fast_copy(self, frozenset(self.pairs_of(mask)), mask)

    def __repr__(self) -> str:
        return f"Model(states={len(self.states)}, edges={len(self.edges)})"


def _fast_copy(model: Model, edges: frozenset[Edge], mask: int) -> Model:
    # skips validation: callers guarantee seriality and declared endpoints
    new = object.__new__(Model)
    object.__setattr__(new, "states", model.states)
    object.__setattr__(new, "edges", edges)
    object.__setattr__(new, "valuation", model.valuation)
    object.__setattr__(new, "costs", model.costs)
    object.__setattr__(new, "default_cost", model.default_cost)
    d = new.__dict__
    for name in ("_cost_map", "_val_map", "index", "pair_costs", "atom_masks"):
        if name in model.__dict__:
            d[name] = model.__dict__[name]
    d["edge_mask"] = mask
    return new


@dataclass(frozen=True)
class PointedModel:
    model: Model
    point: str

    def __post_init__(self) -> None:
        if self.point not in self.model.index:
            raise UndeclaredStateError(self.point, "point")

    def digest(self) -> str:
        """Stable hex digest of the canonical serialization plus the point."""
        h = hashlib.sha256(serialize_model(self.model).encode())
        h.update(b"\0" + self.point.encode())
        return h.hexdigest()[:16]


@dataclass(frozen=True)
class EdgeSet:
    """A set of ordered pairs together with its total cost under some model."""

    pairs: frozenset[Edge] = field(default_factory=frozenset)
    total_cost: int = 0

    @classmethod
    def of(cls, model: Model, pairs: Iterable[Edge] = ()) -> "EdgeSet":
        pairs = frozenset(tuple(p) for p in pairs)
        for a, b in pairs:
            for x in (a, b):
                if x not in model.index:
                    raise UndeclaredStateError(x, "edge set")
        return cls(pairs, checked_sum(model.cost(a, b) for a, b in pairs))

    @classmethod
    def from_mask(cls, model: Model, mask: int) -> "EdgeSet":
        return cls(frozenset(model.pairs_of(mask)), model.mask_cost(mask))

    def sorted(self) -> list[Edge]:
        return sorted(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.sorted())

    def __bool__(self) -> bool:
        return bool(self.pairs)


def _pairs(model: Model, a) -> frozenset[Edge]:
    if isinstance(a, EdgeSet):
        return a.pairs
    return EdgeSet.of(model, a).pairs


def _orphan(model: Model, edges: frozenset[Edge]) -> str | None:
    has_out = {a for a, _ in edges}
    for s in model.states:
        if s not in has_out:
            return s
    return None


def remove_edges(m: Model, a: EdgeSet | Iterable[Edge]) -> Model:
    """``M \\ A``; every pair of ``a`` must be an edge and seriality must survive."""
    pairs = _pairs(m, a)
    for e in sorted(pairs):
        if e not in m.edges:
            raise EdgeNotPresentError(e)
    edges = m.edges - pairs
    orphan = _orphan(m, edges)
    if orphan is not None:
        raise SerialityError(orphan)
    return _fast_copy(m, edges, m.mask_of(edges))


def add_edges(m: Model, a: EdgeSet | Iterable[Edge]) -> Model:
    """``M u A``; no pair of ``a`` may already be an edge."""
    pairs = _pairs(m, a)
    for e in sorted(pairs):
        if e in m.edges:
            raise EdgeAlreadyPresentError(e)
    edges = m.edges | pairs
    return _fast_copy(m, edges, m.mask_of(edges))


def apply_update(m: Model, add: EdgeSet | Iterable[Edge], remove: EdgeSet | Iterable[Edge]) -> Model:
    """``(M \\ remove) u add``.

    Only the final relation has to be serial here.  The accessibility
    relations additionally demand that ``M \\ remove`` is serial on its own;
    that is enforced by the enumerators, not by this raw operation.
    """
    add_p = _pairs(m, add)
    rem_p = _pairs(m, remove)
    for e in sorted(rem_p):
        if e not in m.edges:
            raise EdgeNotPresentError(e)
    for e in sorted(add_p):
        if e in m.edges:
            raise EdgeAlreadyPresentError(e)
    edges = (m.edges - rem_p) | add_p
    orphan = _orphan(m, edges)
    if orphan is not None:
        raise SerialityError(orphan)
    return _fast_copy(m, edges, m.mask_of(edges))


def model_size(m: Model) -> int:
    """``|S| + |->| + sum |True(s)| + sum over all pairs of C``."""
    atoms = sum(len(ext) for _, ext in m.valuation)
    return checked_sum([len(m.states), len(m.edges), atoms, *m.pair_costs])


# -- text format -----------------------------------------------------------


def serialize_model(m: Model, point: str | None = None) -> str:
    """Canonical text form: everything sorted lexicographically."""
    lines = ["states: " + " ".join(m.states)]
    by_src: dict[str, list[str]] = {}
    for a, b in m.sorted_edges():
        by_src.setdefault(a, []).append(b)
    for a in m.states:
        if a in by_src:
            lines.append("edges: " + ", ".join(f"{a} -> {b}" for b in by_src[a]))
    for atom, ext in m.valuation:
        lines.append(f"atom {atom}: " + " ".join(sorted(ext)))
    for (a, b), c in m.costs:
        lines.append(f"cost {a} {b} {c}")
    lines.append(f"default_cost: {m.default_cost}")
    if point is not None:
        lines.append(f"point: {point}")
    return "\n".join(lines) + "\n"


def _ident(tok: str, line: int, col: int, what: str) -> str:
    if not _IDENT.match(tok):
        raise ModelSyntaxError(f"invalid {what} {tok!r}", line, col)
    return tok


def _int(tok: str, line: int, col: int) -> int:
    if not re.fullmatch(r"[+-]?\d+", tok):
        raise ModelSyntaxError(f"expected an integer, got {tok!r}", line, col)
    value = int(tok)
    if value < 1:
        raise NonPositiveCostError(value)
    if value > U64_MAX:
        raise CostOverflowError(value)
    return value


def _tokens(text: str, offset: int) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + offset + 1) for m in re.finditer(r"\S+", text)]


def parse_model_with_point(text: str) -> tuple[Model, str | None]:
    """Parse the line-oriented model format; returns the model and optional point."""
    states: list[tuple[str, int, int]] | None = None
    edges: list[tuple[str, str, int, int, int]] = []
    atoms: dict[str, list[tuple[str, int, int]]] = {}
    costs: dict[Edge, tuple[int, int, int, int]] = {}
    default: int | None = None
    point: tuple[str, int, int] | None = None
    saw_edges = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        head = body.split(":", 1)[0].strip() if ":" in body else body.split()[0]
        col0 = indent + 1

        if head == "states":
            if states is not None:
                raise ModelSyntaxError("'states:' given twice", lineno, col0)
            rest_at = line.index(":") + 1
            states = []
            for tok, col in _tokens(line[rest_at:], rest_at):
                states.append((_ident(tok, lineno, col, "state identifier"), lineno, col))
            if not states:
                raise ModelSyntaxError("'states:' needs at least one state", lineno, col0)
        elif head == "edges":
            saw_edges = True
            rest_at = line.index(":") + 1
            rest = line[rest_at:]
            pos = rest_at
            for chunk in rest.split(","):
                m = re.fullmatch(r"\s*(\S+)\s*->\s*(\S+)\s*", chunk)
                if m is None:
                    raise ModelSyntaxError(f"malformed edge {chunk.strip()!r}", lineno, pos + 1)
                a = _ident(m.group(1), lineno, pos + m.start(1) + 1, "state identifier")
                b = _ident(m.group(2), lineno, pos + m.start(2) + 1, "state identifier")
                edges.append((a, b, lineno, pos + m.start(1) + 1, pos + m.start(2) + 1))
                pos += len(chunk) + 1
        elif head.startswith("atom ") or head == "atom":
            if ":" not in body:
                raise ModelSyntaxError("expected 'atom <name>: <id> ...'", lineno, col0)
            name_part = head[len("atom"):].strip()
            name = _ident(name_part, lineno, col0 + 5, "atom name")
            rest_at = line.index(":") + 1
            ext = atoms.setdefault(name, [])
            for tok, col in _tokens(line[rest_at:], rest_at):
                ext.append((_ident(tok, lineno, col, "state identifier"), lineno, col))
        elif head.startswith("cost") and ":" not in body:
            toks = _tokens(line, 0)
            if toks[0][0] != "cost" or len(toks) != 4:
                raise ModelSyntaxError("expected 'cost <id> <id> <positive-int>'", lineno, col0)
            a = _ident(toks[1][0], lineno, toks[1][1], "state identifier")
            b = _ident(toks[2][0], lineno, toks[2][1], "state identifier")
            value = _int(toks[3][0], lineno, toks[3][1])
            if (a, b) in costs:
                raise ModelSyntaxError(f"duplicate cost entry for {a} {b}", lineno, col0)
            costs[(a, b)] = (value, lineno, toks[1][1], toks[2][1])
        elif head == "default_cost":
            if default is not None:
                raise ModelSyntaxError("'default_cost:' given twice", lineno, col0)
            toks = _tokens(line[line.index(":") + 1:], line.index(":") + 1)
            if len(toks) != 1:
                raise ModelSyntaxError("expected 'default_cost: <positive-int>'", lineno, col0)
            default = _int(toks[0][0], lineno, toks[0][1])
        elif head == "point":
            if point is not None:
                raise ModelSyntaxError("'point:' given twice", lineno, col0)
            toks = _tokens(line[line.index(":") + 1:], line.index(":") + 1)
            if len(toks) != 1:
                raise ModelSyntaxError("expected 'point: <id>'", lineno, col0)
            point = (_ident(toks[0][0], lineno, toks[0][1], "state identifier"), lineno, toks[0][1])
        else:
            raise ModelSyntaxError(f"unknown directive {head!r}", lineno, col0)

    if states is None:
        raise ModelSyntaxError("missing 'states:' line", 1)
    if not saw_edges:
        raise ModelSyntaxError("missing 'edges:' line", 1)
    if default is None:
        raise ModelSyntaxError("missing 'default_cost:' line", 1)

    declared = set()
    for s, line, col in states:
        if s in declared:
            raise DuplicateStateError(s)
        declared.add(s)

    def need(s: str, line: int, col: int, where: str) -> None:
        if s not in declared:
            err = UndeclaredStateError(s, f"{where} (line {line}, column {col})")
            err.line, err.column = line, col
            raise err

    for a, b, line, ca, cb in edges:
        need(a, line, ca, "edge")
        need(b, line, cb, "edge")
    for name, ext in atoms.items():
        for s, line, col in ext:
            need(s, line, col, f"atom {name}")
    for (a, b), (_, line, ca, cb) in costs.items():
        need(a, line, ca, "cost")
        need(b, line, cb, "cost")
    if point is not None:
        need(*point, "point")

    model = Model(
        states=tuple(s for s, _, _ in states),
        edges=frozenset((a, b) for a, b, *_ in edges),
        valuation={name: frozenset(s for s, _, _ in ext) for name, ext in atoms.items()},
        costs={e: v[0] for e, v in costs.items()},
        default_cost=default,
    )
    return model, (point[0] if point else None)


def parse_model(text: str) -> Model:
    """Parse a model document, ignoring any ``point:`` directive."""
    return parse_model_with_point(text)[0]
