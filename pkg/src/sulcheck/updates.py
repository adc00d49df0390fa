"""Enumeration of the budgeted accessibility relations between models.

* n-submodels: remove a set of edges of total cost at most n, keeping the
  relation serial;
* n-supermodels: add a set of absent pairs of total cost at most n;
* n-m-updates: both at once, additions outer and removals inner.

Every enumeration starts with the empty set and proceeds in lexicographic
order over the canonical (sorted) edge lists.  Sets whose removal would leave
a state without successors are skipped silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import UndeclaredStateError
from .model import EdgeSet, Model

__all__ = [
    "UpdateChoice",
    "removal_masks",
    "addition_masks",
    "enumerate_submodels",
    "enumerate_supermodels",
    "enumerate_updates",
    "successors",
]


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _subsets(bits: list[int], costs, budget: int, ok=None) -> Iterator[int]:
    # pre-order DFS over increasing bit indices = lexicographic order, empty first
    stack = [(0, 0, 0)]
    while stack:
        chosen, start, spent = stack.pop()
        yield chosen
        children = []
        for pos in range(start, len(bits)):
            b = bits[pos]
            c = costs[b]
            if spent + c > budget:
                continue
            nxt = chosen | (1 << b)
            if ok is not None and not ok(nxt, b):
                continue
            children.append((nxt, pos + 1, spent + c))
        stack.extend(reversed(children))


def removal_masks(model: Model, mask: int, budget: int) -> Iterator[int]:
    """Removable edge sets of ``mask`` as bitmasks, in canonical order."""
    k = model.k
    row = (1 << k) - 1

    def serial(removed: int, b: int) -> bool:
        src = b // k
        return bool((mask & ~removed) >> (src * k) & row)

    return _subsets(_bits(mask), model.pair_costs, budget, serial)


def addition_masks(model: Model, mask: int, budget: int) -> Iterator[int]:
    """Addable sets of absent pairs as bitmasks, in canonical order."""
    full = (1 << (model.k * model.k)) - 1
    return _subsets(_bits(full & ~mask), model.pair_costs, budget)


@dataclass(frozen=True)
class UpdateChoice:
    """One joint move: edges to add and edges to remove.

    ``result`` is the updated model; it is carried along for convenience and
    ignored by equality.
    """

    additions: EdgeSet = field(default_factory=EdgeSet)
    removals: EdgeSet = field(default_factory=EdgeSet)
    result: Model | None = field(default=None, compare=False, repr=False)

    def to_json(self) -> dict:
        return {
            "add": [list(e) for e in self.additions.sorted()],
            "remove": [list(e) for e in self.removals.sorted()],
        }


def enumerate_submodels(m: Model, budget: int) -> Iterator[tuple[EdgeSet, Model]]:
    base = m.edge_mask
    for rem in removal_masks(m, base, budget):
        yield EdgeSet.from_mask(m, rem), m.with_mask(base & ~rem)


def enumerate_supermodels(m: Model, budget: int) -> Iterator[tuple[EdgeSet, Model]]:
    base = m.edge_mask
    for add in addition_masks(m, base, budget):
        yield EdgeSet.from_mask(m, add), m.with_mask(base | add)


def enumerate_updates(m: Model, angel_budget: int, demon_budget: int) -> Iterator[UpdateChoice]:
    base = m.edge_mask
    removals = list(removal_masks(m, base, demon_budget))
    rem_sets = [EdgeSet.from_mask(m, r) for r in removals]
    for add in addition_masks(m, base, angel_budget):
        add_set = EdgeSet.from_mask(m, add)
        for rem, rem_set in zip(removals, rem_sets):
            yield UpdateChoice(add_set, rem_set, m.with_mask((base & ~rem) | add))


def successors(m: Model, s: str) -> list[str]:
    """Targets of the edges leaving ``s``, in lexicographic order."""
    if s not in m.index:
        raise UndeclaredStateError(s)
    return m.successors(s)
