"""In-memory model of weighted bipolar argumentation graphs (BAGs).

A BAG is an ordered list of named arguments, each with an initial weight in
[0, 1], plus two disjoint sets of directed edges: attacks and supports.
Arguments are addressed by dense 0-based index everywhere inside the library;
names only matter at the I/O boundary.
"""
from __future__ import annotations

import heapq
from typing import Iterable, Optional, Sequence

import numpy as np

Edge = tuple[int, int]


class BagValidationError(ValueError):
    """A BAG violated a structural invariant during construction."""


class Bag:
    """Immutable weighted bipolar argumentation graph.

    Parameters
    ----------
    names:
        Argument names in declaration order. Must be unique.
    weights:
        Initial weight per argument, each in [0, 1].
    attacks, supports:
        Ordered (source, target) index pairs. Duplicates collapse; the same
        ordered pair may not appear in both relations because a parent is
        either an attacker or a supporter, never both.
    """

    __slots__ = ("names", "weights", "attacks", "supports",
                 "_attackers", "_supporters")

    def __init__(
        self,
        names: Sequence[str],
        weights: Sequence[float],
        attacks: Iterable[Edge] = (),
        supports: Iterable[Edge] = (),
    ):
        names = tuple(names)
        if len(set(names)) != len(names):
            dupes = sorted({x for x in names if names.count(x) > 1})
            raise BagValidationError(f"duplicate argument names: {dupes}")
        weight_arr = np.asarray(weights, dtype=float)
        if weight_arr.shape != (len(names),):
            raise BagValidationError(
                f"expected {len(names)} weights, got shape {weight_arr.shape}"
            )
        bad = [i for i, w in enumerate(weight_arr) if not 0.0 <= w <= 1.0]
        if bad:
            raise BagValidationError(
                f"weights outside [0,1] for arguments {[names[i] for i in bad]}"
            )

        n = len(names)
        attack_set = frozenset(tuple(e) for e in attacks)
        support_set = frozenset(tuple(e) for e in supports)
        for label, edge_set in (("attack", attack_set), ("support", support_set)):
            for u, v in edge_set:
                if not (0 <= u < n and 0 <= v < n):
                    raise BagValidationError(
                        f"{label} edge ({u},{v}) references a missing argument"
                    )
        collisions = attack_set & support_set
        if collisions:
            pretty = sorted((names[u], names[v]) for u, v in collisions)
            raise BagValidationError(
                f"edges declared as both attack and support: {pretty}"
            )

        weight_arr.setflags(write=False)
        self.names = names
        self.weights = weight_arr
        self.attacks = attack_set
        self.supports = support_set

        attackers: list[list[int]] = [[] for _ in range(n)]
        supporters: list[list[int]] = [[] for _ in range(n)]
        for u, v in attack_set:
            attackers[v].append(u)
        for u, v in support_set:
            supporters[v].append(u)
        self._attackers = tuple(tuple(sorted(js)) for js in attackers)
        self._supporters = tuple(tuple(sorted(js)) for js in supporters)

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown argument {name!r}") from None

    def attackers_of(self, i: int) -> tuple[int, ...]:
        return self._attackers[i]

    def supporters_of(self, i: int) -> tuple[int, ...]:
        return self._supporters[i]

    def indegree(self, i: int) -> int:
        return len(self._attackers[i]) + len(self._supporters[i])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Bag):
            return NotImplemented
        return (
            self.names == other.names
            and np.array_equal(self.weights, other.weights)
            and self.attacks == other.attacks
            and self.supports == other.supports
        )

    def __hash__(self) -> int:
        return hash((self.names, self.weights.tobytes(),
                     self.attacks, self.supports))

    def __repr__(self) -> str:
        return (f"Bag(n={self.n}, attacks={len(self.attacks)}, "
                f"supports={len(self.supports)})")


def parent_vector(bag: Bag, i: int) -> np.ndarray:
    """Signed parent row for argument ``i``: -1 attacker, +1 supporter, 0 else.

    Raises IndexError when ``i`` is out of range.
    """
    if not 0 <= i < bag.n:
        raise IndexError(f"argument index {i} out of range for n={bag.n}")
    v = np.zeros(bag.n, dtype=int)
    v[list(bag.attackers_of(i))] = -1
    v[list(bag.supporters_of(i))] = 1
    return v


def max_indegree(bag: Bag) -> int:
    """Largest number of parents (attackers plus supporters) of any argument."""
    if bag.n == 0:
        return 0
    return max(bag.indegree(i) for i in range(bag.n))


def topological_order(bag: Bag) -> Optional[list[int]]:
    """Topological order over attacks+supports, or None when the graph is cyclic.

    Every edge (u, v) satisfies position(u) < position(v) in the returned
    order. Among the ready arguments the smallest index is emitted first, so
    the order is deterministic.
    """
    n = bag.n
    children: list[list[int]] = [[] for _ in range(n)]
    pending = [0] * n
    for i in range(n):
        parents = bag.attackers_of(i) + bag.supporters_of(i)
        pending[i] = len(parents)
        for j in parents:
            children[j].append(i)

    ready = [i for i in range(n) if pending[i] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        u = heapq.heappop(ready)
        order.append(u)
        for v in children[u]:
            pending[v] -= 1
            if pending[v] == 0:
                heapq.heappush(ready, v)
    if len(order) < n:
        return None
    return order
