"""Finite posets with explicit order matrices.

Elements are kept in a canonical order and the relation is stored as a
dense boolean matrix, validated on construction.  Provides chains and
purity, covers, intervals, bottom adjunction, direct products,
isomorphism testing, order-map classification, and DOT/stats export.
"""

from __future__ import annotations

from collections import Counter, deque
from collections.abc import Callable, Iterable, Mapping

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError


def topological_order(succ: list[list[int]]) -> list[int]:
    """Topological order of an acyclic cover digraph given as adjacency lists."""
    indeg = [0] * len(succ)
    for outs in succ:
        for j in outs:
            indeg[j] += 1
    queue = deque(i for i, d in enumerate(indeg) if d == 0)
    order = []
    while queue:
        i = queue.popleft()
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                queue.append(j)
    if len(order) != len(succ):
        raise InvalidArgumentError("cover digraph has a cycle")
    return order


def chain_extents_from_covers(succ: list[list[int]]):
    """Per node of a cover digraph: (min, max) path length down to a source
    and up to a sink."""
    n = len(succ)
    pred: list[list[int]] = [[] for _ in range(n)]
    for i, outs in enumerate(succ):
        for j in outs:
            pred[j].append(i)
    order = topological_order(succ)
    min_down = [0] * n
    max_down = [0] * n
    for i in order:
        if pred[i]:
            min_down[i] = 1 + min(min_down[p] for p in pred[i])
            max_down[i] = 1 + max(max_down[p] for p in pred[i])
    min_up = [0] * n
    max_up = [0] * n
    for i in reversed(order):
        if succ[i]:
            min_up[i] = 1 + min(min_up[s] for s in succ[i])
            max_up[i] = 1 + max(max_up[s] for s in succ[i])
    return min_down, max_down, min_up, max_up


def chain_stats_from_covers(succ: list[list[int]]) -> tuple[int, bool]:
    """(rank_length, pure) of the poset whose cover digraph is ``succ``."""
    if not succ:
        raise InvalidArgumentError("empty poset has no rank")
    min_down, max_down, min_up, max_up = chain_extents_from_covers(succ)
    totals = {max_down[i] + max_up[i] for i in range(len(succ))}
    pure = min_down == max_down and min_up == max_up and len(totals) == 1
    return max(max_down), pure


def element_key(element) -> str:
    """Deterministic sort key usable for the element types that occur here:
    diagrams and matrices (via .key()), strings, frozensets, markers and
    tuples of any of those."""
    if hasattr(element, "key") and callable(element.key):
        return element.key()
    if isinstance(element, str):
        return element
    if isinstance(element, frozenset):
        return "{" + ",".join(sorted(str(x) for x in element)) + "}"
    if isinstance(element, tuple):
        return "(" + "|".join(element_key(x) for x in element) + ")"
    return repr(element)


class FinitePoset:
    """A finite poset over hashable elements.

    ``leq`` may be a callable (evaluated on all pairs) or a square boolean
    matrix aligned with ``elements``.  Reflexivity, antisymmetry and
    transitivity are verified, with a witness in the error message.
    """

    def __init__(self, elements: Iterable, leq, *, validate: bool = True):
        supplied = list(elements)
        permutation = sorted(range(len(supplied)), key=lambda i: element_key(supplied[i]))
        self.elements: tuple = tuple(supplied[i] for i in permutation)
        self._index: dict = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise InvalidArgumentError("duplicate elements")
        n = len(self.elements)
        if callable(leq):
            matrix = np.zeros((n, n), dtype=bool)
            for i, a in enumerate(self.elements):
                for j, b in enumerate(self.elements):
                    matrix[i, j] = bool(leq(a, b))
        else:
            matrix = np.asarray(leq, dtype=bool)
            if matrix.shape != (n, n):
                raise InvalidArgumentError(f"order matrix shape {matrix.shape} != ({n},{n})")
            # a supplied matrix is aligned with the input order; reindex it
            # to the canonical element order
            matrix = matrix[np.ix_(permutation, permutation)]
        self.leq_matrix = matrix
        if validate:
            self._validate()

    def _validate(self) -> None:
        m = self.leq_matrix
        if not m.diagonal().all():
            i = int(np.argmin(m.diagonal()))
            raise InvalidArgumentError(f"not reflexive at {self.elements[i]!r}")
        both = m & m.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise InvalidArgumentError(
                f"not antisymmetric: {self.elements[i]!r} and {self.elements[j]!r}"
            )
        closure = m @ m
        gap = closure & ~m
        if gap.any():
            i, j = map(int, np.argwhere(gap)[0])
            raise InvalidArgumentError(
                f"not transitive: {self.elements[i]!r} ... {self.elements[j]!r}"
            )

    # -- basic queries --

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, element) -> bool:
        return element in self._index

    def index(self, element) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise InvalidArgumentError(f"{element!r} is not an element") from None

    def leq(self, a, b) -> bool:
        return bool(self.leq_matrix[self.index(a), self.index(b)])

    def minimal_elements(self) -> tuple:
        m = self.leq_matrix
        return tuple(
            self.elements[j] for j in range(len(self)) if m[:, j].sum() == 1
        )

    def maximal_elements(self) -> tuple:
        m = self.leq_matrix
        return tuple(
            self.elements[i] for i in range(len(self)) if m[i, :].sum() == 1
        )

    def cover_edges(self) -> list[tuple]:
        """Pairs (a, b) with a < b and nothing strictly between."""
        strict = self.leq_matrix & ~np.eye(len(self), dtype=bool)
        through = strict @ strict
        covers = strict & ~through
        return [
            (self.elements[i], self.elements[j]) for i, j in np.argwhere(covers)
        ]

    # -- chains and purity --

    def _cover_dag(self) -> list[list[int]]:
        strict = self.leq_matrix & ~np.eye(len(self), dtype=bool)
        through = strict @ strict
        covers = strict & ~through
        return [list(np.flatnonzero(covers[i])) for i in range(len(self))]

    def _chain_extents(self):
        """Per element: (min, max) cover-path length down to a minimal
        element and up to a maximal one."""
        return chain_extents_from_covers(self._cover_dag())

    def rank_length(self) -> int:
        """Number of edges of a longest chain."""
        if not self.elements:
            raise InvalidArgumentError("empty poset has no rank")
        _, max_down, _, _ = self._chain_extents()
        return max(max_down)

    def rank_cardinality(self) -> int:
        """Number of elements of a longest chain."""
        return self.rank_length() + 1

    def is_pure(self) -> bool:
        """True iff all maximal chains have the same length."""
        if not self.elements:
            return True
        min_down, max_down, min_up, max_up = self._chain_extents()
        totals = {max_down[i] + max_up[i] for i in range(len(self))}
        return (
            min_down == max_down
            and min_up == max_up
            and len(totals) == 1
        )

    # -- derived posets --

    def restrict(self, elements: Iterable) -> "FinitePoset":
        # self.elements is key-sorted, so sorted indices keep the sub-matrix
        # aligned with the key order the constructor will use
        chosen = sorted(self.index(e) for e in elements)
        sub = self.leq_matrix[np.ix_(chosen, chosen)]
        return FinitePoset([self.elements[i] for i in chosen], sub, validate=False)

    def open_interval_above(self, element) -> "FinitePoset":
        """Sub-poset of elements strictly greater than ``element``."""
        i = self.index(element)
        above = [
            self.elements[j]
            for j in np.flatnonzero(self.leq_matrix[i])
            if j != i
        ]
        return self.restrict(above)

    def adjoin_bottom(self, bottom) -> "FinitePoset":
        """New poset with ``bottom`` strictly below every element."""
        if bottom in self:
            raise InvalidArgumentError(f"{bottom!r} is already an element")
        elements = list(self.elements) + [bottom]

        def relation(a, b):
            if a is bottom or a == bottom:
                return True
            if b is bottom or b == bottom:
                return False
            return self.leq(a, b)

        return FinitePoset(elements, relation, validate=False)

    def direct_product(self, other: "FinitePoset") -> "FinitePoset":
        """Componentwise order on pairs."""
        elements = [(a, b) for a in self.elements for b in other.elements]
        left = self.leq_matrix
        right = other.leq_matrix

        def relation(p, q):
            return bool(
                left[self.index(p[0]), self.index(q[0])]
                and right[other.index(p[1]), other.index(q[1])]
            )

        return FinitePoset(elements, relation, validate=False)

    # -- isomorphism and order maps --

    def _refined_classes(self) -> list[int]:
        """Stable colouring of elements by iterated cover-degree refinement."""
        succ = self._cover_dag()
        pred: list[list[int]] = [[] for _ in range(len(self))]
        for i, outs in enumerate(succ):
            for j in outs:
                pred[j].append(i)
        down = self.leq_matrix.sum(axis=0)
        up = self.leq_matrix.sum(axis=1)
        colour = {
            i: (int(down[i]), int(up[i]), len(pred[i]), len(succ[i]))
            for i in range(len(self))
        }
        for _ in range(len(self)):
            fresh = {
                i: (
                    colour[i],
                    tuple(sorted(Counter(colour[p] for p in pred[i]).items())),
                    tuple(sorted(Counter(colour[s] for s in succ[i]).items())),
                )
                for i in range(len(self))
            }
            if len(set(fresh.values())) == len(set(colour.values())):
                break
            colour = fresh
        palette = {c: n for n, c in enumerate(sorted(set(colour.values()), key=repr))}
        return [palette[colour[i]] for i in range(len(self))]

    def is_isomorphic(self, other: "FinitePoset", cap: int = 2000) -> bool:
        """Exact order-isomorphism test (invariant-refined backtracking)."""
        if len(self) != len(other):
            return False
        mine = self._refined_classes()
        theirs = other._refined_classes()
        if sorted(mine) != sorted(theirs):
            return False
        candidates = [
            [j for j in range(len(other)) if theirs[j] == mine[i]]
            for i in range(len(self))
        ]
        order = sorted(range(len(self)), key=lambda i: len(candidates[i]))
        a, b = self.leq_matrix, other.leq_matrix
        used = [False] * len(other)
        assigned: dict[int, int] = {}
        nodes = 0

        def extend(depth: int) -> bool:
            nonlocal nodes
            if depth == len(order):
                return True
            nodes += 1
            if nodes > cap * len(self):
                raise ResourceLimitError(
                    f"isomorphism search exceeded {cap * len(self)} nodes", bound=cap
                )
            i = order[depth]
            for j in candidates[i]:
                if used[j]:
                    continue
                if any(
                    a[i, i2] != b[j, j2] or a[i2, i] != b[j2, j]
                    for i2, j2 in assigned.items()
                ):
                    continue
                used[j] = True
                assigned[i] = j
                if extend(depth + 1):
                    return True
                used[j] = False
                del assigned[i]
            return False

        return extend(0)

    def check_order_map(self, other: "FinitePoset", mapping: Mapping | Callable) -> str:
        """Classify a map into ``other`` as 'isomorphism', 'homomorphism'
        (order-preserving) or 'neither'."""
        if callable(mapping):
            images = [mapping(e) for e in self.elements]
        else:
            images = [mapping[e] for e in self.elements]
        targets = []
        for e, image in zip(self.elements, images):
            if image not in other:
                raise InvalidArgumentError(f"image of {e!r} is not in the codomain")
            targets.append(other.index(image))
        a, b = self.leq_matrix, other.leq_matrix
        preserving = all(
            b[targets[i], targets[j]]
            for i in range(len(self))
            for j in range(len(self))
            if a[i, j]
        )
        if not preserving:
            return "neither"
        bijective = len(set(targets)) == len(other.elements) == len(self)
        reflecting = all(
            a[i, j] == b[targets[i], targets[j]]
            for i in range(len(self))
            for j in range(len(self))
        )
        if bijective and reflecting:
            return "isomorphism"
        return "homomorphism"

    # -- export --

    def to_dot(self, name: str = "poset", label=element_key) -> str:
        """Graphviz digraph of the cover relation (edges point upward)."""
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, e in enumerate(self.elements):
            text = label(e).replace('"', '\\"')
            lines.append(f'  n{i} [label="{text}"];')
        strict = self.leq_matrix & ~np.eye(len(self), dtype=bool)
        covers = strict & ~(strict @ strict)
        for i, j in np.argwhere(covers):
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines)

    def stats_text(self) -> str:
        if not self.elements:
            return "elements=0"
        return (
            f"elements={len(self)} covers={len(self.cover_edges())} "
            f"minimal={len(self.minimal_elements())} "
            f"maximal={len(self.maximal_elements())} "
            f"rank_length={self.rank_length()} "
            f"rank_cardinality={self.rank_cardinality()} "
            f"pure={self.is_pure()}"
        )
