"""Exhaustive construction of the diagram and matrix families as posets.

Six families are built here:

* S(n, k)        -- non-trivial k-noncrossing diagrams of length n, ordered
                    by arc-set inclusion;
* Sstar(m, k)    -- the sub-family using only non-k-relevant arcs;
* So(m, k)       -- the sub-family using only k-relevant arcs;
* M(m, k, r)     -- tautology-bounded matrices ordered by domination;
* P(f, k, r)     -- regular proper diagrams with f free sites, ordered by
                    block-matrix domination;
* D(f, k, r)     -- proper diagrams with f free sites, ordered by
                    suppression reachability.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np

from .crossing import noncrossing_subset_masks
from .diagram import (
    Arc,
    Diagram,
    block_matrix,
    free_sites,
    is_k_noncrossing,
    is_proper,
    is_regular,
    suppress_arc,
    tautology_number,
)
from .errors import InvalidArgumentError, ResourceLimitError
from .matrix import SymmetricMatrix, dominates, enumerate_matrices
from .poset import FinitePoset, chain_stats_from_covers
from .transform import beta_inverse, is_k_relevant


# ---------------------------------------------------------------------------
# arc pools and diagram enumeration


def admissible_arcs(n: int) -> list[Arc]:
    """All legal arcs for length n (no adjacent-site arcs, no full span)."""
    if n < 2:
        raise InvalidArgumentError(f"length must be >= 2, got {n}")
    return [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if 1 < b - a < n - 1]


def relevant_arcs(m: int, k: int) -> list[Arc]:
    """The k-relevant admissible arcs (endpoint gap in (k, m-k))."""
    return [arc for arc in admissible_arcs(m) if is_k_relevant(arc, m, k)]


def nonrelevant_arcs(m: int, k: int) -> list[Arc]:
    return [arc for arc in admissible_arcs(m) if not is_k_relevant(arc, m, k)]


def enumerate_binary_diagrams(n: int):
    """All binary diagrams of length n (plus the trivial one), by matching
    sites left to right."""
    arcs: list[Arc] = []

    def extend(site: int):
        if site > n:
            yield Diagram(n, arcs)
            return
        used = {s for e in arcs for s in e}
        if site in used:
            yield from extend(site + 1)
            return
        yield from extend(site + 1)  # leave the site free
        for t in range(site + 2, n + 1):
            if t not in used and 1 < t - site < n - 1:
                arcs.append((site, t))
                yield from extend(site + 1)
                arcs.pop()

    yield from extend(1)


def enumerate_proper_diagrams(n: int):
    """All proper diagrams of length n."""
    for diagram in enumerate_binary_diagrams(n):
        if not diagram.is_trivial() and is_proper(diagram):
            yield diagram


# ---------------------------------------------------------------------------
# diagram families ordered by inclusion


def _inclusion_family(n: int, k: int, pool: list[Arc], cap: int) -> FinitePoset:
    elements = []
    for mask in noncrossing_subset_masks(pool, k):
        if mask == 0:
            continue
        chosen = [pool[i] for i in range(len(pool)) if mask >> i & 1]
        elements.append(Diagram(n, chosen))
        if len(elements) > cap:
            raise ResourceLimitError(f"family exceeds cap {cap}", bound=cap)
    arc_sets = {d: frozenset(d.arcs) for d in elements}
    return FinitePoset(elements, lambda a, b: arc_sets[a] <= arc_sets[b], validate=False)


def build_S(n: int, k: int, cap: int = 1_000_000) -> FinitePoset:
    """Non-trivial k-noncrossing diagrams of length n under arc inclusion."""
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    return _inclusion_family(n, k, admissible_arcs(n), cap)


def build_So(m: int, k: int, cap: int = 1_000_000) -> FinitePoset:
    """The k-relevant sub-family of S(m, k)."""
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    return _inclusion_family(m, k, relevant_arcs(m, k), cap)


def build_Sstar(m: int, k: int, cap: int = 1_000_000) -> FinitePoset:
    """The non-k-relevant sub-family of S(m, k) (always k-noncrossing)."""
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    return _inclusion_family(m, k, nonrelevant_arcs(m, k), cap)


# ---------------------------------------------------------------------------
# matrix family under domination


def _domination_matrix(matrices: list[SymmetricMatrix]) -> np.ndarray:
    """Boolean entrywise-domination relation, computed in chunks."""
    n = len(matrices)
    flat = np.array(
        [[v for row in mat.rows for v in row] for mat in matrices], dtype=np.int8
    )
    leq = np.zeros((n, n), dtype=bool)
    chunk = max(1, 4_000_000 // max(1, n * flat.shape[1]))
    for start in range(0, n, chunk):
        block = flat[start : start + chunk]
        leq[start : start + chunk] = (block[:, None, :] <= flat[None, :, :]).all(axis=-1)
    return leq


def build_M(m: int, k: int, r: int, cap: int = 10_000_000) -> FinitePoset:
    """The tautology-bounded matrix family under entrywise domination."""
    matrices = sorted(enumerate_matrices(m, k, r, cap=cap), key=lambda mat: mat.key())
    return FinitePoset(matrices, _domination_matrix(matrices), validate=False)


# ---------------------------------------------------------------------------
# regular-diagram family


def build_P(f: int, k: int, r: int, cap: int = 10_000_000) -> FinitePoset:
    """Regular proper diagrams with f free sites, k-noncrossing, tautology
    at most r, ordered by block-matrix domination."""
    if f < 2:
        raise InvalidArgumentError(f"f must be >= 2, got {f}")
    diagrams = [beta_inverse(matrix, k, r) for matrix in enumerate_matrices(f + 1, k, r, cap=cap)]
    leq = _domination_matrix([block_matrix(d) for d in diagrams])
    return FinitePoset(diagrams, leq, validate=False)


def matrix_family_covers(
    m: int, k: int, r: int, cap: int = 10_000_000
) -> tuple[list[SymmetricMatrix], list[list[int]]]:
    """The matrix family with its domination cover digraph.

    The family together with the zero matrix is closed under decrementing
    an entry (asserted below), so any strict domination refines into unit
    steps and the covers are exactly the unit increments inside the family.
    This scales to families too large for a dense order matrix.
    """
    matrices = enumerate_matrices(m, k, r, cap=cap)
    index = {mat.key(): t for t, mat in enumerate(matrices)}
    positions = [
        (i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1) if (i, j) != (1, m)
    ]
    succ: list[list[int]] = []
    for mat in matrices:
        outs = []
        for i, j in positions:
            value = mat.entry(i, j)
            bumped = index.get(_with_entry(mat, i, j, value + 1).key())
            if bumped is not None:
                outs.append(bumped)
            if value:
                down = _with_entry(mat, i, j, value - 1)
                assert down.is_trivial() or down.key() in index, (
                    "family is not closed under entry decrements"
                )
        succ.append(outs)
    return matrices, succ


def _with_entry(mat: SymmetricMatrix, i: int, j: int, value: int) -> SymmetricMatrix:
    rows = [list(row) for row in mat.rows]
    rows[i - 1][j - 1] = value
    rows[j - 1][i - 1] = value
    return SymmetricMatrix(rows)


def matrix_family_chain_stats(m: int, k: int, r: int, cap: int = 10_000_000):
    """(size, rank_cardinality, pure) of the matrix family under domination,
    via the cover digraph (usable where the dense order matrix is not)."""
    matrices, succ = matrix_family_covers(m, k, r, cap=cap)
    rank_length, pure = chain_stats_from_covers(succ)
    return len(matrices), rank_length + 1, pure


# ---------------------------------------------------------------------------
# proper-diagram family under suppression reachability


def proper_length_bound(f: int, r: int) -> int:
    """Largest length of a proper diagram with f free sites and tautology
    at most r: each of the comb(f+1, 2) - 1 - f usable block pairs carries
    one free arc, every further arc costs tautology."""
    return f + 2 * (comb(f + 1, 2) - 1 - f + r)


@lru_cache(maxsize=None)
def suppression_descendants(diagram: Diagram) -> frozenset[Diagram]:
    """The diagram together with everything reachable by suppressing arcs."""
    reached = {diagram}
    for arc in diagram.arcs:
        reached |= suppression_descendants(suppress_arc(diagram, arc))
    return frozenset(reached)


def suppression_leq(small: Diagram, large: Diagram) -> bool:
    """True iff ``small`` arises from ``large`` by a (possibly empty)
    sequence of arc suppressions."""
    return small in suppression_descendants(large)


def build_D(f: int, k: int, r: int, cap: int = 10_000_000) -> FinitePoset:
    """Proper diagrams with f free sites, k-noncrossing, tautology at most
    r, ordered by suppression reachability."""
    if f < 2:
        raise InvalidArgumentError(f"f must be >= 2, got {f}")
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    if r < 0:
        raise InvalidArgumentError(f"r must be >= 0, got {r}")
    elements = []
    for n in range(f + 2, proper_length_bound(f, r) + 1):
        for diagram in enumerate_proper_diagrams(n):
            if (
                len(free_sites(diagram)) == f
                and is_k_noncrossing(diagram, k)
                and tautology_number(diagram) <= r
            ):
                elements.append(diagram)
                if len(elements) > cap:
                    raise ResourceLimitError(f"family exceeds cap {cap}", bound=cap)
    return FinitePoset(elements, suppression_leq, validate=False)


# ---------------------------------------------------------------------------
# membership and dispatch


def in_proper_family(diagram: Diagram, f: int, k: int, r: int) -> bool:
    """Membership in D(f, k, r)."""
    return (
        is_proper(diagram)
        and len(free_sites(diagram)) == f
        and is_k_noncrossing(diagram, k)
        and tautology_number(diagram) <= r
    )


def in_regular_family(diagram: Diagram, f: int, k: int, r: int) -> bool:
    """Membership in P(f, k, r)."""
    return in_proper_family(diagram, f, k, r) and is_regular(diagram)


def build_family(name: str, *, n=None, m=None, f=None, k=None, r=None, cap=None) -> FinitePoset:
    """Dispatch on a family name; see the module docstring for parameters."""
    kwargs = {} if cap is None else {"cap": cap}
    if name == "S":
        return build_S(_need(n, "n"), _need(k, "k"), **kwargs)
    if name == "So":
        return build_So(_need(m, "m"), _need(k, "k"), **kwargs)
    if name == "Sstar":
        return build_Sstar(_need(m, "m"), _need(k, "k"), **kwargs)
    if name == "M":
        return build_M(_need(m, "m"), _need(k, "k"), _need(r, "r"), **kwargs)
    if name == "P":
        return build_P(_need(f, "f"), _need(k, "k"), _need(r, "r"), **kwargs)
    if name == "D":
        return build_D(_need(f, "f"), _need(k, "k"), _need(r, "r"), **kwargs)
    raise InvalidArgumentError(f"unknown family {name!r}")


def _need(value, label):
    if value is None:
        raise InvalidArgumentError(f"parameter {label} is required")
    return value
