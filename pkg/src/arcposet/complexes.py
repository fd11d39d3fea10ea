"""Finite simplicial complexes and exact integral homology.

Complexes are stored by their facets (frozensets of hashable vertex
labels).  Reduced homology is computed over the integers from the
augmented boundary matrices via Smith normal form, after an elementary
collapse pass that shrinks the face set without changing homotopy type.
Also built here: order complexes of posets, joins, the complex of
k-noncrossing arc subsets, and the multitriangulation complex of
k-relevant polygon diagonals.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .crossing import crossing_adjacency, masked_clique_exists, noncrossing_subset_masks
from .diagram import Arc
from .errors import InvalidArgumentError
from .poset import FinitePoset, element_key
from .transform import is_k_relevant


class SimplicialComplex:
    """A finite simplicial complex, held as its maximal faces."""

    def __init__(self, facets):
        candidates = {frozenset(f) for f in facets}
        maximal = [f for f in candidates if not any(f < g for g in candidates)]
        self.facets: tuple[frozenset, ...] = tuple(
            sorted(maximal, key=lambda f: (len(f), sorted(element_key(v) for v in f)))
        )

    def is_void(self) -> bool:
        """True for the complex with no faces at all (not even the empty one)."""
        return not self.facets

    def vertices(self) -> tuple:
        seen = set().union(*self.facets) if self.facets else set()
        return tuple(sorted(seen, key=element_key))

    def dimension(self) -> int:
        if self.is_void():
            raise InvalidArgumentError("the void complex has no dimension")
        return max(len(f) for f in self.facets) - 1

    def faces(self, include_empty: bool = False) -> set[frozenset]:
        """All faces (downward closure of the facets)."""
        result: set[frozenset] = set()
        for facet in self.facets:
            members = tuple(facet)
            for size in range(1, len(members) + 1):
                for combo in combinations(members, size):
                    result.add(frozenset(combo))
        if include_empty and not self.is_void():
            result.add(frozenset())
        return result

    def contains(self, face) -> bool:
        face = frozenset(face)
        return any(face <= facet for facet in self.facets)

    def f_vector(self) -> tuple[int, ...]:
        """Face counts by dimension, from 0 up."""
        if self.is_void():
            return ()
        counts = [0] * (self.dimension() + 1)
        for face in self.faces():
            counts[len(face) - 1] += 1
        return tuple(counts)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.f_vector()))

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1


def simplex(d: int) -> SimplicialComplex:
    """The full d-simplex on vertices '0'..'d'; d = -1 is the empty complex."""
    if d < -1:
        raise InvalidArgumentError(f"simplex dimension must be >= -1, got {d}")
    if d == -1:
        return SimplicialComplex([frozenset()])
    return SimplicialComplex([frozenset(str(i) for i in range(d + 1))])


def join(left: SimplicialComplex, right: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; vertex labels are prefixed if the two sides collide."""
    if left.is_void() or right.is_void():
        raise InvalidArgumentError("join with the void complex is undefined")
    collision = set(left.vertices()) & set(right.vertices())
    if collision:
        left_facets = [frozenset(("L", v) for v in f) for f in left.facets]
        right_facets = [frozenset(("R", v) for v in f) for f in right.facets]
    else:
        left_facets = list(left.facets)
        right_facets = list(right.facets)
    return SimplicialComplex([f | g for f in left_facets for g in right_facets])


# ---------------------------------------------------------------------------
# complexes from posets and back


def order_complex(poset: FinitePoset) -> SimplicialComplex:
    """Faces are the chains of the poset; facets its maximal chains."""
    covers = poset._cover_dag()
    minimal = [
        i for i in range(len(poset)) if not any(i in outs for outs in covers)
    ]
    facets: list[frozenset] = []
    stack: list[int] = []

    def descend(i: int) -> None:
        stack.append(i)
        if covers[i]:
            for j in covers[i]:
                descend(j)
        else:
            facets.append(frozenset(poset.elements[t] for t in stack))
        stack.pop()

    for i in minimal:
        descend(i)
    if not facets:
        return SimplicialComplex([frozenset()])
    return SimplicialComplex(facets)


def face_poset(complex_: SimplicialComplex) -> FinitePoset:
    """Nonempty faces ordered by inclusion."""
    faces = sorted(complex_.faces(), key=element_key)
    return FinitePoset(faces, lambda a, b: a <= b, validate=False)


# ---------------------------------------------------------------------------
# arc and diagonal complexes


def noncrossing_complex(pool: list[Arc], k: int, label=None) -> SimplicialComplex:
    """The complex whose faces are the k-noncrossing subsets of ``pool``.

    This is the underlying complex of the inclusion-ordered diagram family
    on the same arc pool: the family's order complex is its barycentric
    subdivision, so both have the same homology.
    """
    if label is None:
        label = lambda arc: f"{arc[0]}-{arc[1]}"
    adjacency = crossing_adjacency(pool)
    facets = []
    for mask in noncrossing_subset_masks(pool, k):
        maximal = all(
            mask >> i & 1 or masked_clique_exists(adjacency, mask & adjacency[i], k)
            for i in range(len(pool))
        )
        if maximal:
            facets.append(frozenset(label(pool[i]) for i in range(len(pool)) if mask >> i & 1))
    return SimplicialComplex(facets)


def build_gamma(m: int, k: int) -> list[Arc]:
    """The k-relevant diagonals of a convex m-gon (endpoint gap in (k, m-k))."""
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    return [
        (a, b)
        for a in range(1, m + 1)
        for b in range(a + 1, m + 1)
        if is_k_relevant((a, b), m, k)
    ]


def build_T(m: int, k: int) -> SimplicialComplex:
    """The multitriangulation complex: faces are the k-noncrossing sets of
    k-relevant diagonals."""
    return noncrossing_complex(build_gamma(m, k), k)


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyResult:
    """Reduced integral homology: dimension -> (betti, torsion factors)."""

    groups: dict[int, tuple[int, tuple[int, ...]]]

    def betti(self, d: int) -> int:
        return self.groups.get(d, (0, ()))[0]

    def torsion(self, d: int) -> tuple[int, ...]:
        return self.groups.get(d, (0, ()))[1]

    def nontrivial_dims(self) -> tuple[int, ...]:
        return tuple(
            sorted(d for d, (b, t) in self.groups.items() if b or t)
        )

    def is_trivial(self) -> bool:
        return not self.nontrivial_dims()

    def sphere_dimension(self) -> int | None:
        """d when the homology is that of a d-sphere, else None."""
        dims = self.nontrivial_dims()
        if len(dims) != 1:
            return None
        d = dims[0]
        if self.groups[d] == (1, ()):
            return d
        return None

    def report_lines(self) -> list[str]:
        lines = []
        for d in self.nontrivial_dims():
            betti, torsion = self.groups[d]
            part = f"Z^{betti}" if betti > 1 else ("Z" if betti == 1 else "0")
            for t in torsion:
                part += f" + Z/{t}"
            lines.append(f"H~_{d} = {part}")
        return lines or ["trivial"]

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomologyResult):
            return NotImplemented
        dims = set(self.groups) | set(other.groups)
        return all(
            self.betti(d) == other.betti(d)
            and tuple(sorted(self.torsion(d))) == tuple(sorted(other.torsion(d)))
            for d in dims
        )


def _collapse(faces: set[frozenset], vertices: tuple) -> set[frozenset]:
    """Remove free pairs (a face whose unique coface is itself maximal)
    until none are found.  Each removal is an elementary collapse, so the
    result has the same homotopy type."""
    cofaces = {f: 0 for f in faces}
    for f in faces:
        for v in f:
            sub = f - {v}
            if sub:
                cofaces[sub] = cofaces.get(sub, 0) + 1
    queue = [f for f, c in cofaces.items() if c == 1]
    while queue:
        sigma = queue.pop()
        if sigma not in faces or cofaces[sigma] != 1:
            continue
        tau = None
        for v in vertices:
            if v not in sigma:
                candidate = sigma | {v}
                if candidate in faces:
                    tau = candidate
                    break
        if tau is None or cofaces[tau] != 0:
            continue
        faces.discard(sigma)
        faces.discard(tau)
        for removed in (sigma, tau):
            for v in removed:
                sub = removed - {v}
                if sub in faces:
                    cofaces[sub] -= 1
                    if cofaces[sub] == 1:
                        queue.append(sub)
                    elif cofaces[sub] == 0:
                        queue.append(sub)  # may become the coface of a new free pair
    return faces


def reduced_homology(complex_: SimplicialComplex, collapse: bool = True) -> HomologyResult:
    """Reduced homology over the integers, exactly."""
    from .snf import invariant_factors

    if complex_.is_void():
        return HomologyResult({})
    faces = complex_.faces()
    if collapse:
        faces = _collapse(set(faces), complex_.vertices())
    if not faces:
        # everything collapsed onto the empty face
        return HomologyResult({-1: (1, ())})

    by_dim: dict[int, list[frozenset]] = {-1: [frozenset()]}
    for face in faces:
        by_dim.setdefault(len(face) - 1, []).append(face)
    top = max(by_dim)
    for d in by_dim:
        by_dim[d].sort(key=element_key)
    index = {d: {f: i for i, f in enumerate(by_dim[d])} for d in by_dim}

    ranks: dict[int, int] = {}
    torsion_source: dict[int, tuple[int, ...]] = {}
    for d in range(0, top + 1):
        entries: dict[tuple[int, int], int] = {}
        lower = index.get(d - 1, {})
        for col, face in enumerate(by_dim.get(d, [])):
            ordered = sorted(face, key=element_key)
            for i, v in enumerate(ordered):
                sub = face - {v}
                row = lower.get(sub)
                if row is not None:
                    entries[(row, col)] = (-1) ** i
        factors = invariant_factors(entries, len(lower), len(by_dim.get(d, [])))
        ranks[d] = len(factors)
        torsion_source[d - 1] = tuple(f for f in factors if f > 1)

    groups: dict[int, tuple[int, tuple[int, ...]]] = {}
    for d in range(-1, top + 1):
        betti = len(by_dim.get(d, [])) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        groups[d] = (betti, torsion_source.get(d, ()))
    return HomologyResult(groups)


def sphere_signature(complex_: SimplicialComplex) -> int | None:
    """d when the complex is pure of dimension d with the reduced homology
    of a d-sphere (a necessary condition for being a d-sphere)."""
    if complex_.is_void() or not complex_.is_pure():
        return None
    d = reduced_homology(complex_).sphere_dimension()
    if d is not None and d == complex_.dimension():
        return d
    return None


def join_signature(left: int | None, right: int | None) -> int | None:
    """Sphere dimension of a join of two sphere-like complexes
    (S^a * S^b = S^(a+b+1)); None propagates."""
    if left is None or right is None:
        return None
    return left + right + 1


# ---------------------------------------------------------------------------
# facet-list file format: one facet per line, comma-separated labels


def write_facets(complex_: SimplicialComplex) -> str:
    lines = []
    for facet in complex_.facets:
        lines.append(",".join(sorted(str(v) for v in facet)))
    return "\n".join(lines) + "\n"


def read_facets(text: str) -> SimplicialComplex:
    facets = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        facets.append(frozenset(part.strip() for part in line.split(",") if part.strip()))
    if not facets:
        raise InvalidArgumentError("facet list is empty")
    return SimplicialComplex(facets)
