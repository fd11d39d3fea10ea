"""Named exhaustive verification checks over explicit parameter grids.

Each check re-derives one structural claim from first principles on a
small grid and reports pass/fail per grid point with a counterexample
key on failure.  Wall time is recorded on the report object but never
serialized, so output stays byte-reproducible.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field
from math import comb

from .complexes import (
    build_T,
    join,
    noncrossing_complex,
    reduced_homology,
    sphere_signature,
)
from .diagram import (
    Diagram,
    adjacency_matrix,
    block_matrix,
    crossing_count,
    free_sites,
    is_regular,
    parallel_classes,
    p_value_of_diagram,
)
from .errors import InvalidArgumentError
from .families import (
    admissible_arcs,
    build_D,
    build_P,
    enumerate_proper_diagrams,
    matrix_family_chain_stats,
    nonrelevant_arcs,
    relevant_arcs,
)
from .crossing import noncrossing_subset_masks
from .matrix import enumerate_matrices
from .transform import (
    BOTTOM_RELEVANT,
    BOTTOM_STAR,
    beta_inverse,
    canonicalize,
    dual,
    equivalent,
    equivalent_by_definition,
    kappa,
    realize_matrix,
    swap_orbit,
    tau_inverse,
    theta,
    theta_inverse,
)


@dataclass(frozen=True)
class CheckPoint:
    params: dict
    passed: bool
    detail: str
    seconds: float


@dataclass
class VerificationReport:
    check: str
    points: list[CheckPoint] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.points)


# ---------------------------------------------------------------------------
# individual checks; each returns (passed, detail)


def _check_thm11(params):
    """Homology of the order complex of the regular-diagram family at r=0.

    The family is order-isomorphic to the inclusion family of k-noncrossing
    arc subsets (checked by the 'tau' check), whose order complex is the
    barycentric subdivision of the noncrossing complex computed here, so
    both have the same homology.  Prediction: the join of a sphere of
    dimension k(f-2k)-1 with a simplex of dimension (f+1)(k-1)-1.
    """
    f, k = params["f"], params["k"]
    complex_ = noncrossing_complex(admissible_arcs(f + 1), k)
    homology = reduced_homology(complex_)
    simplex_dim = (f + 1) * (k - 1) - 1
    sphere_dim = k * (f - 2 * k) - 1
    if simplex_dim >= 0:
        ok = homology.is_trivial()
        return ok, f"homology {homology.report_lines()} (expected trivial)"
    signature = sphere_signature(complex_)
    ok = signature == sphere_dim
    return ok, f"sphere signature {signature} (expected {sphere_dim})"


def _check_thm12(params):
    """Purity and rank of the tautology-bounded family under domination."""
    f, k, r = params["f"], params["k"], params["r"]
    size, rank_card, pure = matrix_family_chain_stats(f + 1, k, r)
    expected = k * (2 * f - 2 * k + 1) + r - f - 1
    ok = pure and rank_card == expected
    return ok, f"size {size}, rank_cardinality {rank_card} (expected {expected}), pure {pure}"


def _check_beta(params):
    """beta_inverse is a bijection from matrices onto regular diagrams with
    block matrix as its inverse; both orders are block-matrix domination,
    so this makes beta an order-isomorphism."""
    f, k, r = params["f"], params["k"], params["r"]
    matrices = enumerate_matrices(f + 1, k, r)
    images = set()
    for matrix in matrices:
        diagram = beta_inverse(matrix, k, r)
        if not is_regular(diagram) or len(free_sites(diagram)) != f:
            return False, f"non-regular image for {matrix.key()}"
        if block_matrix(diagram) != matrix:
            return False, f"beta(beta_inverse) mismatch at {matrix.key()}"
        images.add(diagram)
    ok = len(images) == len(matrices)
    return ok, f"{len(matrices)} matrices, {len(images)} distinct regular diagrams"


def _check_tau(params):
    """tau_inverse . beta maps the r=0 regular family exactly onto the
    inclusion family of k-noncrossing arc subsets."""
    f, k = params["f"], params["k"]
    pool = admissible_arcs(f + 1)
    expected = set()
    for mask in noncrossing_subset_masks(pool, k):
        if mask:
            expected.add(frozenset(pool[i] for i in range(len(pool)) if mask >> i & 1))
    got = set()
    for matrix in enumerate_matrices(f + 1, k, 0):
        diagram = beta_inverse(matrix, k, 0)
        got.add(frozenset(tau_inverse(block_matrix(diagram)).arcs))
    ok = got == expected
    return ok, f"{len(got)} images vs {len(expected)} k-noncrossing arc subsets"


def _check_rho(params):
    """canonicalize is a surjective order map from the proper family onto
    the regular family."""
    f, k, r = params["f"], params["k"], params["r"]
    proper = build_D(f, k, r)
    regular = build_P(f, k, r)
    image = {canonicalize(d) for d in proper.elements}
    if image != set(regular.elements):
        return False, "image of canonicalize is not the regular family"
    kind = proper.check_order_map(regular, canonicalize)
    ok = kind in ("homomorphism", "isomorphism")
    return ok, f"|D|={len(proper)}, |P|={len(regular)}, map: {kind}"


def _check_theta(params):
    """Faces of the multitriangulation complex correspond to the diagrams
    on k-relevant arcs, and the two maps invert each other."""
    m, k = params["m"], params["k"]
    complex_ = build_T(m, k)
    faces = complex_.faces()
    count = 0
    for face in faces:
        diagram = theta(face, m, k)
        if theta_inverse(diagram, k) != face:
            return False, f"round-trip failed on {sorted(face)}"
        count += 1
    pool = relevant_arcs(m, k)
    expected = sum(1 for mask in noncrossing_subset_masks(pool, k) if mask)
    ok = count == expected
    return ok, f"{count} faces vs {expected} relevant-arc diagrams"


def _check_kappa(params):
    """The split into non-relevant and relevant parts is a bijection onto
    the product of the two sub-families (above the adjoined bottoms); the
    orders agree because the arc set is the disjoint union of the parts."""
    m, k = params["m"], params["k"]
    pool = admissible_arcs(m)
    star_count = sum(1 for mask in noncrossing_subset_masks(nonrelevant_arcs(m, k), k) if mask)
    rel_count = sum(1 for mask in noncrossing_subset_masks(relevant_arcs(m, k), k) if mask)
    seen = set()
    total = 0
    for mask in noncrossing_subset_masks(pool, k):
        if not mask:
            continue
        diagram = Diagram(m, [pool[i] for i in range(len(pool)) if mask >> i & 1])
        star, rel = kappa(diagram, k)
        star_key = star.key() if isinstance(star, Diagram) else repr(BOTTOM_STAR)
        rel_key = rel.key() if isinstance(rel, Diagram) else repr(BOTTOM_RELEVANT)
        seen.add((star_key, rel_key))
        total += 1
    product_size = (star_count + 1) * (rel_count + 1) - 1
    ok = total == len(seen) == product_size
    return ok, (
        f"|S|={total}, distinct images {len(seen)}, "
        f"product size {product_size} (star {star_count}, relevant {rel_count})"
    )


def _check_equivalence(params):
    """Block-matrix equality coincides with the free-site-preserving arc
    bijection, over every proper diagram pair of each length."""
    nmax = params.get("n", 8)
    for n in range(4, nmax + 1):
        diagrams = list(enumerate_proper_diagrams(n))
        for i, a in enumerate(diagrams):
            for b in diagrams[i:]:
                if equivalent(a, b) != equivalent_by_definition(a, b):
                    return False, f"mismatch: {a.key()} vs {b.key()}"
    return True, f"all proper diagram pairs up to length {nmax} agree"


def _check_regular_unique(params):
    """Each block-matrix fiber has exactly one regular diagram; it is the
    canonical form, crossing-minimal, and the swap orbit fills the fiber."""
    nmax = params.get("n", 8)
    fibers = defaultdict(list)
    for n in range(4, nmax + 1):
        for diagram in enumerate_proper_diagrams(n):
            fibers[(n, block_matrix(diagram).key())].append(diagram)
    for (n, _), fiber in fibers.items():
        regulars = [d for d in fiber if is_regular(d)]
        if len(regulars) != 1:
            return False, f"fiber of {fiber[0].key()} has {len(regulars)} regular diagrams"
        regular = regulars[0]
        if crossing_count(regular) != min(crossing_count(d) for d in fiber):
            return False, f"regular diagram {regular.key()} is not crossing-minimal"
        for diagram in fiber:
            if canonicalize(diagram) != regular:
                return False, f"canonicalize({diagram.key()}) missed the regular diagram"
        if swap_orbit(fiber[0]) != set(fiber):
            return False, f"swap orbit of {fiber[0].key()} is not the fiber"
    return True, f"{len(fibers)} fibers up to length {nmax}"


def _check_dual_matrix(params):
    """The adjacency matrix equals the block matrix of the dual, for every
    diagram (arbitrary arc subsets) up to the length bound."""
    nmax = params.get("n", 7)
    checked = 0
    for n in range(4, nmax + 1):
        pool = admissible_arcs(n)
        for mask in range(1, 1 << len(pool)):
            diagram = Diagram(n, [pool[i] for i in range(len(pool)) if mask >> i & 1])
            if adjacency_matrix(diagram) != block_matrix(dual(diagram)):
                return False, f"mismatch at {diagram.key()}"
            checked += 1
    return True, f"{checked} diagrams up to length {nmax}"


def _check_realize_roundtrip(params):
    """realize_matrix inverts the block matrix on the whole family, and
    (0,1) matrices realize without parallel arcs."""
    mmax = params.get("m", 6)
    kmax = params.get("k", 2)
    rmax = params.get("r", 2)
    checked = 0
    for m in range(4, mmax + 1):
        for k in range(1, kmax + 1):
            for r in range(0, rmax + 1):
                for matrix in enumerate_matrices(m, k, r):
                    diagram = realize_matrix(matrix)
                    if block_matrix(diagram) != matrix:
                        return False, f"round trip failed for {matrix.key()}"
                    if matrix.is_zero_one() and any(
                        len(group) > 1 for group in parallel_classes(diagram)
                    ):
                        return False, f"parallel arcs realizing {matrix.key()}"
                    checked += 1
    return True, f"{checked} matrices up to order {mmax}"


def _check_length_bound(params):
    """Length bound n <= C(f+3, 2) + 2 p(B(S)) on every proper diagram."""
    nmax = params.get("n", 8)
    checked = 0
    for n in range(4, nmax + 1):
        for diagram in enumerate_proper_diagrams(n):
            f = len(free_sites(diagram))
            bound = comb(f + 3, 2) + 2 * p_value_of_diagram(diagram)
            if n > bound:
                return False, f"{diagram.key()} exceeds bound {bound}"
            checked += 1
    return True, f"{checked} proper diagrams up to length {nmax}"


def _check_join(params):
    """Homology of the full inclusion complex equals that of the join of
    its non-relevant and relevant sub-complexes."""
    m, k = params["m"], params["k"]
    whole = noncrossing_complex(admissible_arcs(m), k)
    star = noncrossing_complex(nonrelevant_arcs(m, k), k)
    relevant = noncrossing_complex(relevant_arcs(m, k), k)
    joined = join(star, relevant)
    left = reduced_homology(whole)
    right = reduced_homology(joined)
    ok = left == right
    return ok, f"whole {left.report_lines()} vs join {right.report_lines()}"


_CHECKS = {
    "thm11": (_check_thm11, [{"f": 4, "k": 1}, {"f": 5, "k": 1}, {"f": 6, "k": 1}, {"f": 5, "k": 2}, {"f": 6, "k": 2}]),
    "thm12": (
        _check_thm12,
        [
            {"f": f, "k": k, "r": r}
            for f in (3, 4, 5)
            for k in (1, 2)
            if f >= 2 * k
            for r in (0, 1, 2)
        ],
    ),
    "beta": (
        _check_beta,
        [
            {"f": f, "k": k, "r": r}
            for f in (3, 4, 5)
            for k in (1, 2)
            if f >= 2 * k
            for r in (0, 1, 2)
        ],
    ),
    "tau": (_check_tau, [{"f": f, "k": k} for f in (3, 4, 5) for k in (1, 2) if f >= 2 * k]),
    "theta": (_check_theta, [{"m": 5, "k": 1}, {"m": 6, "k": 1}, {"m": 6, "k": 2}, {"m": 7, "k": 2}]),
    "kappa": (_check_kappa, [{"m": 5, "k": 1}, {"m": 6, "k": 2}, {"m": 7, "k": 2}]),
    "equivalence": (_check_equivalence, [{"n": 8}]),
    "regular-unique": (_check_regular_unique, [{"n": 8}]),
    "dual-matrix": (_check_dual_matrix, [{"n": 7}]),
    "realize-roundtrip": (_check_realize_roundtrip, [{"m": 6, "k": 2, "r": 2}]),
    "length-bound": (_check_length_bound, [{"n": 8}]),
    "join": (_check_join, [{"m": 5, "k": 1}, {"m": 6, "k": 2}, {"m": 7, "k": 2}]),
    "rho": (
        _check_rho,
        [{"f": 3, "k": k, "r": r} for k in (1, 2) for r in (0, 1)],
    ),
}


def check_names() -> list[str]:
    return sorted(_CHECKS)


def run_check(name: str, grid: list[dict] | None = None) -> VerificationReport:
    """Run a named check over a grid (its default grid when none given)."""
    if name not in _CHECKS:
        raise InvalidArgumentError(f"unknown check {name!r}; known: {', '.join(check_names())}")
    func, default_grid = _CHECKS[name]
    report = VerificationReport(name)
    for params in grid if grid is not None else default_grid:
        start = time.perf_counter()
        passed, detail = func(params)
        report.points.append(
            CheckPoint(dict(params), passed, detail, time.perf_counter() - start)
        )
    return report
