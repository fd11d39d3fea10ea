"""Finite poset machinery on small hand-checked examples."""

import numpy as np
import pytest

from arcposet.errors import InvalidArgumentError, ResourceLimitError
from arcposet.poset import (
    FinitePoset,
    chain_stats_from_covers,
    element_key,
    topological_order,
)


def divides(a, b):
    return b % a == 0


@pytest.fixture
def divisors12():
    return FinitePoset(["1", "2", "3", "4", "6", "12"], lambda a, b: divides(int(a), int(b)))


class TestConstruction:
    def test_validation_catches_broken_relations(self):
        with pytest.raises(InvalidArgumentError, match="reflexive"):
            FinitePoset(["a", "b"], lambda a, b: a != b)
        with pytest.raises(InvalidArgumentError, match="antisymmetric"):
            FinitePoset(["a", "b"], lambda a, b: True)
        with pytest.raises(InvalidArgumentError, match="transitive"):
            FinitePoset(["a", "b", "c"], lambda a, b: a == b or (a, b) in {("a", "b"), ("b", "c")})

    def test_duplicate_elements(self):
        with pytest.raises(InvalidArgumentError, match="duplicate"):
            FinitePoset(["a", "a"], lambda a, b: a == b)

    def test_matrix_input_is_reindexed_to_canonical_order(self):
        # supply elements out of key order with an aligned matrix
        elements = ["b", "a"]
        matrix = np.array([[True, False], [True, True]])  # a <= b
        poset = FinitePoset(elements, matrix)
        assert poset.elements == ("a", "b")
        assert poset.leq("a", "b") and not poset.leq("b", "a")

    def test_shape_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            FinitePoset(["a", "b"], np.eye(3, dtype=bool))


class TestQueries:
    def test_leq_and_membership(self, divisors12):
        assert divisors12.leq("2", "12")
        assert not divisors12.leq("4", "6")
        assert "6" in divisors12 and "5" not in divisors12
        with pytest.raises(InvalidArgumentError):
            divisors12.leq("5", "12")

    def test_extremes(self, divisors12):
        assert divisors12.minimal_elements() == ("1",)
        assert divisors12.maximal_elements() == ("12",)

    def test_cover_edges(self, divisors12):
        covers = set(divisors12.cover_edges())
        assert covers == {
            ("1", "2"), ("1", "3"), ("2", "4"), ("2", "6"), ("3", "6"), ("4", "12"), ("6", "12"),
        }

    def test_rank(self, divisors12):
        assert divisors12.rank_length() == 3
        assert divisors12.rank_cardinality() == 4

    def test_purity(self, divisors12):
        # every maximal chain of the divisors of 12 has four elements
        assert divisors12.is_pure()
        # dropping 6 leaves 1 < 3 < 12 next to 1 < 2 < 4 < 12
        impure = FinitePoset(
            ["1", "2", "3", "4", "12"], lambda a, b: divides(int(a), int(b))
        )
        assert not impure.is_pure()

    def test_stats_text(self, divisors12):
        text = divisors12.stats_text()
        assert "elements=6" in text and "rank_cardinality=4" in text


class TestDerivedPosets:
    def test_restrict(self, divisors12):
        sub = divisors12.restrict(["1", "2", "4"])
        assert sub.rank_length() == 2

    def test_open_interval_above(self, divisors12):
        above = divisors12.open_interval_above("2")
        assert set(above.elements) == {"4", "6", "12"}
        assert above.leq("4", "12")

    def test_adjoin_bottom(self, divisors12):
        bigger = divisors12.adjoin_bottom("0")
        assert bigger.minimal_elements() == ("0",)
        assert bigger.leq("0", "12")
        with pytest.raises(InvalidArgumentError):
            divisors12.adjoin_bottom("6")

    def test_direct_product(self):
        chain2 = FinitePoset(["a", "b"], lambda x, y: x <= y)
        square = chain2.direct_product(chain2)
        assert len(square) == 4
        assert square.rank_length() == 2
        assert square.is_pure()


class TestIsomorphism:
    def test_isomorphic_chains(self):
        left = FinitePoset(["a", "b", "c"], lambda x, y: x <= y)
        right = FinitePoset(["x", "y", "z"], lambda x, y: x <= y)
        assert left.is_isomorphic(right)

    def test_non_isomorphic(self, divisors12):
        chain = FinitePoset(list("abcdef"), lambda x, y: x <= y)
        assert not divisors12.is_isomorphic(chain)

    def test_size_mismatch(self, divisors12):
        assert not divisors12.is_isomorphic(FinitePoset(["a"], lambda x, y: True))

    def test_search_cap(self):
        antichain = FinitePoset([str(i) for i in range(12)], lambda a, b: a == b)
        other = FinitePoset([f"x{i}" for i in range(12)], lambda a, b: a == b)
        with pytest.raises(ResourceLimitError):
            antichain.is_isomorphic(other, cap=0)

    def test_check_order_map(self, divisors12):
        identity = {e: e for e in divisors12.elements}
        assert divisors12.check_order_map(divisors12, identity) == "isomorphism"
        chain = FinitePoset(["a", "b"], lambda x, y: x <= y)
        collapse = {e: "a" if e == "1" else "b" for e in divisors12.elements}
        assert divisors12.check_order_map(chain, collapse) == "homomorphism"
        flipped = {"a": "b", "b": "a"}
        assert chain.check_order_map(chain, flipped) == "neither"
        with pytest.raises(InvalidArgumentError):
            chain.check_order_map(chain, {"a": "zzz", "b": "a"})


class TestExportAndHelpers:
    def test_dot(self, divisors12):
        dot = divisors12.to_dot(name="d12")
        assert dot.startswith("digraph d12 {")
        assert dot.count("->") == len(divisors12.cover_edges())

    def test_element_key_variants(self):
        assert element_key("plain") == "plain"
        assert element_key(frozenset({"b", "a"})) == "{a,b}"
        assert element_key(("x", "y")) == "(x|y)"

    def test_topological_order_rejects_cycle(self):
        with pytest.raises(InvalidArgumentError):
            topological_order([[1], [0]])

    def test_chain_stats_from_covers_matches_dense(self, divisors12):
        index = {e: i for i, e in enumerate(divisors12.elements)}
        succ = [[] for _ in divisors12.elements]
        for a, b in divisors12.cover_edges():
            succ[index[a]].append(index[b])
        rank_length, pure = chain_stats_from_covers(succ)
        assert rank_length == divisors12.rank_length()
        assert pure == divisors12.is_pure()
