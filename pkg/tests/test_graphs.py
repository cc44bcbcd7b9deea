"""Explicit graph construction: concatenation, builds, boundary counts."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from harosgraph.errors import AdjacencyError, ResourceLimitError
from harosgraph.graphs import (
    HarosGraph,
    build,
    concat,
    identify_boundary,
    initial_graph,
    iter_identified_counts,
)
from harosgraph.tree import farey_sequence, iter_farey_pairs, symbolic_path


def unit_fractions(max_den=200):
    return st.builds(
        lambda q, p: Fraction(p % (q - 1) + 1, q), st.integers(3, max_den), st.integers(0)
    )


# Fig-style reference data, derived by applying the merge rule by hand and
# cross-checked against the closed forms in test_distribution.
SEQ_1_2 = (2, 2, 2)
SEQ_1_3 = (2, 3, 2, 3)
SEQ_2_5 = (3, 3, 2, 5, 2, 3)
SEQ_10_23 = (
    5, 3, 2, 5, 2, 5, 2, 8, 3, 2, 5, 2, 5, 2, 8, 3, 2, 5, 2, 5, 2, 5, 2, 5,
)


class TestConcat:
    def test_seed_pair_gives_triangle(self):
        g = concat(initial_graph(Fraction(0)), initial_graph(Fraction(1)))
        assert g.label == Fraction(1, 2)
        assert g.degrees == SEQ_1_2

    def test_seed_with_triangle(self):
        g0 = initial_graph(Fraction(0))
        mid = concat(g0, initial_graph(Fraction(1)))
        g = concat(g0, mid)
        assert g.label == Fraction(1, 3)
        assert g.degrees == SEQ_1_3

    def test_fig_concatenation(self):
        # the graph of 2/7 is the concatenation of those of 1/4 and 1/3
        got = concat(build(Fraction(1, 4)), build(Fraction(1, 3)))
        assert got == build(Fraction(2, 7))

    def test_rejects_non_adjacent_labels(self):
        with pytest.raises(AdjacencyError):
            concat(build(Fraction(1, 4)), build(Fraction(1, 2)))
        with pytest.raises(AdjacencyError):
            concat(build(Fraction(1, 2)), build(Fraction(1, 3)))

    def test_node_and_edge_bookkeeping(self):
        left, right = build(Fraction(1, 3)), build(Fraction(1, 2))
        g = concat(left, right)
        assert g.node_count == left.node_count + right.node_count - 1
        assert g.edge_count == left.edge_count + right.edge_count + 1


class TestBuild:
    def test_endpoints_are_the_seed(self):
        assert build(Fraction(0)).degrees == (1, 1)
        assert build(Fraction(1)).degrees == (1, 1)
        assert build(Fraction(1)).label == 1

    def test_worked_sequences(self):
        assert build(Fraction(1, 2)).degrees == SEQ_1_2
        assert build(Fraction(2, 5)).degrees == SEQ_2_5
        assert build(Fraction(10, 23)).degrees == SEQ_10_23

    def test_rejects_out_of_range_and_oversized(self):
        with pytest.raises(ValueError):
            build(Fraction(3, 2))
        with pytest.raises(ResourceLimitError):
            build(Fraction(1, 10**7 + 1))

    @given(unit_fractions())
    def test_node_count_and_handshake(self, x):
        g = build(x)
        q = x.denominator
        assert g.label == x
        assert g.node_count == q + 1
        assert sum(g.degrees) == 2 * (2 * q - 1)

    @given(unit_fractions())
    def test_deterministic(self, x):
        assert build(x) == build(x)

    @given(unit_fractions())
    def test_mirror_reverses_the_sequence(self, x):
        assert build(1 - x).degrees == tuple(reversed(build(x).degrees))

    def test_matches_stepwise_navigation(self):
        # independent oracle: replay the descent word one concatenation at a
        # time, keeping the two neighbour graphs by hand
        for x in farey_sequence(40):
            if x == 0 or x == 1:
                continue
            left = initial_graph(Fraction(0))
            right = initial_graph(Fraction(1))
            word = symbolic_path(x).word
            cur = concat(left, right)
            for symbol in word[1:]:
                if symbol == "L":
                    cur, right = concat(left, cur), cur
                else:
                    cur, left = concat(cur, right), cur
            assert build(x) == cur


class TestIdentifyBoundary:
    def test_worked_multisets(self):
        assert identify_boundary(build(Fraction(1, 2))).as_dict() == {2: 1, 4: 1}
        assert identify_boundary(build(Fraction(1, 3))).as_dict() == {2: 1, 3: 1, 5: 1}
        assert identify_boundary(build(Fraction(10, 23))).as_dict() == {
            2: 10,
            3: 3,
            5: 7,
            8: 2,
            10: 1,
        }

    def test_rejects_seed_graph(self):
        with pytest.raises(ValueError):
            identify_boundary(initial_graph(Fraction(0)))

    @given(unit_fractions())
    def test_totals_and_degree_sum(self, x):
        q = x.denominator
        ident = identify_boundary(build(x))
        assert ident.total == q
        assert sum(m for _, m in ident.counts) == q
        assert sum(k * m for k, m in ident.counts) == 2 * (2 * q - 1)

    @given(unit_fractions())
    def test_mirror_symmetry_of_counts(self, x):
        a = identify_boundary(build(x))
        b = identify_boundary(build(1 - x))
        assert a.counts == b.counts

    def test_mirror_symmetry_exhaustive_f100(self):
        for p, q in iter_farey_pairs(100):
            if p == 0 or 2 * p > q:
                continue
            x = Fraction(p, q)
            g, mirrored = build(x), build(1 - x)
            assert mirrored.degrees == tuple(reversed(g.degrees))
            assert identify_boundary(g).counts == identify_boundary(mirrored).counts


class TestIdentifiedCountsWalk:
    def test_matches_per_fraction_builds(self):
        walked = {(p, q): c for p, q, c in iter_identified_counts(60)}
        expected_keys = {
            (p, q) for p, q in iter_farey_pairs(60) if p not in (0, q)
        }
        assert set(walked) == expected_keys
        for p, q in sorted(expected_keys):
            ident = identify_boundary(build(Fraction(p, q)))
            assert walked[p, q] == ident.as_dict(), f"walker differs at {p}/{q}"

    def test_empty_below_two(self):
        assert list(iter_identified_counts(1)) == []


def test_haros_graph_is_hashable_value():
    g = HarosGraph(Fraction(1, 2), (2, 2, 2))
    assert g == build(Fraction(1, 2))
    assert hash(g) == hash(build(Fraction(1, 2)))
