"""Explicit Haros-graph construction on ordered degree sequences.

A Haros graph is stored as its ordered degree sequence (the graph is
uniquely determined by it), which keeps the concatenation operator linear
in the number of nodes.  The two-node seed graph has degrees (1, 1); the
graph labelled p/q has q + 1 nodes and 2q - 1 edges.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import AdjacencyError, ResourceLimitError
from .tree import LEFT, symbolic_path

__all__ = [
    "BUILD_MAX_DENOMINATOR",
    "HarosGraph",
    "IdentifiedDegreeMultiset",
    "build",
    "concat",
    "identify_boundary",
    "initial_graph",
    "iter_identified_counts",
]

# The sequence for p/q holds q + 1 node degrees; refuse anything that would
# not fit comfortably in memory.  Closed-form evaluation has no such limit.
BUILD_MAX_DENOMINATOR = 10**7


@dataclass(frozen=True)
class HarosGraph:
    """Ordered degree sequence of the graph labelled by a unit fraction.

    Degrees run along the graph's natural left-to-right order with the two
    extreme nodes first and last.
    """

    label: Fraction
    degrees: tuple[int, ...]

    @property
    def node_count(self) -> int:
        return len(self.degrees)

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2


@dataclass(frozen=True)
class IdentifiedDegreeMultiset:
    """Degree multiplicities after merging the two extreme nodes into one.

    The boundary node keeps the sum of the extreme degrees, so the total
    degree is conserved and exactly q nodes remain.
    """

    counts: tuple[tuple[int, int], ...]
    total: int

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)


def initial_graph(label: Fraction) -> HarosGraph:
    """The seed graph: two nodes joined by a single edge."""
    if label != 0 and label != 1:
        raise ValueError(f"the seed graph is labelled 0/1 or 1/1, not {label}")
    return HarosGraph(label, (1, 1))


def concat(left: HarosGraph, right: HarosGraph) -> HarosGraph:
    """Concatenate two adjacent Haros graphs.

    The two facing extreme nodes merge into one interior node (their degrees
    add), and one fresh edge joins the new outer extremes, raising each of
    their degrees by one.  The labels must be Farey neighbours with
    left.label < right.label; the result is labelled by their mediant.
    """
    p, q = left.label.numerator, left.label.denominator
    r, s = right.label.numerator, right.label.denominator
    if q * r - p * s != 1:
        raise AdjacencyError(
            f"cannot concatenate {left.label} with {right.label}: "
            "labels are not Farey neighbours in increasing order"
        )
    dl, dr = left.degrees, right.degrees
    merged = (dl[0] + 1,) + dl[1:-1] + (dl[-1] + dr[0],) + dr[1:-1] + (dr[-1] + 1,)
    return HarosGraph(Fraction(p + r, q + s), merged)


def build(x: Fraction) -> HarosGraph:
    """Construct the Haros graph of x in [0, 1] by descending the tree.

    Navigation keeps the graphs of the two Farey neighbours of the current
    node: an L step concatenates the left neighbour with the current graph,
    an R step the current graph with the right neighbour.  This makes the
    adjacency precondition of :func:`concat` hold by construction.
    """
    if not 0 <= x <= 1:
        raise ValueError(f"Haros graphs are labelled by fractions in [0, 1], got {x}")
    if x.denominator > BUILD_MAX_DENOMINATOR:
        raise ResourceLimitError(
            f"building {x} needs {x.denominator + 1} node degrees; "
            f"the cap is denominator <= {BUILD_MAX_DENOMINATOR}"
        )
    if x == 0 or x == 1:
        return initial_graph(x)
    left = initial_graph(Fraction(0))
    right = initial_graph(Fraction(1))
    cur = concat(left, right)
    opening = True
    for symbol, count in symbolic_path(x).runs:
        for _ in range(count):
            if opening:
                opening = False  # the first step built the graph of 1/2
            elif symbol == LEFT:
                cur, right = concat(left, cur), cur
            else:
                cur, left = concat(cur, right), cur
    return cur


def identify_boundary(g: HarosGraph) -> IdentifiedDegreeMultiset:
    """Merge the extreme nodes of g into a single boundary node.

    Undefined for the two-node seed graph; the endpoints of the unit
    interval get the all-zero degree distribution by convention instead.
    """
    if len(g.degrees) < 3:
        raise ValueError("boundary identification is undefined for the seed graph")
    counts = Counter(g.degrees[1:-1])
    counts[g.degrees[0] + g.degrees[-1]] += 1
    return IdentifiedDegreeMultiset(
        tuple(sorted(counts.items())), len(g.degrees) - 1
    )


def iter_identified_counts(
    max_denominator: int,
) -> Iterator[tuple[int, int, dict[int, int]]]:
    """Walk every Haros graph with label denominator <= max_denominator.

    Yields (p, q, counts) where counts is the boundary-identified degree
    multiset of the graph labelled p/q.  The walk runs the same
    concatenation recursion as :func:`build` but tracks degree
    multiplicities instead of full sequences, so sweeping a whole Farey
    sequence costs O(1) dictionary work per fraction instead of O(q).
    Order of the yielded fractions is not specified.
    """
    if max_denominator < 2:
        return
    seed = {1: 2}
    # Stack frames hold the two neighbour graphs as
    # (p, q, counts, first_degree, last_degree).
    stack = [((0, 1, seed, 1, 1), (1, 1, seed, 1, 1))]
    while stack:
        left, right = stack.pop()
        pl, ql, cl, fl, ll = left
        pr, qr, cr, fr, lr = right
        p, q = pl + pr, ql + qr
        if q > max_denominator:
            continue
        counts = dict(cl)
        for degree, multiplicity in cr.items():
            counts[degree] = counts.get(degree, 0) + multiplicity
        for degree in (fl, ll, fr, lr):
            counts[degree] -= 1
            if not counts[degree]:
                del counts[degree]
        for degree in (fl + 1, ll + fr, lr + 1):
            counts[degree] = counts.get(degree, 0) + 1
        first, last = fl + 1, lr + 1

        identified = dict(counts)
        for degree in (first, last):
            identified[degree] -= 1
            if not identified[degree]:
                del identified[degree]
        boundary = first + last
        identified[boundary] = identified.get(boundary, 0) + 1
        yield p, q, identified

        node = (p, q, counts, first, last)
        stack.append((left, node))
        stack.append((node, right))
