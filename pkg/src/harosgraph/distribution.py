"""Three independent routes to the degree distribution P(k, x).

* ``degree_distribution_oracle``: build the graph explicitly, identify the
  boundary node, normalise by q.  Exact but linear in q.
* ``cf_form_distribution``: closed form driven by the continued fraction of
  x.  Degrees above 4 appear exactly at the cumulative term sums plus three,
  with multiplicity the denominator of the decremented tail, plus a single
  boundary node of degree (sum of terms) + 2.  Cost is a handful of integer
  operations however large q grows.
* ``interval_form_value``: piecewise-linear form for one degree k >= 5,
  driven by where x falls between a pivot of tree level k - 3 and that
  pivot's two children in level k - 2.

P is symmetric about 1/2, so x > 1/2 is evaluated through the mirror
x -> 1 - x; the distributions of the endpoints 0 and 1 are identically zero
by convention.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import AmbiguousBreakpointError, ResourceLimitError
from .exact import cf_expand, suffix_continuants
from .graphs import build, identify_boundary, iter_identified_counts
from .tree import BracketSide, _locate, iter_farey_pairs, locate_for_degree

__all__ = [
    "DEFAULT_ROW_CAP",
    "DegreeDistribution",
    "SweepPoint",
    "TruncationRow",
    "base_probability",
    "cf_form_distribution",
    "degree_distribution_oracle",
    "interval_form_distribution",
    "interval_form_value",
    "interval_form_value_real",
    "sweep",
    "sweep_row_count",
    "truncation_table",
]


@dataclass
class DegreeDistribution:
    """Exact map degree -> probability for one graph; zeros are implicit.

    For labels strictly inside the unit interval the stored probabilities
    are positive and sum to one; the endpoints carry an empty map.
    """

    entries: dict[int, Fraction]
    denominator: int

    def probability(self, k: int) -> Fraction:
        return self.entries.get(k, Fraction(0))

    def support(self) -> list[int]:
        return sorted(self.entries)

    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def mean_degree(self) -> Fraction:
        return sum((k * p for k, p in self.entries.items()), Fraction(0))


@dataclass(frozen=True)
class TruncationRow:
    """One decremented-tail truncation: at degree ``degree`` the node count
    is ``denominator``, the denominator of [a_{l+1} - 1, a_{l+2}, ..., a_m]."""

    index: int
    degree: int
    numerator: int
    denominator: int


def base_probability(k: int, x: Fraction) -> Fraction:
    """The degree 2, 3, 4 probabilities: min(x, 1-x), |1 - 2x| and 0.

    This is the plain low-degree formula; the lone exception P(4, 1/2) = 1/2
    (the boundary node of the triangle graph) is owned by the distribution
    assemblers, not by this helper.
    """
    if k not in (2, 3, 4):
        raise ValueError(f"only degrees 2, 3 and 4 have a base form, got {k}")
    if not 0 <= x <= 1:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if k == 2:
        return min(x, 1 - x)
    if k == 3:
        return abs(1 - 2 * x)
    return Fraction(0)


def degree_distribution_oracle(x: Fraction) -> DegreeDistribution:
    """Distribution by explicit construction: build, identify, divide by q."""
    if not 0 <= x <= 1:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0 or x == 1:
        return DegreeDistribution({}, x.denominator)
    identified = identify_boundary(build(x))
    q = identified.total
    return DegreeDistribution(
        {k: Fraction(m, q) for k, m in identified.counts}, q
    )


def truncation_table(x: Fraction) -> list[TruncationRow]:
    """Decremented-tail truncations of x in (0, 1/2], one per emergent degree."""
    if not 0 < x <= Fraction(1, 2):
        raise ValueError(f"truncations are defined for x in (0, 1/2], got {x}")
    terms = cf_expand(x).terms
    tails = suffix_continuants(terms)
    rows = []
    degree = 3
    for l in range(1, len(terms)):
        degree += terms[l - 1]
        rows.append(
            TruncationRow(l, degree, tails[l + 1], tails[l] - tails[l + 1])
        )
    return rows


def cf_form_distribution(x: Fraction) -> DegreeDistribution:
    """Exact distribution of x in (0, 1) from its continued fraction alone."""
    if not 0 < x < 1:
        raise ValueError(f"x must lie strictly inside (0, 1), got {x}")
    q = x.denominator
    y = x if 2 * x.numerator <= q else 1 - x
    p = y.numerator
    terms = cf_expand(y).terms
    entries = {2: Fraction(p, q)}
    if q - 2 * p:
        entries[3] = Fraction(q - 2 * p, q)
    tails = suffix_continuants(terms)
    degree = 3
    for l in range(1, len(terms)):
        degree += terms[l - 1]
        entries[degree] = Fraction(tails[l] - tails[l + 1], q)
    entries[sum(terms) + 2] = Fraction(1, q)
    return DegreeDistribution(entries, q)


def interval_form_value(k: int, x: Fraction) -> Fraction:
    """P(k, x) for one degree k >= 5 from the bracket located around x.

    Inside the lower subinterval (left child, pivot) the value is the linear
    map q_c x - p_c of the left child c; inside the upper subinterval it is
    p_c - q_c x of the right child.  Exactly on a level k-2 fraction the
    value is 1/q; on the pivot, shallower, or outside the bracket it is 0.
    """
    if not 0 < x < 1:
        raise ValueError(f"x must lie strictly inside (0, 1), got {x}")
    y = min(x, 1 - x)
    bracket = locate_for_degree(k, y)
    if bracket.side is BracketSide.LOWER_SUBINTERVAL:
        c = bracket.lower
        return c.denominator * y - c.numerator
    if bracket.side is BracketSide.UPPER_SUBINTERVAL:
        c = bracket.upper
        return c.numerator - c.denominator * y
    if bracket.side is BracketSide.AT_CHILD_LEVEL:
        return Fraction(1, y.denominator)
    return Fraction(0)


# Floating inputs closer than this to a comparison breakpoint cannot be
# trusted to land on the correct side of the linear piece.
BREAKPOINT_EPS = Fraction(4 * sys.float_info.epsilon)


def interval_form_value_real(k: int, x: float) -> float:
    """Float evaluation of the interval form via an exact dyadic surrogate.

    The float is converted to its exact binary rational, the bracket is
    located exactly, and only the final linear map is evaluated in floating
    point.  Raises :class:`AmbiguousBreakpointError` when x sits within a
    few ulps of a breakpoint without being exactly on it.
    """
    if not 0.0 < x < 1.0:
        raise ValueError(f"x must lie strictly inside (0, 1), got {x!r}")
    y = min(x, 1.0 - x)
    bracket, gap = _locate(k, Fraction(y), track_gap=True)
    if gap is not None and gap < BREAKPOINT_EPS:
        raise AmbiguousBreakpointError(
            f"{x!r} lies within {float(gap):.3g} of a tree breakpoint; "
            "the side of the linear piece is ambiguous at this precision"
        )
    if bracket.side is BracketSide.LOWER_SUBINTERVAL:
        c = bracket.lower
        return c.denominator * y - c.numerator
    if bracket.side is BracketSide.UPPER_SUBINTERVAL:
        c = bracket.upper
        return c.numerator - c.denominator * y
    if bracket.side is BracketSide.AT_CHILD_LEVEL:
        return 1.0 / Fraction(y).denominator
    return 0.0


def interval_form_distribution(x: Fraction) -> DegreeDistribution:
    """Full distribution with every degree k >= 5 taken from the interval form.

    Degrees 2 and 3 come from the base formulas and the single documented
    exception P(4, 1/2) = 1/2 is filled in directly.  The continued fraction
    only supplies the candidate degrees to query; each value still comes
    from the interval location, so this stays independent of
    :func:`cf_form_distribution`.
    """
    if not 0 < x < 1:
        raise ValueError(f"x must lie strictly inside (0, 1), got {x}")
    entries = {}
    for k in (2, 3):
        value = base_probability(k, x)
        if value:
            entries[k] = value
    if x == Fraction(1, 2):
        entries[4] = Fraction(1, 2)
    terms = cf_expand(min(x, 1 - x)).terms
    degree = 3
    for l in range(1, len(terms)):
        degree += terms[l - 1]
        value = interval_form_value(degree, x)
        if value:
            entries[degree] = value
    boundary = sum(terms) + 2
    if boundary >= 5:
        value = interval_form_value(boundary, x)
        if value:
            entries[boundary] = value
    return DegreeDistribution(entries, x.denominator)


@dataclass(frozen=True, slots=True)
class SweepPoint:
    """One sweep row: the three probability columns for a single (x, k)."""

    x: Fraction
    k: int
    cf_form: Fraction
    interval_form: Fraction
    oracle: Fraction


DEFAULT_ROW_CAP = 5_000_000


def sweep_row_count(degrees: Sequence[int], order: int) -> int:
    """Number of rows a sweep will emit: interior fractions times degrees."""
    phi = list(range(order + 1))
    for i in range(2, order + 1):
        if phi[i] == i:
            for j in range(i, order + 1, i):
                phi[j] -= phi[j] // i
    interior = sum(phi[1 : order + 1]) - 1
    return max(interior, 0) * len(set(degrees))


def sweep(
    degrees: Sequence[int],
    order: int,
    row_cap: int | None = DEFAULT_ROW_CAP,
) -> Iterator[SweepPoint]:
    """Evaluate all three routes over every x in F_order strictly inside (0, 1).

    Yields one :class:`SweepPoint` per (x, k) pair, sorted by (x, k).  The
    oracle column is produced by the tree walk of
    :func:`iter_identified_counts`, which performs the explicit graph
    construction once per fraction; the closed forms are evaluated
    independently per row.
    """
    ks = sorted(set(degrees))
    if not ks:
        raise ValueError("need at least one degree to sweep")
    if ks[0] < 5:
        raise ValueError(f"sweep degrees start at 5, got {ks[0]}")
    if order < 1:
        raise ValueError(f"Farey order must be >= 1, got {order}")
    rows = sweep_row_count(ks, order)
    if row_cap is not None and rows > row_cap:
        raise ResourceLimitError(
            f"sweep would emit {rows} rows; the cap is {row_cap}"
        )

    counts: dict[tuple[int, int], tuple[int, ...]] = {}
    for p, q, identified in iter_identified_counts(order):
        counts[p, q] = tuple(identified.get(k, 0) for k in ks)

    for p, q in iter_farey_pairs(order):
        if p == 0 or p == q:
            continue
        x = Fraction(p, q)
        from_cf = cf_form_distribution(x)
        from_walk = counts[p, q]
        for i, k in enumerate(ks):
            yield SweepPoint(
                x,
                k,
                from_cf.probability(k),
                interval_form_value(k, x),
                Fraction(from_walk[i], q),
            )
