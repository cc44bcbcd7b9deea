"""Farey sequences, the Farey binary tree, and interval location.

The tree starts from the level-1 endpoints {0/1, 1/1} and grows by mediant
sums of adjacent fractions; level k holds 2**(k-2) fractions for k >= 2.
Descent words are read from a virtual root sitting above 1/2, so a single L
reaches 1/2 and a word of length n ends on a fraction of level n + 1.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import AdjacencyError, ResourceLimitError
from .exact import cf_expand, convergents

__all__ = [
    "LEFT",
    "RIGHT",
    "MAX_TREE_LEVEL",
    "BracketSide",
    "EnclosingBracket",
    "SymbolicPath",
    "TreeLevel",
    "farey_parents",
    "farey_sequence",
    "iter_farey_pairs",
    "level_index",
    "locate_for_degree",
    "mediant",
    "replay_path",
    "symbolic_path",
    "tree_children",
    "tree_level",
]

LEFT = "L"
RIGHT = "R"

# Level k materialises 2**(k-2) fractions; past this point whole levels are
# refused and callers must use the O(k) descent of locate_for_degree instead.
MAX_TREE_LEVEL = 20


@dataclass(frozen=True)
class SymbolicPath:
    """Run-length encoded descent word, e.g. L^2 R^3 L^2 for 10/23.

    Runs alternate strictly between L and R.  For a fraction with canonical
    terms [a_1, ..., a_m] the run lengths are a_1, ..., a_{m-1}, a_m - 1.
    """

    runs: tuple[tuple[str, int], ...]

    @property
    def word(self) -> str:
        return "".join(symbol * count for symbol, count in self.runs)

    def __len__(self) -> int:
        return sum(count for _, count in self.runs)


@dataclass(frozen=True)
class TreeLevel:
    """One level of the Farey binary tree, fractions in increasing order."""

    index: int
    fractions: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.fractions)


class BracketSide(Enum):
    """Where a fraction sits relative to a pivot level and its child level."""

    LOWER_SUBINTERVAL = "lower-subinterval"
    UPPER_SUBINTERVAL = "upper-subinterval"
    AT_PIVOT = "at-pivot"
    AT_CHILD_LEVEL = "at-level-k-2"
    ELSEWHERE = "elsewhere"


@dataclass(frozen=True)
class EnclosingBracket:
    """A pivot fraction together with its two tree children.

    ``lower < pivot < upper`` whenever the fields are set; they are None only
    when the located fraction is too shallow to have an ancestor at the
    pivot level.
    """

    lower: Fraction | None
    pivot: Fraction | None
    upper: Fraction | None
    side: BracketSide


def mediant(left: Fraction, right: Fraction) -> Fraction:
    """Mediant (p+r)/(q+s) of two Farey-adjacent fractions with left < right.

    Adjacency (qr - ps = 1) guarantees the result is already reduced and
    lies strictly between the inputs; anything else is a caller bug and is
    rejected.
    """
    p, q = left.numerator, left.denominator
    r, s = right.numerator, right.denominator
    if q * r - p * s != 1:
        raise AdjacencyError(f"{left} and {right} are not Farey neighbours")
    return Fraction(p + r, q + s)


def iter_farey_pairs(n: int):
    """Yield (p, q) over the Farey sequence F_n in increasing order."""
    if n < 1:
        raise ValueError(f"Farey order must be >= 1, got {n}")
    a, b, c, d = 0, 1, 1, n
    yield a, b
    while c <= d:
        yield c, d
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b


def farey_sequence(n: int) -> list[Fraction]:
    """All reduced fractions in [0, 1] with denominator <= n, ascending."""
    return [Fraction(p, q) for p, q in iter_farey_pairs(n)]


# Ordered spine of all fractions in levels 1..k, grown on demand.  Entries
# are (p, q) pairs; _levels[j] holds the fractions introduced at level j+1.
# The lock serialises growth; readers only ever see fully built levels.
_spine: list[tuple[int, int]] = [(0, 1), (1, 1)]
_levels: list[list[tuple[int, int]]] = [[(0, 1), (1, 1)]]
_grow_lock = threading.Lock()


def tree_level(k: int) -> TreeLevel:
    """The fractions of tree level k: {0/1, 1/1}, {1/2}, {1/3, 2/3}, ..."""
    if k < 1:
        raise ValueError(f"levels are numbered from 1, got {k}")
    if k > MAX_TREE_LEVEL:
        raise ResourceLimitError(
            f"level {k} holds 2**{k - 2} fractions; the cap is {MAX_TREE_LEVEL}"
        )
    global _spine
    if len(_levels) < k:
        with _grow_lock:
            while len(_levels) < k:
                new = [
                    (_spine[i][0] + _spine[i + 1][0], _spine[i][1] + _spine[i + 1][1])
                    for i in range(len(_spine) - 1)
                ]
                merged = []
                for old, fresh in zip(_spine, new):
                    merged.append(old)
                    merged.append(fresh)
                merged.append(_spine[-1])
                _levels.append(new)
                _spine = merged
    return TreeLevel(k, tuple(Fraction(p, q) for p, q in _levels[k - 1]))


def level_index(x: Fraction) -> int:
    """Tree level of x: 1 for the endpoints, otherwise the sum of CF terms."""
    if x == 0 or x == 1:
        return 1
    return sum(cf_expand(x).terms)


def symbolic_path(x: Fraction) -> SymbolicPath:
    """Descent word from the virtual root to x in (0, 1).

    Run lengths are the continued-fraction terms of x with the final term
    reduced by one, starting with an L run; replaying the word by mediant
    navigation lands exactly on x.  The endpoints live at level 1 and have
    no descent word.
    """
    if not 0 < x < 1:
        raise ValueError(f"no descent path for {x}")
    counts = list(cf_expand(x).terms)
    counts[-1] -= 1
    runs = []
    symbol = LEFT
    for count in counts:
        runs.append((symbol, count))
        symbol = RIGHT if symbol == LEFT else LEFT
    return SymbolicPath(tuple(runs))


def replay_path(path: SymbolicPath) -> Fraction:
    """Walk a descent word by mediant navigation and return the fraction hit.

    State is the bracketing pair (lo, hi) plus the current node, which is
    always mediant(lo, hi); an L step narrows hi to the current node, an R
    step narrows lo.
    """
    if not path.runs:
        raise ValueError("empty descent word")
    if path.runs[0][0] != LEFT:
        raise ValueError("descent words start with L (one L reaches 1/2)")
    lo, hi = (0, 1), (1, 1)
    cur: tuple[int, int] | None = None
    for symbol, count in path.runs:
        for _ in range(count):
            if cur is None:
                cur = (lo[0] + hi[0], lo[1] + hi[1])
            elif symbol == LEFT:
                hi = cur
                cur = (lo[0] + cur[0], lo[1] + cur[1])
            else:
                lo = cur
                cur = (cur[0] + hi[0], cur[1] + hi[1])
    assert cur is not None
    return Fraction(*cur)


def farey_parents(x: Fraction) -> tuple[Fraction, Fraction]:
    """The two Farey neighbours whose mediant is x, ordered (lower, upper).

    These are the previous convergent of x and the complementary
    semiconvergent (p - p_{m-1})/(q - q_{m-1}); both sit at shallower tree
    levels than x.
    """
    if not 0 < x < 1:
        raise ValueError(f"{x} has no parents inside the unit interval")
    conv = convergents(cf_expand(x))
    prev = conv[-2] if len(conv) >= 2 else Fraction(0)
    other = Fraction(
        x.numerator - prev.numerator, x.denominator - prev.denominator
    )
    return (prev, other) if prev < other else (other, prev)


def tree_children(x: Fraction) -> tuple[Fraction, Fraction]:
    """The two next-level mediant children of x, in numeric order.

    In continued-fraction terms the pair is {[a_1..a_m + 1],
    [a_1..a_m - 1, 2]}; which of the two is the smaller child depends on the
    parity of m, so numeric order is computed from the parent bracket.
    """
    lo, hi = farey_parents(x)
    return mediant(lo, x), mediant(x, hi)


def locate_for_degree(k: int, x: Fraction) -> EnclosingBracket:
    """Locate x relative to tree levels k-3 (pivots) and k-2 (children).

    Descends the tree along the path of x for at most k - 4 steps, so no
    level is materialised.  The side tells whether x falls strictly inside
    the lower or upper subinterval around its pivot-level ancestor, exactly
    on a level k-2 fraction, exactly on the pivot or shallower, or outside
    the bracket altogether.
    """
    bracket, _ = _locate(k, x, track_gap=False)
    return bracket


def _locate(
    k: int, x: Fraction, track_gap: bool
) -> tuple[EnclosingBracket, Fraction | None]:
    """Shared locator; optionally tracks the smallest nonzero distance from
    x to any fraction it was compared against (used to flag floating-point
    inputs that sit too close to a breakpoint)."""
    if k < 5:
        raise ValueError(f"interval location needs a degree >= 5, got {k}")
    if not 0 < x < 1:
        raise ValueError(f"x must lie strictly inside (0, 1), got {x}")
    pivot_level = k - 3
    own = level_index(x)
    min_gap: Fraction | None = None
    px, qx = x.numerator, x.denominator

    def note_gap(node: tuple[int, int]) -> None:
        nonlocal min_gap
        delta = px * node[1] - qx * node[0]
        if delta:
            gap = Fraction(abs(delta), qx * node[1])
            if min_gap is None or gap < min_gap:
                min_gap = gap

    if own < pivot_level:
        return EnclosingBracket(None, None, None, BracketSide.ELSEWHERE), min_gap

    lo, hi = (0, 1), (1, 1)
    cur = (1, 2)
    level = 2
    while level < pivot_level:
        if track_gap:
            note_gap(cur)
        sign = px * cur[1] - qx * cur[0]
        assert sign != 0, "x cannot equal an ancestor above its own level"
        if sign < 0:
            hi = cur
        else:
            lo = cur
        cur = (lo[0] + hi[0], lo[1] + hi[1])
        level += 1

    lower = (lo[0] + cur[0], lo[1] + cur[1])
    upper = (cur[0] + hi[0], cur[1] + hi[1])
    if track_gap:
        note_gap(cur)
        note_gap(lower)
        note_gap(upper)

    pivot_f = Fraction(*cur)
    lower_f = Fraction(*lower)
    upper_f = Fraction(*upper)
    if x == pivot_f:
        side = BracketSide.AT_PIVOT
    elif x == lower_f or x == upper_f:
        side = BracketSide.AT_CHILD_LEVEL
    elif lower_f < x < pivot_f:
        side = BracketSide.LOWER_SUBINTERVAL
    elif pivot_f < x < upper_f:
        side = BracketSide.UPPER_SUBINTERVAL
    else:
        side = BracketSide.ELSEWHERE
    return EnclosingBracket(lower_f, pivot_f, upper_f, side), min_gap
