"""Cross-verification suites: the invariants the library promises, runnable
in bulk over Farey sequences and tree levels.

Each check function walks a family of cases, tallies exact pass/fail
counts, and records the first counterexample as plain fractions.  The CLI
``verify`` command and the acceptance tests both run these.
"""

from __future__ import annotations

import bisect
import itertools
import random
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .distribution import (
    cf_form_distribution,
    degree_distribution_oracle,
    interval_form_value,
)
from .errors import ResourceLimitError
from .exact import ContinuedFraction, cf_expand, cf_value, continuant
from .graphs import build, identify_boundary
from .tree import (
    LEFT,
    RIGHT,
    iter_farey_pairs,
    level_index,
    replay_path,
    symbolic_path,
    tree_children,
    tree_level,
)

__all__ = [
    "MAX_VERIFY_LEVELS",
    "MAX_VERIFY_ORDER",
    "RANDOM_GRID_SEED",
    "RunManifest",
    "SUITES",
    "Tally",
    "check_base_cases",
    "check_cf_continuant_link",
    "check_conservation",
    "check_continuant_identities",
    "check_descent_recurrences",
    "check_path_roundtrips",
    "check_piecewise_linearity",
    "check_triple_equality",
    "random_term_lists",
    "run_verification",
    "term_grid",
]

SUITES = ("all", "identities", "recurrences", "triple", "corollary")

MAX_VERIFY_ORDER = 1000
MAX_VERIFY_LEVELS = 16

# Fixed seed for the randomised identity grid: repeated runs are identical.
RANDOM_GRID_SEED = 94340


@dataclass
class Tally:
    """Pass/fail counter for one named check."""

    name: str
    passed: int = 0
    failed: int = 0
    first_failure: str | None = None

    def check(self, ok: bool, describe: Callable[[], str] | str) -> bool:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_failure is None:
                detail = describe() if callable(describe) else describe
                self.first_failure = f"{self.name}: {detail}"
        return ok


@dataclass
class RunManifest:
    """Summary of one verification run."""

    command: str
    parameters: dict[str, object]
    started: str
    finished: str
    checks_passed: int
    checks_failed: int
    first_failure: str | None = None

    def to_json_dict(self) -> dict[str, object]:
        out: dict[str, object] = {
            "command": self.command,
            "parameters": self.parameters,
            "started": self.started,
            "finished": self.finished,
            "checks_passed": self.checks_passed,
            "checks_failed": self.checks_failed,
        }
        if self.first_failure is not None:
            out["first_failure"] = self.first_failure
        return out


def term_grid(lengths: Iterable[int], max_term: int) -> Iterator[tuple[int, ...]]:
    """Every integer list with the given lengths and terms in 1..max_term."""
    for n in lengths:
        yield from itertools.product(range(1, max_term + 1), repeat=n)


def random_term_lists(
    count: int, max_len: int = 10, max_term: int = 30, seed: int = RANDOM_GRID_SEED
) -> Iterator[tuple[int, ...]]:
    """Deterministic pseudo-random term lists (fixed seed, identical runs)."""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, max_len)
        yield tuple(rng.randint(1, max_term) for _ in range(n))


def check_continuant_identities(
    term_lists: Iterable[Sequence[int]], tally: Tally | None = None
) -> Tally:
    """Splitting and determinant identities of continuants, exactly.

    For every list: K_n = K(prefix) K(suffix) + K(shorter prefix) K(shifted
    suffix) at every split point, and
    K_n(x_1..x_n) K_{n-2}(x_2..x_{n-1}) - K_{n-1}(x_1..x_{n-1}) K_{n-1}(x_2..x_n)
    equals (-1)^n.
    """
    t = tally or Tally("continuant-identities")
    for xs in term_lists:
        n = len(xs)
        if n < 2:
            continue
        prefix = [0] * (n + 1)
        prefix[0] = 1
        prefix[1] = xs[0]
        for i in range(1, n):
            prefix[i + 1] = xs[i] * prefix[i] + prefix[i - 1]
        inner = [0] * n  # inner[j] = K(xs[1:1+j])
        inner[0] = 1
        if n > 1:
            inner[1] = xs[1]
        for i in range(2, n):
            inner[i] = xs[i] * inner[i - 1] + inner[i - 2]
        suffix = [0] * (n + 2)  # suffix[i] = K(xs[i:])
        suffix[n] = 1
        for i in range(n - 1, -1, -1):
            suffix[i] = xs[i] * suffix[i + 1] + suffix[i + 2]
        kn = prefix[n]
        split_ok = all(
            kn == prefix[m] * suffix[m] + prefix[m - 1] * suffix[m + 1]
            for m in range(1, n)
        )
        t.check(split_ok, lambda xs=xs: f"splitting identity broke on {list(xs)}")
        det = kn * inner[n - 2] - prefix[n - 1] * inner[n - 1]
        t.check(
            det == (-1) ** n,
            lambda xs=xs, det=det: f"determinant on {list(xs)} gave {det}",
        )
    return t


def check_cf_continuant_link(order: int, tally: Tally | None = None) -> Tally:
    """Continuants of the terms give back the fraction: K(terms) = q and
    K(terms[1:]) = p for every p/q in F_order."""
    t = tally or Tally("cf-continuant-link")
    for p, q in iter_farey_pairs(order):
        if p == 0:
            continue
        terms = cf_expand(Fraction(p, q)).terms
        t.check(
            continuant(terms) == q and continuant(terms[1:]) == p,
            lambda p=p, q=q, terms=terms: f"{p}/{q} vs terms {list(terms)}",
        )
    return t


def check_path_roundtrips(order: int, tally: Tally | None = None) -> Tally:
    """Descent words over F_order: run lengths match the terms with the last
    reduced by one, replay lands back on x, and the level is the term sum."""
    t = tally or Tally("path-roundtrips")
    for p, q in iter_farey_pairs(order):
        if p == 0 or p == q:
            continue
        x = Fraction(p, q)
        terms = cf_expand(x).terms
        path = symbolic_path(x)
        expected = list(terms)
        expected[-1] -= 1
        got = [count for _, count in path.runs]
        symbols_ok = all(
            symbol == (LEFT if i % 2 == 0 else RIGHT)
            for i, (symbol, _) in enumerate(path.runs)
        )
        t.check(
            got == expected and symbols_ok,
            lambda x=x, got=got, expected=expected: f"runs of {x}: {got} != {expected}",
        )
        t.check(
            replay_path(path) == x,
            lambda x=x, path=path: f"replaying {path.word} missed {x}",
        )
        t.check(
            level_index(x) == len(path) + 1,
            lambda x=x: f"level of {x} is not path length + 1",
        )
    return t


def check_triple_equality(order: int, tally: Tally | None = None) -> Tally:
    """All three routes agree exactly over F_order.

    The construction oracle and the continued-fraction form are compared as
    whole maps (hence for every degree), and the interval form is compared
    pointwise for every degree from 5 up to one past the boundary degree.
    """
    t = tally or Tally("triple-equality")
    for p, q in iter_farey_pairs(order):
        if p == 0 or p == q:
            continue
        x = Fraction(p, q)
        by_graph = degree_distribution_oracle(x)
        by_cf = cf_form_distribution(x)
        t.check(
            by_graph.entries == by_cf.entries,
            lambda x=x, a=by_graph, b=by_cf: f"oracle {a.entries} != cf form {b.entries} at {x}",
        )
        top = sum(cf_expand(min(x, 1 - x)).terms) + 3
        for k in range(5, top + 1):
            t.check(
                by_cf.probability(k) == interval_form_value(k, x),
                lambda x=x, k=k: (
                    f"P({k}, {x}): cf form {by_cf.probability(k)} != "
                    f"interval form {interval_form_value(k, x)}"
                ),
            )
    return t


def _decremented_tail(terms: Sequence[int], l: int) -> tuple[int, ...]:
    """[a_{l+1} - 1, a_{l+2}, ..., a_j] as a raw continuant argument; empty
    when l is past the end (K of the empty list is 1)."""
    if l >= len(terms):
        return ()
    return (terms[l] - 1,) + tuple(terms[l + 1 :])


def check_descent_recurrences(
    min_level: int, max_level: int, tally: Tally | None = None
) -> Tally:
    """Descent recurrences for the emergent-degree counts, on actual graphs.

    For every node at the given tree levels and every emergent degree k_l of
    that node, the two children obey the descent recurrences: raising the
    last term gives count(child) = s^(l,m-2) + (a_m + 1) s^(l,m-1) (which is
    count(node) + 1 nodes of the top emergent degree when l = m - 1), and
    appending ", 2" after dropping one from the last term gives
    count(child) = 2 s_{a/b}^(l,m) + s_{a/b}^(l,m-1).  The left-hand counts
    are read off explicitly built graphs; the s terms are continuants of
    decremented truncation lists.  Nodes above 1/2 are checked through
    their mirror, whose children are the mirrored children.
    """
    t = tally or Tally("descent-recurrences")
    cache: dict[Fraction, dict[int, int]] = {}

    def counts_of(x: Fraction) -> dict[int, int]:
        got = cache.get(x)
        if got is None:
            got = identify_boundary(build(x)).as_dict()
            cache[x] = got
        return got

    for levels in range(min_level, max_level + 1):
        for x in tree_level(levels).fractions:
            y = x if 2 * x <= 1 else 1 - x
            terms = cf_expand(y).terms
            m = len(terms)
            if m < 2:
                continue
            plus_child = cf_value(ContinuedFraction(terms[:-1] + (terms[-1] + 1,)))
            two_child = cf_value(ContinuedFraction(terms[:-1] + (terms[-1] - 1, 2)))
            shorter = terms[:-1]
            dropped = shorter + (terms[-1] - 1,)
            node_counts = counts_of(y)
            plus_counts = counts_of(plus_child)
            two_counts = counts_of(two_child)
            degree = 3
            for l in range(1, m):
                degree += terms[l - 1]
                if l <= m - 2:
                    expected_plus = continuant(_decremented_tail(shorter[:-1], l)) + (
                        terms[-1] + 1
                    ) * continuant(_decremented_tail(shorter, l))
                else:
                    expected_plus = node_counts.get(degree, 0) + 1
                t.check(
                    plus_counts.get(degree, 0) == expected_plus,
                    lambda y=y, l=l, degree=degree, plus_child=plus_child: (
                        f"raise-last descent at {y}, degree {degree} (l={l}), "
                        f"child {plus_child}"
                    ),
                )
                expected_two = 2 * continuant(
                    _decremented_tail(dropped, l)
                ) + continuant(_decremented_tail(shorter, l))
                t.check(
                    two_counts.get(degree, 0) == expected_two,
                    lambda y=y, l=l, degree=degree, two_child=two_child: (
                        f"append-two descent at {y}, degree {degree} (l={l}), "
                        f"child {two_child}"
                    ),
                )
    return t


def check_piecewise_linearity(
    order: int, ks: Sequence[int] = (5, 6, 7, 8), tally: Tally | None = None
) -> Tally:
    """Piecewise-linear shape of P(k, .) over F_order, exactly.

    Within each open subinterval between a pivot (level k-3) and one of its
    children (level k-2), all sampled values are collinear; the lines of the
    two sides meet at the pivot at height 1/q_pivot and vanish at the child
    endpoints; the sampled fractions sitting exactly on those breakpoints
    take the removable values 0 and 1/q instead.
    """
    t = tally or Tally("piecewise-linearity")
    grid = [Fraction(p, q) for p, q in iter_farey_pairs(order)]
    values: dict[int, dict[Fraction, Fraction]] = {k: {} for k in ks}

    def samples(lo: Fraction, hi: Fraction) -> list[Fraction]:
        i = bisect.bisect_right(grid, lo)
        j = bisect.bisect_left(grid, hi)
        return grid[i:j]

    def prob(k: int, x: Fraction) -> Fraction:
        cached = values[k].get(x)
        if cached is None:
            cached = cf_form_distribution(x).probability(k)
            values[k][x] = cached
        return cached

    for k in ks:
        for pivot in tree_level(k - 3).fractions:
            lower, upper = tree_children(pivot)
            peak = Fraction(1, pivot.denominator)
            for lo, hi in ((lower, pivot), (pivot, upper)):
                pts = [(x, prob(k, x)) for x in samples(lo, hi)]
                collinear = all(
                    (pts[i + 1][0] - pts[i][0]) * (pts[i + 2][1] - pts[i + 1][1])
                    == (pts[i + 2][0] - pts[i + 1][0]) * (pts[i + 1][1] - pts[i][1])
                    for i in range(len(pts) - 2)
                )
                t.check(
                    collinear,
                    lambda k=k, lo=lo, hi=hi: f"samples not collinear in ({lo}, {hi}) for degree {k}",
                )
                if len(pts) >= 2:
                    (x1, y1), (x2, y2) = pts[0], pts[1]

                    def line_at(x: Fraction) -> Fraction:
                        return y1 + (y2 - y1) * (x - x1) / (x2 - x1)

                    t.check(
                        line_at(pivot) == peak,
                        lambda k=k, lo=lo, hi=hi: (
                            f"piece over ({lo}, {hi}) does not reach 1/{pivot.denominator} "
                            f"at the pivot for degree {k}"
                        ),
                    )
                    child = lo if lo != pivot else hi
                    t.check(
                        line_at(child) == 0,
                        lambda k=k, child=child: f"piece does not vanish at {child} for degree {k}",
                    )
            # the breakpoints themselves take the removable values
            t.check(
                prob(k, pivot) == 0,
                lambda k=k, pivot=pivot: f"P({k}, {pivot}) is not 0 on the pivot",
            )
            for child in (lower, upper):
                t.check(
                    prob(k, child) == Fraction(1, child.denominator),
                    lambda k=k, child=child: f"P({k}, {child}) is not 1/q on the child level",
                )
    return t


def check_base_cases(order: int, tally: Tally | None = None) -> Tally:
    """Low-degree probabilities over F_order: P(2) = min(x, 1-x),
    P(3) = |1 - 2x|, P(4) = 0 except P(4, 1/2) = 1/2."""
    t = tally or Tally("base-cases")
    half = Fraction(1, 2)
    for p, q in iter_farey_pairs(order):
        if p == 0 or p == q:
            continue
        x = Fraction(p, q)
        dist = cf_form_distribution(x)
        expected4 = half if x == half else Fraction(0)
        ok = (
            dist.probability(2) == min(x, 1 - x)
            and dist.probability(3) == abs(1 - 2 * x)
            and dist.probability(4) == expected4
        )
        t.check(ok, lambda x=x, dist=dist: f"low degrees of {x}: {dist.entries}")
    return t


def check_conservation(order: int, tally: Tally | None = None) -> Tally:
    """Normalisation and counting over F_order: probabilities sum to 1 with
    mean degree (4q-2)/q, and built graphs have q+1 nodes and 2q-1 edges."""
    t = tally or Tally("conservation")
    for p, q in iter_farey_pairs(order):
        x = Fraction(p, q)
        g = build(x)
        t.check(
            g.node_count == q + 1 and g.edge_count == 2 * q - 1,
            lambda x=x, g=g: f"{x}: {g.node_count} nodes, {g.edge_count} edges",
        )
        if p == 0 or p == q:
            continue
        dist = cf_form_distribution(x)
        t.check(
            dist.total() == 1 and dist.mean_degree() == Fraction(4 * q - 2, q),
            lambda x=x, dist=dist: f"conservation broke at {x}: {dist.entries}",
        )
    return t


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def run_verification(
    suite: str = "all", order: int = 50, levels: int = 10
) -> tuple[RunManifest, list[Tally]]:
    """Run the named suite and return the manifest plus per-check tallies."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose one of {SUITES}")
    if not 1 <= order <= MAX_VERIFY_ORDER:
        raise ResourceLimitError(
            f"verification order must lie in 1..{MAX_VERIFY_ORDER}, got {order}"
        )
    if not 3 <= levels <= MAX_VERIFY_LEVELS:
        raise ResourceLimitError(
            f"verification levels must lie in 3..{MAX_VERIFY_LEVELS}, got {levels}"
        )
    started = _now()
    tallies: list[Tally] = []
    if suite in ("all", "identities"):
        lists = itertools.chain(
            term_grid(range(2, 7), 4), random_term_lists(2000)
        )
        tallies.append(check_continuant_identities(lists))
        tallies.append(check_cf_continuant_link(order))
        tallies.append(check_path_roundtrips(order))
    if suite in ("all", "recurrences"):
        tallies.append(check_descent_recurrences(3, levels))
    if suite in ("all", "triple"):
        tallies.append(check_triple_equality(order))
    if suite in ("all", "corollary"):
        tallies.append(check_piecewise_linearity(order))
    finished = _now()
    manifest = RunManifest(
        command="verify",
        parameters={"suite": suite, "order": order, "levels": levels},
        started=started,
        finished=finished,
        checks_passed=sum(t.passed for t in tallies),
        checks_failed=sum(t.failed for t in tallies),
        first_failure=next(
            (t.first_failure for t in tallies if t.first_failure), None
        ),
    )
    return manifest, tallies
