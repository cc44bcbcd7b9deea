"""Continued fractions and continuants over exact rationals.

Rationals are plain :class:`fractions.Fraction` values: arbitrary precision,
always stored reduced, with numerator >= 0 and denominator >= 1 for the unit
interval values this package works with.  This module supplies the
continued-fraction layer on top: canonical expansions for x in (0, 1],
convergents, and Euler's continuant polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

__all__ = [
    "ContinuedFraction",
    "cf_expand",
    "cf_value",
    "continuant",
    "convergents",
    "suffix_continuants",
]


@dataclass(frozen=True)
class ContinuedFraction:
    """Canonical term list [a_1, ..., a_m] of a rational in (0, 1].

    The value is 1/(a_1 + 1/(a_2 + ...)).  All terms are positive and the
    last term is >= 2, except for the value 1 whose expansion is the single
    term [1].  The two classic representations [..., a] and [..., a-1, 1]
    are collapsed to the first.
    """

    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("a continued fraction needs at least one term")
        if any(a < 1 for a in self.terms):
            raise ValueError(f"terms must be positive integers: {list(self.terms)}")
        if len(self.terms) > 1 and self.terms[-1] < 2:
            raise ValueError("canonical form forbids a trailing term of 1")

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[int]:
        return iter(self.terms)


def cf_expand(x: Fraction) -> ContinuedFraction:
    """Canonical continued-fraction expansion of x in (0, 1].

    x = 0 is rejected: it has no expansion of this form and callers treat
    the interval endpoints specially.
    """
    if not 0 < x <= 1:
        raise ValueError(f"cf_expand needs 0 < x <= 1, got {x}")
    p, q = x.numerator, x.denominator
    terms = []
    while p:
        terms.append(q // p)
        p, q = q % p, p
    return ContinuedFraction(tuple(terms))


def cf_value(cf: ContinuedFraction) -> Fraction:
    """Rational value of a term list, the inverse of :func:`cf_expand`."""
    value = Fraction(0)
    for a in reversed(cf.terms):
        value = 1 / (a + value)
    return value


def convergents(cf: ContinuedFraction) -> list[Fraction]:
    """Convergents p_k/q_k of the truncations [a_1, ..., a_k] for k = 1..m.

    Uses the recurrence p_k = a_k p_{k-1} + p_{k-2} (same for q) seeded with
    p_0 = 0, q_0 = 1, p_{-1} = 1, q_{-1} = 0, so the first entry is 1/a_1
    and the last one equals ``cf_value(cf)``.
    """
    out = []
    p_prev, q_prev = 1, 0
    p_cur, q_cur = 0, 1
    for a in cf.terms:
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        out.append(Fraction(p_cur, q_cur))
    return out


def continuant(xs: Iterable[int]) -> int:
    """Euler's continuant K(x_1, ..., x_n).

    K() = 1, K(x_1) = x_1 and K_n = x_n K_{n-1} + K_{n-2}.  For a canonical
    term list, K(terms) is the denominator of its value and K(terms[1:]) the
    numerator.  Entries outside a canonical expansion (a leading 0 from a
    decremented term, say) are fine: the recurrence does not care.
    """
    older, prev = 0, 1
    for x in xs:
        older, prev = prev, x * prev + older
    return prev


def suffix_continuants(terms: Sequence[int]) -> list[int]:
    """All suffix continuants of a term list in one right-to-left pass.

    Returns ``S`` of length ``len(terms) + 2`` with ``S[i] = K(terms[i:])``;
    the trailing entries are K of the empty list (1) and the notional
    recursion seed 0.  Continuants are symmetric, so the suffixes satisfy
    S[i] = terms[i] * S[i+1] + S[i+2].
    """
    n = len(terms)
    out = [0] * (n + 2)
    out[n] = 1
    for i in range(n - 1, -1, -1):
        out[i] = terms[i] * out[i + 1] + out[i + 2]
    return out
