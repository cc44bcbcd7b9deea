#!/usr/bin/env python3
"""Compare the cost of the three distribution routes as q grows.

The explicit construction touches q + 1 node degrees, while the two closed
forms only manipulate the continued-fraction terms, so the gap widens
roughly linearly in q.  Times are wall-clock seconds for one evaluation,
averaged over a few repeats."""

import argparse
import time
from fractions import Fraction

from harosgraph.distribution import (
    cf_form_distribution,
    degree_distribution_oracle,
    interval_form_value,
)


def timed(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def fibonacci_fraction(depth: int) -> Fraction:
    a, b = 1, 1
    for _ in range(depth):
        a, b = b, a + b
    return Fraction(a, b)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--depths", default="10,15,20,25,30")
    args = parser.parse_args()
    depths = [int(d) for d in args.depths.split(",")]

    print(f"{'x':>24} {'q':>10} {'oracle s':>10} {'cf form s':>10} {'interval s':>10}")
    for depth in depths:
        x = fibonacci_fraction(depth)
        q = x.denominator
        t_oracle = timed(lambda: degree_distribution_oracle(x))
        t_cf = timed(lambda: cf_form_distribution(x))
        boundary = depth + 1  # all terms are 1, so the top degree is small
        t_interval = timed(lambda: interval_form_value(max(5, boundary), x))
        print(f"{str(x):>24} {q:>10} {t_oracle:>10.6f} {t_cf:>10.6f} {t_interval:>10.6f}")


if __name__ == "__main__":
    main()
