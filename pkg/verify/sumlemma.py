# File: verify/sumlemma.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
Exact check of the level-sum tail bound

    sum_{l in N^d, |l|_1 > n+d-1} 2^(-t|l|_1)  <=  2 A(d, n) 2^(-tn-td)

with A(d, n) = sum_{k<d} C(n+d-1, k). Entries up to SGCNN_SUMLEMMA_CAP are
counted exactly; the rest of the series is added as the exact geometric
remainder, so the left side is the true value. The half-size constant
2^(-tn-td-1) A(d, n) is reported alongside; it fails already for d = 1.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from django.conf import settings
from scipy.special import comb

logger = logging.getLogger('sgcnn.verify')

HEADERS = ["d", "n", "t", "A", "lhs", "rhs", "rhs_nominal", "holds", "nominal_holds"]


@dataclass(frozen=True)
class SumLemmaRow:
    d: int
    n: int
    t: int
    A: int
    lhs: Fraction
    rhs: Fraction
    rhs_nominal: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def nominal_holds(self) -> bool:
        return self.lhs <= self.rhs_nominal

    def cells(self) -> list:
        return [self.d, self.n, self.t, self.A, float(self.lhs), float(self.rhs),
                float(self.rhs_nominal), self.holds, self.nominal_holds]


def binomial_sum(d: int, n: int) -> int:
    """
    A(d, n).

    Examples:
        >>> binomial_sum(2, 3)
        5
    """
    return sum(int(comb(n + d - 1, k, exact=True)) for k in range(d))


def level_sum_counts(d: int, cap: int) -> List[int]:
    """counts[q] = #{l in [1, cap]^d : |l|_1 = q}."""
    counts = [1]
    for _ in range(d):
        nxt = [0] * (len(counts) + cap)
        for q, c in enumerate(counts):
            if c:
                for entry in range(1, cap + 1):
                    nxt[q + entry] += c
        counts = nxt
    return counts


def tail_sum(d: int, n: int, t: int, cap: int) -> Fraction:
    counts = level_sum_counts(d, cap)
    ratio = Fraction(1, 2**t)
    truncated = sum((c * ratio**q for q, c in enumerate(counts) if q > n + d - 1 and c), Fraction(0))
    full = Fraction(1, 2**t - 1)
    capped = sum((ratio**entry for entry in range(1, cap + 1)), Fraction(0))
    return truncated + (full**d - capped**d)


def closed_form_tail(d: int, n: int, t: int) -> Fraction:
    """(2^t - 1)^(-d) minus the finitely many level sums q <= n+d-1."""
    ratio = Fraction(1, 2**t)
    head = sum((int(comb(q - 1, d - 1, exact=True)) * ratio**q for q in range(d, n + d)), Fraction(0))
    return Fraction(1, 2**t - 1) ** d - head


def sumlemma_row(d: int, n: int, t: int, cap: int = 0) -> SumLemmaRow:
    cap = cap or settings.SGCNN_SUMLEMMA_CAP
    if min(d, n, t) < 1:
        raise ValueError(f"d, n, t must be positive, got d={d} n={n} t={t}")
    if cap < n + d:
        raise ValueError(f"level cap {cap} below n+d={n + d}")
    A = binomial_sum(d, n)
    scale = Fraction(1, 2 ** (t * n + t * d))
    return SumLemmaRow(d, n, t, A, tail_sum(d, n, t, cap), 2 * A * scale, A * scale / 2)


def sumlemma_table(d_max: int, n_max: int, t_max: int, cap: int = 0) -> List[SumLemmaRow]:
    rows = [sumlemma_row(d, n, t, cap)
            for d in range(1, d_max + 1) for n in range(1, n_max + 1) for t in range(1, t_max + 1)]
    failed = sum(not r.holds for r in rows)
    nominal_failed = sum(not r.nominal_holds for r in rows)
    logger.info(f"sumlemma d<={d_max} n<={n_max} t<={t_max}: {len(rows)} rows, "
                f"{failed} violations, {nominal_failed} with the half-size constant")
    return rows
