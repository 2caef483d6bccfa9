# File: verify/rates.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
Interpolation-rate study: error of I_n f for n = 1..n_max with observed orders.

The fitted order is the negated least-squares slope of
log(error / (log2 N)^((m+2)(d-1))) against log N over the trailing window.
"""

from __future__ import annotations
import logging
import math
from dataclasses import dataclass
from typing import List

import numpy as np

from core.utils.samplers import sup_sample_set
from sparse_grid.interpolation import hierarchize, interp_error
from sparse_grid.korobov import get_test_function
from synthesis.pipeline import choose_U, depth_ledger

logger = logging.getLogger('sgcnn.verify')

HEADERS = ["n", "N", "depth", "width", "error_p", "ratio", "fitted_order"]
FIT_WINDOW = 4


@dataclass(frozen=True)
class RateRow:
    n: int
    N: int
    depth: int
    width: int
    error: float
    ratio: float
    fitted_order: float

    def cells(self) -> list:
        return [self.n, self.N, self.depth, self.width, self.error, self.ratio, self.fitted_order]


def log_correction(N: int, m: int, d: int) -> float:
    # log2 N is clamped at 1 so the single-term grid stays finite for d > 1
    return max(math.log2(N), 1.0) ** ((m + 2) * (d - 1))


def fitted_order(Ns, errors, m: int, d: int) -> float:
    """
    -slope of the corrected log error against log N; nan with fewer than two
    positive errors.

    Examples:
        >>> round(fitted_order([2, 4], [0.25, 0.0625], 2, 1), 12)
        2.0
    """
    pairs = [(N, e) for N, e in zip(Ns, errors) if e > 0.0]
    if len(pairs) < 2:
        return math.nan
    x = np.log([N for N, _ in pairs])
    y = np.log([e / log_correction(N, m, d) for N, e in pairs])
    slope = np.polyfit(x, y, 1)[0]
    return float(-slope)


def rate_table(f_name: str, d: int, m: int, n_max: int, p=math.inf, s: int = 2) -> List[RateRow]:
    """One row per n in 1..n_max; ratio and fitted_order are nan on the first row."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    f = get_test_function(f_name, d)
    rows: List[RateRow] = []
    for n in range(1, n_max + 1):
        interpolant = hierarchize(f, n, m, d)
        N = interpolant.N
        error = interp_error(f, interpolant, p, sup_sample_set(d, n))
        # hat basis has no polynomial network; its depth column uses the m=2 ledger
        gadget_m = max(m, 2)
        depth = int(math.ceil(depth_ledger(N, gadget_m, d, s, choose_U(gadget_m, d, N)).total))
        if rows:
            previous = rows[-1].error
            ratio = previous / error if error > 0.0 else math.nan
            window = min(FIT_WINDOW, n - 1)
            tail = rows[len(rows) - window:]
            order = fitted_order([r.N for r in tail] + [N], [r.error for r in tail] + [error], m, d)
        else:
            ratio = order = math.nan
        rows.append(RateRow(n, N, depth, d + depth * s, error, ratio, order))
        logger.info(f"rates {f_name} d={d} m={m} n={n}: N={N} error={error:.3e} order={order:.3f}")
    return rows
