# File: gadget_networks/oracles.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
Closed-form references for the gadget networks.

Every builder in this app is checked against one of these functions; none
of them touches a network.
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import List

import numpy as np


def sawtooth_eval(i: int, x) -> np.ndarray:
    """
    i-fold composition of the hat T(x) = 2 min(x, 1-x) on [0, 1].

    Examples:
        >>> sawtooth_eval(2, [0.25, 0.5]).tolist()
        [1.0, 0.0]
    """
    if i < 0:
        raise ValueError(f"sawtooth order must be non-negative, got {i}")
    x = np.asarray(x, dtype=float)
    for _ in range(i):
        x = 2.0 * np.minimum(x, 1.0 - x)
    return x


def ru_eval(U: int, x, form: str = "sawtooth") -> np.ndarray:
    """
    Piecewise-linear interpolant of x^2 on the dyadic grid of step 2^-U.

    `form="sawtooth"` sums x - sum_i T_i(x)/4^i; `form="interpolant"` uses
    the per-segment chord. Both agree on [0, 1].
    """
    x = np.asarray(x, dtype=float)
    if form == "sawtooth":
        result = x.copy()
        for i in range(1, U + 1):
            result = result - sawtooth_eval(i, x) / 4.0**i
        return result
    if form == "interpolant":
        step = 2.0**-U
        segment = np.clip(np.floor(x / step), 0, 2**U - 1)
        left = segment * step
        return (2 * segment + 1) * step * (x - left) + left**2
    raise ValueError(f"unknown form '{form}'")


def approx_product_eval(M: float, U: int, x, y) -> np.ndarray:
    """2M^2 [R_U((x+y)/2M) - R_U(x/M)/4 - R_U(y/M)/4] for x, y in [0, M]."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return 2.0 * M**2 * (ru_eval(U, (x + y) / (2.0 * M))
                         - ru_eval(U, x / M) / 4.0
                         - ru_eval(U, y / M) / 4.0)


def chain_bounds(M: float, count: int) -> List[float]:
    """Per-step value bounds M_j = max(M^(2^(j-1)), M) for j = 1..count."""
    return [max(M ** (2 ** (j - 1)), M) for j in range(1, count + 1)]


def product_chain(M: float, U: int, Y) -> List[np.ndarray]:
    """
    Partial approximate products g_j = x~_{M_{j-1}}(g_{j-1}, y_j), g_1 = y_1.

    Y has shape (..., k); the list holds g_2 .. g_k.
    """
    Y = np.asarray(Y, dtype=float)
    bounds = chain_bounds(M, Y.shape[-1] - 1)
    g = Y[..., 0]
    partials = []
    for j in range(1, Y.shape[-1]):
        g = approx_product_eval(bounds[j - 1], U, g, Y[..., j])
        partials.append(g)
    return partials


def chain_error_bound(M: float, U: int, j: int) -> float:
    """
    |g_j - y_1...y_j| <= M^(2^(j-1)) 2^(j-2) / 2^(2U) for j >= 2 and M >= 1.

    For M < 1 every step works on [0, M]^2 and inherits the previous error
    scaled by y_j <= 1, which gives (j-1) M^2 / 2^(2U).
    """
    if M < 1:
        return (j - 1) * M**2 / 4.0**U
    return M ** (2 ** (j - 1)) * 2.0 ** (j - 2) / 4.0**U


@dataclass(frozen=True)
class ChainError:
    j: int
    measured: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.measured <= self.bound


def product_chain_error(M: float, U: int, Y) -> List[ChainError]:
    """Measured sup error of each g_j against the exact partial product."""
    Y = np.asarray(Y, dtype=float)
    exact = np.cumprod(Y, axis=-1)
    rows = []
    for j, g in enumerate(product_chain(M, U, Y), start=2):
        measured = float(np.max(np.abs(g - exact[..., j - 1])))
        rows.append(ChainError(j, measured, chain_error_bound(M, U, j)))
    return rows


@dataclass(frozen=True)
class LedgerEntry:
    """S_n = T_n(y)/4^n and C_n = y - sum_{i<=n} S_i (C_0 = S_0 = y)."""

    n: int
    S: np.ndarray
    C: np.ndarray


def ru_ledger(U: int, y) -> List[LedgerEntry]:
    y = np.asarray(y, dtype=float)
    entries = [LedgerEntry(0, y.copy(), y.copy())]
    C = y.copy()
    for n in range(1, U + 1):
        S = sawtooth_eval(n, y) / 4.0**n
        C = C - S
        entries.append(LedgerEntry(n, S, C.copy()))
    return entries
