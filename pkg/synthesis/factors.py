# File: synthesis/factors.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
ReLU-affine factors of sparse-grid basis functions and the packed first layer.

Each univariate basis phi^alpha_{l,i} is the product of alpha factors
sigma((x - z_k)/(x_{l,i} - z_k)) over its zero nodes z_k; the first two zero
nodes are x +- h, so the product already vanishes off the support. Missing
factors (alpha < m) are the constant one.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from sparse_grid.grid import make_basis_1d
from sparse_grid.types import HierNode, MultiIndex, SparseGridTerm
from shallow_compiler.compiler import WideLayerSpec

logger = logging.getLogger('sgcnn.synthesis')


@dataclass(frozen=True)
class RhoFactor:
    slope: float
    intercept: float
    node: HierNode
    direction: int
    k: int
    is_constant_one: bool = False

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.maximum(self.slope * x + self.intercept, 0.0)


def rho_factors(node: HierNode, degrees: MultiIndex, m: int, n: int, d: int) -> List[RhoFactor]:
    """
    m factors per direction, ordered (j, k); factor (j, k) acts on x_j.

    Examples:
        >>> rho = rho_factors(HierNode.of((4,), (3,)), MultiIndex((2,)), 2, 4, 1)
        >>> [float(r.evaluate(0.1875)) for r in rho]
        [1.0, 1.0]
    """
    if m < 2:
        raise ValueError(f"ReLU factorization needs m >= 2, got m={m}")
    if node.d != d or len(degrees) != d:
        raise ValueError(f"node of dimension {node.d} and degrees {degrees.entries} do not match d={d}")
    factors = []
    for j in range(d):
        basis = make_basis_1d(node.level[j], node.index[j], degrees[j])
        zeros = basis.zero_nodes
        if len(zeros) > m:
            raise ValueError(f"degree {degrees[j]} exceeds m={m}")
        for k in range(m):
            if k < len(zeros):
                scale = 1.0 / (basis.center - zeros[k])
                factors.append(RhoFactor(scale, -zeros[k] * scale, node, j, k))
            else:
                factors.append(RhoFactor(0.0, 1.0, node, j, k, is_constant_one=True))
    return factors


def rho_product(factors: Sequence[RhoFactor], X) -> np.ndarray:
    """prod of factor values at an (npoints, d) array."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    out = np.ones(X.shape[0])
    for factor in factors:
        out = out * factor.evaluate(X[:, factor.direction])
    return out


@dataclass(frozen=True)
class FirstLayerLayout:
    """
    Lane positions of the normalized factors in the packed layer output.

    Sub-block r = ((j m) + k) N + beta spans d lanes; its value sits in the last one.
    """

    d: int
    m: int
    N: int

    @property
    def width(self) -> int:
        return self.m * self.d * self.d * self.N

    def lane(self, beta: int, j: int, k: int) -> int:
        if not (0 <= beta < self.N and 0 <= j < self.d and 0 <= k < self.m):
            raise IndexError(f"no lane for (beta={beta}, j={j}, k={k})")
        r = (j * self.m + k) * self.N + beta
        return r * self.d + self.d - 1

    def lanes(self) -> Dict[Tuple[int, int, int], int]:
        return {(beta, j, k): self.lane(beta, j, k)
                for j in range(self.d) for k in range(self.m) for beta in range(self.N)}


def normalizer(n: int, d: int) -> float:
    return 2.0 ** (n + d - 1)


def pack_first_layer(terms: Sequence[SparseGridTerm], m: int, n: int, d: int) -> Tuple[WideLayerSpec, FirstLayerLayout]:
    """
    One wide layer x -> sigma(w * x + b) whose output carries every factor of
    every term, divided by 2^(n+d-1), laid out for the polynomial network.

    Separator lanes (and the d-1 trailing lanes) get bias -2^(n+d), which
    keeps them at zero on [0, 1]^d.
    """
    N = len(terms)
    if N < 1:
        raise ValueError("need at least one sparse-grid term")
    layout = FirstLayerLayout(d, m, N)
    scale = normalizer(n, d)
    big = np.zeros(layout.width)
    bias = np.full(d + layout.width - 1, -2.0 ** (n + d))
    for beta, term in enumerate(terms):
        for factor in rho_factors(term.node, term.degrees, m, n, d):
            lane = layout.lane(beta, factor.direction, factor.k)
            big[lane - factor.direction] = factor.slope / scale
            bias[lane] = factor.intercept / scale
    logger.debug(f"Packed first layer: N={N} m={m} d={d}, filter degree {layout.width - 1}")
    return WideLayerSpec(big, bias, d), layout
