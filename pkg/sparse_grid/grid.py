# File: sparse_grid/grid.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

from __future__ import annotations
import itertools
import logging
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np
from django.conf import settings

from core.exceptions import BudgetExceeded
from .types import Basis1D, HierNode, MultiIndex

logger = logging.getLogger('sgcnn.sparse_grid')


# --- enumeration -------------------------------------------------------------

def level_vectors(n: int, d: int) -> List[Tuple[int, ...]]:
    """
    All l in N_+^d with |l|_1 <= n+d-1, level-sum ascending then lexicographic.

    Examples:
        >>> level_vectors(2, 2)
        [(1, 1), (1, 2), (2, 1)]
    """
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    if n > settings.SGCNN_MAX_LEVEL:
        raise BudgetExceeded("n", n, settings.SGCNN_MAX_LEVEL)
    out = []
    for total in range(d, n + d):
        for level in itertools.product(range(1, total - d + 2), repeat=d):
            if sum(level) == total:
                out.append(level)
    return out


def indices_of(level: Sequence[int]) -> List[MultiIndex]:
    """I_l: odd indices 1 <= i_j <= 2^{l_j}-1."""
    ranges = [range(1, 2 ** l, 2) for l in level]
    return [MultiIndex(i) for i in itertools.product(*ranges)]


def enumerate_levels(n: int, d: int) -> List[Tuple[MultiIndex, Tuple[MultiIndex, ...]]]:
    """
    Sparse-grid index set Sigma_n as (l, I_l) pairs.

    Examples:
        >>> [(l.entries, [i.entries for i in idx]) for l, idx in enumerate_levels(2, 1)]
        [((1,), [(1,)]), ((2,), [(1,), (3,)])]
    """
    return [(MultiIndex(l), tuple(indices_of(l))) for l in level_vectors(n, d)]


def count_points(n: int, d: int) -> int:
    """N = sum over |l|_1 <= n+d-1 of prod_j 2^{l_j-1}."""
    return sum(int(np.prod([2 ** (l - 1) for l in level])) for level in level_vectors(n, d))


# --- degrees and ancestors ---------------------------------------------------

def basis_degree(m: int, level: MultiIndex) -> MultiIndex:
    """
    alpha_j = min(m, l_j + 1).

    Examples:
        >>> basis_degree(3, MultiIndex((1, 4))).entries
        (2, 3)
    """
    if m < 2:
        raise ValueError(f"basis degree needs m >= 2, got m={m}")
    if any(l < 1 for l in level):
        raise ValueError(f"levels start at 1: {level.entries}")
    return MultiIndex(tuple(min(m, l + 1) for l in level))


def coarsening_chain(level: int, index: int) -> List[Tuple[int, int]]:
    """Coarser nodes (level-1 down to 1) whose supports contain x_{l,i}."""
    chain = []
    while level > 1:
        level -= 1
        low, high = (index - 1) // 2, (index + 1) // 2
        index = low if low % 2 == 1 else high
        chain.append((level, index))
    return chain


@lru_cache(maxsize=None)
def ancestors_1d(level: int, index: int, count: int) -> Tuple[float, ...]:
    if count > level + 1:
        raise ValueError(
            f"node ({level},{index}) has {level + 1} ancestors, {count} requested"
        )
    h = 2.0 ** -level
    x = index * h
    out = [x + h, x - h]
    for chain_level, chain_index in coarsening_chain(level, index):
        point = chain_index * 2.0 ** -chain_level
        if point not in out:
            out.append(point)
    # level-0 endpoints, nearest first
    for point in sorted((0.0, 1.0), key=lambda p: (abs(p - x), p)):
        if point not in out:
            out.append(point)
    return tuple(out[:count])


def ancestors(node: HierNode, j: int, count: int) -> List[float]:
    """
    x+h, x-h, then the coarsening chain of direction j (nearest level first),
    then the boundary points.

    Examples:
        >>> ancestors(HierNode.of((4,), (3,)), 0, 5)
        [0.25, 0.125, 0.5, 0.0, 1.0]
    """
    return list(ancestors_1d(node.level[j], node.index[j], count))


def make_basis_1d(level: int, index: int, degree: int) -> Basis1D:
    count = min(degree + 1, level + 1) if degree > 1 else 2
    return Basis1D(level=level, index=index, degree=degree,
                   nodes=ancestors_1d(level, index, count))


# --- evaluation --------------------------------------------------------------

def eval_basis_1d(b: Basis1D, x):
    """
    phi^alpha_{l,i}(x): hat for degree 1, Lagrange product over the first
    alpha nodes otherwise, zero outside the support.

    Examples:
        >>> float(eval_basis_1d(make_basis_1d(1, 1, 2), 0.25))
        0.75
    """
    x = np.asarray(x, dtype=float)
    t = (x - b.center) / b.h
    inside = np.abs(t) <= 1.0
    if b.degree == 1:
        values = 1.0 - np.abs(t)
    elif b.degree == 2:
        values = 1.0 - t * t
    else:
        values = np.ones_like(x)
        for node in b.zero_nodes:
            values = values * (x - node) / (b.center - node)
    return np.where(inside, values, 0.0)


def eval_basis_tensor(node: HierNode, degrees: MultiIndex, x) -> np.ndarray:
    """Product of the d univariate factors; x is a point or an (npoints, d) array."""
    X = np.atleast_2d(np.asarray(x, dtype=float))
    out = np.ones(X.shape[0])
    for j in range(node.d):
        b = make_basis_1d(node.level[j], node.index[j], degrees[j])
        out = out * eval_basis_1d(b, X[:, j])
    return out if np.ndim(x) > 1 else out[0]


@lru_cache(maxsize=256)
def _zero_node_table(level: int, degree: int) -> np.ndarray:
    half = 2 ** (level - 1)
    return np.array([ancestors_1d(level, 2 * c + 1, degree) for c in range(half)])


def cell_values(level: int, degree: int, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    For each x, the cell c of level `level` whose basis (index 2c+1) may be
    nonzero there, and that basis value. One cell per point, since supports
    of a fixed level do not overlap.
    """
    half = 2 ** (level - 1)
    h = 2.0 ** -level
    cell = np.clip(np.floor(x * half).astype(np.int64), 0, half - 1)
    center = (2 * cell + 1) * h
    t = (x - center) / h
    inside = (np.abs(t) <= 1.0) & (x >= 0.0) & (x <= 1.0)
    if degree == 1:
        values = 1.0 - np.abs(t)
    elif degree == 2:
        values = 1.0 - t * t
    else:
        nodes = _zero_node_table(level, degree)[cell]
        values = np.prod((x[:, None] - nodes) / (center[:, None] - nodes), axis=1)
    return cell, np.where(inside, values, 0.0)
