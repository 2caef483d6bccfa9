# File: sparse_grid/interpolation.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

from __future__ import annotations
import logging
from typing import Dict, Optional, Tuple

import numpy as np

from .grid import cell_values, level_vectors
from .types import KorobovTestFn, SparseGridInterpolant

logger = logging.getLogger('sgcnn.sparse_grid')


def _level_points(level: Tuple[int, ...]) -> np.ndarray:
    """Grid points of one level vector, ordered like the surplus array (C order)."""
    axes = [(2 * np.arange(2 ** (l - 1)) + 1) * 2.0 ** -l for l in level]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def _degrees(level, m: int, hat: bool) -> Tuple[int, ...]:
    return tuple(1 if hat else min(m, l + 1) for l in level)


def _accumulate(X: np.ndarray, surpluses: Dict[Tuple[int, ...], np.ndarray],
                m: int, hat: bool, out: np.ndarray) -> np.ndarray:
    """out += sum over stored levels of v_{l,i} phi_{l,i}(X)."""
    for level, values in surpluses.items():
        degrees = _degrees(level, m, hat)
        weight = np.ones(X.shape[0])
        cells = []
        for j, (l, a) in enumerate(zip(level, degrees)):
            cell, vals = cell_values(l, a, X[:, j])
            weight = weight * vals
            cells.append(cell)
        out += values[tuple(cells)] * weight
    return out


def evaluate(interpolant: SparseGridInterpolant, X) -> np.ndarray:
    """I_n f at an (npoints, d) array of points (a single point is accepted)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    out = np.zeros(X.shape[0])
    return _accumulate(X, interpolant.surpluses, interpolant.m, interpolant.hat, out)


def hierarchize(f: KorobovTestFn, n: int, m: int, d: int) -> SparseGridInterpolant:
    """
    Surpluses v_{l,i} = f(x_{l,i}) - (coarser part of I_n f)(x_{l,i}), level-sum ascending.

    m = 1 selects the piecewise linear hat basis; m >= 2 the hierarchical
    Lagrange basis of degree min(m, l_j+1).

    Examples:
        >>> from sparse_grid.korobov import get_test_function
        >>> interp = hierarchize(get_test_function("polyprod", 1), 1, 2, 1)
        >>> interp.terms[0].surplus
        0.25
    """
    if m < 1:
        raise ValueError(f"polynomial degree m must be >= 1, got {m}")
    if f.d != d:
        raise ValueError(f"test function '{f.name}' has d={f.d}, requested d={d}")
    hat = m == 1
    surpluses: Dict[Tuple[int, ...], np.ndarray] = {}
    for level in level_vectors(n, d):
        X = _level_points(level)
        coarser = _accumulate(X, surpluses, m, hat, np.zeros(X.shape[0]))
        v = np.asarray(f.value(X), dtype=float) - coarser
        surpluses[level] = v.reshape(tuple(2 ** (l - 1) for l in level))
    interpolant = SparseGridInterpolant(d=d, m=m, n=n, surpluses=surpluses, hat=hat)
    logger.info(
        f"Hierarchized {f.name}: d={d} m={m} n={n} N={interpolant.N} "
        f"max|v|={interpolant.max_abs_surplus:.3e}"
    )
    return interpolant


def interp_error(f: KorobovTestFn, interpolant: SparseGridInterpolant, p, sampler) -> float:
    """
    Estimate ||f - I_n f||_p on the unit cube over the sample set `sampler`
    (an array of points or a callable returning one). p = inf takes the max;
    finite p averages |f - I_n f|^p (domain volume 1).
    """
    X = sampler() if callable(sampler) else sampler
    X = np.atleast_2d(np.asarray(X, dtype=float))
    diff = np.abs(np.asarray(f.value(X), dtype=float) - evaluate(interpolant, X))
    p = float(p)
    if np.isinf(p):
        return float(np.max(diff)) if diff.size else 0.0
    return float(np.mean(diff ** p) ** (1.0 / p))


def node_residuals(f: KorobovTestFn, interpolant: SparseGridInterpolant) -> float:
    """max |I_n f(x_{l,i}) - f(x_{l,i})| over all included grid points."""
    worst = 0.0
    for level in interpolant.surpluses:
        X = _level_points(level)
        worst = max(worst, float(np.max(np.abs(evaluate(interpolant, X) - f.value(X)))))
    return worst
