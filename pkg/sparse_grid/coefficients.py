# File: sparse_grid/coefficients.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
Derivative-based oracles for surpluses and basis norms.

The surplus of node (l,i) is (tensor over j of ell_{l_j,i_j}) applied to f, where
the 1D functional ell is a finite combination of point evaluations:

    ell_{l,i} = delta_x - [(1-x) delta_0 + x delta_1] - sum_c phi_c(x) ell_c

over the coarser chain c. Expanding f in a Taylor polynomial of order alpha at 0
with integral remainder gives

    ell(f) = sum_{r<=alpha} f^(r)(0) ell(y^r)/r! + int G(t) f^(alpha+1)(t) dt,
    G(t)   = sum_k lambda_k [sigma(y_k - t)]^alpha / alpha!

The polynomial part vanishes whenever ell annihilates P_alpha; otherwise it is
kept, so the representation is exact for every node.
"""

from __future__ import annotations
import itertools
import logging
import math
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np
from django.conf import settings
from numpy.polynomial.legendre import leggauss

from core.exceptions import QuadratureError
from .grid import coarsening_chain, eval_basis_1d, make_basis_1d
from .types import HierNode, KorobovTestFn, MultiIndex

logger = logging.getLogger('sgcnn.sparse_grid')

BASIS_NORM_CONSTANT = 1.117


# --- quadrature helpers ------------------------------------------------------

@lru_cache(maxsize=64)
def _gauss(npts: int) -> Tuple[np.ndarray, np.ndarray]:
    return leggauss(npts)


def piecewise_gauss(breaks: Sequence[float], npts: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre rule with `npts` points on each [breaks[k], breaks[k+1]]."""
    x, w = _gauss(npts)
    nodes, weights = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b <= a:
            continue
        half = 0.5 * (b - a)
        nodes.append(0.5 * (a + b) + half * x)
        weights.append(half * w)
    if not nodes:
        return np.zeros(0), np.zeros(0)
    return np.concatenate(nodes), np.concatenate(weights)


def _converged(estimate: float, previous: float) -> bool:
    return abs(estimate - previous) <= settings.SGCNN_QUAD_RTOL * abs(estimate) + 1e-15


def adaptive(estimator, start: int = 8) -> float:
    """Double the per-piece Gauss order until two estimates agree."""
    npts = start
    previous = estimator(npts)
    while True:
        npts *= 2
        estimate = estimator(npts)
        if _converged(estimate, previous):
            return estimate
        if npts >= settings.SGCNN_QUAD_MAX_POINTS:
            raise QuadratureError(estimate, previous)
        previous = estimate


# --- surplus functional ------------------------------------------------------

def _chain_degree(alpha: int, level: int) -> int:
    return 1 if alpha == 1 else min(alpha, level + 1)


@lru_cache(maxsize=None)
def surplus_functional(level: int, index: int, alpha: int) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    """
    Points and weights of the 1D surplus functional of node (level, index)
    with basis degree alpha (coarser nodes use min(alpha, l_c+1)).

    Examples:
        >>> surplus_functional(1, 1, 2)
        ((0.0, 0.5, 1.0), (-0.5, 1.0, -0.5))
    """
    x = index * 2.0 ** -level
    weights = {x: 1.0, 0.0: -(1.0 - x), 1.0: -x}
    for chain_level, chain_index in coarsening_chain(level, index):
        degree = _chain_degree(alpha, chain_level)
        phi = float(eval_basis_1d(make_basis_1d(chain_level, chain_index, degree), x))
        if phi == 0.0:
            continue
        points, lambdas = surplus_functional(chain_level, chain_index, degree)
        for y, lam in zip(points, lambdas):
            weights[y] = weights.get(y, 0.0) - phi * lam
    ordered = sorted(weights.items())
    return tuple(p for p, _ in ordered), tuple(w for _, w in ordered)


def apply_functional(level: int, index: int, alpha: int, g) -> float:
    """ell_{l,i}(g) for a univariate callable g."""
    points, weights = surplus_functional(level, index, alpha)
    return float(np.dot(weights, g(np.asarray(points))))


def taylor_weights(level: int, index: int, alpha: int) -> np.ndarray:
    """beta_r = ell(y^r)/r!, r = 0..alpha."""
    points, weights = surplus_functional(level, index, alpha)
    y, lam = np.asarray(points), np.asarray(weights)
    return np.array([np.dot(lam, y ** r) / math.factorial(r) for r in range(alpha + 1)])


def peano_kernel(level: int, index: int, alpha: int, t) -> np.ndarray:
    """G(t) = sum_k lambda_k [sigma(y_k - t)]^alpha / alpha!."""
    points, weights = surplus_functional(level, index, alpha)
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for y, lam in zip(points, weights):
        out += lam * np.maximum(y - t, 0.0) ** alpha
    return out / math.factorial(alpha)


def _kernel_breaks(points: Sequence[float]) -> List[float]:
    return sorted(set([0.0] + [p for p in points if p > 0.0]))


def _tensor_integral(f: KorobovTestFn, d: int, options, kernel, breaks, start: int) -> float:
    """
    sum over per-direction choices of coef * (Taylor values at 0 or kernel integrals).

    options[j] lists ("taylor" | "kernel", derivative order, weight); kernel(j, t)
    and breaks[j] describe the kernel of direction j.
    """
    def estimate(npts: int) -> float:
        total = 0.0
        for combo in itertools.product(*options):
            coef = 1.0
            orders = []
            kernel_dirs = []
            for j, (kind, order, weight) in enumerate(combo):
                coef *= weight
                orders.append(order)
                if kind == "kernel":
                    kernel_dirs.append(j)
            derivative = f.mixed_derivative(tuple(orders))
            if not kernel_dirs:
                total += coef * float(derivative(np.zeros((1, d)))[0])
                continue
            axes, wts = [], []
            for j in kernel_dirs:
                x, w = piecewise_gauss(breaks[j], npts)
                axes.append(x)
                wts.append(w * kernel(j, x))
            mesh = np.meshgrid(*axes, indexing="ij")
            wmesh = np.meshgrid(*wts, indexing="ij")
            X = np.zeros((mesh[0].size, d))
            for col, j in enumerate(kernel_dirs):
                X[:, j] = mesh[col].ravel()
            weight = np.prod([wm.ravel() for wm in wmesh], axis=0)
            total += coef * float(np.dot(weight, derivative(X)))
        return total

    return adaptive(estimate, start=start)


def coefficient_integral(f: KorobovTestFn, node: HierNode, degrees: MultiIndex) -> float:
    """
    v_{l,i} from derivatives of f: Taylor boundary terms at the origin plus
    the tensor Gauss integral of prod_j G_j(x_j) against D^{alpha+1} f, split at
    every kernel breakpoint and refined until two estimates agree.

    Examples:
        >>> from sparse_grid.korobov import get_test_function
        >>> f = get_test_function("polyprod", 1)
        >>> round(coefficient_integral(f, HierNode.of((1,), (1,)), MultiIndex((2,))), 12)
        0.25
    """
    d = node.d
    options, breaks = [], []
    for j in range(d):
        l, i, a = node.level[j], node.index[j], degrees[j]
        betas = taylor_weights(l, i, a)
        choices = [("taylor", r, float(betas[r])) for r in range(a + 1) if betas[r] != 0.0]
        choices.append(("kernel", a + 1, 1.0))
        options.append(choices)
        breaks.append(_kernel_breaks(surplus_functional(l, i, a)[0]))

    def kernel(j, t):
        return peano_kernel(node.level[j], node.index[j], degrees[j], t)

    value = _tensor_integral(f, d, options, kernel, breaks, start=max(8, max(degrees) + 2))
    logger.debug(f"coefficient_integral {node.level.entries}/{node.index.entries} = {value!r}")
    return value


# --- node-polynomial form ----------------------------------------------------

@lru_cache(maxsize=None)
def node_polynomial(level: int, index: int, alpha: int) -> Tuple[Tuple[float, ...], Tuple[float, ...], float]:
    """
    Nodes x_{l,i} followed by the alpha Lagrange zeros of phi^alpha_{l,i},
    the reciprocals 1/w'(x_k) of w(t) = prod_k (t - x_k), and w'(x_{l,i}).

    Examples:
        >>> node_polynomial(1, 1, 2)
        ((0.5, 1.0, 0.0), (-4.0, 2.0, 2.0), -0.25)
    """
    if alpha < 2:
        raise ValueError(f"node-polynomial form needs alpha >= 2, got {alpha}")
    x = index * 2.0 ** -level
    nodes = (x,) + tuple(make_basis_1d(level, index, alpha).zero_nodes)
    slopes = [float(np.prod([a - b for b in nodes if b != a])) for a in nodes]
    return nodes, tuple(1.0 / w for w in slopes), slopes[0]


def node_kernel(level: int, index: int, alpha: int, t) -> np.ndarray:
    """w'(x_{l,i}) s^alpha(t) / alpha! with s^alpha(t) = sum_k [sigma(x_k - t)]^alpha / w'(x_k)."""
    nodes, inverse, slope = node_polynomial(level, index, alpha)
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for y, inv in zip(nodes, inverse):
        out += inv * np.maximum(y - t, 0.0) ** alpha
    return slope * out / math.factorial(alpha)


def divided_difference_integral(f: KorobovTestFn, node: HierNode, degrees: MultiIndex) -> float:
    """
    prod_j w_j'(x_{l_j,i_j}) times the tensor divided difference of f over
    x_{l,i} and the Lagrange zeros of each direction, written as the integral
    of prod_j node_kernel against D^{alpha+1} f plus the leading Taylor term
    f^(alpha_j)(0)/alpha_j! the kernel alone misses.

    Equals the hierarchical surplus in every direction where alpha_j = l_j + 1
    (the zeros are all ancestors of x_{l,i} and both endpoints).
    """
    d = node.d
    options, breaks = [], []
    for j in range(d):
        l, i, a = node.level[j], node.index[j], degrees[j]
        nodes, _, slope = node_polynomial(l, i, a)
        options.append([("taylor", a, slope / math.factorial(a)), ("kernel", a + 1, 1.0)])
        breaks.append(_kernel_breaks(nodes))

    def kernel(j, t):
        return node_kernel(node.level[j], node.index[j], degrees[j], t)

    value = _tensor_integral(f, d, options, kernel, breaks, start=max(8, max(degrees) + 2))
    logger.debug(f"divided_difference_integral {node.level.entries}/{node.index.entries} = {value!r}")
    return value


# --- norms and bounds --------------------------------------------------------

def _conjugate(p: float) -> float:
    if np.isinf(p):
        return 1.0
    if p == 1.0:
        return np.inf
    return p / (p - 1.0)


def basis_lp_norm(node: HierNode, degrees: MultiIndex, p) -> float:
    """
    ||phi^alpha_{l,i}||_{L_p} as the product of the 1D norms; p = inf is a
    max over SGCNN_LP_SAMPLES samples per direction (a lower estimate).
    """
    p = float(p)
    norm = 1.0
    for j in range(node.d):
        b = make_basis_1d(node.level[j], node.index[j], degrees[j])
        lo, hi = b.support
        if np.isinf(p):
            samples = np.linspace(lo, hi, settings.SGCNN_LP_SAMPLES)
            norm *= float(np.max(np.abs(eval_basis_1d(b, samples))))
            continue

        def estimate(npts, b=b, lo=lo, hi=hi):
            x, w = piecewise_gauss([lo, b.center, hi], npts)
            return float(np.dot(w, np.abs(eval_basis_1d(b, x)) ** p))

        norm *= adaptive(estimate) ** (1.0 / p)
    return norm


def lp_norm_bound(level: MultiIndex, p) -> float:
    """1.117^d * 2^{d/p} * 2^{-|l|_1/p}."""
    p = float(p)
    d = len(level)
    inv = 0.0 if np.isinf(p) else 1.0 / p
    return BASIS_NORM_CONSTANT ** d * 2.0 ** (d * inv) * 2.0 ** (-level.norm1 * inv)


def c_alpha(degrees: MultiIndex) -> float:
    """prod_j 2^{alpha_j(alpha_j+1)/2} / (alpha_j+1)!."""
    return float(np.prod([2.0 ** (a * (a + 1) / 2) / math.factorial(a + 1) for a in degrees]))


def kernel_region(level: int, index: int, alpha: int) -> Tuple[float, float]:
    """Hull of supp(phi) and the nodes the surplus functional actually uses."""
    points, weights = surplus_functional(level, index, alpha)
    h = 2.0 ** -level
    x = index * h
    used = [p for p, w in zip(points, weights) if abs(w) > 1e-14]
    return min([x - h] + used), max([x + h] + used)


def derivative_norm_on_support(f: KorobovTestFn, node: HierNode, degrees: MultiIndex,
                               orders: Sequence[int], p) -> float:
    """
    ||D^{orders} f||_{L_p} over the box where the Peano kernel of node lives
    (supp phi widened to the functional's ancestor nodes); sup by tensor sampling.
    """
    p = float(p)
    d = node.d
    derivative = f.mixed_derivative(tuple(orders))
    support = [kernel_region(node.level[j], node.index[j], degrees[j]) for j in range(d)]
    if np.isinf(p):
        per_axis = 129 if d <= 2 else 33
        axes = [np.linspace(lo, hi, per_axis) for lo, hi in support]
        mesh = np.meshgrid(*axes, indexing="ij")
        X = np.stack([m.ravel() for m in mesh], axis=1)
        return float(np.max(np.abs(derivative(X))))
    rules = [piecewise_gauss([lo, 0.5 * (lo + hi), hi], 24) for lo, hi in support]
    mesh = np.meshgrid(*[r[0] for r in rules], indexing="ij")
    wmesh = np.meshgrid(*[r[1] for r in rules], indexing="ij")
    X = np.stack([m.ravel() for m in mesh], axis=1)
    weight = np.prod([wm.ravel() for wm in wmesh], axis=0)
    return float(np.dot(weight, np.abs(derivative(X)) ** p) ** (1.0 / p))


def coefficient_bound(f: KorobovTestFn, node: HierNode, degrees: MultiIndex, p) -> float:
    """c(alpha) * 2^{-d-|l.alpha|_1-|l|_1/p'} * ||D^{alpha+1} f||_{L_p(supp)}."""
    p = float(p)
    q = _conjugate(p)
    level_term = 0.0 if np.isinf(q) else node.level.norm1 / q
    weighted = sum(l * a for l, a in zip(node.level, degrees))
    orders = [a + 1 for a in degrees]
    scale = 2.0 ** (-node.d - weighted - level_term)
    return c_alpha(degrees) * scale * derivative_norm_on_support(f, node, degrees, orders, p)
