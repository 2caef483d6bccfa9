# File: shallow_compiler/compiler.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
Wide layer -> deep CNN with short filters.

sigma(w * x + b) with a long filter w is rewritten as L layers whose filters
multiply to w as polynomials in z. Every intermediate layer adds a non-negative
shift c_j, chosen from interval bounds over the input box, so pre-activations
stay >= 0 and the ReLU passes values through unchanged. The last layer removes
the carried shift and applies the real bias.
"""

from __future__ import annotations
import logging
import math
from dataclasses import dataclass
from functools import reduce
from typing import List, Optional, Tuple

import numpy as np
from django.conf import settings

from cnn_core.network import ConvLayer, DeepCnn, Filter, as_vector
from cnn_core.ops import relu, toeplitz_conv
from core.exceptions import BudgetExceeded, DimensionMismatch, FactorizationError

logger = logging.getLogger('sgcnn.compiler')

REAL_ROOT_TOL = 1e-10
NEWTON_STEPS = 3
CLUSTER_TOL = 1e-5


# --- specs -------------------------------------------------------------------

@dataclass(frozen=True)
class WideLayerSpec:
    """
    One convolution-plus-ReLU layer with a long filter.

    The input domain is the box [0, input_bound]^input_dim, or [0, input_upper]
    lane by lane when per-lane bounds are known (lanes known to be zero get 0).
    """

    big_filter: np.ndarray
    bias: np.ndarray
    input_dim: int
    input_bound: float = 1.0
    input_upper: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "big_filter", as_vector(self.big_filter))
        object.__setattr__(self, "bias", as_vector(self.bias))
        if len(self.big_filter) < 2:
            raise ValueError("wide layer filter needs at least 2 taps")
        if len(self.bias) != self.input_dim + self.n:
            raise DimensionMismatch(self.input_dim + self.n, len(self.bias), what="wide layer bias")
        if not self.input_bound > 0:
            raise ValueError(f"input bound must be positive, got {self.input_bound}")
        if self.input_upper is not None:
            upper = as_vector(self.input_upper)
            if len(upper) != self.input_dim:
                raise DimensionMismatch(self.input_dim, len(upper), what="input upper bounds")
            if np.any(upper < 0):
                raise ValueError("input upper bounds must be non-negative")
            object.__setattr__(self, "input_upper", upper)

    @property
    def n(self) -> int:
        return len(self.big_filter) - 1

    @property
    def upper(self) -> np.ndarray:
        if self.input_upper is not None:
            return self.input_upper
        return np.full(self.input_dim, float(self.input_bound))


def depth_bound(n: int, s: int) -> int:
    """ceil(n / (s-1))"""
    return -(-n // (s - 1))


def wide_layer_oracle(spec: WideLayerSpec, x) -> np.ndarray:
    """Reference evaluation sigma(T_w x + b)."""
    return relu(toeplitz_conv(spec.big_filter, x) + spec.bias)


# --- factorization -----------------------------------------------------------

def _polish(coeffs: np.ndarray, root):
    """A few guarded Newton steps on a root of coeffs (highest power first)."""
    slope_coeffs = np.polyder(coeffs)
    for _ in range(NEWTON_STEPS):
        value = np.polyval(coeffs, root)
        slope = np.polyval(slope_coeffs, root)
        if slope == 0:
            break
        candidate = root - value / slope
        if abs(np.polyval(coeffs, candidate)) >= abs(value):
            break
        root = candidate
    return root


def _merge_clusters(roots) -> Tuple[List[complex], List[int]]:
    """Centroids and sizes of groups of roots closer than CLUSTER_TOL (relative)."""
    clusters: List[List[complex]] = []
    for root in sorted((complex(r) for r in roots), key=lambda r: (r.real, r.imag)):
        for members in clusters:
            if abs(root - members[0]) <= CLUSTER_TOL * max(1.0, abs(members[0])):
                members.append(root)
                break
        else:
            clusters.append([root])
    return [sum(m) / len(m) for m in clusters], [len(m) for m in clusters]


def _split_roots(coeffs: np.ndarray, degree: int) -> Tuple[List[float], List[complex]]:
    """
    Real roots and one representative per conjugate pair.

    Multiple roots come back from the eigenvalue solver split by about
    sqrt(eps); they are replaced by their centroid and left unpolished.
    Simple roots get Newton polishing.
    """
    reals, uppers, lowers = [], [], 0
    for root, count in zip(*_merge_clusters(np.roots(coeffs))):
        if abs(root.imag) <= REAL_ROOT_TOL * max(1.0, abs(root)):
            value = float(root.real)
            reals += [float(_polish(coeffs, value)) if count == 1 else value] * count
        elif root.imag > 0:
            if count == 1:
                polished = _polish(coeffs, root)
                root = polished if polished.imag > 0 else root
            uppers += [complex(root)] * count
        else:
            lowers += count
    if len(uppers) != lowers:
        raise FactorizationError(degree, math.inf)
    return reals, uppers


def _qth_roots(root, q: int, is_real: bool) -> Tuple[List[float], List[complex]]:
    """Roots of z^q = root, as reals plus conjugate-pair representatives."""
    if q == 1:
        return ([float(root)], []) if is_real else ([], [complex(root)])
    mag = abs(root) ** (1.0 / q)
    if not is_real:
        base = np.angle(root)
        return [], [mag * np.exp(1j * (base + 2 * np.pi * k) / q) for k in range(q)]
    if root > 0:
        reals = [mag, -mag] if q % 2 == 0 else [mag]
        pairs = [mag * np.exp(2j * np.pi * k / q) for k in range(1, (q + 1) // 2)]
    else:
        reals = [] if q % 2 == 0 else [-mag]
        pairs = [mag * np.exp(1j * np.pi * (2 * k + 1) / q) for k in range(q // 2)]
    return reals, pairs


def _monic(root, is_real: bool) -> np.ndarray:
    """Monic linear or quadratic factor, lowest power first."""
    if is_real:
        return np.array([-float(root), 1.0])
    return np.array([abs(root) ** 2, -2.0 * root.real, 1.0])


def _greedy(polys: List[np.ndarray]) -> List[int]:
    """Order (as indices) keeping every partial product's l1 norm small."""
    remaining = list(range(len(polys)))
    partial = np.ones(1)
    order = []
    while remaining:
        norms = [np.abs(np.convolve(partial, polys[k])).sum() for k in remaining]
        chosen = remaining.pop(int(np.argmin(norms)))
        partial = np.convolve(partial, polys[chosen])
        order.append(chosen)
    return order


def _stride_group(root, is_real: bool, q: int) -> List[np.ndarray]:
    """Short factors of r(z^q) for one linear or quadratic factor r of the reduced polynomial."""
    z_reals, z_pairs = _qth_roots(root, q, is_real)
    items = [_monic(r, True) for r in z_reals] + [_monic(zeta, False) for zeta in z_pairs]
    return [items[k] for k in _greedy(items)]


def _pack(items: List[np.ndarray], s: int) -> List[np.ndarray]:
    """
    Multiply consecutive monic items into factors of degree <= s.

    Items have degree 1 or 2, so every closed factor carries degree >= s-1
    and at most ceil(n/(s-1)) factors come out.
    """
    bins: List[List[np.ndarray]] = []
    load = s + 1
    for poly in items:
        degree = len(poly) - 1
        if load + degree > s:
            bins.append([poly])
            load = degree
        else:
            bins[-1].append(poly)
            load += degree
    return [reduce(np.convolve, group) for group in bins]


def factor_filter(big_filter, s: int) -> List[Filter]:
    """
    Split a long filter into filters of length s whose convolution is big_filter.

    Leading zero taps become factors z. A common stride q of the remaining tap
    exponents is factored out (u = z^q) and only the reduced polynomial in u
    goes to the root finder; each of its linear/quadratic factors r(u) is then
    split on the stride lattice into the short factors of r(z^q). Groups are
    ordered at the reduced level, items inside a group among themselves, and
    consecutive items are packed into filters.

    Examples:
        >>> [f.taps.tolist() for f in factor_filter([1, 2, 1], 2)]
        [[1.0, 2.0, 1.0]]
    """
    if s < 2:
        raise ValueError(f"filter length s must be at least 2, got {s}")
    w = as_vector(big_filter)
    if len(w) - 1 <= s:
        return [Filter.of(w, s)]
    nonzero = np.flatnonzero(w)
    if nonzero.size == 0:
        return [Filter.of([0.0], s)]
    low, high = int(nonzero[0]), int(nonzero[-1])
    if high <= s:
        return [Filter.of(w[:high + 1], s)]

    core = w[low:high + 1]
    q = int(np.gcd.reduce(nonzero - low)) if nonzero.size > 1 else 1
    reduced = core[::q]
    degree = len(reduced) - 1
    limit = settings.SGCNN_MAX_FILTER_DEGREE
    if degree > limit:
        raise BudgetExceeded("filter degree", degree, limit)

    items: List[np.ndarray] = [np.array([0.0, 1.0]) for _ in range(low)]
    if degree > 0:
        reals, uppers = _split_roots(reduced[::-1], degree)
        groups = [(r, True) for r in reals] + [(r, False) for r in uppers]
        groups.sort(key=lambda g: (abs(g[0]), abs(np.angle(g[0])), g[1]))
        for k in _greedy([_monic(root, is_real) for root, is_real in groups]):
            items += _stride_group(groups[k][0], groups[k][1], q)
    polys = _pack(items, s)

    lead = float(core[-1])
    gain = abs(lead) ** (1.0 / len(polys))
    polys = [p * gain for p in polys]
    polys[0] = polys[0] * math.copysign(1.0, lead)
    factors = [Filter.of(p, s) for p in polys]

    product = reduce(np.convolve, [f.taps for f in factors])
    size = max(len(product), len(w))
    residual = np.max(np.abs(np.pad(product, (0, size - len(product))) - np.pad(w, (0, size - len(w)))))
    relative = residual / np.max(np.abs(w))
    if not relative <= settings.SGCNN_FACTOR_RTOL:
        logger.warning(f"Factorization of degree {len(w) - 1} rejected: relative error {relative:.3e}")
        raise FactorizationError(len(w) - 1, float(relative))
    logger.debug(f"Factored degree {len(w) - 1} (stride {q}, {low} zero roots) into "
                 f"{len(factors)} filters, residual {relative:.2e}")
    return factors


# --- interval bounds ---------------------------------------------------------

def _as_box(value, width: int) -> np.ndarray:
    return np.broadcast_to(np.asarray(value, dtype=float), (width,)).astype(float)


def interval_bounds(net: DeepCnn, upper, lower=0.0) -> Tuple[np.ndarray, np.ndarray]:
    """
    Per-entry enclosure [lo, hi] of h_L(x) over the box lower <= x <= upper.

    Bounds are widened by the float rounding of each layer and rounded outward,
    so sampled evaluations never leave them.
    """
    lo = _as_box(lower, net.input_dim)
    hi = _as_box(upper, net.input_dim)
    eps = np.finfo(float).eps
    for layer in net.layers:
        taps = np.asarray(layer.filter.taps, dtype=float)
        bias = np.asarray(layer.bias, dtype=float)
        pos, neg = np.maximum(taps, 0.0), np.minimum(taps, 0.0)
        pre_lo = np.convolve(pos, lo) + np.convolve(neg, hi) + bias
        pre_hi = np.convolve(pos, hi) + np.convolve(neg, lo) + bias
        magnitude = np.convolve(np.abs(taps), np.maximum(np.abs(lo), np.abs(hi))) + np.abs(bias)
        slack = 2 * (len(taps) + 1) * eps * magnitude
        lo = relu(np.nextafter(pre_lo - slack, -np.inf))
        hi = relu(np.nextafter(pre_hi + slack, np.inf))
    return lo, hi


def shift_for(lower: np.ndarray) -> np.ndarray:
    """Power of two strictly above -lower where lower < 0, else 0."""
    shift = np.zeros_like(lower, dtype=float)
    negative = lower < 0
    if negative.any():
        shift[negative] = np.exp2(np.floor(np.log2(-lower[negative])) + 1)
    return shift


# --- compiler ----------------------------------------------------------------

def compile_shallow(spec: WideLayerSpec, s: int, **meta) -> DeepCnn:
    """
    Deep CNN with filters of length s realizing x -> sigma(w * x + b).

    The payload sits at offset 0 with length n0 + n; the remaining
    len(factors)*s - n lanes are driven to zero.
    """
    factors = factor_filter(spec.big_filter, s)
    n, n0 = spec.n, spec.input_dim
    identity = Filter.of([1.0], s)
    while len(factors) * s < n:
        factors.append(identity)

    upper = spec.upper
    partial = np.ones(1)
    shift = np.zeros(n0)
    layers = []
    for factor in factors[:-1]:
        partial = np.convolve(partial, factor.taps)
        lower = np.convolve(np.minimum(partial, 0.0), upper)
        next_shift = shift_for(lower)
        layers.append(ConvLayer(factor, next_shift - toeplitz_conv(factor, shift)))
        shift = next_shift

    last = factors[-1]
    bias = np.full(n0 + len(factors) * s, -1.0)
    bias[: n0 + n] = spec.bias
    layers.append(ConvLayer(last, bias - toeplitz_conv(last, shift)))

    bound = depth_bound(n, s)
    info = {
        "builder": "shallow_compiler",
        "depth_bound_claimed": bound,
        "payload_offset": 0,
        "payload_length": n0 + n,
    }
    info.update(meta)
    net = DeepCnn(n0, s, layers, meta=info)
    logger.debug(f"Compiled wide layer n={n} n0={n0} s={s} into depth {net.depth} (bound {bound})")
    return net
