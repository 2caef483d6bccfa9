# File: cnn_core/ops.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

from __future__ import annotations
import logging
from fractions import Fraction
from typing import Optional

import numpy as np
from django.conf import settings
from scipy.linalg import toeplitz

from core.exceptions import DimensionMismatch
from .network import AlignedVector, ConvLayer, DeepCnn, Filter, as_vector, is_exact

logger = logging.getLogger('sgcnn.cnn')


# --- convolution -------------------------------------------------------------

def toeplitz_conv(w, y) -> np.ndarray:
    """
    (w * y)_i = sum_k w_{i-k} y_k; output length n+s. y may be a batch (B, n).

    Examples:
        >>> toeplitz_conv([1, 1], [1, 2, 3]).tolist()
        [1.0, 3.0, 5.0, 3.0]
    """
    taps = w.taps if isinstance(w, Filter) else np.asarray(w)
    y = np.asarray(y)
    if not (is_exact(taps) or is_exact(y)):
        taps = taps.astype(float)
        y = y.astype(float)
    n = y.shape[-1]
    s = len(taps) - 1
    dtype = object if (is_exact(taps) or is_exact(y)) else float
    out = np.zeros(y.shape[:-1] + (n + s,), dtype=dtype)
    if dtype is object:
        out[...] = Fraction(0)
    for t, tap in enumerate(taps):
        if tap != 0:
            out[..., t:t + n] += tap * y
    return out


def toeplitz_matrix(w, n: int) -> np.ndarray:
    """Dense (n+s) x n matrix T_w with T_w y = w * y."""
    taps = np.asarray(w.taps if isinstance(w, Filter) else w, dtype=float)
    s = len(taps) - 1
    column = np.concatenate([taps, np.zeros(n - 1)])
    row = np.zeros(n)
    row[0] = taps[0]
    return toeplitz(column, row)[: n + s]


def relu(z: np.ndarray) -> np.ndarray:
    return np.maximum(z, 0)


# --- evaluation --------------------------------------------------------------

def _check_width(expected: int, got: int, what: str = "input"):
    if expected != got:
        raise DimensionMismatch(expected, got, what=what)


def layer_apply(layer: ConvLayer, x) -> np.ndarray:
    """sigma(w * x + b) for one vector or a batch."""
    x = np.asarray(x)
    _check_width(layer.input_width, x.shape[-1])
    return relu(toeplitz_conv(layer.filter, x) + layer.bias)


def _prepare_input(net: DeepCnn, x) -> np.ndarray:
    x = np.asarray(x)
    if net.exact and x.dtype != object:
        x = np.vectorize(Fraction, otypes=[object])(x)
    elif not net.exact:
        x = x.astype(float)
    _check_width(net.input_dim, x.shape[-1])
    return x


def forward(net: DeepCnn, x) -> np.ndarray:
    """h_L(x) for one vector or a batch (B, input_dim)."""
    h = _prepare_input(net, x)
    for layer in net.layers:
        h = relu(toeplitz_conv(layer.filter, h) + layer.bias)
    return h


def hidden_eval(net: DeepCnn, x, threshold: Optional[float] = None) -> AlignedVector:
    """Final hidden vector with leading/trailing zero runs split off."""
    threshold = settings.SGCNN_ZERO_THRESHOLD if threshold is None else threshold
    h = forward(net, x)
    if h.ndim != 1:
        raise DimensionMismatch(1, h.ndim, what="hidden_eval point rank")
    return split_zeros(h, threshold)


def split_zeros(h: np.ndarray, threshold: float) -> AlignedVector:
    nonzero = np.flatnonzero(np.abs(h) >= threshold) if len(h) else np.zeros(0, dtype=int)
    if nonzero.size == 0:
        return AlignedVector(len(h), h[:0], 0, threshold)
    first, last = int(nonzero[0]), int(nonzero[-1])
    return AlignedVector(first, h[first:last + 1], len(h) - last - 1, threshold)


def payload(net: DeepCnn, x) -> np.ndarray:
    """Declared payload slice meta[payload_offset : +payload_length] of h_L(x)."""
    h = forward(net, x)
    offset = int(net.meta.get("payload_offset", 0))
    length = int(net.meta.get("payload_length", net.output_width - offset))
    return h[..., offset:offset + length]


def network_eval(net: DeepCnn, x) -> np.ndarray:
    """f_L(x) = c . h_L(x); scalar for one point, vector for a batch."""
    if net.output_weights is None:
        raise DimensionMismatch(net.output_width, 0, what="output weights")
    h = forward(net, x)
    return h @ net.output_weights


# --- composition and embedding -----------------------------------------------

def compose(first: DeepCnn, second: DeepCnn, **meta) -> DeepCnn:
    """second o first; depths add, widths must chain."""
    _check_width(first.output_width, second.input_dim, what="composition")
    s = first.s if first.depth else second.s
    if first.depth and second.depth and first.s != second.s:
        raise DimensionMismatch(first.s, second.s, what="filter length")
    merged = {**first.meta, **second.meta, **meta}
    merged.setdefault("builder", "composite")
    if "depth_bound_claimed" in first.meta and "depth_bound_claimed" in second.meta:
        merged["depth_bound_claimed"] = first.meta["depth_bound_claimed"] + second.meta["depth_bound_claimed"]
    return DeepCnn(first.input_dim, s, first.layers + second.layers, second.output_weights, merged)


def embed(net: DeepCnn, lead: int, trail: int) -> DeepCnn:
    """Same network acting on [0_lead; x; 0_trail]; payloads shift by lead."""
    exact = net.exact
    layers = []
    for layer in net.layers:
        bias = np.concatenate([as_vector([0] * lead, exact), layer.bias, as_vector([0] * trail, exact)])
        layers.append(ConvLayer(layer.filter, bias))
    weights = None
    if net.output_weights is not None:
        weights = np.concatenate([as_vector([0] * lead, exact), net.output_weights,
                                  as_vector([0] * trail, exact)])
    meta = dict(net.meta)
    if "payload_offset" in meta:
        meta["payload_offset"] = int(meta["payload_offset"]) + lead
    return DeepCnn(net.input_dim + lead + trail, net.s, layers, weights, meta)


def to_exact(net: DeepCnn) -> DeepCnn:
    """Rational copy; Fraction(float) is exact, so both networks are the same function."""
    layers = [ConvLayer(Filter(as_vector(l.filter.taps, True)), as_vector(l.bias, True))
              for l in net.layers]
    weights = None if net.output_weights is None else as_vector(net.output_weights, True)
    return DeepCnn(net.input_dim, net.s, layers, weights, dict(net.meta))
