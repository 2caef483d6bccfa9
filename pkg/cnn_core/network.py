# File: cnn_core/network.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
Types of the CNN class: filters of length s+1, convolution-plus-ReLU layers,
deep networks h_L with optional output weights, and aligned payload vectors.

Parameters are numpy arrays: float64 normally, object arrays of Fraction in
exact mode. Widths grow by s per layer (d_l = d + l*s).
"""

from __future__ import annotations
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import DimensionMismatch, MalformedNetwork


def as_vector(values, exact: bool = False) -> np.ndarray:
    if exact:
        return np.array([v if isinstance(v, Fraction) else Fraction(v) for v in np.ravel(values)],
                        dtype=object)
    return np.asarray(values, dtype=float).ravel()


def is_exact(array: np.ndarray) -> bool:
    return array.dtype == object


@dataclass(frozen=True)
class Filter:
    """Taps w_0..w_s."""

    taps: np.ndarray

    def __post_init__(self):
        if len(self.taps) < 3:
            raise MalformedNetwork(f"filter length s must be at least 2, got {len(self.taps) - 1}")

    @classmethod
    def of(cls, taps: Sequence, s: Optional[int] = None, exact: bool = False) -> "Filter":
        vec = as_vector(taps, exact)
        if s is not None:
            if len(vec) > s + 1:
                raise MalformedNetwork(f"{len(vec)} taps do not fit filter length s={s}")
            pad = as_vector([0] * (s + 1 - len(vec)), exact)
            vec = np.concatenate([vec, pad])
        return cls(vec)

    @property
    def s(self) -> int:
        return len(self.taps) - 1


@dataclass(frozen=True)
class ConvLayer:
    """x -> sigma(w * x + b); bias length is input width + s."""

    filter: Filter
    bias: np.ndarray

    @property
    def s(self) -> int:
        return self.filter.s

    @property
    def input_width(self) -> int:
        return len(self.bias) - self.s

    @property
    def output_width(self) -> int:
        return len(self.bias)


@dataclass(frozen=True)
class DeepCnn:
    """
    h_L = sigma(A_L ... sigma(A_1 x)); f_L = c . h_L when output_weights is set.

    meta carries bookkeeping: builder, depth_bound_claimed, payload_offset,
    payload_length and builder-specific ledgers.
    """

    input_dim: int
    s: int
    layers: Tuple[ConvLayer, ...] = ()
    output_weights: Optional[np.ndarray] = None
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if self.s < 2:
            raise MalformedNetwork(f"filter length s must be at least 2, got {self.s}")
        width = self.input_dim
        for depth, layer in enumerate(self.layers, start=1):
            if layer.s != self.s:
                raise MalformedNetwork(f"layer {depth} has filter length {layer.s}, network s={self.s}")
            if layer.input_width != width:
                raise DimensionMismatch(width, layer.input_width, what=f"layer {depth} input")
            width = layer.output_width
        if self.output_weights is not None and len(self.output_weights) != width:
            raise DimensionMismatch(width, len(self.output_weights), what="output weights")

    @property
    def depth(self) -> int:
        return len(self.layers)

    def width(self, depth: int) -> int:
        return self.input_dim + depth * self.s

    @property
    def output_width(self) -> int:
        return self.width(self.depth)

    @property
    def exact(self) -> bool:
        return any(is_exact(layer.bias) for layer in self.layers)

    def with_output(self, weights, **meta) -> "DeepCnn":
        merged = {**self.meta, **meta}
        return DeepCnn(self.input_dim, self.s, self.layers,
                       as_vector(weights, self.exact), merged)

    def with_meta(self, **meta) -> "DeepCnn":
        return DeepCnn(self.input_dim, self.s, self.layers, self.output_weights,
                       {**self.meta, **meta})

    def without_output(self) -> "DeepCnn":
        return DeepCnn(self.input_dim, self.s, self.layers, None, dict(self.meta))

    @classmethod
    def identity(cls, width: int, s: int, **meta) -> "DeepCnn":
        return cls(input_dim=width, s=s, layers=(), meta=dict(meta))


@dataclass(frozen=True)
class AlignedVector:
    """[0_lead; payload; 0_trail] with zeros detected below `threshold`."""

    lead_zeros: int
    payload: np.ndarray
    trail_zeros: int
    threshold: float = 0.0

    @property
    def length(self) -> int:
        return self.lead_zeros + len(self.payload) + self.trail_zeros

    def dense(self) -> np.ndarray:
        return np.concatenate([
            np.zeros(self.lead_zeros, dtype=self.payload.dtype),
            self.payload,
            np.zeros(self.trail_zeros, dtype=self.payload.dtype),
        ])
