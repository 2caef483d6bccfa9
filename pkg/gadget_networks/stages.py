# File: gadget_networks/stages.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
Lane bookkeeping for gadget construction.

A gadget is a chain of wide convolution stages. Each stage is one
sigma(w * h + b) with a long sparse filter, compiled to depth with
`compile_shallow` and appended to the running network. LaneState tracks
where the live payload sits and a per-lane upper bound of h (the lower
bound is always 0 after a ReLU), so kill biases can be derived instead of
hand-tuned. Lanes that are provably zero are biased below the
factorization residue so they stay exactly zero across stages.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

import numpy as np
from django.conf import settings

from cnn_core.network import DeepCnn
from cnn_core.ops import compose
from core.exceptions import BudgetExceeded, LayoutError
from shallow_compiler.compiler import WideLayerSpec, compile_shallow, shift_for

logger = logging.getLogger('sgcnn.gadgets')


def block_lanes(values: Iterable[float], block: int) -> np.ndarray:
    """Repeat one value per block across its lanes."""
    return np.repeat(np.asarray(list(values), dtype=float), block)


def block_mask(count: int, block: int, kept: Iterable[int]) -> np.ndarray:
    """Lane mask over `count` blocks with the listed block indices set."""
    mask = np.zeros(count * block, dtype=bool)
    for index in kept:
        if not 0 <= index < count:
            raise LayoutError(f"block {index} outside 0..{count - 1}")
        mask[index * block:(index + 1) * block] = True
    return mask


@dataclass(frozen=True)
class LaneState:
    net: DeepCnn
    upper: np.ndarray
    offset: int
    length: int

    @classmethod
    def start(cls, width: int, s: int, bound) -> "LaneState":
        upper = np.broadcast_to(np.asarray(bound, dtype=float), (width,)).astype(float)
        if np.any(upper < 0):
            raise ValueError("input upper bounds must be non-negative")
        return cls(DeepCnn.identity(width, s), upper, 0, width)

    @property
    def width(self) -> int:
        return self.net.output_width

    def window(self, start: int, length: int) -> "LaneState":
        """Narrow the payload; every lane left outside must be provably zero."""
        if start < 0 or length < 0 or start + length > self.length:
            raise LayoutError(f"window [{start}, {start + length}) outside payload of length {self.length}")
        lo = self.offset + start
        outside = np.ones(self.width, dtype=bool)
        outside[lo:lo + length] = False
        if np.any(self.upper[outside] > 0):
            lane = int(np.flatnonzero(outside & (self.upper > 0))[0])
            raise LayoutError(f"lane {lane} outside window [{lo}, {lo + length}) may be nonzero")
        return LaneState(self.net, self.upper, lo, length)


def stage_residue(big: np.ndarray, upper: np.ndarray) -> float:
    """
    Largest value a provably zero lane can pick up from the factored filter.

    The factors reproduce `big` to SGCNN_FACTOR_RTOL relative per tap; the
    result never drops below SGCNN_KILL_FLOOR.
    """
    top = float(np.max(upper, initial=0.0))
    leak = len(big) * settings.SGCNN_FACTOR_RTOL * float(np.max(np.abs(big))) * top
    return max(leak, settings.SGCNN_KILL_FLOOR)


def apply_stage(state: LaneState, taps: Mapping[int, float], keep: np.ndarray,
                bias: Optional[np.ndarray] = None) -> LaneState:
    """
    Append sigma(w * h + b) where w has the given sparse taps.

    `keep` and `bias` are laid over the payload output lanes (length + degree).
    A lane is live when it is kept and its interval ceiling plus bias is
    positive. Every other output lane, inside the payload or not, gets a
    negative power-of-two bias above twice its ceiling plus the stage residue,
    so it comes out exactly zero even when it only cancels mathematically.
    """
    degree = max(taps)
    if min(taps) < 0:
        raise LayoutError(f"negative tap offset {min(taps)}")
    big = np.zeros(degree + 1)
    for t, value in taps.items():
        big[t] += value

    local = state.length + degree
    keep = np.asarray(keep, dtype=bool)
    if keep.shape != (local,):
        raise LayoutError(f"keep mask has {keep.shape[0]} lanes, expected {local}")
    local_bias = np.zeros(local) if bias is None else np.asarray(bias, dtype=float)
    if local_bias.shape != (local,):
        raise LayoutError(f"stage bias has {local_bias.shape[0]} lanes, expected {local}")

    n0 = state.width
    region = slice(state.offset, state.offset + local)
    ceiling = np.convolve(np.maximum(big, 0.0), state.upper)
    full_bias = -shift_for(-2.0 * (ceiling + stage_residue(big, state.upper)))
    live = keep & (ceiling[region] + local_bias > 0)
    full_bias[region] = np.where(live, local_bias, full_bias[region])

    stage = compile_shallow(WideLayerSpec(big, full_bias, n0, input_upper=state.upper), state.net.s)
    net = compose(state.net, stage)
    if net.output_width > settings.SGCNN_MAX_WIDTH:
        raise BudgetExceeded("width", net.output_width, settings.SGCNN_MAX_WIDTH)

    upper = np.zeros(net.output_width)
    upper[region] = np.where(live, ceiling[region] + local_bias, 0.0)
    logger.debug(f"Stage degree {degree}: depth {state.net.depth} -> {net.depth}, "
                 f"{int(live.sum())}/{local} lanes live")
    return LaneState(net, upper, state.offset, local)
