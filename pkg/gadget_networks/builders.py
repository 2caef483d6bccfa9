# File: gadget_networks/builders.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
Explicit deep CNNs for the squaring, product and polynomial gadgets.

Block layouts (L = block length, blocks written left to right):

    R_U:        [y]                      -> [R_U(y); 0_{7L}; y]
    elimzeros:  [y1; 0; y2; ...; yn; 0]  -> [y1; ...; yn]
    vectorprod: [y1; ...; yl]            -> [x~(y1, y2); y3; ...; yl]

During R_U the running state is [C; 0; 0; P; 0; 0; 0; y] with
P = T_n(y) / 2^n and C = y - sum_{i<=n} T_i(y) / 4^i.
"""

from __future__ import annotations
import logging
import math
from typing import List, Optional, Sequence

import numpy as np
from django.conf import settings

from cnn_core.network import DeepCnn
from cnn_core.ops import forward
from core.exceptions import LayoutError
from .oracles import chain_bounds, chain_error_bound
from .stages import LaneState, apply_stage, block_lanes, block_mask
from .types import ProductSpec, SquareApproxSpec

logger = logging.getLogger('sgcnn.gadgets')


# --- depth bounds ------------------------------------------------------------

def ru_depth_bound(U: int, L: int, s: int) -> float:
    return (7 * U + 15) * L / (s - 1) + 3 * U + 2


def elimzeros_depth_bound(l: int, k: int, n: int, s: int) -> int:
    return l * math.ceil((n - 1) * k / (s - 1))


def vectorprod_depth_bound(U: int, k: int, l: int, s: int) -> float:
    return (128 + 14 * U) * l * k / (s - 1) + 3 * U + 61


def polynomial_depth_bound(U: int, d: int, l: int, k: int, s: int) -> float:
    return (256 + 28 * U) * d * l * k**2 / (s - 1) + (3 * U + 61) * k


# --- R_U ---------------------------------------------------------------------

def _ru_stages(state: LaneState, U: int, ledger: Optional[list] = None) -> LaneState:
    L = state.length
    state = apply_stage(state, {0: 1.0, 3 * L: 1.0, 7 * L: 1.0}, np.ones(8 * L, dtype=bool))
    if ledger is not None:
        ledger.append({"n": 0, "depth": state.net.depth, "offset": state.offset + 3 * L})
    for n in range(U):
        # P, Q = 2P - 2^-n: Q is positive only where P > 2^-(n+1)
        bias = block_lanes([0, 0, 0, 0, -(2.0 ** -n), 0, 0, 0, 0, 0], L)
        state = apply_stage(state, {0: 1.0, L: 2.0, 2 * L: 1.0}, block_mask(10, L, (0, 3, 4, 7)), bias)
        state = apply_stage(state, {0: 1.0, L: -1.0, 2 * L: 1.0}, block_mask(12, L, (2, 5, 9)))
        state = state.window(2 * L, 8 * L)
        state = apply_stage(state, {0: -(2.0 ** (-n - 1)), 3 * L: 1.0}, block_mask(11, L, (3, 6, 10)))
        state = state.window(3 * L, 8 * L)
        if ledger is not None:
            ledger.append({"n": n + 1, "depth": state.net.depth, "offset": state.offset + 3 * L})
    return apply_stage(state, {0: 1.0, L: 1.0}, block_mask(9, L, (0, 8)))


def build_ru_network(spec: SquareApproxSpec, s: int) -> DeepCnn:
    """
    Network on inputs in [0, 1]^L whose payload is [R_U(y); 0_{7L}; y].

    meta["ledger"] records, for n = 0..U, the depth after which the
    T_n(y)/2^n block is complete and its lane offset.
    """
    ledger: list = []
    state = _ru_stages(LaneState.start(spec.L, s, 1.0), spec.U, ledger)
    bound = ru_depth_bound(spec.U, spec.L, s)
    net = state.net.with_meta(builder="ru", U=spec.U, L=spec.L, depth_bound_claimed=bound,
                              payload_offset=state.offset, payload_length=state.length, ledger=ledger)
    logger.info(f"Built R_U network U={spec.U} L={spec.L} s={s}: depth {net.depth} "
                f"(bound {bound:.1f}), width {net.output_width}")
    return net


def ru_ledger_blocks(net: DeepCnn, y) -> List[tuple]:
    """(n, P block) pairs read from the truncated network at each ledger depth."""
    L = int(net.meta["L"])
    rows = []
    for entry in net.meta["ledger"]:
        partial = DeepCnn(net.input_dim, net.s, net.layers[: int(entry["depth"])])
        h = forward(partial, y)
        offset = int(entry["offset"])
        rows.append((int(entry["n"]), h[..., offset:offset + L]))
    return rows


# --- elimzeros ---------------------------------------------------------------

def _elimzeros_stages(state: LaneState, passes: int, k: int, n: int) -> LaneState:
    gap = (n - 1) * k
    if gap == 0:
        return state
    for _ in range(passes):
        old = state.length
        keep = np.zeros(old + gap, dtype=bool)
        keep[gap:old] = True
        state = apply_stage(state, {0: 1.0, gap: 1.0}, keep)
        state = state.window(gap, old - gap)
    return state


def elimzeros_input(blocks: Sequence, l: int) -> np.ndarray:
    """[y1; 0_{l(n-1)k}; y2; ...; yn] for n blocks of equal length k."""
    blocks = [np.asarray(b, dtype=float) for b in blocks]
    n, k = len(blocks), blocks[0].shape[-1]
    gap = np.zeros(blocks[0].shape[:-1] + (l * (n - 1) * k,))
    return np.concatenate([blocks[0], gap] + blocks[1:], axis=-1)


def build_elimzeros(l: int, k: int, n: int, s: int, value_bound: float = 1.0) -> DeepCnn:
    """Network on elimzeros_input(...) whose payload is the n blocks packed together."""
    if min(l, k, n) < 1:
        raise ValueError(f"l, k, n must be positive, got {(l, k, n)}")
    if n == 1:
        return DeepCnn.identity(k, s, builder="elimzeros", depth_bound_claimed=0,
                                payload_offset=0, payload_length=k)
    gap = (n - 1) * k
    upper = np.concatenate([np.full(k, value_bound), np.zeros(l * gap), np.full(gap, value_bound)])
    state = _elimzeros_stages(LaneState.start(len(upper), s, upper), l, k, n)
    if state.length != n * k:
        raise LayoutError(f"elimzeros left {state.length} lanes, expected {n * k}")
    bound = elimzeros_depth_bound(l, k, n, s)
    return state.net.with_meta(builder="elimzeros", depth_bound_claimed=bound,
                               payload_offset=state.offset, payload_length=state.length)


# --- vectorprod --------------------------------------------------------------

def vectorprod_gap(l: int) -> int:
    """
    Spacing l' between copied tail blocks.

    The copy offset e = l'(l-2) - 16l must clear the product block and the
    R_U copy region; a configured value that does not is raised to the least
    one that does.
    """
    gap = settings.SGCNN_VECTORPROD_GAP
    if l < 3:
        return gap
    needed = max(l + 2, 2 * l - 1)
    if gap * (l - 2) - 16 * l < needed:
        fixed = math.ceil((16 * l + needed) / (l - 2))
        logger.warning(f"SGCNN_VECTORPROD_GAP={gap} collides for l={l}; using {fixed}")
        return fixed
    return gap


def _vectorprod_stages(state: LaneState, M: float, U: int, k: int, l: int) -> LaneState:
    if state.length != l * k:
        raise LayoutError(f"vectorprod expects {l * k} payload lanes, got {state.length}")
    K = k
    # [s; y1/M; y2/M] spread so R_U sees one block of 2lK lanes
    taps = {0: 1 / (2 * M), K: 1 / (2 * M), (l + 1) * K: 1 / M}
    state = apply_stage(state, taps, block_mask(2 * l + 1, K, [1] + list(range(l + 1, 2 * l + 1))))
    state = state.window(K, 2 * l * K)
    state = _ru_stages(state, U)

    taps = {0: -M**2 / 2, K: -M**2 / 2, (l + 1) * K: 2 * M**2}
    kept = [l + 1]
    length_blocks = 1
    gap = vectorprod_gap(l)
    if l >= 3:
        e = gap * (l - 2) - 16 * l
        taps[e * K] = M
        kept += [17 * l + j - 1 + e for j in range(3, l + 1)]
        length_blocks = 1 + gap * (l - 2) + (l - 2)
    count = 18 * l + max(taps) // K
    state = apply_stage(state, taps, block_mask(count, K, kept))
    state = state.window((l + 1) * K, length_blocks * K)
    if l >= 3:
        state = _elimzeros_stages(state, gap, K, l - 1)
    return state


def build_vectorprod(spec: ProductSpec, s: int) -> DeepCnn:
    """Network on [y1; ...; yl] in [0, M]^{lk}; payload [x~(y1, y2); y3; ...; yl]."""
    state = LaneState.start(spec.l * spec.k, s, spec.M)
    state = _vectorprod_stages(state, spec.M, spec.U, spec.k, spec.l)
    bound = vectorprod_depth_bound(spec.U, spec.k, spec.l, s)
    net = state.net.with_meta(builder="vectorprod", M=spec.M, U=spec.U, k=spec.k, l=spec.l,
                              depth_bound_claimed=bound, payload_offset=state.offset,
                              payload_length=state.length)
    logger.info(f"Built vectorprod M={spec.M} U={spec.U} k={spec.k} l={spec.l}: depth {net.depth} "
                f"(bound {bound:.1f}), width {net.output_width}")
    return net


# --- polynomial --------------------------------------------------------------

def polynomial_input(values, d: int) -> np.ndarray:
    """
    Lay out values[..., r, i] (l nodes, k factors) as [y_1; ...; y_k] with
    y_i = [0_{d-1}; values[r=0, i]; ...; 0_{d-1}; values[r=l-1, i]].
    """
    values = np.asarray(values, dtype=float)
    l, k = values.shape[-2:]
    x = np.zeros(values.shape[:-2] + (d * l * k,))
    for i in range(k):
        for r in range(l):
            x[..., i * d * l + d * r + d - 1] = values[..., r, i]
    return x


def build_polynomial_net(c: Sequence[float], k: int, d: int, M: float, U: int, s: int) -> DeepCnn:
    """
    f(x) ~ sum_r c_r prod_i y_{r,i} on inputs laid out by polynomial_input.

    Runs k-1 vectorprods with blocks of dl lanes; the j-th uses the chain
    bound M_j = max(M^(2^(j-1)), M).
    """
    c = np.asarray(c, dtype=float)
    l = len(c)
    if k < 2:
        raise ValueError(f"need at least two factors per term, got k={k}")
    K = d * l
    upper = np.tile(np.concatenate([np.zeros(d - 1), [M]]), l * k)
    state = LaneState.start(d * l * k, s, upper)
    bounds = chain_bounds(M, k - 1)
    for j in range(1, k):
        state = _vectorprod_stages(state, bounds[j - 1], U, K, k - j + 1)
        logger.debug(f"Polynomial step {j}/{k - 1}: depth {state.net.depth}, width {state.width}")
    if state.length != K:
        raise LayoutError(f"polynomial net left {state.length} lanes, expected {K}")

    weights = np.zeros(state.width)
    weights[state.offset + d - 1 + d * np.arange(l)] = c
    cmax = float(np.max(np.abs(c))) if l else 0.0
    nominal = cmax * M ** (2 ** (k - 1)) / 2.0 ** (2 * U - k + 2)
    checked = float(np.sum(np.abs(c))) * chain_error_bound(M, U, k)
    bound = polynomial_depth_bound(U, d, l, k, s)
    net = state.net.with_output(weights, builder="polynomial", M=M, U=U, k=k, d=d, l=l,
                                chain_bounds=bounds, depth_bound_claimed=bound,
                                payload_offset=state.offset, payload_length=state.length,
                                error_bound_nominal=nominal, error_bound=checked)
    logger.info(f"Built polynomial net l={l} k={k} d={d} U={U}: depth {net.depth} "
                f"(bound {bound:.1f}), width {net.output_width}")
    return net
