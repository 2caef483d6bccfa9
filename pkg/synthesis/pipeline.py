# File: synthesis/pipeline.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
Sparse-grid interpolant -> explicit deep CNN.

    x -> packed first layer (normalized factors)
      -> polynomial network over N terms with dm factors each
      -> output weights v * 2^(dm(n+d-1))

When the packed filter is too long to factor reliably the first layer is
kept as one wide layer stored in meta ("semantic" mode); everything after it
is still a genuine CNN.
"""

from __future__ import annotations
import json
import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np
from django.conf import settings

from cnn_core.network import DeepCnn
from cnn_core.ops import compose, embed, network_eval
from core.exceptions import BudgetExceeded, DimensionMismatch
from core.utils.samplers import sup_sample_set
from gadget_networks.builders import build_polynomial_net, polynomial_depth_bound
from gadget_networks.oracles import chain_error_bound
from shallow_compiler.compiler import WideLayerSpec, compile_shallow, depth_bound, wide_layer_oracle
from sparse_grid.interpolation import evaluate, hierarchize
from sparse_grid.types import KorobovTestFn
from .factors import normalizer, pack_first_layer

logger = logging.getLogger('sgcnn.synthesis')

COMPILED = "compiled"
SEMANTIC = "semantic"


def choose_U(m: int, d: int, N: int) -> int:
    """
    ceil(md log2 N + dm).

    Examples:
        >>> choose_U(2, 1, 4)
        6
    """
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    return math.ceil(m * d * math.log2(N) + d * m)


@dataclass(frozen=True)
class DepthLedger:
    first_layer: int
    gadgets: float

    @property
    def total(self) -> float:
        return self.first_layer + self.gadgets


def depth_ledger(N: int, m: int, d: int, s: int, U: int) -> DepthLedger:
    """J_1 <= ceil((md^2 N - 1)/(s-1)) plus (256+28U) N d^3 m^2/(s-1) + (3U+61) dm."""
    return DepthLedger(depth_bound(m * d * d * N - 1, s), polynomial_depth_bound(U, d, N, d * m, s))


def dcnn_bounds(max_surplus: float, sum_surplus: float, U: int, n: int, m: int, d: int) -> Dict[str, float]:
    """
    Bounds on |I_n f - network| (scale 2^(dm(n+d-1)) included).

    nominal:      max|v| 2^(2dm(n+d)) / 2^(2U+2)
    intermediate: max|v| 2^(dm) 2^(dm(n+d-1)) / 2^(2U+2), which omits the term count
    sharp:        sum|v| times the chain bound, what the gadgets guarantee
    """
    k = d * m
    scale = normalizer(n, d) ** k
    return {
        "nominal": max_surplus * 2.0 ** (2 * k * (n + d)) / 2.0 ** (2 * U + 2),
        "intermediate": max_surplus * 2.0**k * scale / 2.0 ** (2 * U + 2),
        "sharp": sum_surplus * chain_error_bound(1.0, U, k) * scale,
    }


@dataclass
class SynthesisReport:
    function: str
    N: int
    n: int
    m: int
    d: int
    s: int
    U: int
    p: float
    mode: str
    depth: int
    depth_bound: float
    width: int
    scale: float
    errors: Dict[str, float] = field(default_factory=dict)
    claimed_bounds: Dict[str, float] = field(default_factory=dict)

    @property
    def checks(self) -> Dict[str, bool]:
        gadget = self.errors["cnn_vs_interpolant_sup"]
        return {
            "depth": self.depth <= self.depth_bound,
            "nominal": gadget <= self.claimed_bounds["nominal"],
            "sharp": gadget <= self.claimed_bounds["sharp"],
            "triangle": self.errors["cnn_vs_f_p"]
            <= self.errors["interpolant_vs_f_p"] + gadget + 1e-15,
        }

    @property
    def holds(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        data = asdict(self)
        data["checks"] = self.checks
        return data


def synthesized_eval(net: DeepCnn, X) -> np.ndarray:
    """Network output at an (npoints, d) array, with the stored wide layer in semantic mode."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if net.meta.get("mode") == SEMANTIC:
        stored = net.meta["first_layer"]
        spec = WideLayerSpec(np.asarray(stored["w"]), np.asarray(stored["b"]), int(stored["input_dim"]))
        if X.shape[-1] != spec.input_dim:
            raise DimensionMismatch(spec.input_dim, X.shape[-1], what="point")
        X = wide_layer_oracle(spec, X)
    return network_eval(net, X)


def _p_norm(diff: np.ndarray, p: float) -> float:
    if np.isinf(p):
        return float(np.max(diff)) if diff.size else 0.0
    return float(np.mean(diff**p) ** (1.0 / p))


def synthesize(f: KorobovTestFn, n: int, m: int, d: int, p=math.inf, s: int = 2,
               samples: Optional[np.ndarray] = None) -> Tuple[DeepCnn, SynthesisReport]:
    """
    Build the CNN for I_n f and measure it against I_n f and f.

    Raises BudgetExceeded when dmN is over SGCNN_MAX_TERMS.
    """
    interpolant = hierarchize(f, n, m, d)
    terms = interpolant.terms
    N = len(terms)
    if d * m * N > settings.SGCNN_MAX_TERMS:
        raise BudgetExceeded("terms", d * m * N, settings.SGCNN_MAX_TERMS)

    U = choose_U(m, d, N)
    spec, layout = pack_first_layer(terms, m, n, d)
    surpluses = np.array([t.surplus for t in terms])
    scale = normalizer(n, d) ** (d * m)
    poly = build_polynomial_net(surpluses, d * m, d, 1.0, U, s)
    poly = embed(poly, 0, d - 1)
    poly = poly.with_output(poly.output_weights * scale)

    degree = layout.width - 1
    if degree > settings.SGCNN_MAX_FILTER_DEGREE:
        logger.warning(f"First-layer filter degree {degree} above SGCNN_MAX_FILTER_DEGREE="
                       f"{settings.SGCNN_MAX_FILTER_DEGREE}; keeping it as one wide layer")
        mode = SEMANTIC
        net = poly.with_meta(first_layer={"w": spec.big_filter, "b": spec.bias, "input_dim": d})
        depth = net.depth + 1
    else:
        mode = COMPILED
        first = compile_shallow(spec, s)
        trail = first.output_width - spec.input_dim - spec.n
        net = compose(first, embed(poly, 0, trail) if trail else poly)
        depth = net.depth

    ledger = depth_ledger(N, m, d, s, U)
    net = net.with_meta(builder="synthesis", mode=mode, n=n, m=m, d=d, U=U, N=N,
                        depth_bound_claimed=ledger.total, function=f.name)

    X = sup_sample_set(d, n) if samples is None else np.atleast_2d(samples)
    values = synthesized_eval(net, X)
    interp_values = evaluate(interpolant, X)
    exact = np.asarray(f.value(X), dtype=float)
    p = float(p)
    errors = {
        "cnn_vs_interpolant_sup": float(np.max(np.abs(values - interp_values))),
        "interpolant_vs_f_p": _p_norm(np.abs(exact - interp_values), p),
        "cnn_vs_f_p": _p_norm(np.abs(exact - values), p),
    }
    bounds = dcnn_bounds(interpolant.max_abs_surplus, float(np.sum(np.abs(surpluses))), U, n, m, d)
    report = SynthesisReport(function=f.name, N=N, n=n, m=m, d=d, s=s, U=U, p=p, mode=mode,
                             depth=depth, depth_bound=ledger.total, width=net.output_width,
                             scale=scale, errors=errors, claimed_bounds=bounds)
    logger.info(f"Synthesized {f.name} n={n} m={m} d={d} s={s}: N={N} U={U} depth={depth} "
                f"({mode}), sup|I_n f - net|={errors['cnn_vs_interpolant_sup']:.3e}")
    return net, report


def report_path(export: Path) -> Path:
    export = Path(export)
    return export.with_name(export.name + ".report.json")


def save_report(report: SynthesisReport, export) -> Path:
    path = report_path(export)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report.to_json(), indent=2), encoding="utf-8")
    return path
