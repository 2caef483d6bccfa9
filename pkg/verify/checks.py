# File: verify/checks.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
Gadget conformance checks.

Each check builds the network for one parameter set, compares it with the
closed-form oracle and with the quantitative bound it is supposed to meet,
and returns one CheckRow.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np

from cnn_core.ops import network_eval, payload
from core.utils.fixtures import get_fixture_path, load_yaml
from core.utils.samplers import rng, uniform_grid
from gadget_networks.builders import (
    build_elimzeros,
    build_polynomial_net,
    build_ru_network,
    build_vectorprod,
    elimzeros_input,
    polynomial_input,
)
from gadget_networks.oracles import approx_product_eval, product_chain, ru_eval
from gadget_networks.types import ProductSpec, SquareApproxSpec
from shallow_compiler.compiler import WideLayerSpec, compile_shallow, depth_bound, wide_layer_oracle

logger = logging.getLogger('sgcnn.verify')

SUITES_FILE = "gadget_suites.yaml"
ORACLE_TOL = 1e-9
BOUND_TOL = 1e-12
SAMPLES = 1000
SHALLOW_SAMPLES = 200
HEADERS = ["check", "params", "depth", "depth_bound", "oracle_deviation", "measured", "bound", "status"]


@dataclass(frozen=True)
class CheckRow:
    check: str
    params: str
    depth: Optional[int]
    depth_bound: Optional[float]
    deviation: float
    measured: float
    bound: float
    ok: bool

    def cells(self) -> list:
        return [self.check, self.params,
                "" if self.depth is None else self.depth,
                "" if self.depth_bound is None else float(self.depth_bound),
                self.deviation, self.measured, self.bound, self.ok]


def _params(**values) -> str:
    return " ".join(f"{k}={v}" for k, v in values.items())


def _max_abs(a) -> float:
    a = np.asarray(a, dtype=float)
    return float(np.max(np.abs(a))) if a.size else 0.0


# --- individual checks -------------------------------------------------------

def check_ru(U: int, L: int = 1, s: int = 2) -> CheckRow:
    """0 < max(R_U - x^2) <= 2^(-2U-2), and the network reproduces R_U."""
    x = np.linspace(0.0, 1.0, 4097)
    gap = ru_eval(U, x) - x**2
    bound = 2.0 ** (-2 * U - 2)
    net = build_ru_network(SquareApproxSpec(U, L), s)
    Y = rng().random((SAMPLES, L))
    expected = np.concatenate([ru_eval(U, Y), np.zeros((SAMPLES, 7 * L)), Y], axis=1)
    deviation = _max_abs(payload(net, Y) - expected)
    measured = float(gap.max())
    ok = (gap.min() >= -BOUND_TOL and 0.0 < measured <= bound + BOUND_TOL
          and deviation <= ORACLE_TOL and net.depth <= net.meta["depth_bound_claimed"])
    return CheckRow("ru", _params(U=U, L=L, s=s), net.depth, net.meta["depth_bound_claimed"],
                    deviation, measured, bound, bool(ok))


def check_product(M: float, U: int, s: int = 2) -> CheckRow:
    """|x~ - xy| <= M^2/2^(2U) and 0 <= x~ <= M^2 on a 257^2 grid of [0, M]^2."""
    grid = M * uniform_grid(2, 257)
    x, y = grid[:, 0], grid[:, 1]
    approx = approx_product_eval(M, U, x, y)
    measured = _max_abs(approx - x * y)
    bound = M**2 / 4.0**U
    net = build_vectorprod(ProductSpec(M, U, 1, 2), s)
    Y = M * rng().random((SAMPLES, 2))
    deviation = _max_abs(payload(net, Y)[:, 0] - approx_product_eval(M, U, Y[:, 0], Y[:, 1]))
    in_range = approx.min() >= -BOUND_TOL and approx.max() <= M**2 + BOUND_TOL
    ok = (measured <= bound + BOUND_TOL and in_range
          and deviation <= ORACLE_TOL and net.depth <= net.meta["depth_bound_claimed"])
    return CheckRow("product", _params(M=M, U=U, s=s), net.depth, net.meta["depth_bound_claimed"],
                    deviation, measured, bound, bool(ok))


def check_elimzeros(l: int, k: int, n: int, s: int = 2) -> CheckRow:
    net = build_elimzeros(l, k, n, s)
    generator = rng()
    blocks = [generator.random((SAMPLES, k)) for _ in range(n)]
    deviation = _max_abs(payload(net, elimzeros_input(blocks, l)) - np.concatenate(blocks, axis=1))
    bound = 1e-12
    ok = deviation <= bound and net.depth <= net.meta["depth_bound_claimed"]
    return CheckRow("elimzeros", _params(l=l, k=k, n=n, s=s), net.depth, net.meta["depth_bound_claimed"],
                    deviation, deviation, bound, bool(ok))


def check_vectorprod(M: float, U: int, k: int, l: int, s: int = 2) -> CheckRow:
    net = build_vectorprod(ProductSpec(M, U, k, l), s)
    Y = M * rng().random((SAMPLES, l * k))
    got = payload(net, Y)
    expected = np.concatenate([approx_product_eval(M, U, Y[:, :k], Y[:, k:2 * k]), Y[:, 2 * k:]], axis=1)
    deviation = _max_abs(got - expected)
    measured = _max_abs(got[:, :k] - Y[:, :k] * Y[:, k:2 * k])
    bound = M**2 / 4.0**U
    ok = (deviation <= ORACLE_TOL and measured <= bound + BOUND_TOL
          and net.depth <= net.meta["depth_bound_claimed"])
    return CheckRow("vectorprod", _params(M=M, U=U, k=k, l=l, s=s), net.depth,
                    net.meta["depth_bound_claimed"], deviation, measured, bound, bool(ok))


def check_polynomial(k: int, l: int, U: int, s: int = 2, M: float = 1.0, d: int = 1) -> CheckRow:
    generator = rng()
    c = generator.normal(size=l)
    net = build_polynomial_net(c, k, d, M, U, s)
    values = M * generator.random((SAMPLES, l, k))
    got = network_eval(net, polynomial_input(values, d))
    deviation = _max_abs(got - product_chain(M, U, values)[-1] @ c)
    measured = _max_abs(got - np.prod(values, axis=-1) @ c)
    bound = float(net.meta["error_bound"])
    ok = (deviation <= ORACLE_TOL and measured <= bound + BOUND_TOL
          and net.depth <= net.meta["depth_bound_claimed"])
    return CheckRow("polynomial", _params(k=k, l=l, U=U, M=M, d=d, s=s), net.depth,
                    net.meta["depth_bound_claimed"], deviation, measured, bound, bool(ok))


def check_shallow(n: int, s: int = 2, n0: int = 5) -> CheckRow:
    generator = rng()
    spec = WideLayerSpec(generator.normal(size=n + 1), generator.normal(size=n0 + n), n0)
    net = compile_shallow(spec, s)
    X = generator.random((SHALLOW_SAMPLES, n0))
    expected = wide_layer_oracle(spec, X)
    scale = max(1.0, _max_abs(expected))
    deviation = _max_abs(payload(net, X) - expected) / scale
    bound = depth_bound(n, s)
    ok = net.depth <= bound and deviation <= 1e-8
    return CheckRow("shallow", _params(n=n, s=s, n0=n0), net.depth, bound,
                    deviation, float(net.depth), float(bound), bool(ok))


CHECKS: Dict[str, Callable[..., CheckRow]] = {
    "ru": check_ru,
    "product": check_product,
    "elimzeros": check_elimzeros,
    "vectorprod": check_vectorprod,
    "polynomial": check_polynomial,
    "shallow": check_shallow,
}


def load_suites(path: str = "") -> Dict[str, List[dict]]:
    data = load_yaml(path or get_fixture_path(SUITES_FILE))
    return {name: list(cases or []) for name, cases in (data.get("suites") or {}).items()}


def run_checks(name: str, cases: Iterable[dict], s: Optional[int] = None) -> List[CheckRow]:
    """Run one check over parameter dicts; an explicit s overrides each case's."""
    check = CHECKS[name]
    rows = []
    for case in cases:
        params = dict(case)
        if s is not None:
            params["s"] = s
        row = check(**params)
        logger.info(f"{name} {row.params}: deviation={row.deviation:.3e} measured={row.measured:.3e} "
                    f"bound={row.bound:.3e} {'ok' if row.ok else 'FAILED'}")
        rows.append(row)
    return rows
