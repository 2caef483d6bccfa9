# File: sparse_grid/korobov.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
Registry of Korobov test functions loaded from config/fixtures/test_functions.yaml.

Every registered function is a tensor product prod_j g(x_j). The YAML gives g
either as simpleeval expressions for g and g^{(k)} (names x, k, pi; functions
sin, cos, exp) or as ascending polynomial coefficients.
"""

from __future__ import annotations
import ast
import operator
from functools import lru_cache
from typing import Callable, Dict

import numpy as np
from numpy.polynomial import Polynomial
from simpleeval import DEFAULT_OPERATORS, SimpleEval

from core.exceptions import UnknownFunction
from core.utils.fixtures import get_fixture_path, load_yaml
from .types import KorobovTestFn

REGISTRY_FILE = "test_functions.yaml"

# simpleeval's guarded operators test len()/abs() on operands; arrays need the plain ones
ARRAY_OPERATORS = {
    **DEFAULT_OPERATORS,
    ast.Add: operator.add,
    ast.Mult: operator.mul,
    ast.Pow: operator.pow,
}

FUNCTIONS = {"sin": np.sin, "cos": np.cos, "exp": np.exp}


def _expression_factor(value_expr: str, derivative_expr: str) -> Callable[[int, np.ndarray], np.ndarray]:
    evaluator = SimpleEval(operators=ARRAY_OPERATORS, functions=FUNCTIONS)
    parsed_value = evaluator.parse(value_expr)
    parsed_derivative = evaluator.parse(derivative_expr)

    def factor(k: int, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        evaluator.names = {"x": x, "k": int(k), "pi": np.pi}
        parsed = parsed_value if k == 0 else parsed_derivative
        source = value_expr if k == 0 else derivative_expr
        result = evaluator.eval(source, previously_parsed=parsed)
        return np.broadcast_to(np.asarray(result, dtype=float), x.shape).copy()

    return factor


def _polynomial_factor(coefficients) -> Callable[[int, np.ndarray], np.ndarray]:
    poly = Polynomial([float(c) for c in coefficients])

    def factor(k: int, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return poly.deriv(int(k))(x) if k else poly(x)

    return factor


@lru_cache(maxsize=None)
def load_registry(path: str = "") -> Dict[str, dict]:
    file_path = path or get_fixture_path(REGISTRY_FILE)
    data = load_yaml(file_path)
    return dict(data.get("functions", {}) or {})


def registered_names():
    return sorted(load_registry())


def get_test_function(name: str, d: int) -> KorobovTestFn:
    """
    Look up a registered test function and build its d-dimensional version.

    Examples:
        >>> f = get_test_function("polyprod", 2)
        >>> float(f([[0.5, 0.5]])[0])
        0.0625
    """
    registry = load_registry()
    if name not in registry:
        raise UnknownFunction(name, registry)
    entry = registry[name]
    if "coefficients" in entry:
        factor = _polynomial_factor(entry["coefficients"])
    else:
        factor = _expression_factor(entry["factor"], entry["derivative"])
    return KorobovTestFn.tensor(name, d, factor,
                                boundary_zero=bool(entry.get("boundary_zero", True)))
