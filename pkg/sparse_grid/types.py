# File: sparse_grid/types.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
Value types for sparse-grid interpolation.

All types are frozen; an interpolant never changes after hierarchization.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings


@dataclass(frozen=True)
class MultiIndex:
    """
    Vector of non-negative integers (levels, indices, degrees).

    Examples:
        >>> MultiIndex((1, 4)).norm1
        5
        >>> MultiIndex((1, 4)).norm_inf
        4
    """

    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if any(e < 0 for e in entries):
            raise ValueError(f"multi-index entries must be non-negative: {entries}")
        object.__setattr__(self, "entries", entries)

    @property
    def norm1(self) -> int:
        return sum(self.entries)

    @property
    def norm_inf(self) -> int:
        return max(self.entries) if self.entries else 0

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, j: int) -> int:
        return self.entries[j]

    def as_list(self) -> List[int]:
        return list(self.entries)


@dataclass(frozen=True)
class HierNode:
    """Sparse-grid point x_{l,i} with x_j = i_j * 2^{-l_j}."""

    level: MultiIndex
    index: MultiIndex

    def __post_init__(self):
        if len(self.level) != len(self.index):
            raise ValueError("level and index must have the same length")
        for l, i in zip(self.level, self.index):
            if l < 1:
                raise ValueError(f"levels start at 1, got {l}")
            if l > settings.SGCNN_MAX_LEVEL:
                raise ValueError(f"level {l} above cap {settings.SGCNN_MAX_LEVEL}")
            if i % 2 == 0 or not 1 <= i <= 2 ** l - 1:
                raise ValueError(f"index {i} is not an odd index of level {l}")

    @classmethod
    def of(cls, level: Sequence[int], index: Sequence[int]) -> "HierNode":
        return cls(MultiIndex(tuple(level)), MultiIndex(tuple(index)))

    @property
    def d(self) -> int:
        return len(self.level)

    @property
    def coordinates(self) -> Tuple[float, ...]:
        # dyadic, exact in binary floating point
        return tuple(i * 2.0 ** -l for l, i in zip(self.level, self.index))

    @property
    def mesh(self) -> Tuple[float, ...]:
        return tuple(2.0 ** -l for l in self.level)

    def support(self) -> List[Tuple[float, float]]:
        return [(x - h, x + h) for x, h in zip(self.coordinates, self.mesh)]


@dataclass(frozen=True)
class Basis1D:
    """
    Univariate hierarchical basis function phi^alpha_{l,i}.

    `nodes` holds x+h, x-h and then coarser ancestors; the first `degree` of
    them are the Lagrange zeros. Degree 1 is the hat function.
    """

    level: int
    index: int
    degree: int
    nodes: Tuple[float, ...]

    @property
    def center(self) -> float:
        return self.index * 2.0 ** -self.level

    @property
    def h(self) -> float:
        return 2.0 ** -self.level

    @property
    def support(self) -> Tuple[float, float]:
        return (self.center - self.h, self.center + self.h)

    @property
    def zero_nodes(self) -> Tuple[float, ...]:
        if self.degree == 1:
            return self.nodes[:2]
        return self.nodes[: self.degree]


@dataclass(frozen=True)
class KorobovTestFn:
    """
    Target function with analytic mixed derivatives.

    `value(X)` and `mixed_derivative(orders)(X)` take an (npoints, d) array.
    Tensor-product functions also carry the 1D factor and its derivatives.
    """

    name: str
    d: int
    value: Callable[[np.ndarray], np.ndarray]
    mixed_derivative: Callable[[Tuple[int, ...]], Callable[[np.ndarray], np.ndarray]]
    boundary_zero: bool = True
    factor: Optional[Callable[[int, np.ndarray], np.ndarray]] = None

    def __call__(self, X) -> np.ndarray:
        return self.value(np.atleast_2d(np.asarray(X, dtype=float)))

    @classmethod
    def tensor(cls, name: str, d: int, factor: Callable[[int, np.ndarray], np.ndarray],
               boundary_zero: bool = True) -> "KorobovTestFn":
        """Build prod_j g(x_j) from g^{(k)} given as factor(k, x)."""

        def value(X):
            X = np.atleast_2d(X)
            out = np.ones(X.shape[0])
            for j in range(d):
                out = out * factor(0, X[:, j])
            return out

        def mixed_derivative(orders):
            orders = tuple(int(o) for o in orders)
            if len(orders) != d:
                raise ValueError(f"derivative orders {orders} do not match d={d}")

            def evaluate(X):
                X = np.atleast_2d(X)
                out = np.ones(X.shape[0])
                for j, k in enumerate(orders):
                    out = out * factor(k, X[:, j])
                return out

            return evaluate

        return cls(name=name, d=d, value=value, mixed_derivative=mixed_derivative,
                   boundary_zero=boundary_zero, factor=factor)

    @classmethod
    def zero(cls, d: int) -> "KorobovTestFn":
        return cls.tensor("zero", d, lambda k, x: np.zeros_like(x, dtype=float))

    def boundary_violation(self, samples_per_face: int = 65) -> float:
        """Max |f| over sampled faces of the unit cube."""
        axis = np.linspace(0.0, 1.0, samples_per_face)
        worst = 0.0
        for j in range(self.d):
            others = [axis] * (self.d - 1)
            mesh = np.meshgrid(*others, indexing="ij") if others else []
            flat = [m.ravel() for m in mesh]
            count = flat[0].size if flat else 1
            for face in (0.0, 1.0):
                cols = list(flat)
                cols.insert(j, np.full(count, face))
                X = np.stack(cols, axis=1)
                worst = max(worst, float(np.max(np.abs(self.value(X)))))
        return worst


@dataclass(frozen=True)
class SparseGridTerm:
    node: HierNode
    degrees: MultiIndex
    surplus: float


@dataclass(frozen=True)
class SparseGridInterpolant:
    """
    I_n f as surpluses grouped per level vector.

    `surpluses[l]` is an array of shape (2^{l_1-1}, ..., 2^{l_d-1}); entry c
    belongs to index i = 2c+1.
    """

    d: int
    m: int
    n: int
    surpluses: Dict[Tuple[int, ...], np.ndarray] = field(repr=False)
    hat: bool = False

    @property
    def N(self) -> int:
        return int(sum(v.size for v in self.surpluses.values()))

    def degrees_for(self, level: Sequence[int]) -> MultiIndex:
        if self.hat:
            return MultiIndex(tuple(1 for _ in level))
        return MultiIndex(tuple(min(self.m, l + 1) for l in level))

    @property
    def terms(self) -> List[SparseGridTerm]:
        out = []
        for level, values in self.surpluses.items():
            degrees = self.degrees_for(level)
            for cell in np.ndindex(*values.shape):
                node = HierNode.of(level, [2 * c + 1 for c in cell])
                out.append(SparseGridTerm(node, degrees, float(values[cell])))
        return out

    @property
    def max_abs_surplus(self) -> float:
        if not self.surpluses:
            return 0.0
        return max(float(np.max(np.abs(v))) for v in self.surpluses.values())

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "m": self.m,
            "n": self.n,
            "terms": [
                {
                    "l": t.node.level.as_list(),
                    "i": t.node.index.as_list(),
                    "alpha": t.degrees.as_list(),
                    "v": t.surplus,
                }
                for t in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SparseGridInterpolant":
        d, m, n = int(data["d"]), int(data["m"]), int(data["n"])
        hat = m == 1
        grouped: Dict[Tuple[int, ...], np.ndarray] = {}
        for term in data.get("terms", []):
            level = tuple(int(l) for l in term["l"])
            if sum(level) > n + d - 1:
                raise ValueError(f"term level {level} outside |l|_1 <= {n + d - 1}")
            values = grouped.setdefault(
                level, np.zeros(tuple(2 ** (l - 1) for l in level))
            )
            cell = tuple((int(i) - 1) // 2 for i in term["i"])
            values[cell] = float(term["v"])
        ordered = dict(sorted(grouped.items(), key=lambda kv: (sum(kv[0]), kv[0])))
        return cls(d=d, m=m, n=n, surpluses=ordered, hat=hat)
