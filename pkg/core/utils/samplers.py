# File: core/utils/samplers.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
Deterministic point sets on [0,1]^d.

All randomness goes through `rng()`, seeded from settings.SGCNN_SEED unless a
seed is given, so tables and checks are reproducible run to run.
"""

from __future__ import annotations
from typing import Optional

import numpy as np
from django.conf import settings
from scipy.stats import qmc


def rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(settings.SGCNN_SEED if seed is None else seed)


def uniform_grid(d: int, per_axis: int) -> np.ndarray:
    """
    Tensor grid with `per_axis` equispaced points per direction, endpoints included.

    Returns:
        array of shape (per_axis**d, d)

    Examples:
        >>> uniform_grid(1, 5).ravel().tolist()
        [0.0, 0.25, 0.5, 0.75, 1.0]
    """
    axis = np.linspace(0.0, 1.0, per_axis)
    mesh = np.meshgrid(*([axis] * d), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def halton_points(d: int, count: Optional[int] = None) -> np.ndarray:
    """Unscrambled Halton sequence (deterministic by construction)."""
    count = settings.SGCNN_HALTON_POINTS if count is None else count
    sampler = qmc.Halton(d=d, scramble=False)
    return sampler.random(count)


def sup_sample_set(d: int, n: int) -> np.ndarray:
    """
    Sample set used for sup-norm estimates at refinement level n:
    2^{n+3}+1 points per axis for d <= 2, Halton points otherwise.
    """
    if d <= 2:
        return uniform_grid(d, 2 ** (n + 3) + 1)
    return halton_points(d)


def random_unit_points(count: int, d: int, *, seed: Optional[int] = None, scale: float = 1.0) -> np.ndarray:
    """Seeded uniform points in [0, scale]^d."""
    return scale * rng(seed).random((count, d))
