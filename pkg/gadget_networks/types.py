# File: gadget_networks/types.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

from __future__ import annotations
from dataclasses import dataclass


@dataclass(frozen=True)
class SquareApproxSpec:
    """R_U applied lane-wise to a block of L values in [0, 1]."""

    U: int
    L: int

    def __post_init__(self):
        if self.U < 1:
            raise ValueError(f"U must be at least 1, got {self.U}")
        if self.L < 1:
            raise ValueError(f"block length must be at least 1, got {self.L}")


@dataclass(frozen=True)
class ProductSpec:
    """
    Approximate product of the first two of l blocks of length k, values in [0, M].
    """

    M: float
    U: int
    k: int
    l: int

    def __post_init__(self):
        if not self.M > 0:
            raise ValueError(f"M must be positive, got {self.M}")
        if self.U < 1:
            raise ValueError(f"U must be at least 1, got {self.U}")
        if self.k < 1:
            raise ValueError(f"block length must be at least 1, got {self.k}")
        if self.l < 2:
            raise ValueError(f"need at least two blocks, got {self.l}")
