"""Evaluation grids for metric sweeps and classification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .exceptions import DomainError

SPACINGS = ("linear", "log")


@dataclass(frozen=True)
class GridSpec:
    """A strictly positive time grid described by endpoints and spacing."""

    start: float
    stop: float
    count: int
    spacing: str = "log"

    def __post_init__(self) -> None:
        if self.start <= 0:
            raise DomainError(f"grid start must be > 0, got {self.start}")
        if self.stop <= self.start:
            raise DomainError(
                f"grid stop must exceed start, got {self.start}..{self.stop}"
            )
        if self.count < 1:
            raise DomainError(f"grid count must be >= 1, got {self.count}")
        if self.spacing not in SPACINGS:
            raise DomainError(f"grid spacing must be one of {SPACINGS}")

    def points(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


GridLike = Union[GridSpec, Iterable[float]]


def grid_points(grid: GridLike, minimum: int = 1) -> np.ndarray:
    """Normalize a grid argument to a validated array of time points.

    Points must be strictly increasing and strictly positive.
    """
    if isinstance(grid, GridSpec):
        pts = grid.points()
    else:
        pts = np.asarray(list(grid), dtype=float)
    if pts.ndim != 1 or pts.size < minimum:
        raise DomainError(f"grid needs at least {minimum} point(s)")
    if pts.size and pts[0] <= 0:
        raise DomainError("grid points must be strictly positive")
    if np.any(np.diff(pts) <= 0):
        raise DomainError("grid points must be strictly increasing")
    return pts
