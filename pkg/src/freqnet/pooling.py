"""Ring maps grouping spectrum cells into radial frequency bands.

Each cell of a centered magnitude spectrum is assigned to a ring by its
distance from the center cell (side/2, side/2), measured either with the
Euclidean metric (circular rings; cells at distance >= side/2 beyond the
inscribed circle are discarded) or the Chebyshev metric (square rings
covering every cell, corners included). ``pooling_size`` unit radii are
merged into one ring, so a side-N block has (N/2)/pooling_size rings.

Maps depend only on (side, pooling_size, metric); they are built once,
cached, and shared read-only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .slicing import pyramid_block_sides

METRICS = ("euclidean", "chebyshev")

DISCARDED = 0  # sentinel in ring_of_cell; real rings are 1..ring_count


@dataclass
class RingIndexMap:
    side: int
    metric: str
    pooling_size: int
    ring_of_cell: np.ndarray  # (side, side) int array, DISCARDED or 1..ring_count
    ring_count: int
    ring_populations: np.ndarray  # (ring_count,) cell counts

    @property
    def discarded_count(self) -> int:
        return self.side * self.side - int(self.ring_populations.sum())


def validate_pooling(side: int, pooling_size: int) -> None:
    if side < 2 or side % 2 != 0:
        raise ValueError(f"block side must be even and >= 2, got {side}")
    if pooling_size < 1:
        raise ValueError(f"pooling size must be >= 1, got {pooling_size}")
    if (side // 2) % pooling_size != 0:
        raise ValueError(
            f"pooling size {pooling_size} does not divide half of block side {side}"
        )


@lru_cache(maxsize=None)
def build_ring_map(side: int, pooling_size: int, metric: str = "chebyshev") -> RingIndexMap:
    """Build (or fetch from cache) the ring assignment for one block size."""
    validate_pooling(side, pooling_size)
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}, got {metric!r}")
    center = side // 2
    offsets = np.abs(np.arange(side) - center).astype(np.float64)
    if metric == "euclidean":
        dist = np.hypot(offsets[:, None], offsets[None, :])
    else:
        dist = np.maximum(offsets[:, None], offsets[None, :])
    ring_count = (side // 2) // pooling_size
    rings = (dist // pooling_size).astype(np.int64) + 1
    # Chebyshev reaches distance exactly side/2 on the u=0 and v=0 edges;
    # those cells fold into the outermost ring so nothing is discarded.
    np.minimum(rings, ring_count, out=rings)
    if metric == "euclidean":
        rings[dist >= side / 2] = DISCARDED
    populations = np.bincount(rings.ravel(), minlength=ring_count + 1)[1:]
    rings.setflags(write=False)
    populations.setflags(write=False)
    return RingIndexMap(
        side=side,
        metric=metric,
        pooling_size=pooling_size,
        ring_of_cell=rings,
        ring_count=ring_count,
        ring_populations=populations,
    )


def ring_counts_per_block(image_side: int, levels: int, pooling_size: int) -> list[int]:
    """Ring count of every pyramid block, in pyramid order."""
    counts = []
    for side in pyramid_block_sides(image_side, levels):
        validate_pooling(side, pooling_size)
        counts.append((side // 2) // pooling_size)
    return counts


def feature_length(levels: int, image_side: int, pooling_size: int) -> int:
    """Total stacked coefficient count over all pyramid blocks."""
    return sum(ring_counts_per_block(image_side, levels, pooling_size))
