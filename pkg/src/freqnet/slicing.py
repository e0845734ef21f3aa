"""Quadtree slicing of a square image into a multi-level block pyramid.

Level 1 is the whole image; every next level splits each block into four
half-side blocks. Blocks are ordered level-major, then row-major within a
level, and are materialized copies so downstream transforms can consume
them independently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MIN_BLOCK_SIDE = 4


@dataclass
class BlockPyramid:
    levels: int
    blocks: list[np.ndarray]
    block_meta: list[tuple[int, int, int]]  # (level, row, col)


def block_count(levels: int) -> int:
    """Total number of blocks across all levels: sum of 4^(l-1)."""
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    return (4 ** levels - 1) // 3


def pyramid_block_sides(image_side: int, levels: int) -> list[int]:
    """Side length of every block in pyramid order."""
    validate_slicing(image_side, levels)
    sides = []
    for level in range(1, levels + 1):
        n = 2 ** (level - 1)
        sides.extend([image_side // n] * (n * n))
    return sides


def validate_slicing(image_side: int, levels: int) -> None:
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    factor = 2 ** (levels - 1)
    if image_side % factor != 0:
        raise ValueError(
            f"image side {image_side} is not divisible by 2^(levels-1) = {factor}"
        )
    smallest = image_side // factor
    if smallest < MIN_BLOCK_SIDE or smallest % 2 != 0:
        raise ValueError(
            f"smallest block side would be {smallest}; it must be even and >= {MIN_BLOCK_SIDE}"
        )


def slice_pyramid(img: np.ndarray, levels: int) -> BlockPyramid:
    """Slice a square image into its block pyramid."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2 or img.shape[0] != img.shape[1]:
        raise ValueError(f"expected a square image, got shape {img.shape}")
    side = img.shape[0]
    validate_slicing(side, levels)
    blocks: list[np.ndarray] = []
    meta: list[tuple[int, int, int]] = []
    for level in range(1, levels + 1):
        n = 2 ** (level - 1)
        block_side = side // n
        for row in range(n):
            for col in range(n):
                blocks.append(
                    img[row * block_side:(row + 1) * block_side,
                        col * block_side:(col + 1) * block_side].copy()
                )
                meta.append((level, row, col))
    return BlockPyramid(levels=levels, blocks=blocks, block_meta=meta)
