"""The trainable frequency-filter layer.

Per block, the centered magnitude spectrum is multiplied element-wise by a
filter whose weights are shared across all cells of a ring, and the
filtered cells of each ring are summed into one coefficient. Because the
weight is constant on a ring, the coefficient factors as

    C(r) = W(r) * S(r),      S(r) = sum of magnitudes over ring r,

so the ring sums S are computed once per image and cached, and each
training pass costs O(total ring count) instead of O(pixels). Weights are
kept non-negative by truncating to zero after every mini-batch update.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pooling import RingIndexMap


@dataclass
class FrequencyFilterBank:
    """One non-negative weight vector per pyramid block (one weight per ring)."""

    weights: list[np.ndarray]

    def ring_counts(self) -> list[int]:
        return [len(w) for w in self.weights]

    def total_rings(self) -> int:
        return sum(len(w) for w in self.weights)

    def min_weight(self) -> float:
        return min(float(w.min()) for w in self.weights)

    def copy(self) -> "FrequencyFilterBank":
        return FrequencyFilterBank(weights=[w.copy() for w in self.weights])


def ring_sums(mag: np.ndarray, ring_map: RingIndexMap) -> np.ndarray:
    """Sum the magnitude cells of each ring; discarded cells contribute nowhere."""
    mag = np.asarray(mag, dtype=np.float64)
    if mag.shape != (ring_map.side, ring_map.side):
        raise ValueError(
            f"magnitude shape {mag.shape} does not match ring map side {ring_map.side}"
        )
    sums = np.bincount(
        ring_map.ring_of_cell.ravel(),
        weights=mag.ravel(),
        minlength=ring_map.ring_count + 1,
    )
    return sums[1:]


def _check_bank_shapes(sums: list[np.ndarray], bank: FrequencyFilterBank) -> None:
    if len(sums) != len(bank.weights):
        raise ValueError(
            f"got ring sums for {len(sums)} blocks but bank has {len(bank.weights)}"
        )
    for i, (s, w) in enumerate(zip(sums, bank.weights)):
        if len(s) != len(w):
            raise ValueError(
                f"block {i}: {len(s)} ring sums vs {len(w)} filter weights"
            )


def filter_forward(sums: list[np.ndarray], bank: FrequencyFilterBank) -> np.ndarray:
    """Stacked coefficients C(r) = W(r) * S(r), blocks in pyramid order."""
    _check_bank_shapes(sums, bank)
    return np.concatenate([w * s for s, w in zip(sums, bank.weights)])


def filter_backward(sums: list[np.ndarray], upstream: np.ndarray) -> list[np.ndarray]:
    """Gradient of the loss w.r.t. each filter weight: dL/dW(r) = upstream(r) * S(r)."""
    upstream = np.asarray(upstream, dtype=np.float64)
    total = sum(len(s) for s in sums)
    if upstream.shape != (total,):
        raise ValueError(
            f"upstream gradient has shape {upstream.shape}, expected ({total},)"
        )
    grads: list[np.ndarray] = []
    offset = 0
    for s in sums:
        grads.append(upstream[offset:offset + len(s)] * s)
        offset += len(s)
    return grads


def clamp_nonnegative(bank: FrequencyFilterBank) -> int:
    """Truncate negative weights to zero in place; returns how many were clamped."""
    clamped = 0
    for w in bank.weights:
        negative = w < 0.0
        clamped += int(negative.sum())
        w[negative] = 0.0
    return clamped


def init_filter_bank(ring_counts: list[int], seed, center: float = 0.1,
                     epsilon: float = 0.01) -> FrequencyFilterBank:
    """Random bank with every weight uniform in [center - epsilon, center + epsilon]."""
    if center - epsilon < 0.0:
        raise ValueError(
            f"initialization range [{center - epsilon}, {center + epsilon}] leaves the non-negative domain"
        )
    rng = np.random.default_rng(seed)
    weights = [rng.uniform(center - epsilon, center + epsilon, size=n) for n in ring_counts]
    return FrequencyFilterBank(weights=weights)
