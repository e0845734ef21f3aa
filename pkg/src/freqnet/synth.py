"""Synthetic grating corpus generator.

Each class is a 2D sinusoidal grating at a fixed integer frequency index
(random phase and axis orientation per image) plus uniform noise of
amplitude 0.1. Its magnitude spectrum concentrates in the ring holding
that frequency, which makes the corpus a self-contained training oracle:
two classes at different frequency indices are linearly separable in ring
space, with no external data needed.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

GRATING_MEAN = 0.5
GRATING_AMPLITUDE = 0.35
NOISE_AMPLITUDE = 0.1


def make_grating(side: int, freq_index: int, rng: np.random.Generator) -> np.ndarray:
    """One noisy grating image with random phase and orientation."""
    if not 1 <= freq_index < side // 2:
        raise ValueError(f"frequency index must be in [1, {side // 2}), got {freq_index}")
    phase = rng.uniform(0.0, 2.0 * np.pi)
    along_rows = bool(rng.integers(0, 2))
    ramp = np.arange(side, dtype=np.float64)
    wave = np.cos(2.0 * np.pi * freq_index * ramp / side + phase)
    img = GRATING_MEAN + GRATING_AMPLITUDE * (wave[:, None] if along_rows else wave[None, :])
    img = img + rng.uniform(-NOISE_AMPLITUDE, NOISE_AMPLITUDE, size=(side, side))
    return np.clip(img, 0.0, 1.0)


def save_pgm(img: np.ndarray, path) -> None:
    """Write a [0, 1] image as binary 8-bit PGM (P5)."""
    quantized = np.round(np.clip(img, 0.0, 1.0) * 255.0).astype(np.uint8)
    height, width = quantized.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
        fh.write(quantized.tobytes())


def generate_dataset(out_root, class_freqs: list[tuple[str, int]], count: int,
                     seed, side: int = 128) -> int:
    """Emit ``count`` PGM gratings per class under ``out_root/<name>/``.

    Deterministic for a fixed (class spec, count, seed, side); returns the
    number of files written.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    out_root = Path(out_root)
    rng = np.random.default_rng(seed)
    written = 0
    for name, freq_index in class_freqs:
        class_dir = out_root / name
        class_dir.mkdir(parents=True, exist_ok=True)
        for i in range(count):
            img = make_grating(side, freq_index, rng)
            save_pgm(img, class_dir / f"{name}_{i:04d}.pgm")
            written += 1
    return written


def parse_class_spec(spec: str) -> list[tuple[str, int]]:
    """Parse ``name=freq,name=freq`` into an ordered class list."""
    classes: list[tuple[str, int]] = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        name, _, freq = part.partition("=")
        name = name.strip()
        if not name or not freq.strip().isdigit():
            raise ValueError(f"bad class spec {part!r}; expected name=<frequency index>")
        classes.append((name, int(freq.strip())))
    if len(classes) < 2:
        raise ValueError(f"need at least 2 classes, got {spec!r}")
    names = [name for name, _ in classes]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate class names in {spec!r}")
    return classes
