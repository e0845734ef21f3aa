"""Image loading, grayscale normalization, dataset scanning and splitting.

Images are carried as 2D float64 numpy arrays with values in [0, 1],
row-major. Directory layout is one subdirectory per class:
``<root>/<class_name>/<image files>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DecodeError, EmptyDatasetError

IMAGE_SUFFIXES = {".png", ".pgm"}

# ITU-R BT.601 luma weights for collapsing RGB to a single channel.
LUMA_WEIGHTS = (0.299, 0.587, 0.114)


@dataclass
class LabeledIndex:
    """Enumeration of image paths with integer class labels."""

    entries: list[tuple[Path, int]]
    class_names: list[str]

    def __len__(self) -> int:
        return len(self.entries)

    def per_class_counts(self) -> list[int]:
        counts = [0] * len(self.class_names)
        for _, class_id in self.entries:
            counts[class_id] += 1
        return counts


def load_image(path) -> np.ndarray:
    """Decode one raster file (PNG or PGM) into a [0, 1] grayscale array.

    Color inputs are collapsed with BT.601 luma weights before the 1/255
    scaling, so the conversion is done in double precision rather than
    through an 8-bit intermediate.
    """
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode in ("P", "PA", "LA", "RGBA", "CMYK", "YCbCr"):
                im = im.convert("RGB")
            if im.mode == "L":
                data = np.asarray(im, dtype=np.float64) / 255.0
            elif im.mode in ("I", "I;16"):
                data = np.asarray(im, dtype=np.float64) / 65535.0
            elif im.mode == "RGB":
                rgb = np.asarray(im, dtype=np.float64)
                r, g, b = LUMA_WEIGHTS
                data = (r * rgb[..., 0] + g * rgb[..., 1] + b * rgb[..., 2]) / 255.0
            else:
                raise DecodeError(f"unsupported image mode {im.mode!r}: {path}")
    except UnidentifiedImageError as exc:
        raise DecodeError(f"cannot decode {path}: {exc}") from exc
    if data.ndim != 2:
        raise DecodeError(f"expected a single-channel raster, got shape {data.shape}: {path}")
    return np.clip(data, 0.0, 1.0)


def _sample_positions(n_src: int, n_dst: int):
    # Half-pixel-center convention: destination pixel centers are mapped
    # into source coordinates, edges clamped.
    pos = (np.arange(n_dst) + 0.5) * (n_src / n_dst) - 0.5
    pos = np.clip(pos, 0.0, n_src - 1.0)
    lo = np.floor(pos).astype(np.intp)
    hi = np.minimum(lo + 1, n_src - 1)
    return lo, hi, pos - lo


def resize(img: np.ndarray, side: int) -> np.ndarray:
    """Bilinear resample to ``side``x``side``; output values stay in [0, 1]."""
    if side < 2 or side % 2 != 0:
        raise ValueError(f"target side must be even and >= 2, got {side}")
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise ValueError(f"expected a 2D image, got shape {img.shape}")
    h, w = img.shape
    if (h, w) == (side, side):
        return img.copy()
    y_lo, y_hi, fy = _sample_positions(h, side)
    x_lo, x_hi, fx = _sample_positions(w, side)
    top = img[y_lo][:, x_lo] * (1.0 - fx) + img[y_lo][:, x_hi] * fx
    bottom = img[y_hi][:, x_lo] * (1.0 - fx) + img[y_hi][:, x_hi] * fx
    fy = fy[:, None]
    return top * (1.0 - fy) + bottom * fy


def scan_dataset(root) -> LabeledIndex:
    """Enumerate a class-per-subdirectory corpus in deterministic order.

    Class names are the subdirectory names sorted lexicographically; files
    within a class are sorted by name.
    """
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"dataset root does not exist: {root}")
    class_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    class_names = [p.name for p in class_dirs]
    entries: list[tuple[Path, int]] = []
    for class_id, class_dir in enumerate(class_dirs):
        files = sorted(
            p for p in class_dir.iterdir()
            if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
        )
        entries.extend((p, class_id) for p in files)
    if not entries:
        raise EmptyDatasetError(f"no images found under {root}")
    return LabeledIndex(entries=entries, class_names=class_names)


def split_dataset(index: LabeledIndex, train_fraction: float, seed) -> tuple[LabeledIndex, LabeledIndex]:
    """Stratified train/validation split.

    Per class c with n_c entries, floor(train_fraction * n_c) go to train
    and the rest to validation; the within-class shuffle is driven solely
    by ``seed``.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    counts = index.per_class_counts()
    for class_id, n in enumerate(counts):
        if n < 2:
            raise ValueError(
                f"class {index.class_names[class_id]!r} has {n} entries; need at least 2 to split"
            )
    rng = np.random.default_rng(seed)
    train_entries: list[tuple[Path, int]] = []
    val_entries: list[tuple[Path, int]] = []
    for class_id in range(len(index.class_names)):
        class_entries = [e for e in index.entries if e[1] == class_id]
        order = rng.permutation(len(class_entries))
        n_train = int(np.floor(train_fraction * len(class_entries)))
        train_entries.extend(class_entries[i] for i in order[:n_train])
        val_entries.extend(class_entries[i] for i in order[n_train:])
    return (
        LabeledIndex(entries=train_entries, class_names=list(index.class_names)),
        LabeledIndex(entries=val_entries, class_names=list(index.class_names)),
    )
