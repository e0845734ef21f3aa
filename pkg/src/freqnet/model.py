"""The full model (filter bank + classifier head) and its JSON checkpoint format.

Checkpoints are versioned JSON documents carrying the run configuration,
class names and flat full-precision weight arrays, so they stay portable
and diffable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .config import RunConfig, config_from_dict, seed_streams
from .errors import CheckpointError, ConfigError
from .freq_filter import FrequencyFilterBank, init_filter_bank
from .mlp import MlpParams, init_xavier
from .pooling import feature_length, ring_counts_per_block

FORMAT_VERSION = 1


@dataclass
class FreqNetModel:
    config: RunConfig
    class_names: list[str]
    bank: FrequencyFilterBank
    mlp: MlpParams

    def copy(self) -> "FreqNetModel":
        return FreqNetModel(
            config=self.config,
            class_names=list(self.class_names),
            bank=self.bank.copy(),
            mlp=self.mlp.copy(),
        )


def layer_sizes_for(config: RunConfig, n_classes: int) -> list[int]:
    n_features = feature_length(config.slicing_levels, config.image_side, config.pooling_size)
    return [n_features, *config.mlp_hidden, n_classes]


def build_model(config: RunConfig, class_names: list[str]) -> FreqNetModel:
    """Fresh model with seeded filter-bank and Xavier initialization."""
    config.validate()
    if len(class_names) < 2:
        raise ValueError(f"need at least 2 classes, got {class_names}")
    streams = seed_streams(config.seed)
    ring_counts = ring_counts_per_block(config.image_side, config.slicing_levels,
                                        config.pooling_size)
    bank = init_filter_bank(
        ring_counts,
        seed=streams.filter_init,
        center=config.filter_init_center,
        epsilon=config.filter_init_epsilon,
    )
    mlp = init_xavier(
        layer_sizes_for(config, len(class_names)),
        seed=streams.mlp_init,
        activation=config.mlp_activation,
        alpha=config.mlp_alpha,
    )
    return FreqNetModel(config=config, class_names=list(class_names), bank=bank, mlp=mlp)


def save_model(model: FreqNetModel, path) -> None:
    doc = {
        "format_version": FORMAT_VERSION,
        "config": model.config.to_dict(),
        "class_names": model.class_names,
        "filter_bank": [w.tolist() for w in model.bank.weights],
        "mlp": {
            "layer_sizes": model.mlp.layer_sizes,
            "activation": model.mlp.activation,
            "alpha": model.mlp.alpha,
            "weights": [w.ravel().tolist() for w in model.mlp.weights],
            "biases": [b.tolist() for b in model.mlp.biases],
        },
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_model(path) -> FreqNetModel:
    """Parse and validate a checkpoint; raises CheckpointError on any defect."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise CheckpointError(f"checkpoint {path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise CheckpointError(f"checkpoint {path} must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise CheckpointError(
            f"checkpoint {path} has format_version {version!r}, expected {FORMAT_VERSION}"
        )
    try:
        config = config_from_dict(doc["config"])
        class_names = list(doc["class_names"])
        bank_weights = [np.asarray(w, dtype=np.float64) for w in doc["filter_bank"]]
        mlp_doc = doc["mlp"]
        layer_sizes = [int(n) for n in mlp_doc["layer_sizes"]]
        flat_weights = [np.asarray(w, dtype=np.float64) for w in mlp_doc["weights"]]
        biases = [np.asarray(b, dtype=np.float64) for b in mlp_doc["biases"]]
        activation = mlp_doc["activation"]
        alpha = float(mlp_doc["alpha"])
    except (KeyError, TypeError, ValueError, ConfigError) as exc:
        raise CheckpointError(f"checkpoint {path} is malformed: {exc}") from None

    expected_rings = ring_counts_per_block(config.image_side, config.slicing_levels,
                                           config.pooling_size)
    if [len(w) for w in bank_weights] != expected_rings:
        raise CheckpointError(
            f"checkpoint {path}: filter bank shape does not match its configuration"
        )
    if layer_sizes != layer_sizes_for(config, len(class_names)):
        raise CheckpointError(
            f"checkpoint {path}: layer sizes {layer_sizes} do not match config/classes"
        )
    if len(flat_weights) != len(layer_sizes) - 1 or len(biases) != len(layer_sizes) - 1:
        raise CheckpointError(f"checkpoint {path}: wrong number of layers")
    weights = []
    for i, (fan_in, fan_out) in enumerate(zip(layer_sizes[:-1], layer_sizes[1:])):
        if flat_weights[i].size != fan_in * fan_out or biases[i].size != fan_out:
            raise CheckpointError(f"checkpoint {path}: layer {i} has wrong shape")
        weights.append(flat_weights[i].reshape(fan_out, fan_in))

    mlp = MlpParams(layer_sizes=layer_sizes, weights=weights, biases=biases,
                    activation=activation, alpha=alpha)
    bank = FrequencyFilterBank(weights=bank_weights)
    return FreqNetModel(config=config, class_names=class_names, bank=bank, mlp=mlp)
