"""Run configuration: parsing, strict validation, JSON round-trip.

The configuration is a JSON document. Unknown keys are an error so that a
misspelled hyperparameter cannot silently fall back to a default.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .errors import ConfigError
from .mlp import ACTIVATIONS
from .pooling import METRICS, validate_pooling
from .slicing import validate_slicing


@dataclass(frozen=True)
class RunConfig:
    image_side: int = 128
    slicing_levels: int = 1
    pooling_size: int = 4
    pooling_metric: str = "chebyshev"
    filter_init_center: float = 0.1
    filter_init_epsilon: float = 0.01
    mlp_hidden: tuple[int, ...] = (16,)
    mlp_activation: str = "leaky_relu"
    mlp_alpha: float = 0.01
    learning_rate: float = 0.01
    lr_decay: float = 0.0
    momentum: float = 0.9
    batch_size: int = 4
    epochs: int = 100
    seed: int = 0
    split_fraction: float = 0.75

    def with_seed(self, seed: int) -> "RunConfig":
        return replace(self, seed=int(seed))

    def validate(self) -> "RunConfig":
        try:
            validate_slicing(self.image_side, self.slicing_levels)
            smallest = self.image_side // 2 ** (self.slicing_levels - 1)
            validate_pooling(smallest, self.pooling_size)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.pooling_metric not in METRICS:
            raise ConfigError(f"pooling.metric must be one of {METRICS}, got {self.pooling_metric!r}")
        if self.mlp_activation not in ACTIVATIONS:
            raise ConfigError(f"mlp.activation must be one of {ACTIVATIONS}, got {self.mlp_activation!r}")
        if any(h < 1 for h in self.mlp_hidden):
            raise ConfigError(f"mlp.hidden sizes must be positive, got {list(self.mlp_hidden)}")
        if self.filter_init_epsilon < 0:
            raise ConfigError(f"filter_init.epsilon must be >= 0, got {self.filter_init_epsilon}")
        if self.filter_init_center - self.filter_init_epsilon < 0:
            raise ConfigError("filter_init range must stay non-negative")
        if self.learning_rate <= 0:
            raise ConfigError(f"train.lr must be positive, got {self.learning_rate}")
        if self.lr_decay < 0:
            raise ConfigError(f"train.lr_decay must be >= 0, got {self.lr_decay}")
        if not 0.0 <= self.momentum < 1.0:
            raise ConfigError(f"train.momentum must be in [0, 1), got {self.momentum}")
        if self.batch_size < 1:
            raise ConfigError(f"train.batch_size must be >= 1, got {self.batch_size}")
        if self.epochs < 0:
            raise ConfigError(f"train.epochs must be >= 0, got {self.epochs}")
        if not 0.0 < self.split_fraction < 1.0:
            raise ConfigError(f"train.split_fraction must be in (0, 1), got {self.split_fraction}")
        if self.seed < 0:
            raise ConfigError(f"train.seed must be a non-negative integer, got {self.seed}")
        return self

    def to_dict(self) -> dict:
        return {
            "image_side": self.image_side,
            "slicing_levels": self.slicing_levels,
            "pooling": {"size": self.pooling_size, "metric": self.pooling_metric},
            "filter_init": {"center": self.filter_init_center, "epsilon": self.filter_init_epsilon},
            "mlp": {
                "hidden": list(self.mlp_hidden),
                "activation": self.mlp_activation,
                "alpha": self.mlp_alpha,
            },
            "train": {
                "lr": self.learning_rate,
                "lr_decay": self.lr_decay,
                "momentum": self.momentum,
                "batch_size": self.batch_size,
                "epochs": self.epochs,
                "seed": self.seed,
                "split_fraction": self.split_fraction,
            },
        }


def _reject_unknown(section: dict, allowed: set[str], where: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown config key(s) in {where}: {sorted(unknown)}")


def _get_int(section: dict, key: str, default: int, where: str) -> int:
    value = section.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}.{key} must be an integer, got {value!r}")
    return value


def _get_num(section: dict, key: str, default: float, where: str) -> float:
    value = section.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number, got {value!r}")
    return float(value)


def _get_str(section: dict, key: str, default: str, where: str) -> str:
    value = section.get(key, default)
    if not isinstance(value, str):
        raise ConfigError(f"{where}.{key} must be a string, got {value!r}")
    return value


def config_from_dict(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError(f"config document must be a JSON object, got {type(doc).__name__}")
    defaults = RunConfig()
    _reject_unknown(doc, {"image_side", "slicing_levels", "pooling", "filter_init", "mlp", "train"}, "top level")

    pooling = doc.get("pooling", {})
    filter_init = doc.get("filter_init", {})
    mlp = doc.get("mlp", {})
    train = doc.get("train", {})
    for name, section in (("pooling", pooling), ("filter_init", filter_init),
                          ("mlp", mlp), ("train", train)):
        if not isinstance(section, dict):
            raise ConfigError(f"{name} must be a JSON object, got {section!r}")
    _reject_unknown(pooling, {"size", "metric"}, "pooling")
    _reject_unknown(filter_init, {"center", "epsilon"}, "filter_init")
    _reject_unknown(mlp, {"hidden", "activation", "alpha"}, "mlp")
    _reject_unknown(train, {"lr", "lr_decay", "momentum", "batch_size", "epochs", "seed", "split_fraction"}, "train")

    hidden = mlp.get("hidden", list(defaults.mlp_hidden))
    if not isinstance(hidden, list) or any(isinstance(h, bool) or not isinstance(h, int) for h in hidden):
        raise ConfigError(f"mlp.hidden must be a list of integers, got {hidden!r}")

    config = RunConfig(
        image_side=_get_int(doc, "image_side", defaults.image_side, "top level"),
        slicing_levels=_get_int(doc, "slicing_levels", defaults.slicing_levels, "top level"),
        pooling_size=_get_int(pooling, "size", defaults.pooling_size, "pooling"),
        pooling_metric=_get_str(pooling, "metric", defaults.pooling_metric, "pooling"),
        filter_init_center=_get_num(filter_init, "center", defaults.filter_init_center, "filter_init"),
        filter_init_epsilon=_get_num(filter_init, "epsilon", defaults.filter_init_epsilon, "filter_init"),
        mlp_hidden=tuple(hidden),
        mlp_activation=_get_str(mlp, "activation", defaults.mlp_activation, "mlp"),
        mlp_alpha=_get_num(mlp, "alpha", defaults.mlp_alpha, "mlp"),
        learning_rate=_get_num(train, "lr", defaults.learning_rate, "train"),
        lr_decay=_get_num(train, "lr_decay", defaults.lr_decay, "train"),
        momentum=_get_num(train, "momentum", defaults.momentum, "train"),
        batch_size=_get_int(train, "batch_size", defaults.batch_size, "train"),
        epochs=_get_int(train, "epochs", defaults.epochs, "train"),
        seed=_get_int(train, "seed", defaults.seed, "train"),
        split_fraction=_get_num(train, "split_fraction", defaults.split_fraction, "train"),
    )
    return config.validate()


def config_from_json_file(path) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
    return config_from_dict(doc)


class SeedStreams(NamedTuple):
    """Independent child seeds derived from the single configured seed."""

    split: np.random.SeedSequence
    filter_init: np.random.SeedSequence
    mlp_init: np.random.SeedSequence
    shuffle: np.random.SeedSequence


def seed_streams(seed: int) -> SeedStreams:
    return SeedStreams(*np.random.SeedSequence(seed).spawn(4))
