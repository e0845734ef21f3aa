"""Mini-batch SGD with momentum over the full model (filter bank + head).

Ring-sum features are immutable per image, so they are extracted once
before the first epoch and cached; every training step then works at
O(total ring count). After each mini-batch update the filter bank is
truncated back into the non-negative domain.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .config import RunConfig, seed_streams
from .freq_filter import clamp_nonnegative, filter_backward, filter_forward, ring_sums
from .mlp import backward, cross_entropy, forward
from .model import FreqNetModel
from .pooling import build_ring_map
from .slicing import slice_pyramid
from .spectral import dft2d, magnitude_centered

Sample = tuple[np.ndarray, int]  # (image, class id)


@dataclass
class EpochStats:
    epoch: int
    lr: float
    train_loss: float
    train_acc: float
    val_acc: float
    clamped: int


@dataclass
class TrainReport:
    epochs: list[EpochStats] = field(default_factory=list)
    confusion: np.ndarray | None = None
    best_epoch: int = 0
    best_val_acc: float = 0.0

    def final_val_acc(self) -> float:
        return self.epochs[-1].val_acc if self.epochs else 0.0

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["epoch", "lr", "train_loss", "train_acc", "val_acc", "clamped"])
            for row in self.epochs:
                writer.writerow([row.epoch, repr(row.lr), repr(row.train_loss),
                                 repr(row.train_acc), repr(row.val_acc), row.clamped])


@dataclass
class TrainResult:
    final_model: FreqNetModel
    best_model: FreqNetModel
    report: TrainReport


@dataclass
class MomentumState:
    bank: list[np.ndarray]
    weights: list[np.ndarray]
    biases: list[np.ndarray]


def init_momentum(model: FreqNetModel) -> MomentumState:
    return MomentumState(
        bank=[np.zeros_like(w) for w in model.bank.weights],
        weights=[np.zeros_like(w) for w in model.mlp.weights],
        biases=[np.zeros_like(b) for b in model.mlp.biases],
    )


def extract_features(img: np.ndarray, config: RunConfig) -> list[np.ndarray]:
    """Per-block ring sums of the centered magnitude spectrum.

    Each block's spectrum is scaled by 1/side^2 (the transform size) before
    ring summation, so coefficient magnitudes are comparable across block
    sizes and stay O(1); an unnormalized DC term grows with pixel count and
    destabilizes gradient updates at the configured learning rates.

    Pure function of (image, config); the result is cached by callers and
    must not be mutated.
    """
    img = np.asarray(img, dtype=np.float64)
    expected = (config.image_side, config.image_side)
    if img.shape != expected:
        raise ValueError(f"image has shape {img.shape}, config expects {expected}")
    pyramid = slice_pyramid(img, config.slicing_levels)
    sums = []
    for block in pyramid.blocks:
        side = block.shape[0]
        mag = magnitude_centered(dft2d(block)) / float(side)
        ring_map = build_ring_map(side, config.pooling_size, config.pooling_metric)
        block_sums = ring_sums(mag, ring_map)
        block_sums.setflags(write=False)
        sums.append(block_sums)
    return sums


def predict_proba(model: FreqNetModel, img: np.ndarray) -> np.ndarray:
    """Class probabilities for one image already sized to the configured side."""
    sums = extract_features(img, model.config)
    coeffs = filter_forward(sums, model.bank)
    return forward(model.mlp, coeffs).probs


def effective_lr(epoch: int, learning_rate: float, lr_decay: float) -> float:
    """Inverse-time schedule lr / (1 + decay * epoch); epoch counts from 0."""
    return learning_rate / (1.0 + lr_decay * epoch)


def sgd_step(model: FreqNetModel, batch: list[tuple[list[np.ndarray], int]],
             state: MomentumState, lr: float) -> tuple[float, int, int]:
    """One momentum-SGD update from a mini-batch of (ring sums, label) pairs.

    The gradient is averaged over the batch; velocities follow
    v <- momentum * v - lr * g and parameters move by v. The filter bank is
    clamped to the non-negative domain afterwards. Returns the summed loss,
    the number of correct argmax predictions, and how many filter weights
    were clamped.
    """
    if not batch:
        raise ValueError("batch must be non-empty")
    momentum = model.config.momentum
    grad_bank = [np.zeros_like(w) for w in model.bank.weights]
    grad_weights = [np.zeros_like(w) for w in model.mlp.weights]
    grad_biases = [np.zeros_like(b) for b in model.mlp.biases]
    loss_sum = 0.0
    correct = 0
    for sums, class_id in batch:
        coeffs = filter_forward(sums, model.bank)
        trace = forward(model.mlp, coeffs)
        loss_sum += cross_entropy(trace.probs, class_id)
        if int(np.argmax(trace.probs)) == class_id:
            correct += 1
        grads = backward(model.mlp, trace, class_id)
        for acc, g in zip(grad_weights, grads.d_weights):
            acc += g
        for acc, g in zip(grad_biases, grads.d_biases):
            acc += g
        for acc, g in zip(grad_bank, filter_backward(sums, grads.d_input)):
            acc += g
    scale = 1.0 / len(batch)

    for param, vel, grad in zip(model.bank.weights, state.bank, grad_bank):
        vel *= momentum
        vel -= lr * scale * grad
        param += vel
    for param, vel, grad in zip(model.mlp.weights, state.weights, grad_weights):
        vel *= momentum
        vel -= lr * scale * grad
        param += vel
    for param, vel, grad in zip(model.mlp.biases, state.biases, grad_biases):
        vel *= momentum
        vel -= lr * scale * grad
        param += vel

    clamped = clamp_nonnegative(model.bank)
    return loss_sum, correct, clamped


def _evaluate_features(model: FreqNetModel, features: list[list[np.ndarray]],
                       labels: list[int]) -> tuple[float, np.ndarray]:
    n_classes = len(model.class_names)
    confusion = np.zeros((n_classes, n_classes), dtype=np.int64)
    for sums, class_id in zip(features, labels):
        coeffs = filter_forward(sums, model.bank)
        probs = forward(model.mlp, coeffs).probs
        confusion[class_id, int(np.argmax(probs))] += 1
    accuracy = float(np.trace(confusion)) / max(1, len(labels))
    return accuracy, confusion


def evaluate(model: FreqNetModel, dataset: list[Sample]) -> tuple[float, np.ndarray]:
    """Accuracy and confusion matrix (rows = true class, argmax prediction,
    ties broken toward the lower class index)."""
    if not dataset:
        raise ValueError("dataset must be non-empty")
    features = [extract_features(img, model.config) for img, _ in dataset]
    labels = [class_id for _, class_id in dataset]
    return _evaluate_features(model, features, labels)


def train(model: FreqNetModel, train_set: list[Sample], val_set: list[Sample],
          batch_callback=None) -> TrainResult:
    """Run the configured number of epochs; returns final and best-on-validation models.

    Shuffling is reseeded deterministically from the config seed, features
    are extracted once up front, and the report gains one row per epoch.
    ``batch_callback(model)``, when given, runs after every mini-batch update.
    """
    config = model.config
    if train_set:
        n_classes = len(model.class_names)
        seen = {class_id for _, class_id in train_set}
        if not seen <= set(range(n_classes)):
            raise ValueError(f"training labels {sorted(seen)} exceed {n_classes} classes")
    train_features = [extract_features(img, config) for img, _ in train_set]
    train_labels = [class_id for _, class_id in train_set]
    val_features = [extract_features(img, config) for img, _ in val_set]
    val_labels = [class_id for _, class_id in val_set]

    shuffle_rng = np.random.default_rng(seed_streams(config.seed).shuffle)
    state = init_momentum(model)
    report = TrainReport()
    best_model = model.copy()
    best_val_acc = -1.0
    best_epoch = 0

    for epoch in range(1, config.epochs + 1):
        lr = effective_lr(epoch - 1, config.learning_rate, config.lr_decay)
        order = shuffle_rng.permutation(len(train_features))
        loss_sum = 0.0
        correct = 0
        clamped_total = 0
        for start in range(0, len(order), config.batch_size):
            idx = order[start:start + config.batch_size]
            batch = [(train_features[i], train_labels[i]) for i in idx]
            loss, ok, clamped = sgd_step(model, batch, state, lr)
            loss_sum += loss
            correct += ok
            clamped_total += clamped
            if batch_callback is not None:
                batch_callback(model)
        val_acc, confusion = _evaluate_features(model, val_features, val_labels)
        report.epochs.append(EpochStats(
            epoch=epoch,
            lr=lr,
            train_loss=loss_sum / max(1, len(train_features)),
            train_acc=correct / max(1, len(train_features)),
            val_acc=val_acc,
            clamped=clamped_total,
        ))
        report.confusion = confusion
        if val_acc > best_val_acc:
            best_val_acc = val_acc
            best_epoch = epoch
            best_model = model.copy()

    if report.confusion is None:
        # epochs == 0: still report the confusion of the untrained model.
        _, report.confusion = _evaluate_features(model, val_features, val_labels)
    report.best_epoch = best_epoch
    report.best_val_acc = max(best_val_acc, 0.0)
    return TrainResult(final_model=model, best_model=best_model, report=report)


def write_confusion_csv(confusion: np.ndarray, class_names: list[str], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["true_class", *class_names])
        for name, row in zip(class_names, confusion):
            writer.writerow([name, *[int(v) for v in row]])
