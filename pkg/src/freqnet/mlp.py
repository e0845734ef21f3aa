"""Fully connected classifier head with hand-derived gradients.

Hidden layers use leaky ReLU (plain ReLU is the alpha=0 special case), the
output layer is a numerically stabilized softmax, and the loss is
cross-entropy. The architecture is fixed and shallow, so backpropagation
is written out per layer instead of going through an autodiff engine; the
gradient w.r.t. the input vector is returned as well so the frequency
layer below can continue the chain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ACTIVATIONS = ("leaky_relu", "relu")

PROB_FLOOR = 1e-12


@dataclass
class MlpParams:
    layer_sizes: list[int]
    weights: list[np.ndarray]   # per layer, shape (fan_out, fan_in)
    biases: list[np.ndarray]    # per layer, shape (fan_out,)
    activation: str = "leaky_relu"
    alpha: float = 0.01

    def copy(self) -> "MlpParams":
        return MlpParams(
            layer_sizes=list(self.layer_sizes),
            weights=[w.copy() for w in self.weights],
            biases=[b.copy() for b in self.biases],
            activation=self.activation,
            alpha=self.alpha,
        )

    def effective_alpha(self) -> float:
        return self.alpha if self.activation == "leaky_relu" else 0.0


@dataclass
class ForwardTrace:
    x: np.ndarray                    # input vector
    pre_activations: list[np.ndarray]
    activations: list[np.ndarray]    # hidden activations only
    probs: np.ndarray


@dataclass
class MlpGrads:
    d_weights: list[np.ndarray]
    d_biases: list[np.ndarray]
    d_input: np.ndarray


def init_xavier(layer_sizes: list[int], seed, activation: str = "leaky_relu",
                alpha: float = 0.01) -> MlpParams:
    """Uniform Xavier weights with bound sqrt(6/(fan_in+fan_out)); zero biases."""
    if len(layer_sizes) < 2:
        raise ValueError(f"need at least input and output sizes, got {layer_sizes}")
    if any(int(n) < 1 for n in layer_sizes):
        raise ValueError(f"layer sizes must be positive, got {layer_sizes}")
    if layer_sizes[-1] < 2:
        raise ValueError(f"need at least 2 classes, got {layer_sizes[-1]}")
    if activation not in ACTIVATIONS:
        raise ValueError(f"activation must be one of {ACTIVATIONS}, got {activation!r}")
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return MlpParams(
        layer_sizes=[int(n) for n in layer_sizes],
        weights=weights,
        biases=biases,
        activation=activation,
        alpha=alpha,
    )


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max()
    exp = np.exp(shifted)
    return exp / exp.sum()


def forward(params: MlpParams, x: np.ndarray) -> ForwardTrace:
    """Run one coefficient vector through the network, keeping the trace."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (params.layer_sizes[0],):
        raise ValueError(
            f"input has shape {x.shape}, expected ({params.layer_sizes[0]},)"
        )
    alpha = params.effective_alpha()
    pre_activations: list[np.ndarray] = []
    activations: list[np.ndarray] = []
    a = x
    last = len(params.weights) - 1
    for layer, (w, b) in enumerate(zip(params.weights, params.biases)):
        z = w @ a + b
        pre_activations.append(z)
        if layer < last:
            a = np.where(z >= 0.0, z, alpha * z)
            activations.append(a)
    probs = softmax(pre_activations[-1])
    return ForwardTrace(x=x, pre_activations=pre_activations,
                        activations=activations, probs=probs)


def cross_entropy(probs: np.ndarray, class_id: int) -> float:
    """-log p[class_id], with the probability floored at 1e-12."""
    if not 0 <= class_id < len(probs):
        raise ValueError(f"class id {class_id} out of range for {len(probs)} classes")
    return float(-np.log(max(float(probs[class_id]), PROB_FLOOR)))


def backward(params: MlpParams, trace: ForwardTrace, class_id: int) -> MlpGrads:
    """Exact gradients of cross_entropy(forward(x)) w.r.t. weights, biases and x."""
    n_classes = params.layer_sizes[-1]
    if not 0 <= class_id < n_classes:
        raise ValueError(f"class id {class_id} out of range for {n_classes} classes")
    alpha = params.effective_alpha()
    n_layers = len(params.weights)
    d_weights: list[np.ndarray] = [None] * n_layers  # type: ignore[list-item]
    d_biases: list[np.ndarray] = [None] * n_layers   # type: ignore[list-item]

    delta = trace.probs.copy()
    delta[class_id] -= 1.0
    for layer in range(n_layers - 1, -1, -1):
        a_prev = trace.activations[layer - 1] if layer > 0 else trace.x
        d_weights[layer] = np.outer(delta, a_prev)
        d_biases[layer] = delta
        back = params.weights[layer].T @ delta
        if layer > 0:
            z_prev = trace.pre_activations[layer - 1]
            delta = back * np.where(z_prev >= 0.0, 1.0, alpha)
        else:
            d_input = back
    return MlpGrads(d_weights=d_weights, d_biases=d_biases, d_input=d_input)
