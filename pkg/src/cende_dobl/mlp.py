"""Feed-forward network evaluation for black-box weight training.

A network is a flat real vector: for each layer in order, the weight matrix
(row-major by destination neuron) followed by that layer's biases. The
benchmark protocol uses one hidden layer of 2D+1 neurons and a single
sigmoid output whose value is rounded onto the class range, which is what
reproduces the published parameter counts for the binary and three-class
tasks alike. A multi-output argmax head is available for ablation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

ACTIVATIONS = ("sigmoid", "tanh")


@dataclass(frozen=True)
class NetworkTopology:
    """Layer sizes plus the hidden activation (output is always sigmoid)."""

    input_count: int
    hidden_counts: tuple[int, ...]
    output_count: int = 1
    activation: str = "sigmoid"

    def __post_init__(self):
        object.__setattr__(self, "hidden_counts", tuple(int(h) for h in self.hidden_counts))
        if self.input_count < 1 or self.output_count < 1:
            raise ValueError("input and output counts must be positive")
        if not self.hidden_counts or any(h < 1 for h in self.hidden_counts):
            raise ValueError("hidden layer sizes must be positive")
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"activation must be one of {ACTIVATIONS}, got {self.activation!r}")

    @classmethod
    def single_hidden(cls, input_count: int, output_count: int = 1) -> "NetworkTopology":
        """The benchmark topology: one hidden layer of 2D+1 neurons."""
        return cls(input_count, (2 * input_count + 1,), output_count)

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return (self.input_count, *self.hidden_counts, self.output_count)

    @property
    def parameter_count(self) -> int:
        return parameter_count(self)


def parameter_count(topology: NetworkTopology) -> int:
    """Total weights plus biases: sum over layers of fan_in*fan_out + fan_out."""
    sizes = topology.layer_sizes
    return sum(fi * fo + fo for fi, fo in zip(sizes, sizes[1:]))


@dataclass(frozen=True)
class WeightDecoding:
    """Segment map from the flat vector to per-layer (weights, biases) pairs."""

    topology: NetworkTopology
    segments: tuple = field(init=False)

    def __post_init__(self):
        sizes = self.topology.layer_sizes
        segs = []
        pos = 0
        for fan_in, fan_out in zip(sizes, sizes[1:]):
            w_stop = pos + fan_in * fan_out
            b_stop = w_stop + fan_out
            segs.append((pos, w_stop, b_stop, fan_out, fan_in))
            pos = b_stop
        object.__setattr__(self, "segments", tuple(segs))

    @property
    def parameter_count(self) -> int:
        return self.segments[-1][2]


def decode(flat: np.ndarray, decoding: WeightDecoding) -> list[tuple[np.ndarray, np.ndarray]]:
    """Split the flat vector into per-layer (W, b) views; W[i] holds the
    incoming weights of destination neuron i."""
    flat = np.asarray(flat, dtype=float)
    if flat.shape != (decoding.parameter_count,):
        raise ValueError(
            f"expected {decoding.parameter_count} parameters, got shape {flat.shape}"
        )
    return [
        (flat[w0:w1].reshape(fan_out, fan_in), flat[w1:b1])
        for w0, w1, b1, fan_out, fan_in in decoding.segments
    ]


def encode(layers: list[tuple[np.ndarray, np.ndarray]], decoding: WeightDecoding) -> np.ndarray:
    """Inverse of :func:`decode`: concatenate per-layer weights then biases."""
    if len(layers) != len(decoding.segments):
        raise ValueError(f"expected {len(decoding.segments)} layers, got {len(layers)}")
    flat = np.empty(decoding.parameter_count)
    for (w, b), (w0, w1, b1, fan_out, fan_in) in zip(layers, decoding.segments):
        if w.shape != (fan_out, fan_in) or b.shape != (fan_out,):
            raise ValueError(f"layer shape mismatch: {w.shape}, {b.shape}")
        flat[w0:w1] = w.reshape(-1)
        flat[w1:b1] = b
    return flat


def forward(
    layers: list[tuple[np.ndarray, np.ndarray]],
    x: np.ndarray,
    activation: str = "sigmoid",
) -> np.ndarray:
    """Evaluate the network on one sample (1-D) or a sample batch (2-D).

    Hidden layers use the configured activation; the output layer is always
    a logistic sigmoid, so outputs lie in (0, 1).
    """
    hidden_act = expit if activation == "sigmoid" else np.tanh
    if activation not in ACTIVATIONS:
        raise ValueError(f"activation must be one of {ACTIVATIONS}, got {activation!r}")
    a = np.asarray(x, dtype=float)
    if a.shape[-1] != layers[0][0].shape[1]:
        raise ValueError(
            f"input has {a.shape[-1]} features, network expects {layers[0][0].shape[1]}"
        )
    for w, b in layers[:-1]:
        a = hidden_act(a @ w.T + b)
    w, b = layers[-1]
    return expit(a @ w.T + b)


def classify(output: np.ndarray, class_count: int) -> int:
    """Map one network output vector to a class index.

    A single output neuron is read as a scaled label: round(o * (C-1)),
    clamped into range. Multiple outputs take the argmax, lowest index on
    ties.
    """
    output = np.atleast_1d(np.asarray(output, dtype=float))
    if not np.all(np.isfinite(output)):
        raise ValueError("non-finite network output")
    if output.shape[0] == 1:
        label = int(np.rint(output[0] * (class_count - 1)))
        return min(max(label, 0), class_count - 1)
    return int(np.argmax(output))


def classify_batch(outputs: np.ndarray, class_count: int) -> np.ndarray:
    """Vectorised :func:`classify` over a (P, output_count) batch."""
    if not np.all(np.isfinite(outputs)):
        raise ValueError("non-finite network output")
    if outputs.ndim == 2 and outputs.shape[1] > 1:
        return np.argmax(outputs, axis=1)
    flat = outputs.reshape(-1)
    labels = np.rint(flat * (class_count - 1)).astype(int)
    return np.clip(labels, 0, class_count - 1)


@dataclass(frozen=True)
class ClassificationObjective:
    """Misclassification percentage of a decoded network on a fixed sample set.

    Immutable after construction (arrays are stored read-only), so one
    instance is safely shared across concurrent optimisation runs.
    """

    decoding: WeightDecoding
    features: np.ndarray
    labels: np.ndarray
    class_count: int

    def __post_init__(self):
        feats = np.array(self.features, dtype=float, copy=True)
        labs = np.array(self.labels, dtype=int, copy=True)
        if feats.ndim != 2 or feats.shape[0] == 0:
            raise ValueError("features must be a non-empty 2-D matrix")
        if feats.shape[1] != self.decoding.topology.input_count:
            raise ValueError(
                f"{feats.shape[1]} feature columns, topology expects "
                f"{self.decoding.topology.input_count}"
            )
        if labs.shape != (feats.shape[0],):
            raise ValueError("labels must align one-to-one with feature rows")
        if self.class_count < 2:
            raise ValueError("need at least two classes")
        if labs.min() < 0 or labs.max() >= self.class_count:
            raise ValueError(f"labels must lie in [0, {self.class_count})")
        feats.flags.writeable = False
        labs.flags.writeable = False
        object.__setattr__(self, "features", feats)
        object.__setattr__(self, "labels", labs)

    @property
    def dim(self) -> int:
        return self.decoding.parameter_count

    @property
    def sample_count(self) -> int:
        return self.features.shape[0]

    def __call__(self, flat: np.ndarray) -> float:
        return classification_error(flat, self)


def classification_error(flat: np.ndarray, obj: ClassificationObjective) -> float:
    """E = 100/P * (number of misclassified samples), in [0, 100]."""
    if obj.sample_count == 0:
        raise ValueError("cannot score an empty sample set")
    layers = decode(flat, obj.decoding)
    out = forward(layers, obj.features, obj.decoding.topology.activation)
    preds = classify_batch(out, obj.class_count)
    return float(100.0 * np.count_nonzero(preds != obj.labels) / obj.sample_count)
