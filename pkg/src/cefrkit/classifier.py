"""Multinomial logistic regression and the majority-class baseline."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.optimize
import scipy.sparse as sp

from .features import FeatureMatrix
from .levels import CEFRLevel


class ClassifierError(ValueError):
    pass


@dataclass(frozen=True)
class TrainConfig:
    l2_strength: float = 1.0
    max_iterations: int = 1000
    convergence_tol: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.l2_strength <= 0 or self.max_iterations <= 0 or self.convergence_tol <= 0:
            raise ClassifierError("l2_strength, max_iterations and convergence_tol must be positive")


@dataclass
class LinearModel:
    classes: list[CEFRLevel]
    weights: np.ndarray  # K x D
    biases: np.ndarray  # K
    objective: float | None = None
    objective_history: list[float] = field(default_factory=list)

    @property
    def n_features(self) -> int:
        return self.weights.shape[1]


@dataclass(frozen=True)
class Prediction:
    label: CEFRLevel
    distribution: np.ndarray


def _softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def _one_hot(y_idx: np.ndarray, k: int) -> np.ndarray:
    out = np.zeros((len(y_idx), k))
    out[np.arange(len(y_idx)), y_idx] = 1.0
    return out


def objective_and_gradient(params, X, Y, l2):
    """Mean softmax cross-entropy plus (l2/2)*||W||^2; biases unpenalized."""
    n, d = X.shape
    k = Y.shape[1]
    W = params[: k * d].reshape(k, d)
    b = params[k * d :]
    scores = X @ W.T + b
    shifted = scores - scores.max(axis=1, keepdims=True)
    log_probs = shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    loss = -np.sum(Y * log_probs) / n + 0.5 * l2 * np.sum(W * W)
    G = (np.exp(log_probs) - Y) / n
    grad_W = G.T @ X + l2 * W
    if sp.issparse(grad_W):
        grad_W = np.asarray(grad_W.todense())
    grad_b = G.sum(axis=0)
    return loss, np.concatenate([np.asarray(grad_W).ravel(), grad_b])


def train_logreg(X: FeatureMatrix, y: list[CEFRLevel], cfg: TrainConfig = TrainConfig()) -> LinearModel:
    """Full-batch L-BFGS from zero initialization; deterministic."""
    n, d = X.data.shape
    if n != len(y):
        raise ClassifierError(f"feature rows ({n}) and labels ({len(y)}) differ in count")
    if n < 1:
        raise ClassifierError("empty training set")
    data = X.data
    if sp.issparse(data):
        if not np.all(np.isfinite(data.data)):
            raise ClassifierError("non-finite feature values")
    elif not np.all(np.isfinite(data)):
        raise ClassifierError("non-finite feature values")
    classes = sorted(set(y))
    k = len(classes)
    if k == 1:
        return LinearModel(classes=classes, weights=np.zeros((1, d)), biases=np.zeros(1))
    class_idx = {c: i for i, c in enumerate(classes)}
    Y = _one_hot(np.array([class_idx[label] for label in y]), k)

    history: list[float] = []

    def callback(params):
        history.append(objective_and_gradient(params, data, Y, cfg.l2_strength)[0])

    x0 = np.zeros(k * d + k)
    history.append(objective_and_gradient(x0, data, Y, cfg.l2_strength)[0])
    result = scipy.optimize.minimize(
        objective_and_gradient,
        x0,
        args=(data, Y, cfg.l2_strength),
        jac=True,
        method="L-BFGS-B",
        callback=callback,
        options={
            "maxiter": cfg.max_iterations,
            "ftol": cfg.convergence_tol,
            "gtol": 0.0,
        },
    )
    W = result.x[: k * d].reshape(k, d)
    b = result.x[k * d :]
    return LinearModel(
        classes=classes,
        weights=W,
        biases=b,
        objective=float(result.fun),
        objective_history=history,
    )


def predict(model: LinearModel, X: FeatureMatrix) -> list[Prediction]:
    """Softmax over class scores; ties break toward the lowest class index."""
    if X.data.shape[1] != model.n_features:
        raise ClassifierError(
            f"feature width {X.data.shape[1]} does not match model width {model.n_features}"
        )
    scores = np.asarray(X.data @ model.weights.T) + model.biases
    probs = _softmax(scores)
    return [
        Prediction(label=model.classes[int(np.argmax(row))], distribution=row)
        for row in probs
    ]


def majority_baseline(y: list[CEFRLevel]) -> LinearModel:
    """Constant predictor of the modal label; ties break toward the lower level."""
    if not y:
        raise ClassifierError("cannot fit a majority baseline on empty labels")
    counts: dict[CEFRLevel, int] = {}
    for label in y:
        counts[label] = counts.get(label, 0) + 1
    modal = min(counts, key=lambda c: (-counts[c], c))
    return LinearModel(classes=[modal], weights=np.zeros((1, 0)), biases=np.zeros(1))


def predict_constant(model: LinearModel, n: int) -> list[Prediction]:
    """Predictions from a degenerate single-class model, ignoring features."""
    return [Prediction(label=model.classes[0], distribution=np.ones(1))] * n


def save_model(model: LinearModel) -> str:
    """Text serialization; load(save(m)) is prediction-identical."""
    lines = [
        "classes\t" + " ".join(str(c) for c in model.classes),
        f"D\t{model.n_features}",
        f"K\t{len(model.classes)}",
    ]
    for row in model.weights:
        lines.append(" ".join(f"{v:.17g}" for v in row))
    lines.append(" ".join(f"{v:.17g}" for v in model.biases))
    return "\n".join(lines) + "\n"


def load_model(text: str) -> LinearModel:
    lines = text.splitlines()
    classes = [CEFRLevel.parse(c) for c in lines[0].split("\t")[1].split()]
    d = int(lines[1].split("\t")[1])
    k = int(lines[2].split("\t")[1])
    weights = np.array([[float(v) for v in lines[3 + i].split()] for i in range(k)])
    weights = weights.reshape(k, d)
    biases = np.array([float(v) for v in lines[3 + k].split()])
    return LinearModel(classes=classes, weights=weights, biases=biases)
