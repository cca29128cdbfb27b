"""Multilayer perceptron regressor.

tanh hidden layers, identity output, squared-error loss, constant-rate
Adam updates on shuffled mini-batches, Glorot-uniform initialization.
Targets are used unscaled. `loss_and_grads` exposes the analytic
gradients for finite-difference checking.
"""

import numpy as np

from testlab.learners.tree import DimensionMismatch


class Perceptron:
    def __init__(self, hidden_layer_sizes=(512, 256, 100), epochs=100,
                 batch_size=200, learning_rate=1e-3, seed=0):
        self.hidden_layer_sizes = tuple(hidden_layer_sizes)
        self.epochs = int(epochs)
        self.batch_size = int(batch_size)
        self.learning_rate = float(learning_rate)
        self.seed = seed
        self.weights_ = None
        self.biases_ = None

    # ---- parameters ------------------------------------------------------

    def _init_params(self, d):
        rng = np.random.default_rng(self.seed)
        sizes = (d,) + self.hidden_layer_sizes + (1,)
        self.weights_ = []
        self.biases_ = []
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
            limit = np.sqrt(6.0 / (fan_in + fan_out))
            self.weights_.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
            self.biases_.append(np.zeros(fan_out))
        return rng

    def _forward(self, X):
        activations = [X]
        a = X
        last = len(self.weights_) - 1
        for i, (w, b) in enumerate(zip(self.weights_, self.biases_)):
            z = a @ w + b
            a = z if i == last else np.tanh(z)
            activations.append(a)
        return activations

    def loss_and_grads(self, X, y):
        """Mean squared error and its gradients for one batch."""
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        n = len(y)
        acts = self._forward(X)
        pred = acts[-1][:, 0]
        err = pred - y
        loss = float((err * err).mean())
        grad_ws = [None] * len(self.weights_)
        grad_bs = [None] * len(self.biases_)
        delta = (2.0 * err / n)[:, None]
        for i in range(len(self.weights_) - 1, -1, -1):
            grad_ws[i] = acts[i].T @ delta
            grad_bs[i] = delta.sum(axis=0)
            if i > 0:
                delta = (delta @ self.weights_[i].T) * (1.0 - acts[i] ** 2)
        return loss, grad_ws, grad_bs

    # ---- training --------------------------------------------------------

    def fit(self, X, y):
        X = np.ascontiguousarray(X, dtype=np.float64)
        y = np.ascontiguousarray(y, dtype=np.float64)
        n, d = X.shape
        rng = self._init_params(d)
        m_w = [np.zeros_like(w) for w in self.weights_]
        v_w = [np.zeros_like(w) for w in self.weights_]
        m_b = [np.zeros_like(b) for b in self.biases_]
        v_b = [np.zeros_like(b) for b in self.biases_]
        beta1, beta2, eps = 0.9, 0.999, 1e-8
        t = 0
        for _epoch in range(self.epochs):
            perm = rng.permutation(n)
            for start in range(0, n, self.batch_size):
                batch = perm[start:start + self.batch_size]
                _loss, grad_ws, grad_bs = self.loss_and_grads(X[batch], y[batch])
                t += 1
                corr1 = 1.0 - beta1**t
                corr2 = 1.0 - beta2**t
                for i in range(len(self.weights_)):
                    m_w[i] = beta1 * m_w[i] + (1 - beta1) * grad_ws[i]
                    v_w[i] = beta2 * v_w[i] + (1 - beta2) * grad_ws[i] ** 2
                    self.weights_[i] -= self.learning_rate * (
                        (m_w[i] / corr1) / (np.sqrt(v_w[i] / corr2) + eps)
                    )
                    m_b[i] = beta1 * m_b[i] + (1 - beta1) * grad_bs[i]
                    v_b[i] = beta2 * v_b[i] + (1 - beta2) * grad_bs[i] ** 2
                    self.biases_[i] -= self.learning_rate * (
                        (m_b[i] / corr1) / (np.sqrt(v_b[i] / corr2) + eps)
                    )
        return self

    def predict(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.shape[1] != self.weights_[0].shape[0]:
            raise DimensionMismatch(
                f"expected {self.weights_[0].shape[0]} features, got {X.shape}"
            )
        return self._forward(X)[-1][:, 0]

    def to_dict(self):
        return {
            "kind": "mlpr",
            "hidden_layer_sizes": list(self.hidden_layer_sizes),
            "weights": [w.tolist() for w in self.weights_],
            "biases": [b.tolist() for b in self.biases_],
        }

    @classmethod
    def from_dict(cls, d):
        model = cls(hidden_layer_sizes=d["hidden_layer_sizes"])
        model.weights_ = [np.asarray(w, dtype=np.float64) for w in d["weights"]]
        model.biases_ = [np.asarray(b, dtype=np.float64) for b in d["biases"]]
        return model
