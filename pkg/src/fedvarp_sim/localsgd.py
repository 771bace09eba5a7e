"""Client-side local training: tau SGD steps, returned as a normalized update.

The iterate after k+1 steps is evaluated as

    w_k+1 = w - (eta_c * tau) * (running_gradient_sum / tau)

which is the plain SGD recursion regrouped. Holding this exact grouping
matters: the returned update delta = gradient_sum / tau then satisfies
w - (eta_s*eta_c*tau) * delta == final local iterate bitwise when
eta_s = 1, and a one-step noiseless update returns the gradient itself
bitwise. The aggregator equivalence checks rely on both identities.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConfigError, DivergenceError, as_model_vector
from .objectives import QuadraticClient, stochastic_gradient


@dataclass(frozen=True)
class LocalRunConfig:
    """Local steps and client learning rate."""

    tau: int
    eta_c: float

    def __post_init__(self):
        if self.tau < 1:
            raise ConfigError(f"tau must be >= 1, got {self.tau}")
        if not self.eta_c > 0:
            raise ConfigError(f"eta_c must be > 0, got {self.eta_c}")


def local_sgd(
    client: QuadraticClient,
    w: np.ndarray,
    cfg: LocalRunConfig,
    rng: np.random.Generator,
    return_final: bool = False,
):
    """Run tau local SGD steps from w; return the normalized update.

    The update is (w - w_final) / (eta_c * tau), equivalently the mean of
    the stochastic gradients seen along the local path. The input w is
    not modified. Non-finite iterates raise DivergenceError carrying the
    step index.
    """
    w = as_model_vector(w, client.dim)
    step_scale = cfg.eta_c * cfg.tau
    grad_sum = np.zeros_like(w)
    w_k = w
    # Overflow here is a reportable divergence, not a warning condition.
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(cfg.tau):
            g = stochastic_gradient(client, w_k, rng)
            grad_sum = grad_sum + g
            w_k = w - step_scale * (grad_sum / cfg.tau)
            if not np.all(np.isfinite(w_k)):
                raise DivergenceError(step=k)
    delta = grad_sum / cfg.tau
    if return_final:
        return delta, w_k
    return delta
