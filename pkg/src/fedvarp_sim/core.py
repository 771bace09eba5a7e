"""Shared numeric types, hyperparameters, and learning-rate bound reports.

Model state is represented throughout as 1-D float64 numpy arrays of a
fixed dimension d. All arithmetic is 64-bit and sequentially ordered so
that runs are bitwise reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

# Algorithm tags used across aggregator state, configs, and reports.
FEDAVG = "fedavg"
FEDVARP = "fedvarp"
CLUSTERFEDVARP = "clusterfedvarp"
MIFA = "mifa"
ALGORITHMS = (FEDAVG, FEDVARP, CLUSTERFEDVARP, MIFA)


class ConfigError(ValueError):
    """Invalid configuration: bad keys, inconsistent sizes, missing files."""


class DimensionError(ValueError):
    """Vector length mismatch."""


class OracleScaleError(ValueError):
    """An exhaustive-enumeration oracle was asked for too large an instance."""


class DivergenceError(RuntimeError):
    """A trajectory produced a non-finite iterate.

    Carries the local step index (None for a server-side step); the round
    index is filled in by the run loop that owns the round counter.
    """

    def __init__(self, step: int | None, round: int | None = None):
        self.step = step
        self.round = round
        where = "server step" if step is None else f"local_step={step}"
        super().__init__(f"non-finite iterate at round={round} ({where})")


def as_model_vector(values, d: int | None = None) -> np.ndarray:
    """Validate and return a float64 model vector."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1:
        raise DimensionError(f"model vector must be 1-D, got shape {v.shape}")
    if d is not None and v.shape[0] != d:
        raise DimensionError(f"expected dimension {d}, got {v.shape[0]}")
    return v


def vec_axpy(alpha: float, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Return y + alpha*x without modifying the inputs."""
    if x.shape != y.shape:
        raise DimensionError(f"axpy shape mismatch: {x.shape} vs {y.shape}")
    return y + alpha * x


@dataclass(frozen=True)
class HyperParams:
    """Run hyperparameters: client/server rates, local steps, rounds, participation."""

    eta_c: float
    eta_s: float
    tau: int
    T: int
    M: int
    N: int

    def __post_init__(self):
        if not self.eta_c > 0:
            raise ConfigError(f"eta_c must be > 0, got {self.eta_c}")
        if not self.eta_s > 0:
            raise ConfigError(f"eta_s must be > 0, got {self.eta_s}")
        if self.tau < 1:
            raise ConfigError(f"tau must be >= 1, got {self.tau}")
        if self.T < 0:
            raise ConfigError(f"T must be >= 0, got {self.T}")
        if self.N < 1:
            raise ConfigError(f"N must be >= 1, got {self.N}")
        if not 1 <= self.M <= self.N:
            raise ConfigError(f"M must satisfy 1 <= M <= N, got M={self.M} N={self.N}")


def effective_server_lr(h: HyperParams) -> float:
    """Effective server step size eta_s * eta_c * tau.

    This is the single place the product is formed; every server update
    receives its value unchanged.
    """
    return h.eta_s * h.eta_c * h.tau


@dataclass(frozen=True)
class RunRecord:
    """Per-round metrics evaluated with exact (noiseless) gradients."""

    round: int
    grad_norm_sq: float
    global_loss: float
    dist_to_opt_sq: float

    def __post_init__(self):
        if self.grad_norm_sq < 0 or self.dist_to_opt_sq < 0:
            raise ValueError("squared norms must be nonnegative")


@dataclass(frozen=True)
class LrCondition:
    """One learning-rate bound: quantity, numeric bound, actual value, verdict."""

    quantity: str
    bound: float
    value: float
    satisfied: bool

    def as_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "bound": self.bound,
            "value": self.value,
            "satisfied": self.satisfied,
        }


def lr_precondition_report(
    h: HyperParams, L: float, algo: str, p: float | None = None
) -> list[LrCondition]:
    """Evaluate the convergence-theory learning-rate bounds for an algorithm.

    Purely advisory: callers report the verdicts but never block a run on
    them. The MIFA baseline has no associated bounds and yields an empty
    report. ClusterFedVARP requires the cluster miss probability p.
    """
    if L <= 0:
        raise ValueError(f"smoothness constant L must be > 0, got {L}")
    if algo not in ALGORITHMS:
        raise ConfigError(f"unknown algorithm tag {algo!r}")
    tau, M, N = h.tau, h.M, h.N
    prod = h.eta_s * h.eta_c

    def cond(quantity: str, value: float, bound: float) -> LrCondition:
        return LrCondition(quantity, bound, value, value <= bound)

    if algo == FEDAVG:
        return [
            cond("eta_c", h.eta_c, 1.0 / (8.0 * L * tau)),
            cond("eta_s_eta_c", prod, 1.0 / (24.0 * tau * L)),
        ]
    if algo == FEDVARP:
        bound = min(
            M**1.5 / (8.0 * L * tau * N),
            5.0 * M / (48.0 * tau * L),
            1.0 / (4.0 * L * tau),
        )
        return [
            cond("eta_c", h.eta_c, 1.0 / (10.0 * L * tau)),
            cond("eta_s_eta_c", prod, bound),
        ]
    if algo == CLUSTERFEDVARP:
        if p is None:
            raise ConfigError("clusterfedvarp report requires the miss probability p")
        bound = min(
            sqrt(M) * (1.0 - p) / (8.0 * L * tau),
            M / (16.0 * tau * L),
            1.0 / (4.0 * L * tau),
        )
        return [
            cond("eta_c", h.eta_c, 1.0 / (10.0 * L * tau)),
            cond("eta_s_eta_c", prod, bound),
        ]
    return []  # MIFA: baseline without rate guarantees
