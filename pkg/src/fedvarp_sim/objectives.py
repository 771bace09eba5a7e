"""Synthetic quadratic client objectives with analytically exact constants.

Every client shares one diagonal Hessian A and differs only in its local
minimizer mu_i. That choice makes the client-vs-global gradient gap
A(mu_bar - mu_i) independent of the query point, so the heterogeneity
constants usually only *assumed* to exist are exact, reportable numbers:

    L          = max diagonal entry of A
    sigma_g^2  = max_i ||A(mu_bar - mu_i)||^2
    sigma_K^2  = max_k max_{i in cluster k} ||A(mu_bar_k - mu_i)||^2
    w*         = mu_bar,  f* = global loss at mu_bar

Local stochastic gradients add isotropic Gaussian noise scaled so the
expected squared noise norm equals noise_sigma^2 exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import ConfigError, DimensionError, as_model_vector
from .rng import TAG_CENTERS, TAG_OFFSETS, substream


@dataclass(frozen=True)
class QuadraticClient:
    """Local objective f_i(w) = 0.5 (w - mu)^T A (w - mu) with diagonal A."""

    hessian_eigs: np.ndarray
    mu: np.ndarray
    noise_sigma: float
    client_id: int

    def __post_init__(self):
        if self.hessian_eigs.shape != self.mu.shape:
            raise DimensionError("hessian_eigs and mu must share the dimension")
        if np.any(self.hessian_eigs < 0):
            raise ConfigError("hessian eigenvalues must be nonnegative")
        if self.noise_sigma < 0:
            raise ConfigError("noise_sigma must be nonnegative")

    @property
    def dim(self) -> int:
        return self.mu.shape[0]

    def loss(self, w: np.ndarray) -> float:
        diff = w - self.mu
        return 0.5 * float(np.dot(self.hessian_eigs * diff, diff))

    def grad(self, w: np.ndarray) -> np.ndarray:
        """Exact gradient A(w - mu)."""
        return self.hessian_eigs * (w - self.mu)


@dataclass(frozen=True)
class FederationSpec:
    """Realized generator description for a population of N clients.

    cluster_centers holds K_true center vectors; client i belongs to
    generator cluster i // (N / K_true) and sits at the center plus a
    seeded offset of norm at most within_cluster_spread.
    """

    N: int
    d: int
    K_true: int
    cluster_centers: tuple = ()
    within_cluster_spread: float = 0.0
    noise_sigma: float = 0.0
    hessian_eigs: np.ndarray = field(default_factory=lambda: np.ones(1))
    seed: int = 0

    def __post_init__(self):
        if self.N < 1 or self.d < 1:
            raise ConfigError(f"need N >= 1 and d >= 1, got N={self.N} d={self.d}")
        if not 1 <= self.K_true <= self.N:
            raise ConfigError(f"K_true must be in [1, N], got {self.K_true}")
        if self.N % self.K_true != 0:
            raise ConfigError(
                f"equal-size generator clusters need K_true | N, got N={self.N} K_true={self.K_true}"
            )
        if len(self.cluster_centers) != self.K_true:
            raise ConfigError(
                f"expected {self.K_true} cluster centers, got {len(self.cluster_centers)}"
            )
        if self.within_cluster_spread < 0 or self.noise_sigma < 0:
            raise ConfigError("spreads and noise_sigma must be nonnegative")
        if self.hessian_eigs.shape != (self.d,):
            raise DimensionError("hessian_eigs must have length d")


def make_federation_spec(
    N: int,
    d: int,
    K_true: int,
    cluster_center_spread: float,
    within_cluster_spread: float,
    noise_sigma: float,
    hessian_eig_min: float,
    hessian_eig_max: float,
    seed: int,
) -> FederationSpec:
    """Realize a spec from scalar generator knobs.

    Centers are standard-normal draws scaled by cluster_center_spread/sqrt(d)
    (expected squared norm = spread^2); eigenvalues are evenly spaced over
    [hessian_eig_min, hessian_eig_max].
    """
    if cluster_center_spread < 0:
        raise ConfigError("cluster_center_spread must be nonnegative")
    if not 0 <= hessian_eig_min <= hessian_eig_max:
        raise ConfigError("need 0 <= hessian_eig_min <= hessian_eig_max")
    gen = substream(seed, TAG_CENTERS)
    scale = cluster_center_spread / np.sqrt(d)
    centers = tuple(scale * gen.standard_normal(d) for _ in range(K_true))
    eigs = np.linspace(hessian_eig_min, hessian_eig_max, d)
    return FederationSpec(
        N=N,
        d=d,
        K_true=K_true,
        cluster_centers=centers,
        within_cluster_spread=within_cluster_spread,
        noise_sigma=noise_sigma,
        hessian_eigs=eigs,
        seed=seed,
    )


@dataclass(frozen=True)
class FederationConstants:
    """Exact constants of the generated federation."""

    L: float
    sigma_g_sq: float
    sigma_K_sq: float
    w_star: np.ndarray
    f_star: float


def generator_assignment(N: int, K_true: int) -> np.ndarray:
    """Contiguous equal-size blocks: client i -> cluster i // (N/K_true)."""
    r = N // K_true
    return np.arange(N) // r


def generate_federation(spec: FederationSpec) -> tuple[list[QuadraticClient], FederationConstants]:
    """Build the client list and its exact constants, deterministically in the seed."""
    assign = generator_assignment(spec.N, spec.K_true)
    s = spec.within_cluster_spread
    half_width = s / np.sqrt(spec.d)  # box offsets keep ||delta|| <= s
    clients = []
    for i in range(spec.N):
        offset = substream(spec.seed, TAG_OFFSETS, i).uniform(-half_width, half_width, spec.d)
        mu = spec.cluster_centers[assign[i]] + offset
        clients.append(
            QuadraticClient(
                hessian_eigs=spec.hessian_eigs,
                mu=mu,
                noise_sigma=spec.noise_sigma,
                client_id=i,
            )
        )
    constants = federation_constants(clients, assign)
    return clients, constants


def federation_constants(
    clients: list[QuadraticClient], assignment: np.ndarray
) -> FederationConstants:
    """Exact L, heterogeneity bounds, minimizer, and optimal loss."""
    eigs = clients[0].hessian_eigs
    mus = np.stack([c.mu for c in clients])
    mu_bar = mus.mean(axis=0)
    dev = eigs * (mu_bar - mus)  # per-client gradient gap, constant in w
    sigma_g_sq = float(np.max(np.sum(dev * dev, axis=1)))
    sigma_K_sq = float(cluster_heterogeneity(clients, assignment))
    f_star = float(np.mean(0.5 * np.sum(eigs * (mu_bar - mus) ** 2, axis=1)))
    return FederationConstants(
        L=float(np.max(eigs)),
        sigma_g_sq=sigma_g_sq,
        sigma_K_sq=sigma_K_sq,
        w_star=mu_bar,
        f_star=f_star,
    )


def cluster_heterogeneity(clients: list[QuadraticClient], assignment: np.ndarray) -> float:
    """Exact max squared gap between a client gradient and its cluster mean gradient."""
    eigs = clients[0].hessian_eigs
    mus = np.stack([c.mu for c in clients])
    worst = 0.0
    for k in np.unique(assignment):
        members = mus[assignment == k]
        center = members.mean(axis=0)
        dev = eigs * (center - members)
        worst = max(worst, float(np.max(np.sum(dev * dev, axis=1))))
    return worst


def stochastic_gradient(
    client: QuadraticClient, w: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Unbiased gradient oracle: exact gradient plus N(0, (sigma^2/d) I) noise."""
    w = as_model_vector(w, client.dim)
    g = client.grad(w)
    if client.noise_sigma == 0.0:
        return g
    noise = rng.standard_normal(client.dim) * (client.noise_sigma / np.sqrt(client.dim))
    return g + noise


def global_grad_and_loss(
    clients: list[QuadraticClient], w: np.ndarray
) -> tuple[np.ndarray, float]:
    """Exact global gradient and loss, averaged over all clients."""
    if not clients:
        raise ConfigError("client list is empty")
    w = as_model_vector(w, clients[0].dim)
    eigs = clients[0].hessian_eigs
    mus = np.stack([c.mu for c in clients])
    diffs = w - mus
    grads = eigs * diffs
    losses = 0.5 * np.sum(grads * diffs, axis=1)
    return grads.mean(axis=0), float(losses.mean())
