import numpy as np
import pytest

from fedvarp_sim.harness import AlgoConfig, FederationConfig, HyperConfig, RunConfig
from fedvarp_sim.objectives import QuadraticClient


def make_clients(mus, eigs, sigma=0.0):
    """Helper: one shared-Hessian quadratic client per row of mus."""
    eigs = np.asarray(eigs, dtype=np.float64)
    return [
        QuadraticClient(
            hessian_eigs=eigs,
            mu=np.asarray(mu, dtype=np.float64),
            noise_sigma=sigma,
            client_id=i,
        )
        for i, mu in enumerate(mus)
    ]


@pytest.fixture
def small_config(tmp_path):
    """A fast, fully valid run configuration writing into tmp_path."""

    def build(**kwargs):
        fed = FederationConfig(
            N=kwargs.pop("N", 8),
            d=kwargs.pop("d", 3),
            K_true=kwargs.pop("K_true", 4),
            cluster_center_spread=kwargs.pop("cluster_center_spread", 1.0),
            within_cluster_spread=kwargs.pop("within_cluster_spread", 0.1),
            noise_sigma=kwargs.pop("noise_sigma", 0.0),
            hessian_eig_min=kwargs.pop("hessian_eig_min", 0.5),
            hessian_eig_max=kwargs.pop("hessian_eig_max", 1.0),
            seed=kwargs.pop("federation_seed", 11),
        )
        hyper = HyperConfig(
            eta_c=kwargs.pop("eta_c", 0.05),
            eta_s=kwargs.pop("eta_s", 1.0),
            tau=kwargs.pop("tau", 2),
            T=kwargs.pop("T", 30),
            M=kwargs.pop("M", 3),
        )
        algo = AlgoConfig(
            name=kwargs.pop("algo", "fedavg"),
            K=kwargs.pop("K", None),
            mifa_mode=kwargs.pop("mifa_mode", None),
        )
        cfg = RunConfig(
            federation=fed,
            hyper=hyper,
            algo=algo,
            log_every=kwargs.pop("log_every", 1),
            output_dir=str(kwargs.pop("output_dir", tmp_path / "run")),
            seed=kwargs.pop("seed", 4242),
        )
        assert not kwargs, f"unused config test args: {kwargs}"
        return cfg

    return build
