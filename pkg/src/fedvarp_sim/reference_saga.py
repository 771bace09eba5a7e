"""Standalone SAGA on a finite sum of scalar quadratics.

Kept deliberately free of any simulator machinery: plain Python floats,
an explicit gradient table, and the textbook update

    w <- w - lr * (g_j + (mean of table - table[j]))

with the table mean accumulated term-by-term as table[i] * (1/N) in
ascending index order. The grouping and summation order are part of the
cross-check contract: the single-participant aggregation path is
required to reproduce this trajectory bit for bit.
"""
from __future__ import annotations


def saga_trajectory(
    eig: float, mus, w0: float, lr: float, picks: list[int]
) -> list[float]:
    """Iterates w_0..w_T of SAGA on f(w) = (1/N) sum_i eig/2 (w - mu_i)^2."""
    n = len(mus)
    table = [0.0] * n
    inv_n = 1 / n
    w = w0
    trajectory = [w]
    for j in picks:
        g = eig * (w - mus[j])
        table_mean = 0.0
        for value in table:
            table_mean = table_mean + value * inv_n
        w = w - lr * (g + (table_mean - table[j]))
        table[j] = g
        trajectory.append(w)
    return trajectory
