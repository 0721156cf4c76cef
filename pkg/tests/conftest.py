"""Shared helpers and oracles for the test suite."""

import itertools

import numpy as np
import pytest

from mixedslim import AdjacencyMatrix


def brute_force_mixed_hamming(pi_hat, pi_true):
    """Reference metric: enumerate all K! column permutations.

    Only usable for small K; serves as the oracle for the assignment-based
    implementation.
    """
    k = pi_true.shape[1]
    best = np.inf
    best_perm = None
    for perm in itertools.permutations(range(k)):
        cost = np.abs(pi_hat[:, list(perm)] - pi_true).sum()
        if cost < best - 1e-15:
            best = cost
            best_perm = perm
    return best / pi_true.shape[0], best_perm


def random_membership(rng, n, k, pure_frac=0.0):
    """Random row-stochastic matrix; optionally a leading block of pure rows."""
    pi = rng.dirichlet(np.ones(k), size=n)
    n_pure = int(round(pure_frac * n))
    for i in range(n_pure):
        row = np.zeros(k)
        row[i % k] = 1.0
        pi[i] = row
    return pi


def erdos_renyi(rng, n, p):
    """Random undirected graph with edge probability p (positive degrees not guaranteed)."""
    dense = (rng.random((n, n)) < p).astype(float)
    dense = np.triu(dense, k=1)
    dense = dense + dense.T
    return AdjacencyMatrix.from_dense(dense)


def two_cliques(size=10, noise=0.0, seed=0):
    """Two disjoint cliques of `size`, optionally with cross edges flipped in."""
    n = 2 * size
    dense = np.zeros((n, n))
    dense[:size, :size] = 1.0
    dense[size:, size:] = 1.0
    np.fill_diagonal(dense, 0.0)
    if noise > 0:
        rng = np.random.default_rng(seed)
        iu = np.triu_indices(n, k=1)
        flip = rng.random(len(iu[0])) < noise
        dense[iu[0][flip], iu[1][flip]] = 1.0 - dense[iu[0][flip], iu[1][flip]]
        dense = np.triu(dense, k=1)
        dense = dense + dense.T
    labels = np.zeros(n, dtype=int)
    labels[size:] = 1
    return AdjacencyMatrix.from_dense(dense), labels


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
