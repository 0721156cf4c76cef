"""Degree-corrected mixed membership model: parameters, population matrix, sampling.

A model is the tuple (n, P, theta, pi): a K x K symmetric mixing matrix P, a
positive degree vector theta and a row-stochastic n x K membership matrix pi.
Edge (i, j) appears independently with probability
theta(i) * theta(j) * pi_i' P pi_j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graph import AdjacencyMatrix

__all__ = [
    "DcmmParams",
    "expected_adjacency",
    "sample_adjacency",
    "experiment1_params",
    "EXPERIMENT1_SUBS",
    "experiment1_grid",
]

ROW_SUM_TOL = 1e-12


def _check_membership(pi: np.ndarray) -> np.ndarray:
    pi = np.asarray(pi, dtype=float)
    if pi.ndim != 2:
        raise InputError("membership matrix must be 2-D")
    if np.any(pi < -ROW_SUM_TOL) or np.any(pi > 1 + ROW_SUM_TOL):
        raise InputError("membership entries must lie in [0, 1]")
    if np.any(np.abs(pi.sum(axis=1) - 1.0) > ROW_SUM_TOL):
        raise InputError("membership rows must sum to 1")
    return pi


@dataclass(frozen=True)
class DcmmParams:
    """Full parameterization of the generative model."""

    p: np.ndarray      # K x K symmetric, entries in [0, 1]
    theta: np.ndarray  # length n, strictly positive
    pi: np.ndarray     # n x K, rows on the simplex

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        theta = np.asarray(self.theta, dtype=float).ravel()
        pi = _check_membership(self.pi)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise InputError("mixing matrix must be square")
        if not np.array_equal(p, p.T):
            raise InputError("mixing matrix must be symmetric")
        if p.min() < 0 or p.max() > 1:
            raise InputError("mixing matrix entries must lie in [0, 1]")
        if np.any(theta <= 0):
            raise InputError("degree parameters must be strictly positive")
        if pi.shape != (theta.size, p.shape[0]):
            raise InputError("dimension mismatch between theta, pi and P")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "pi", pi)
        for arr in (self.p, self.theta, self.pi):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.theta.size

    @property
    def k(self) -> int:
        return self.p.shape[0]

    def purity(self) -> np.ndarray:
        """Per-node max membership weight; 1 exactly for pure nodes."""
        return self.pi.max(axis=1)


def expected_adjacency(params: DcmmParams) -> np.ndarray:
    """Population edge-probability matrix with the diagonal forced to zero."""
    theta = params.theta
    block = params.pi @ params.p @ params.pi.T
    omega = theta[:, None] * block * theta[None, :]
    np.fill_diagonal(omega, 0.0)
    if omega.min() < 0 or omega.max() > 1 + 1e-12:
        raise InputError("model misparameterized: edge probability outside [0, 1]")
    omega = np.clip(omega, 0.0, 1.0)
    return (omega + omega.T) / 2.0


def sample_adjacency(params: DcmmParams, seed) -> AdjacencyMatrix:
    """Draw one graph: independent Bernoulli upper-triangle entries, symmetrized."""
    omega = expected_adjacency(params)
    rng = np.random.default_rng(seed)
    n = params.n
    iu, ju = np.triu_indices(n, k=1)
    hit = rng.random(iu.size) < omega[iu, ju]
    return AdjacencyMatrix(n, np.column_stack([iu[hit], ju[hit]]))


# --- Experiment-1 presets -------------------------------------------------

EXPERIMENT1_SUBS = "abcdefghijkl"

_SWEEP_RANGES = {
    "c": (0.0, 0.2), "d": (0.0, 0.2),
    "e": (0.0, 0.5), "f": (0.0, 0.5),
    "g": (1.0, 8.0), "h": (0.0, 0.8),
    "i": (1.0, 5.0), "j": (1.0, 5.0),
    "k": (0.0, 0.5), "l": (0.0, 0.5),
}

_DEFAULT_GRIDS = {
    "a": [40, 60, 80, 100, 120, 140, 160],
    "b": [40, 60, 80, 100, 120, 140, 160],
    "c": [round(0.02 * i, 2) for i in range(11)],
    "d": [round(0.02 * i, 2) for i in range(11)],
    "e": [round(0.05 * i, 2) for i in range(11)],
    "f": [round(0.05 * i, 2) for i in range(11)],
    "g": list(range(1, 9)),
    "h": [round(0.1 * i, 1) for i in range(9)],
    "i": [1 + 0.5 * i for i in range(9)],
    "j": [1 + 0.5 * i for i in range(9)],
    "k": [round(0.05 * i, 2) for i in range(11)],
    "l": [round(0.05 * i, 2) for i in range(11)],
}


def experiment1_grid(sub: str, n: int = 500) -> list[float]:
    """Default sweep grid for a sub-experiment, rescaled to n for subs a/b."""
    if sub not in EXPERIMENT1_SUBS:
        raise InputError(f"unknown sub-experiment {sub!r}")
    grid = _DEFAULT_GRIDS[sub]
    if sub in "ab" and n != 500:
        grid = [max(1, round(v * n / 500)) for v in grid]
    return list(grid)


def _theta_flat(n: int) -> np.ndarray:
    return np.full(n, 0.4)


def _theta_quadratic(n: int) -> np.ndarray:
    i = np.arange(1, n + 1)
    return 0.2 + 0.8 * (i / n) ** 2


def _mixed_profiles(k: int, x: float) -> np.ndarray:
    """Mixed-node membership profiles: rotations of (x, ..., x, 1-(K-1)x) plus uniform."""
    rows = []
    for hot in range(k - 1, -1, -1):
        row = np.full(k, x)
        row[hot] = 1 - (k - 1) * x
        rows.append(row)
    rows.append(np.full(k, 1.0 / k))
    return np.array(rows)


def _build_pi(n: int, k: int, n0: int, x: float) -> np.ndarray:
    """First k*n0 nodes pure in equal blocks; the rest split over mixed profiles."""
    if n0 < 1 or k * n0 > n:
        raise InputError(f"pure block size n0={n0} infeasible for n={n}, K={k}")
    pi = np.zeros((n, k))
    for b in range(k):
        pi[b * n0:(b + 1) * n0, b] = 1.0
    profiles = _mixed_profiles(k, x)
    n_mixed = n - k * n0
    if n_mixed:
        m = len(profiles)
        per, rem = divmod(n_mixed, m)
        counts = [per + (1 if j < rem else 0) for j in range(m)]  # round-robin remainder
        pos = k * n0
        for j, c in enumerate(counts):
            pi[pos:pos + c] = profiles[j]
            pos += c
    return pi


def experiment1_params(sub: str, sweep_value: float, n: int = 500, seed=None) -> DcmmParams:
    """Parameters for one Experiment-1 sub-experiment at one sweep point.

    The swept quantity depends on the sub-experiment: pure-block size n0
    (a, b), mixing off-diagonal rho (c, d), mixed-node spread x (e, f),
    heterogeneity scale z1/z2 (g, h), density multiplier p (i, j), or
    block-separation q (k, l). Sub g draws theta from a seeded RNG.
    Fixed quantities scale proportionally when n differs from 500.
    """
    if sub not in EXPERIMENT1_SUBS:
        raise InputError(f"unknown sub-experiment {sub!r}")
    if sub in _SWEEP_RANGES:
        lo, hi = _SWEEP_RANGES[sub]
        if not lo <= sweep_value <= hi:
            raise InputError(f"sweep value {sweep_value} outside [{lo}, {hi}] for sub {sub}")

    scale = n / 500
    k = 4 if sub in "kl" else 3
    x = 0.2 if sub in "kl" else 0.4
    rho = 0.1
    n0 = round((75 if sub in "kl" else 100) * scale)

    if sub in "ab":
        n0 = int(sweep_value)
        if n0 < 1 or 3 * n0 > n:
            raise InputError(f"n0={n0} outside feasible range for n={n}")
    elif sub in "cd":
        rho = float(sweep_value)
    elif sub in "ef":
        x = float(sweep_value)

    if sub in "ij":
        p = sweep_value * np.array([[0.2, 0.05, 0.05],
                                    [0.05, 0.2, 0.05],
                                    [0.05, 0.05, 0.2]])
    elif sub in "kl":
        q = float(sweep_value)
        p = np.array([[0.5 + q, 0.5, 0.3, 0.3],
                      [0.5, 0.5 + q, 0.3, 0.3],
                      [0.3, 0.3, 0.5 + q, 0.5],
                      [0.3, 0.3, 0.5, 0.5 + q]])
    else:
        p = np.full((3, 3), rho)
        np.fill_diagonal(p, 0.5)

    if sub == "g":
        z1 = float(sweep_value)
        rng = np.random.default_rng(seed)
        theta = 1.0 / rng.uniform(1.0, z1, size=n) if z1 > 1 else np.ones(n)
    elif sub == "h":
        z2 = float(sweep_value)
        i = np.arange(1, n + 1)
        theta = 0.1 + z2 + 0.4 * (i / n) ** 2
    elif sub in "acik":
        theta = _theta_flat(n)
    else:  # b, d, f, j, l
        theta = _theta_quadratic(n)

    return DcmmParams(p=p, theta=theta, pi=_build_pi(n, k, n0, x))
