"""Symmetrized Laplacian inverse matrix and its leading-eigenvector embedding.

The closeness matrix is M = (W + W') / 2 with W = (I - a * D^{-1} A)^{-1},
a = exp(-gamma), diagonal forced to zero. Regularization replaces A by
A + tau * I (and degrees accordingly); the truncated-series variant replaces
the inverse by the partial geometric sum up to order T.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import InputError, NumericalError
from .graph import AdjacencyMatrix

__all__ = [
    "SlimConfig",
    "SlimMatrix",
    "SpectralEmbedding",
    "NormalizedEmbedding",
    "TAU_RULES",
    "build_slim",
    "leading_eigenpairs",
    "row_normalize",
    "a4_diagnostic",
]

TAU_RULES = ("zero", "mean-degree", "max-degree", "mid-degree", "explicit")

DEGENERATE_ROW_TOL = 1e-12


@dataclass(frozen=True)
class SlimConfig:
    """Variant and tuning parameters.

    tau_rule picks the regularizer: 0, c * d_bar, c * d_max,
    c * (d_max + d_min) / 2, or an explicit value. variant "approx" replaces
    the exact inverse by the order-T partial sum.
    """

    gamma: float = 0.25
    tau_rule: str = "mean-degree"
    tau_coeff: float = 0.1
    tau_value: float = 0.0
    variant: str = "exact"
    t: int = 10
    exact_n_limit: int = 5000

    def __post_init__(self):
        if self.gamma <= 0:
            raise InputError("gamma must be positive")
        if self.tau_rule not in TAU_RULES:
            raise InputError(f"tau_rule must be one of {TAU_RULES}")
        if self.tau_coeff < 0 or self.tau_value < 0:
            raise InputError("tau must be nonnegative")
        if self.variant not in ("exact", "approx"):
            raise InputError("variant must be 'exact' or 'approx'")
        if self.t < 1:
            raise InputError("series order T must be >= 1")

    @property
    def alpha(self) -> float:
        return float(np.exp(-self.gamma))

    def resolve_tau(self, degrees: np.ndarray) -> float:
        d = np.asarray(degrees, dtype=float)
        if self.tau_rule == "zero":
            return 0.0
        if self.tau_rule == "explicit":
            return float(self.tau_value)
        if self.tau_rule == "mean-degree":
            return self.tau_coeff * float(d.mean())
        if self.tau_rule == "max-degree":
            return self.tau_coeff * float(d.max())
        return self.tau_coeff * float(d.max() + d.min()) / 2.0


@dataclass(frozen=True)
class SlimMatrix:
    """Symmetric zero-diagonal closeness matrix plus the parameters that built it."""

    m: np.ndarray
    alpha: float
    tau: float


@dataclass(frozen=True)
class SpectralEmbedding:
    """Leading-K unit-norm eigenvectors, their eigenvalues, and the (K+1)-th."""

    vectors: np.ndarray   # n x K
    values: np.ndarray    # K, by decreasing |value|
    lambda_next: float

    @property
    def eigengap(self) -> float:
        return float(self.values[-1] - self.lambda_next)


@dataclass(frozen=True)
class NormalizedEmbedding:
    """Unit-l2 rows; degenerate (near-zero) rows were replaced by e_1 and flagged."""

    rows: np.ndarray
    degenerate: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.degenerate is None:
            object.__setattr__(self, "degenerate", np.zeros(len(self.rows), dtype=bool))


def build_slim(a, cfg: SlimConfig) -> SlimMatrix:
    """Build M from an adjacency matrix or any symmetric nonnegative dense matrix.

    Accepts an AdjacencyMatrix or an n x n array (the population matrix goes
    through the same path). The zero-tau exact variant needs all row sums
    positive.
    """
    if isinstance(a, AdjacencyMatrix):
        mat = a.dense()
    else:
        mat = np.asarray(a, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise InputError("matrix must be square")
    n = mat.shape[0]
    row_sums = mat.sum(axis=1)
    tau = cfg.resolve_tau(row_sums)
    alpha = cfg.alpha

    if tau == 0.0 and np.any(row_sums <= 0):
        raise InputError("zero-degree node with tau = 0; use a regularized tau rule")

    # A_tau = A + tau*I; its row sums are row_sums + tau, so P = D_tau^{-1} A_tau
    # is exactly row-stochastic and I - alpha*P is invertible for alpha < 1.
    a_tau = mat.copy()
    a_tau[np.diag_indices(n)] += tau
    inv_d = 1.0 / (row_sums + tau)
    walk = inv_d[:, None] * a_tau

    if cfg.variant == "exact":
        if n > cfg.exact_n_limit:
            raise InputError(
                f"n={n} exceeds the exact-variant limit {cfg.exact_n_limit}; "
                "use variant='approx'"
            )
        w = scipy.linalg.solve(np.eye(n) - alpha * walk, np.eye(n))
    else:
        term = alpha * walk
        w = term.copy()
        for _ in range(cfg.t - 1):
            term = alpha * (term @ walk)
            w += term

    if not np.isfinite(w).all():
        raise NumericalError("non-finite entries in the Laplacian inverse")

    m = (w + w.T) / 2.0
    np.fill_diagonal(m, 0.0)
    return SlimMatrix(m=m, alpha=alpha, tau=tau)


def leading_eigenpairs(m, k: int) -> SpectralEmbedding:
    """Eigenpairs with the K largest |eigenvalues| of a symmetric matrix.

    Magnitude ties between a value and its negative prefer the positive one;
    each eigenvector's sign is fixed by making its largest-|entry| component
    positive.
    """
    mat = m.m if isinstance(m, SlimMatrix) else np.asarray(m, dtype=float)
    n = mat.shape[0]
    if not 1 <= k <= n:
        raise InputError(f"K={k} out of range for n={n}")
    try:
        vals, vecs = scipy.linalg.eigh(mat)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalError(f"eigensolver failed: {exc}") from exc

    # sort by |value| descending, positive value winning magnitude ties
    order = np.lexsort((-vals, -np.abs(vals)))
    vals = vals[order]
    vecs = vecs[:, order]

    top = vecs[:, :k].copy()
    for c in range(k):
        pivot = np.argmax(np.abs(top[:, c]))
        if top[pivot, c] < 0:
            top[:, c] = -top[:, c]
    lambda_next = float(vals[k]) if k < n else 0.0
    return SpectralEmbedding(vectors=top, values=vals[:k].copy(), lambda_next=lambda_next)


def row_normalize(x) -> NormalizedEmbedding:
    """Scale each row to unit l2 norm; near-zero rows become e_1 and are flagged."""
    rows = x.vectors if isinstance(x, SpectralEmbedding) else np.asarray(x, dtype=float)
    rows = rows.copy()
    norms = np.linalg.norm(rows, axis=1)
    degenerate = norms < DEGENERATE_ROW_TOL
    if degenerate.any():
        rows[degenerate] = 0.0
        rows[degenerate, 0] = 1.0
        norms = np.where(degenerate, 1.0, norms)
    return NormalizedEmbedding(rows=rows / norms[:, None], degenerate=degenerate)


def a4_diagnostic(emb: SpectralEmbedding) -> list[str]:
    """Informational warnings when the leading spectrum is not positive-dominant."""
    warnings = []
    if np.any(emb.values <= 0):
        warnings.append("leading eigenvalues contain a nonpositive value")
    if emb.values[-1] <= abs(emb.lambda_next):
        warnings.append(
            "K-th eigenvalue does not strictly dominate the (K+1)-th in magnitude"
        )
    return warnings
