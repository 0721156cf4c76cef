"""Cluster-center hunting, membership reconstruction, and the full pipelines.

The estimation pipeline is: closeness matrix -> leading-K eigenvectors ->
row normalization -> K-medians centers -> projection onto the center span ->
clamp and row-normalize into membership weights. The same pipeline applied to
the population matrix is the consistency oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, NumericalError
from .slim import (
    NormalizedEmbedding,
    SlimConfig,
    a4_diagnostic,
    build_slim,
    leading_eigenpairs,
    row_normalize,
)

__all__ = [
    "KMediansResult",
    "ClusterOptions",
    "RunReport",
    "MixedSlimResult",
    "geometric_median",
    "kmedians",
    "reconstruct",
    "mixed_slim",
    "ideal_mixed_slim",
    "harden",
]

CENTER_SEPARATION_TOL = 1e-9
CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class ClusterOptions:
    restarts: int = 10
    max_iters: int = 100
    seed: int = 0
    tol: float = 1e-8

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1:
            raise InputError("restarts and max_iters must be >= 1")


@dataclass(frozen=True)
class KMediansResult:
    centers: np.ndarray      # K x K, row k is center k
    assignments: np.ndarray  # length n
    loss: float              # mean over rows of the distance to the nearest center
    loss_trace: tuple = ()   # per-iteration losses of the winning restart


@dataclass(frozen=True)
class RunReport:
    eigengap: float
    eigenvalues: tuple
    a4_warnings: tuple
    kmedians_loss: float
    degenerate_rows: int
    fallback_rows: int
    alpha: float
    tau: float

    def as_items(self) -> list[tuple[str, str]]:
        return [
            ("alpha", f"{self.alpha:.6g}"),
            ("tau", f"{self.tau:.6g}"),
            ("eigengap", f"{self.eigengap:.6g}"),
            ("eigenvalues", " ".join(f"{v:.6g}" for v in self.eigenvalues)),
            ("kmedians_loss", f"{self.kmedians_loss:.6g}"),
            ("degenerate_rows", str(self.degenerate_rows)),
            ("fallback_rows", str(self.fallback_rows)),
            ("a4_warnings", "; ".join(self.a4_warnings) or "none"),
        ]


@dataclass(frozen=True)
class MixedSlimResult:
    pi: np.ndarray
    report: RunReport


def geometric_median(points: np.ndarray, tol: float = 1e-10, max_iters: int = 200) -> np.ndarray:
    """Weiszfeld iteration for the point minimizing the sum of l2 distances."""
    points = np.asarray(points, dtype=float)
    y = points.mean(axis=0)
    for _ in range(max_iters):
        dist = np.linalg.norm(points - y, axis=1)
        coincident = dist < 1e-14
        if coincident.any():
            # standard fix: the median of a set containing the current point
            # stays put if enough mass sits there, else step around it
            rest = points[~coincident]
            if rest.size == 0:
                return y
            w = 1.0 / np.linalg.norm(rest - y, axis=1)
            t = (rest * w[:, None]).sum(axis=0) / w.sum()
            r = np.linalg.norm((rest - y).T @ w)
            eta = coincident.sum() / r if r > 0 else 1.0
            y_new = max(0.0, 1 - eta) * t + min(1.0, eta) * y
        else:
            w = 1.0 / dist
            y_new = (points * w[:, None]).sum(axis=0) / w.sum()
        if np.linalg.norm(y_new - y) <= tol * (1 + np.linalg.norm(y)):
            return y_new
        y = y_new
    return y


def _loss(rows: np.ndarray, centers: np.ndarray) -> tuple[np.ndarray, float]:
    dists = np.linalg.norm(rows[:, None, :] - centers[None, :, :], axis=2)
    labels = dists.argmin(axis=1)
    return labels, float(dists.min(axis=1).mean())


def _farthest_point_seed(rows: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = rows.shape[0]
    chosen = [int(rng.integers(n))]
    min_dist = np.linalg.norm(rows - rows[chosen[0]], axis=1)
    for _ in range(k - 1):
        nxt = int(np.argmax(min_dist))
        chosen.append(nxt)
        min_dist = np.minimum(min_dist, np.linalg.norm(rows - rows[nxt], axis=1))
    return rows[chosen].copy()


def kmedians(x, k: int, opts: ClusterOptions = ClusterOptions()) -> KMediansResult:
    """Alternating K-medians: nearest-center assignment, Weiszfeld center update.

    Best of opts.restarts seeded runs by final loss (ties broken by restart
    index). Empty clusters are re-seeded to the point farthest from its
    current center.
    """
    rows = x.rows if isinstance(x, NormalizedEmbedding) else np.asarray(x, dtype=float)
    n = rows.shape[0]
    if k > n:
        raise InputError(f"K={k} exceeds the number of rows n={n}")
    if not np.isfinite(rows).all():
        raise InputError("non-finite embedding rows")
    if k >= 2 and np.allclose(rows, rows[0], atol=CENTER_SEPARATION_TOL):
        raise InputError("all rows identical; centers cannot separate - try a smaller K")

    rng = np.random.default_rng(opts.seed)
    best = None
    for _ in range(opts.restarts):
        centers = _farthest_point_seed(rows, k, rng)
        labels, loss = _loss(rows, centers)
        trace = [loss]
        for _ in range(opts.max_iters):
            for c in range(k):
                members = rows[labels == c]
                if len(members) == 0:
                    # re-seed to the worst-served point
                    dists = np.linalg.norm(rows - centers[labels], axis=1)
                    centers[c] = rows[int(np.argmax(dists))]
                else:
                    candidate = geometric_median(members, tol=opts.tol)
                    # Weiszfeld stops at a tolerance; keep the old center if
                    # the new one is not a strict improvement so the loss
                    # trace is monotone
                    old = np.linalg.norm(members - centers[c], axis=1).sum()
                    new = np.linalg.norm(members - candidate, axis=1).sum()
                    if new < old:
                        centers[c] = candidate
            labels, new_loss = _loss(rows, centers)
            trace.append(new_loss)
            if loss - new_loss <= opts.tol:
                loss = new_loss
                break
            loss = new_loss
        if best is None or loss < best[2]:
            best = (centers.copy(), labels.copy(), loss, tuple(trace))

    centers, labels, loss, trace = best
    if k >= 2:
        diffs = np.linalg.norm(centers[:, None, :] - centers[None, :, :], axis=2)
        diffs[np.diag_indices(k)] = np.inf
        if diffs.min() <= CENTER_SEPARATION_TOL:
            raise InputError("cluster centers collapsed; try a smaller K")
    return KMediansResult(centers=centers, assignments=labels, loss=loss, loss_trace=trace)


def reconstruct(x, centers: np.ndarray, norm_mode: str = "l1") -> tuple[np.ndarray, np.ndarray]:
    """Project rows onto the center span and turn them into membership weights.

    Raw projection Y = X V'(VV')^{-1}. Rows with no positive entry are
    negated first, then negatives clamp to zero; rows that still vanish fall
    back to the nearest-center indicator and are flagged. Rows normalize by
    l1 (default) or l2. Returns (pi_hat, fallback_flags).
    """
    rows = x.rows if isinstance(x, NormalizedEmbedding) else np.asarray(x, dtype=float)
    centers = np.asarray(centers, dtype=float)
    if norm_mode not in ("l1", "l2"):
        raise InputError("norm_mode must be 'l1' or 'l2'")
    gram = centers @ centers.T
    if np.linalg.cond(gram) > CONDITION_LIMIT:
        raise NumericalError("center Gram matrix is numerically singular")
    y = rows @ centers.T @ np.linalg.inv(gram)

    flip = (y <= 0).all(axis=1) & (np.abs(y).sum(axis=1) > 0)
    y[flip] = -y[flip]
    y = np.maximum(y, 0.0)

    fallback = y.sum(axis=1) <= 0
    if fallback.any():
        dists = np.linalg.norm(rows[fallback][:, None, :] - centers[None, :, :], axis=2)
        y[fallback] = np.eye(centers.shape[0])[dists.argmin(axis=1)]

    if norm_mode == "l1":
        y = y / y.sum(axis=1, keepdims=True)
    else:
        y = y / np.linalg.norm(y, axis=1, keepdims=True)
    return y, fallback


def harden(pi: np.ndarray) -> np.ndarray:
    """Argmax labels with ties broken by the lowest community index."""
    return np.asarray(pi).argmax(axis=1)


def _pipeline(matrix_source, k: int, cfg: SlimConfig, opts: ClusterOptions,
              norm_mode: str) -> MixedSlimResult:
    slim = build_slim(matrix_source, cfg)
    emb = leading_eigenpairs(slim, k)
    xstar = row_normalize(emb)
    if k == 1:
        pi = np.ones((xstar.rows.shape[0], 1))
        report = RunReport(
            eigengap=emb.eigengap, eigenvalues=tuple(emb.values),
            a4_warnings=tuple(a4_diagnostic(emb)), kmedians_loss=0.0,
            degenerate_rows=int(xstar.degenerate.sum()), fallback_rows=0,
            alpha=slim.alpha, tau=slim.tau)
        return MixedSlimResult(pi=pi, report=report)
    km = kmedians(xstar, k, opts)
    pi, fallback = reconstruct(xstar, km.centers, norm_mode)
    report = RunReport(
        eigengap=emb.eigengap,
        eigenvalues=tuple(emb.values),
        a4_warnings=tuple(a4_diagnostic(emb)),
        kmedians_loss=km.loss,
        degenerate_rows=int(xstar.degenerate.sum()),
        fallback_rows=int(fallback.sum()),
        alpha=slim.alpha,
        tau=slim.tau,
    )
    return MixedSlimResult(pi=pi, report=report)


def mixed_slim(a, k: int, cfg: SlimConfig = SlimConfig(),
               opts: ClusterOptions = ClusterOptions(),
               norm_mode: str = "l1") -> MixedSlimResult:
    """Estimate the membership matrix from an observed adjacency matrix."""
    return _pipeline(a, k, cfg, opts, norm_mode)


def ideal_mixed_slim(omega: np.ndarray, k: int, cfg: SlimConfig = SlimConfig(),
                     opts: ClusterOptions = ClusterOptions(),
                     norm_mode: str = "l1") -> MixedSlimResult:
    """Run the pipeline on the population matrix; the consistency oracle."""
    omega = np.asarray(omega, dtype=float)
    if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
        raise InputError("population matrix must be square")
    return _pipeline(omega, k, cfg, opts, norm_mode)
