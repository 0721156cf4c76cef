"""Permutation-minimized error metrics for soft and hard community labels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import InputError

__all__ = ["ErrorReport", "mixed_hamming_error", "hard_error_count"]


@dataclass(frozen=True)
class ErrorReport:
    """Mean l1 row deviation minimized over column permutations.

    ``permutation`` maps estimated community k to true community
    permutation[k]; ``hard_errors`` counts argmax-label mismatches under the
    same permutation.
    """

    mixed_hamming: float
    permutation: tuple
    hard_errors: int
    n: int


def mixed_hamming_error(pi_hat: np.ndarray, pi_true: np.ndarray) -> ErrorReport:
    """min over permutations O of (1/n) * sum_i ||(pi_hat O)_i - (pi_true)_i||_1.

    The entrywise l1 objective decomposes column-wise under a permutation,
    so the K x K cost matrix C(k, l) = sum_i |pi_hat(i, k) - pi_true(i, l)|
    turns the minimization into an exact linear assignment problem.
    """
    pi_hat = np.asarray(pi_hat, dtype=float)
    pi_true = np.asarray(pi_true, dtype=float)
    if pi_hat.shape != pi_true.shape or pi_hat.ndim != 2:
        raise InputError("membership matrices must share the same n x K shape")
    n, k = pi_hat.shape
    cost = np.abs(pi_hat[:, :, None] - pi_true[:, None, :]).sum(axis=0)
    rows, cols = linear_sum_assignment(cost)
    perm = tuple(int(c) for c in cols[np.argsort(rows)])
    total = float(cost[rows, cols].sum())

    hat_labels = pi_hat.argmax(axis=1)
    true_labels = pi_true.argmax(axis=1)
    mapped = np.asarray(perm)[hat_labels]
    hard = int((mapped != true_labels).sum())
    return ErrorReport(mixed_hamming=total / n, permutation=perm, hard_errors=hard, n=n)


def hard_error_count(labels_hat, labels_true, k: int) -> tuple[int, tuple]:
    """Minimum misclassification count over community-label permutations."""
    labels_hat = np.asarray(labels_hat, dtype=np.int64)
    labels_true = np.asarray(labels_true, dtype=np.int64)
    if labels_hat.shape != labels_true.shape or labels_hat.ndim != 1:
        raise InputError("label vectors must share the same length")
    for lab in (labels_hat, labels_true):
        if lab.size and (lab.min() < 0 or lab.max() >= k):
            raise InputError(f"label out of range 0..{k - 1}")
    confusion = np.zeros((k, k), dtype=np.int64)
    np.add.at(confusion, (labels_hat, labels_true), 1)
    rows, cols = linear_sum_assignment(-confusion)
    perm = tuple(int(c) for c in cols[np.argsort(rows)])
    matched = int(confusion[rows, cols].sum())
    return labels_hat.size - matched, perm
