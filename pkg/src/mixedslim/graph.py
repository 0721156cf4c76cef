"""Undirected graph representation, file ingestion and structural checks.

Graphs are simple: binary, symmetric, zero diagonal. The canonical storage is
the deduplicated upper-triangle edge set, which makes symmetry and the missing
diagonal true by construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError

__all__ = [
    "AdjacencyMatrix",
    "DegreeStats",
    "LoadResult",
    "ValidationReport",
    "load_edge_list",
    "save_edge_list",
    "degree_stats",
    "validate",
]


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Symmetric binary adjacency matrix stored as an upper-triangle edge set.

    ``edges`` is an (m, 2) integer array with edges[e, 0] < edges[e, 1],
    sorted lexicographically and free of duplicates. Instances are immutable
    and safe to share across threads.
    """

    n: int
    edges: np.ndarray

    def __post_init__(self):
        if self.n <= 0:
            raise InputError("empty graph (n = 0)")
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if edges.size:
            if edges.min() < 0 or edges.max() >= self.n:
                raise InputError("edge endpoint out of range")
            if np.any(edges[:, 0] >= edges[:, 1]):
                raise InputError("edges must satisfy i < j (no self-loops)")
            order = np.lexsort((edges[:, 1], edges[:, 0]))
            edges = edges[order]
            if len(edges) > 1 and np.any(np.all(edges[1:] == edges[:-1], axis=1)):
                raise InputError("duplicate edges")
        object.__setattr__(self, "edges", edges)
        self.edges.setflags(write=False)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def dense(self) -> np.ndarray:
        """Return the full n x n float64 matrix."""
        a = np.zeros((self.n, self.n))
        if self.edges.size:
            i, j = self.edges[:, 0], self.edges[:, 1]
            a[i, j] = 1.0
            a[j, i] = 1.0
        return a

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=np.int64)
        if self.edges.size:
            np.add.at(d, self.edges[:, 0], 1)
            np.add.at(d, self.edges[:, 1], 1)
        return d

    def permuted(self, perm: np.ndarray) -> "AdjacencyMatrix":
        """Relabel nodes: node i becomes perm[i]."""
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self.n)):
            raise InputError("perm must be a permutation of 0..n-1")
        if not self.edges.size:
            return AdjacencyMatrix(self.n, self.edges)
        mapped = perm[self.edges]
        lo = mapped.min(axis=1)
        hi = mapped.max(axis=1)
        return AdjacencyMatrix(self.n, np.column_stack([lo, hi]))

    @classmethod
    def from_dense(cls, a: np.ndarray) -> "AdjacencyMatrix":
        """Build from a dense matrix, checking the structural invariants.

        This is the deserialization path, so symmetry, binarity and the zero
        diagonal are verified rather than assumed.
        """
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputError("adjacency matrix must be square")
        if not np.array_equal(a, a.T):
            raise InputError("adjacency matrix must be symmetric")
        if np.any(np.diag(a) != 0):
            raise InputError("adjacency matrix must have zero diagonal")
        if not np.isin(a, (0, 1)).all():
            raise InputError("adjacency entries must be 0 or 1")
        i, j = np.nonzero(np.triu(a, k=1))
        return cls(a.shape[0], np.column_stack([i, j]))


@dataclass(frozen=True)
class DegreeStats:
    """Integer degree vector with its exact-arithmetic aggregates."""

    d: np.ndarray
    d_bar: float
    d_max: int
    d_min: int


@dataclass(frozen=True)
class LoadResult:
    graph: AdjacencyMatrix
    labels: list
    label_to_index: dict
    self_loops_dropped: int
    duplicates_dropped: int


@dataclass
class ValidationReport:
    n: int
    isolated_count: int
    isolated_nodes: list = field(default_factory=list)
    ok: bool = True


def degree_stats(a: AdjacencyMatrix) -> DegreeStats:
    d = a.degrees()
    # aggregates in exact integer arithmetic, then converted
    return DegreeStats(d=d, d_bar=int(d.sum()) / a.n, d_max=int(d.max()), d_min=int(d.min()))


def validate(a: AdjacencyMatrix, require_positive_degrees: bool = False) -> ValidationReport:
    """Structural check; raises when the positive-degree flag is set and violated."""
    d = a.degrees()
    isolated = np.flatnonzero(d == 0).tolist()
    if require_positive_degrees and isolated:
        raise InputError(f"isolated nodes present (first: node {isolated[0]})")
    return ValidationReport(n=a.n, isolated_count=len(isolated), isolated_nodes=isolated)


def _pairs_from_lines(path) -> list[tuple[str, str]]:
    pairs = []
    with open(path) as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) < 2:
                raise InputError(f"{path}:{lineno}: expected two tokens, got {line!r}")
            pairs.append((tokens[0], tokens[1]))
    return pairs


_GML_TOKEN = re.compile(r"\[|\]|[^\s\[\]]+")


def _pairs_from_gml(path) -> tuple[list[str], list[tuple[str, str]]]:
    """Parse the GML subset: node [ id N ] and edge [ source A target B ]."""
    with open(path) as f:
        tokens = _GML_TOKEN.findall(f.read())
    nodes: list[str] = []
    pairs: list[tuple[str, str]] = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok in ("node", "edge") and i + 1 < len(tokens) and tokens[i + 1] == "[":
            depth = 1
            j = i + 2
            attrs: dict[str, str] = {}
            while j < len(tokens) and depth:
                t = tokens[j]
                if t == "[":
                    depth += 1
                elif t == "]":
                    depth -= 1
                elif depth == 1 and j + 1 < len(tokens) and tokens[j + 1] not in ("[", "]"):
                    if t in ("id", "source", "target") and t not in attrs:
                        attrs[t] = tokens[j + 1]
                        j += 1
                j += 1
            if tok == "node" and "id" in attrs:
                nodes.append(attrs["id"])
            elif tok == "edge":
                if "source" not in attrs or "target" not in attrs:
                    raise InputError(f"{path}: edge record missing source/target")
                pairs.append((attrs["source"], attrs["target"]))
            i = j
        else:
            i += 1
    return nodes, pairs


def load_edge_list(path, fmt: str = "auto") -> LoadResult:
    """Load a graph from a whitespace pair file or the GML subset.

    Node labels are arbitrary tokens; a dense 0..n-1 index is assigned in
    first-seen order (GML node records first, then edge endpoints). Duplicate
    edges and orientation flips are deduplicated; self-loops are dropped and
    counted.
    """
    try:
        with open(path) as f:
            head = f.read(4096)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if fmt == "auto":
        fmt = "gml" if re.search(r"\bgraph\b|\bnode\b\s*\[", head) else "pairs"

    declared: list[str] = []
    if fmt == "pairs":
        pairs = _pairs_from_lines(path)
        for u, v in pairs:
            for t in (u, v):
                try:
                    int(t)
                except ValueError:
                    raise InputError(f"{path}: non-integer token {t!r} in pairs format") from None
    elif fmt == "gml":
        declared, pairs = _pairs_from_gml(path)
    else:
        raise InputError(f"unknown format {fmt!r}")

    label_to_index: dict[str, int] = {}
    labels: list = []

    def idx(tok: str) -> int:
        if tok not in label_to_index:
            label_to_index[tok] = len(labels)
            labels.append(tok)
        return label_to_index[tok]

    for tok in declared:
        idx(tok)

    self_loops = 0
    seen: set[tuple[int, int]] = set()
    dups = 0
    for u, v in pairs:
        iu, iv = idx(u), idx(v)
        if iu == iv:
            self_loops += 1
            continue
        e = (min(iu, iv), max(iu, iv))
        if e in seen:
            dups += 1
        else:
            seen.add(e)
    if not labels:
        raise InputError(f"{path}: empty graph (n = 0)")
    edges = np.array(sorted(seen), dtype=np.int64).reshape(-1, 2)
    graph = AdjacencyMatrix(len(labels), edges)
    return LoadResult(graph, labels, dict(label_to_index), self_loops, dups)


def save_edge_list(a: AdjacencyMatrix, path, labels=None) -> None:
    """Write one edge per line; node index i is written as labels[i] if given."""
    with open(path, "w") as f:
        for i, j in a.edges:
            u = labels[i] if labels is not None else i + 1
            v = labels[j] if labels is not None else j + 1
            f.write(f"{u} {v}\n")
