import numpy as np
import pytest

from mixedslim import (
    AdjacencyMatrix,
    InputError,
    degree_stats,
    load_edge_list,
    save_edge_list,
    validate,
)

from conftest import erdos_renyi


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadEdgeList:
    def test_plain_pairs(self, tmp_path):
        path = _write(tmp_path, "toy.edges", "1 2\n2 3\n")
        res = load_edge_list(path)
        assert res.graph.n == 3
        assert res.graph.edges.tolist() == [[0, 1], [1, 2]]

    def test_dedup_and_self_loops(self, tmp_path):
        path = _write(tmp_path, "dups.edges", "1 2\n2 1\n3 3\n")
        res = load_edge_list(path)
        assert res.graph.n == 3
        assert res.graph.edges.tolist() == [[0, 1]]
        assert res.self_loops_dropped == 1
        assert res.duplicates_dropped == 1

    def test_comments_ignored(self, tmp_path):
        path = _write(tmp_path, "c.edges", "# header\n1 2\n# trailing\n")
        res = load_edge_list(path)
        assert res.graph.edges.tolist() == [[0, 1]]

    def test_non_integer_token(self, tmp_path):
        path = _write(tmp_path, "bad.edges", "1 two\n")
        with pytest.raises(InputError):
            load_edge_list(path, fmt="pairs")

    def test_empty_graph_rejected(self, tmp_path):
        path = _write(tmp_path, "empty.edges", "# nothing\n")
        with pytest.raises(InputError):
            load_edge_list(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            load_edge_list(tmp_path / "nope.edges")

    def test_missing_file_explicit_format(self, tmp_path):
        with pytest.raises(InputError):
            load_edge_list(tmp_path / "nope.edges", fmt="pairs")

    def test_non_contiguous_labels_mapped(self, tmp_path):
        path = _write(tmp_path, "gaps.edges", "10 200\n200 3000\n")
        res = load_edge_list(path)
        assert res.graph.n == 3
        assert set(res.label_to_index) == {"10", "200", "3000"}
        i, j = res.label_to_index["10"], res.label_to_index["200"]
        assert sorted((i, j)) in res.graph.edges.tolist()

    def test_gml_subset(self, tmp_path):
        text = (
            "graph [\n"
            "  directed 0\n"
            "  node [ id 1 label \"a\" ]\n"
            "  node [ id 2 ]\n"
            "  node [ id 3 ]\n"
            "  edge [ source 1 target 2 ]\n"
            "  edge [ source 2 target 3 weight 4 ]\n"
            "]\n"
        )
        path = _write(tmp_path, "toy.gml", text)
        res = load_edge_list(path, fmt="gml")
        assert res.graph.n == 3
        assert len(res.graph.edges) == 2

    def test_gml_autodetected(self, tmp_path):
        text = "graph [ node [ id 1 ] node [ id 2 ] edge [ source 1 target 2 ] ]"
        path = _write(tmp_path, "auto.gml", text)
        res = load_edge_list(path)
        assert res.graph.n == 2


class TestDegreeStats:
    def test_single_edge(self):
        a = AdjacencyMatrix(2, np.array([[0, 1]]))
        stats = degree_stats(a)
        assert stats.d.tolist() == [1, 1]
        assert stats.d_bar == 1.0

    def test_empty_three_nodes(self):
        a = AdjacencyMatrix(3, np.empty((0, 2), dtype=np.int64))
        stats = degree_stats(a)
        assert stats.d.tolist() == [0, 0, 0]
        assert stats.d_min == 0 and stats.d_max == 0

    def test_sums_equal_twice_edges(self, rng):
        for _ in range(20):
            a = erdos_renyi(rng, int(rng.integers(2, 40)), rng.uniform(0.05, 0.6))
            assert degree_stats(a).d.sum() == 2 * len(a.edges)

    def test_ordering(self, rng):
        for _ in range(20):
            s = degree_stats(erdos_renyi(rng, 25, 0.3))
            assert s.d_min <= s.d_bar <= s.d_max


class TestValidate:
    def test_isolated_node_flag_set(self):
        a = AdjacencyMatrix(3, np.array([[0, 1]]))
        with pytest.raises(InputError, match="2"):
            validate(a, require_positive_degrees=True)

    def test_isolated_node_flag_clear(self):
        a = AdjacencyMatrix(3, np.array([[0, 1]]))
        report = validate(a)
        assert report.isolated_count == 1
        assert report.isolated_nodes == [2]
        assert report.ok

    def test_triangle_clean(self):
        a = AdjacencyMatrix(3, np.array([[0, 1], [0, 2], [1, 2]]))
        report = validate(a, require_positive_degrees=True)
        assert report.isolated_count == 0 and report.ok


class TestConstruction:
    def test_from_dense_rejects_asymmetric(self):
        m = np.zeros((3, 3))
        m[0, 1] = 1.0
        with pytest.raises(InputError):
            AdjacencyMatrix.from_dense(m)

    def test_from_dense_rejects_self_loop(self):
        m = np.eye(3)
        with pytest.raises(InputError):
            AdjacencyMatrix.from_dense(m)

    def test_from_dense_rejects_nonbinary(self):
        m = np.zeros((2, 2))
        m[0, 1] = m[1, 0] = 0.5
        with pytest.raises(InputError):
            AdjacencyMatrix.from_dense(m)

    def test_dense_is_symmetric_zero_diag(self, rng):
        for _ in range(20):
            a = erdos_renyi(rng, 15, 0.4)
            d = a.dense()
            assert np.array_equal(d, d.T)
            assert np.all(np.diag(d) == 0)
            assert set(np.unique(d)) <= {0.0, 1.0}


class TestRoundTrip:
    def test_serialize_load_round_trip(self, tmp_path, rng):
        # The loader assigns indices in first-seen order, so compare edge
        # sets through the label map rather than raw indices.
        for i in range(20):
            a = erdos_renyi(rng, int(rng.integers(3, 30)), 0.4)
            if len(a.edges) == 0:
                continue
            path = tmp_path / f"rt{i}.edges"
            save_edge_list(a, path)
            back = load_edge_list(path)
            orig = np.array([int(lab) - 1 for lab in back.labels])
            mapped = orig[back.graph.edges]
            mapped = np.sort(mapped, axis=1)
            mapped = mapped[np.lexsort((mapped[:, 1], mapped[:, 0]))]
            assert np.array_equal(mapped, a.edges)

    def test_save_with_labels(self, tmp_path):
        a = AdjacencyMatrix(3, np.array([[0, 1], [1, 2]]))
        path = tmp_path / "lab.edges"
        save_edge_list(a, path, labels=["x", "y", "z"])
        assert path.read_text() == "x y\ny z\n"

    def test_idempotent_under_dup_and_flip(self, tmp_path):
        base = _write(tmp_path, "base.edges", "1 2\n1 3\n2 3\n")
        noisy = _write(tmp_path, "noisy.edges", "2 1\n1 2\n3 1\n1 3\n3 2\n2 3\n")
        ga = load_edge_list(base).graph
        gb = load_edge_list(noisy).graph
        assert np.array_equal(ga.edges, gb.edges)
        assert ga.n == gb.n

    def test_permuted_relabels_nodes(self, rng):
        a = erdos_renyi(rng, 20, 0.3)
        perm = rng.permutation(20)
        b = a.permuted(perm)
        # node i becomes perm[i], so reading b back at (perm[i], perm[j])
        # recovers the original matrix
        assert np.array_equal(b.dense()[np.ix_(perm, perm)], a.dense())
        assert np.array_equal(degree_stats(b).d[perm], degree_stats(a).d)
