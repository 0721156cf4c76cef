import numpy as np
import pytest

from mixedslim import DcmmParams, InputError, expected_adjacency, sample_adjacency
from mixedslim.dcmm import EXPERIMENT1_SUBS, experiment1_grid, experiment1_params


def _pure_params(n=3, k=2, p=None, theta=None, blocks=(0, 0, 1)):
    p = np.array([[0.5, 0.1], [0.1, 0.5]]) if p is None else p
    theta = np.ones(n) if theta is None else theta
    pi = np.zeros((n, k))
    pi[np.arange(n), blocks] = 1.0
    return DcmmParams(p=p, theta=theta, pi=pi)


class TestExpectedAdjacency:
    def test_single_community(self):
        params = DcmmParams(p=np.array([[1.0]]), theta=np.full(2, 0.5),
                            pi=np.ones((2, 1)))
        omega = expected_adjacency(params)
        assert omega[0, 1] == pytest.approx(0.25, abs=1e-15)
        assert omega[0, 0] == 0.0 and omega[1, 1] == 0.0

    def test_zero_mixing_matrix(self):
        params = _pure_params(p=np.zeros((2, 2)))
        assert np.all(expected_adjacency(params) == 0.0)

    def test_hand_evaluated_pure_blocks(self):
        omega = expected_adjacency(_pure_params())
        assert omega[0, 1] == pytest.approx(0.5)
        assert omega[0, 2] == pytest.approx(0.1)
        assert omega[1, 2] == pytest.approx(0.1)

    def test_probability_out_of_range_rejected(self):
        params = _pure_params(theta=np.full(3, 2.0))
        with pytest.raises(InputError):
            expected_adjacency(params)

    def test_symmetric_and_zero_diagonal(self, rng):
        for _ in range(20):
            n, k = int(rng.integers(3, 30)), int(rng.integers(1, 4))
            p = rng.uniform(0, 0.4, (k, k))
            p = (p + p.T) / 2
            params = DcmmParams(p=p, theta=rng.uniform(0.1, 0.9, n),
                                pi=rng.dirichlet(np.ones(k), size=n))
            omega = expected_adjacency(params)
            assert np.array_equal(omega, omega.T)
            assert np.all(np.diag(omega) == 0.0)

    def test_label_permutation_invariance(self, rng):
        for _ in range(20):
            n, k = 12, 3
            p = rng.uniform(0, 0.5, (k, k))
            p = (p + p.T) / 2
            pi = rng.dirichlet(np.ones(k), size=n)
            theta = rng.uniform(0.2, 0.8, n)
            perm = rng.permutation(k)
            a = expected_adjacency(DcmmParams(p=p, theta=theta, pi=pi))
            b = expected_adjacency(DcmmParams(p=p[np.ix_(perm, perm)],
                                              theta=theta, pi=pi[:, perm]))
            assert np.allclose(a, b, atol=1e-14)

    def test_pure_block_entries_exact(self, rng):
        theta = rng.uniform(0.2, 0.9, 3)
        params = _pure_params(theta=theta)
        omega = expected_adjacency(params)
        # exact up to multiplication reassociation (a couple of ulps)
        assert omega[0, 2] == pytest.approx(theta[0] * theta[2] * 0.1, rel=1e-15)
        assert omega[0, 1] == pytest.approx(theta[0] * theta[1] * 0.5, rel=1e-15)


class TestParamValidation:
    def test_asymmetric_p(self):
        p = np.array([[0.5, 0.2], [0.1, 0.5]])
        with pytest.raises(InputError):
            _pure_params(p=p)

    def test_nonpositive_theta(self):
        with pytest.raises(InputError):
            _pure_params(theta=np.array([1.0, 0.0, 1.0]))

    def test_bad_row_sums(self):
        pi = np.array([[0.5, 0.4], [1.0, 0.0], [0.0, 1.0]])
        with pytest.raises(InputError):
            DcmmParams(p=np.eye(2) * 0.5, theta=np.ones(3), pi=pi)

    def test_purity(self):
        params = _pure_params()
        assert np.all(params.purity() == 1.0)


class TestSampleAdjacency:
    def test_certain_edges_give_complete_graph(self):
        params = DcmmParams(p=np.array([[1.0]]), theta=np.ones(5),
                            pi=np.ones((5, 1)))
        a = sample_adjacency(params, 7)
        assert len(a.edges) == 10

    def test_zero_omega_gives_empty_graph(self):
        params = _pure_params(p=np.zeros((2, 2)))
        a = sample_adjacency(params, 7)
        assert len(a.edges) == 0

    def test_seed_reproducibility(self):
        params = experiment1_params("a", 100)
        a = sample_adjacency(params, 42)
        b = sample_adjacency(params, 42)
        assert np.array_equal(a.edges, b.edges)
        c = sample_adjacency(params, 43)
        assert not np.array_equal(a.edges, c.edges)

    def test_empirical_edge_frequency(self):
        # Monte-Carlo oracle: the empirical mean of A(i,j) over many seeds
        # must sit within 4 binomial standard errors of Omega(i,j).
        params = experiment1_params("a", 10, n=50)
        omega = expected_adjacency(params)
        i, j = 0, 49  # pure node vs mixed node
        reps = 4000
        hits = sum(sample_adjacency(params, (s, 99)).dense()[i, j]
                   for s in range(reps))
        p = omega[i, j]
        se = np.sqrt(p * (1 - p) / reps)
        assert abs(hits / reps - p) <= 4 * se


class TestExperiment1Params:
    def test_sub_a_structure(self):
        params = experiment1_params("a", 100)
        assert params.n == 500 and params.k == 3
        purity = params.purity()
        assert int((purity == 1.0).sum()) == 300
        mixed = params.pi[300:]
        profiles, counts = np.unique(mixed, axis=0, return_counts=True)
        assert len(profiles) == 4 and set(counts) == {50}
        assert np.all(params.theta == 0.4)
        assert np.allclose(params.p, np.full((3, 3), 0.1) + np.eye(3) * 0.4)

    def test_sub_b_theta_law(self):
        params = experiment1_params("b", 100)
        i = np.arange(1, 501)
        assert np.allclose(params.theta, 0.2 + 0.8 * (i / 500) ** 2)

    def test_sub_i_mixing_matrix(self):
        params = experiment1_params("i", 1.0)
        expect = np.array([[0.2, 0.05, 0.05],
                           [0.05, 0.2, 0.05],
                           [0.05, 0.05, 0.2]])
        assert np.allclose(params.p, expect)

    def test_sub_k_mixing_matrix(self):
        params = experiment1_params("k", 0.0)
        expect = np.array([[0.5, 0.5, 0.3, 0.3],
                           [0.5, 0.5, 0.3, 0.3],
                           [0.3, 0.3, 0.5, 0.5],
                           [0.3, 0.3, 0.5, 0.5]])
        assert np.allclose(params.p, expect)
        assert params.k == 4
        assert int((params.purity() == 1.0).sum()) == 300  # 4 * 75

    def test_sub_g_theta_seeded(self):
        a = experiment1_params("g", 5.0, seed=3)
        b = experiment1_params("g", 5.0, seed=3)
        c = experiment1_params("g", 5.0, seed=4)
        assert np.array_equal(a.theta, b.theta)
        assert not np.array_equal(a.theta, c.theta)
        # 1/theta ~ U(1, z1) so theta in (1/z1, 1)
        assert np.all(a.theta > 1 / 5.0 - 1e-12) and np.all(a.theta < 1.0)

    def test_grids(self):
        assert experiment1_grid("a") == [40, 60, 80, 100, 120, 140, 160]
        assert len(experiment1_grid("c")) == 11
        assert experiment1_grid("c")[0] == 0.0
        assert experiment1_grid("c")[-1] == pytest.approx(0.2)
        assert len(experiment1_grid("e")) == 11

    def test_grid_scaling(self):
        # n0 grids scale with n so desk-scale runs keep the pure fraction
        assert experiment1_grid("a", n=250) == [20, 30, 40, 50, 60, 70, 80]

    def test_out_of_range_sweep_value(self):
        with pytest.raises(InputError):
            experiment1_params("c", 0.5)
        with pytest.raises(InputError):
            experiment1_params("e", 0.7)

    def test_unknown_sub(self):
        with pytest.raises(InputError):
            experiment1_params("z", 0.1)

    def test_all_subs_row_stochastic(self):
        for sub in EXPERIMENT1_SUBS:
            for v in experiment1_grid(sub):
                params = experiment1_params(sub, v, seed=0)
                assert np.all(params.pi >= 0)
                assert np.allclose(params.pi.sum(axis=1), 1.0, atol=1e-12)

    def test_round_robin_remainder(self):
        # mixed count not divisible by the profile count still yields a
        # valid membership matrix
        params = experiment1_params("a", 40, n=130)
        assert params.n == 130
        assert np.allclose(params.pi.sum(axis=1), 1.0)
