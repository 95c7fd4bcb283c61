import itertools
import json
import math

import numpy as np
import pytest

from graphzeta.exceptions import (
    DomainError,
    GraphSpecError,
    InfiniteGraphError,
    UnsupportedError,
)
from graphzeta.graph import (
    Cycle,
    FiniteGraph,
    HalfEdgeGraph,
    Lattice,
    Product,
    build_cycle,
    build_product,
    graph_distance,
    graph_from_json,
    graph_to_json,
    laplacian,
    load_graph_json,
    n_similar,
    spectral_moment,
    spectral_moments,
    _lattice_moments,
)


def edge_graph():
    return FiniteGraph(HalfEdgeGraph.from_edges(2, [(0, 1)]))


def path_graph(n):
    return FiniteGraph(HalfEdgeGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)]))


def matrix_power_entry(L, k, r):
    # exact (r, r) entry of L^k with Python ints
    n = L.shape[0]
    P = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)
    for _ in range(k):
        P = P.dot(L)
    return int(P[r, r])


def lattice_walk_moment(d, k):
    # brute force: <0, (2d - A)^k 0> = sum_j C(k, j) (2d)^(k-j) (-1)^j #closed walks of length j
    steps = []
    for i in range(d):
        for s in (1, -1):
            steps.append(tuple(s if j == i else 0 for j in range(d)))
    closed = [0] * (k + 1)
    for j in range(k + 1):
        count = 0
        for seq in itertools.product(steps, repeat=j):
            if all(sum(c) == 0 for c in zip(*seq)) or j == 0:
                count += 1
        closed[j] = count
    return sum(math.comb(k, j) * (2 * d) ** (k - j) * (-1) ** j * closed[j] for j in range(k + 1))


class TestHalfEdgeGraph:
    def test_involution_invariants(self):
        G = build_cycle(5).graph
        for e in range(G.n_half_edges):
            p = G.partner[e]
            assert p != e and G.partner[p] == e
            assert G.origin[p] == G.terminus(e)

    def test_rejects_fixed_point(self):
        with pytest.raises(DomainError):
            HalfEdgeGraph(1, (0,), (0,))

    def test_rejects_non_involution(self):
        with pytest.raises(DomainError):
            HalfEdgeGraph(2, (0, 1, 0), (1, 2, 0))

    def test_rejects_disconnected(self):
        with pytest.raises(DomainError):
            HalfEdgeGraph.from_edges(4, [(0, 1), (2, 3)])

    def test_self_loop_and_multi_edge(self):
        G = HalfEdgeGraph.from_edges(2, [(0, 1), (0, 1), (1, 1)])
        assert G.degrees == (2, 4)
        L = laplacian(FiniteGraph(G))
        assert L.tolist() == [[2, -2], [-2, 2]]


class TestConstructors:
    def test_cycle_3_laplacian(self):
        assert laplacian(build_cycle(3)).tolist() == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]

    def test_cycle_4_eigenvalues(self):
        ev = np.sort(np.linalg.eigvalsh(laplacian(build_cycle(4)).astype(float)))
        assert np.allclose(ev, [0, 2, 2, 4], atol=1e-12)

    def test_cycle_degrees(self):
        assert build_cycle(5).graph.degrees == (2,) * 5

    @pytest.mark.parametrize("n", [-1, 0, 1, 2])
    def test_small_cycles_rejected(self, n):
        with pytest.raises(DomainError):
            build_cycle(n)

    def test_edge_graph_laplacian(self):
        assert laplacian(edge_graph()).tolist() == [[1, -1], [-1, 1]]

    def test_lattice_product_is_symbolic(self):
        assert build_product([Lattice(1), Lattice(1)]) == Lattice(2)
        assert build_product([Lattice(2), Lattice(1)]) == Lattice(3)

    def test_mixed_product_rejected(self):
        with pytest.raises(UnsupportedError):
            build_product([Lattice(1), Cycle(3)])

    def test_cycle_product(self):
        P = build_product([Cycle(3), Cycle(3)])
        assert isinstance(P, Product)
        assert P.graph.n_vertices == 9
        assert set(P.graph.degrees) == {4}
        assert P.root == (0, 0)
        ev = np.linalg.eigvalsh(laplacian(P).astype(float))
        assert np.sum(np.abs(ev) < 1e-9) == 1

    def test_product_laplacian_is_kronecker_sum(self):
        F, G = Cycle(3), Cycle(4)
        LF, LG = laplacian(F).astype(int), laplacian(G).astype(int)
        expected = np.kron(LF, np.eye(4, dtype=int)) + np.kron(np.eye(3, dtype=int), LG)
        got = laplacian(build_product([F, G])).astype(int)
        assert np.array_equal(got, expected)

    def test_nested_product_flattens(self):
        P = build_product([build_product([Cycle(3), Cycle(3)]), Cycle(4)])
        assert len(P.factors) == 3
        assert P.graph.n_vertices == 36

    def test_lattice_has_no_laplacian(self):
        with pytest.raises(InfiniteGraphError):
            laplacian(Lattice(1))


class TestLaplacianInvariants:
    @pytest.mark.parametrize(
        "model",
        [Cycle(3), Cycle(4), Cycle(7), build_product([Cycle(3), Cycle(4)]), edge_graph(), path_graph(5)],
    )
    def test_row_sums_symmetry_diagonal(self, model):
        L = laplacian(model)
        assert all(sum(row) == 0 for row in L.tolist())
        assert (L == L.T).all()
        assert all(L[i, i] > 0 for i in range(L.shape[0]))
        assert np.linalg.eigvalsh(L.astype(float)).min() > -1e-10


class TestMoments:
    def test_lattice_examples(self):
        assert spectral_moment(Lattice(1), 0) == 1
        assert spectral_moment(Lattice(1), 2) == 6
        assert spectral_moment(Lattice(2), 2) == 20

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_lattice_against_walk_count(self, d):
        kmax = {1: 8, 2: 6, 3: 4}[d]
        got = spectral_moments(Lattice(d), kmax)
        assert got == [lattice_walk_moment(d, k) for k in range(kmax + 1)]

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_ball_truncation_is_exact(self, d):
        for k in range(11):
            assert _lattice_moments(d, k, k)[k] == _lattice_moments(d, k, k + 2)[k]

    @pytest.mark.parametrize(
        "model",
        [Lattice(1), Lattice(2), Lattice(3), Cycle(3), Cycle(6), edge_graph(), path_graph(4)],
    )
    def test_first_moment_is_root_degree(self, model):
        assert spectral_moment(model, 1) == model.root_degree

    @pytest.mark.parametrize(
        "model",
        [Cycle(3), Cycle(5), build_product([Cycle(3), Cycle(4)]), path_graph(5), FiniteGraph(path_graph(5).graph, root=2)],
    )
    def test_finite_against_matrix_power(self, model):
        L = laplacian(model)
        r = model.root_index
        moments = spectral_moments(model, 12)
        assert moments == [matrix_power_entry(L, k, r) for k in range(13)]

    def test_product_moment_identity(self):
        F, G = Cycle(3), Cycle(4)
        mF, mG = spectral_moments(F, 8), spectral_moments(G, 8)
        mP = spectral_moments(build_product([F, G]), 8)
        for k in range(9):
            assert mP[k] == sum(math.comb(k, j) * mF[j] * mG[k - j] for j in range(k + 1))


class TestSimilarity:
    def test_cycle_five_versus_line(self):
        assert n_similar(Cycle(5), Lattice(1), 4)
        assert not n_similar(Cycle(5), Lattice(1), 5)

    @pytest.mark.parametrize("model", [Cycle(4), Lattice(2), edge_graph()])
    def test_reflexive(self, model):
        assert n_similar(model, model, 7)


class TestDistance:
    def test_examples(self):
        assert graph_distance(Cycle(6), 0, 3) == 3
        assert graph_distance(Cycle(6), 2, 2) == 0
        assert graph_distance(Cycle(5), 0, 3) == 2

    @pytest.mark.parametrize("model", [Cycle(6), Cycle(7), path_graph(5), build_product([Cycle(3), Cycle(4)])])
    def test_matches_laplacian_power_definition(self, model):
        L = laplacian(model)
        n = L.shape[0]
        powers = [np.identity(n, dtype=int).astype(object)]
        for _ in range(n):
            powers.append(powers[-1].dot(L))
        for u in range(n):
            for v in range(n):
                first = next(k for k, P in enumerate(powers) if P[v, u] != 0)
                assert graph_distance(model, u, v) == first


class TestJson:
    def test_roundtrip(self, tmp_path):
        model = build_product([Cycle(3), Cycle(3)])
        path = tmp_path / "g.json"
        path.write_text(json.dumps(graph_to_json(model)))
        loaded = load_graph_json(path)
        assert laplacian(loaded).tolist() == laplacian(model).tolist()

    def test_self_loop_degree(self):
        g = graph_from_json({"vertices": 2, "edges": [[0, 1], [1, 1]]})
        assert g.graph.degrees == (1, 3)

    @pytest.mark.parametrize(
        "obj",
        [
            {"vertices": 3, "edges": [[0, 1]]},
            {"vertices": 0, "edges": []},
            {"edges": [[0, 1]]},
            {"vertices": 2, "edges": [[0, 5]]},
            {"vertices": 2, "edges": [[0]]},
        ],
    )
    def test_invalid(self, obj):
        with pytest.raises(GraphSpecError):
            graph_from_json(obj)
