import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphzeta.determinant import (
    IntPolynomial,
    charpoly_cycle,
    charpoly_exact,
    forest_count_bruteforce,
    forest_count_cycle,
    regdet,
    regdet_series,
)
from graphzeta.exceptions import DomainError, ResourceError, UnsupportedError
from graphzeta.graph import Cycle, FiniteGraph, HalfEdgeGraph, Lattice, build_product, complete_graph, laplacian
from graphzeta.specfun import catalan


def edge_graph():
    return FiniteGraph(HalfEdgeGraph.from_edges(2, [(0, 1)]))


def path_graph(n):
    return FiniteGraph(HalfEdgeGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)]))


def leibniz_charpoly(L):
    # det(x I + L) as an integer polynomial by permutation expansion (small n only)
    n = L.shape[0]
    total = [0] * (n + 1)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        poly = [1]
        for i in range(n):
            entry = [int(L[i, perm[i]])] + ([1] if perm[i] == i else [])
            out = [0] * (len(poly) + len(entry) - 1)
            for a, pa in enumerate(poly):
                for b, eb in enumerate(entry):
                    out[a + b] += pa * eb
            poly = out
        for p, c in enumerate(poly):
            total[p] += sign * c
    return total


class TestRegdet:
    def test_line_example(self):
        assert abs(regdet(Lattice(1), 5) - (3.5 + math.sqrt(45) / 2)) < 1e-12

    def test_triangle(self):
        assert abs(regdet(Cycle(3), 1) - 16 ** (1 / 3)) < 1e-12

    @pytest.mark.parametrize("x", [0.3, 1.0, 7.5, 40.0])
    def test_line_against_quadrature(self, x):
        from scipy.integrate import quad

        ref, _ = quad(lambda y: math.log(x + y), 0, 4, weight="alg", wvar=(-0.5, -0.5))
        assert abs(math.log(regdet(Lattice(1), x)) - ref / math.pi) < 1e-10

    @pytest.mark.parametrize("n", range(3, 9))
    def test_transitive_is_nth_root(self, n):
        x = 0.7
        det = np.linalg.det(x * np.eye(n) + laplacian(Cycle(n)).astype(float))
        assert abs(regdet(Cycle(n), x) - det ** (1 / n)) < 1e-12

    def test_growth(self):
        assert abs(regdet(Lattice(1), 1e8) / 1e8 - 1) < 1e-7

    def test_non_transitive_uses_root(self):
        P = path_graph(3)
        L = laplacian(P).astype(float)
        ev, vec = np.linalg.eigh(L)
        ref = math.exp(sum(vec[0, i] ** 2 * math.log(2 + ev[i]) for i in range(3)))
        assert abs(regdet(P, 2) - ref) < 1e-12

    @pytest.mark.parametrize("x", [0, -1.0])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            regdet(Cycle(4), x)

    def test_higher_lattices_unsupported(self):
        with pytest.raises(UnsupportedError):
            regdet(Lattice(2), 3.0)


class TestSeries:
    def test_example(self):
        s = regdet_series(Lattice(1), 6)
        assert [s[d] for d in s.degrees] == [1, 2, -1, 2, -5, 14, -42]
        assert all(isinstance(c, Fraction) for c in s.coefficients.values())

    def test_catalan(self):
        s = regdet_series(Lattice(1), 16)
        for n in range(1, 16):
            assert s[-n] == (-1) ** n * catalan(n)

    @pytest.mark.parametrize("model,deg", [(Lattice(2), 4), (Lattice(3), 6), (Cycle(7), 2), (path_graph(4), 1)])
    def test_constant_is_root_degree(self, model, deg):
        assert regdet_series(model, 3)[0] == deg

    @pytest.mark.parametrize("x", [8.0, 16.0, 32.0])
    def test_numeric_agreement(self, x):
        K = 16
        got = regdet_series(Lattice(1), K).evaluate(x)
        ref = regdet(Lattice(1), x)
        assert abs(got - ref) / ref <= 10 * (4 / x) ** (K - 1)

    @pytest.mark.parametrize("n", range(3, 9))
    def test_cycle_versus_line(self, n):
        c = regdet_series(Cycle(n), n + 2)
        z = regdet_series(Lattice(1), n + 2)
        for deg in range(1, -(n - 1), -1):
            assert c[deg] == z[deg]
        assert c[-(n - 1)] != z[-(n - 1)]
        assert c[0] == z[0] == 2
        assert charpoly_cycle(n)[0] == 0

    def test_cycle_series_matches_nth_root(self):
        x = 30.0
        assert abs(regdet_series(Cycle(5), 20).evaluate(x) - regdet(Cycle(5), x)) < 1e-12 * x

    @given(st.integers(1, 12))
    def test_product_leading(self, K):
        s = regdet_series(build_product([Cycle(3), Cycle(4)]), K)
        assert s.leading == (1, 1)
        assert len(s.coefficients) == K + 1


class TestCharpoly:
    def test_examples(self):
        assert charpoly_cycle(3).coefficients == (0, 9, 6, 1)
        assert charpoly_cycle(4).coefficients == (0, 16, 20, 8, 1)
        assert charpoly_exact(edge_graph()).coefficients == (0, 2, 1)

    @pytest.mark.parametrize("n", range(3, 13))
    def test_cycle_closed_form_vs_exact(self, n):
        p = charpoly_cycle(n)
        assert p == charpoly_exact(Cycle(n))
        assert p[n - 1] == 2 * n and p[n] == 1 and p[0] == 0

    @pytest.mark.parametrize("n", range(3, 13))
    def test_product_formula(self, n):
        ref = math.prod(1 + 4 * math.sin(k * math.pi / n) ** 2 for k in range(n))
        assert abs(charpoly_cycle(n)(1) - ref) < 1e-6

    @pytest.mark.parametrize("model", [Cycle(4), Cycle(6), path_graph(4), complete_graph(4), edge_graph()])
    def test_against_leibniz(self, model):
        assert list(charpoly_exact(model).coefficients) == leibniz_charpoly(laplacian(model))

    def test_product_against_eigenvalues(self):
        p = charpoly_exact(build_product([Cycle(3), Cycle(3)]))
        ev = np.linalg.eigvalsh(laplacian(build_product([Cycle(3), Cycle(3)])).astype(float))
        assert abs(p(2.5) - np.prod(2.5 + ev)) < 1e-6 * abs(p(2.5))

    def test_cap(self):
        with pytest.raises(ResourceError):
            charpoly_exact(Cycle(65))

    def test_polynomial_eval(self):
        p = IntPolynomial((0, 16, 20, 8, 1))
        assert p(1) == 45 and p(Fraction(1, 2)) == Fraction(16 * 8 + 20 * 4 + 8 * 2 + 1, 16)


class TestForests:
    def test_examples(self):
        assert forest_count_cycle(3, 1) == 9
        assert forest_count_cycle(4, 2) == 20
        assert forest_count_bruteforce(Cycle(3), 1) == 9
        assert forest_count_bruteforce(edge_graph(), 2) == 1
        assert forest_count_bruteforce(edge_graph(), 1) == 2

    @pytest.mark.parametrize("n", range(3, 8))
    def test_closed_form_vs_bruteforce(self, n):
        for k in range(1, n + 1):
            assert forest_count_cycle(n, k) == forest_count_bruteforce(Cycle(n), k)

    @pytest.mark.parametrize("n", range(3, 31))
    def test_closed_form_is_coefficient(self, n):
        p = charpoly_cycle(n)
        assert [forest_count_cycle(n, k) for k in range(1, n + 1)] == list(p.coefficients[1:])
        assert sum(forest_count_cycle(n, k) for k in range(1, n + 1)) == p(1)
        assert forest_count_cycle(n, n) == 1

    @pytest.mark.parametrize("model", [complete_graph(4), path_graph(5), build_product([Cycle(3), Cycle(3)])])
    def test_bruteforce_vs_charpoly(self, model):
        p = charpoly_exact(model)
        for k in range(1, model.n_vertices + 1):
            assert forest_count_bruteforce(model, k) == p[k]

    def test_spanning_trees_of_k4(self):
        # Cayley: 4^2 trees, each with 4 root choices
        assert forest_count_bruteforce(complete_graph(4), 1) == 64

    def test_domain_and_cap(self):
        with pytest.raises(DomainError):
            forest_count_cycle(4, 5)
        with pytest.raises(DomainError):
            forest_count_cycle(4, 0)
        with pytest.raises(ResourceError):
            forest_count_bruteforce(Cycle(11), 2)
