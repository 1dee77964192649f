# Copyright (c) 2021 PPotential Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppot.calculus import EdgeDensity, PExponent, VertexFunction
from ppot.calculus import as_exponent, bdp_norm, constant, dirichlet_sum
from ppot.calculus import sup_norm
from ppot.calculus import dp_norm, gradient_p, one, p_laplacian, product, xi
from ppot.calculus import xi_p_edges
from ppot.calculus.operators import edge_energy, signed_power, touching_edges
from ppot.graph import Graph, grid_graph, path_graph
from ppot.utils.exceptions import DomainException
from tests.strategies import exponents, random_trees, vertex_values


def _on_all(g, values):
    return VertexFunction(np.arange(g.vertex_count), values)


@pytest.mark.parametrize("p", [1.0, 0.5, float('nan'), float('inf'), 'x'])
def test_exponent_validation(p):
    with pytest.raises(DomainException):
        PExponent(p)


def test_exponent_value():
    assert as_exponent(PExponent(2.5)) == 2.5
    assert PExponent(2).is_quadratic


def test_function_domain_is_strict():
    f = VertexFunction([3, 1], [30.0, 10.0])
    assert f(1) == 10.0
    assert f.domain.tolist() == [1, 3]
    with pytest.raises(DomainException):
        f(2)
    with pytest.raises(DomainException):
        VertexFunction([1, 1], [0.0, 0.0])
    with pytest.raises(DomainException):
        VertexFunction([1], [float('nan')])


def test_function_arithmetic():
    f = constant([0, 1, 2], 2.0)
    g = VertexFunction([0, 1, 2], [1.0, 2.0, 3.0])
    assert (f + g).values.tolist() == [3.0, 4.0, 5.0]
    assert (f * g).values.tolist() == [2.0, 4.0, 6.0]
    assert (g - 1.0).values.tolist() == [0.0, 1.0, 2.0]
    with pytest.raises(DomainException):
        f + VertexFunction([0, 1], [1.0, 1.0])


def test_gradient_and_laplacian_on_a_path():
    g = path_graph(5)
    f = _on_all(g, np.arange(5.0)**2)
    assert gradient_p(g, f, 2, 2) == pytest.approx(9.0 + 25.0)
    assert gradient_p(g, f, 2, 3) == pytest.approx(27.0 + 125.0)
    assert p_laplacian(g, f, 2, 2) == pytest.approx(-3.0 + 5.0)
    linear = _on_all(g, np.arange(5.0))
    for p in (1.5, 2.0, 3.0):
        assert p_laplacian(g, linear, 2, p) == pytest.approx(0.0, abs=1e-15)


def test_laplacian_of_constant_vanishes():
    g = grid_graph(3, 3)
    f = one(g)
    for x in range(9):
        assert p_laplacian(g, f, x, 1.5) == 0.0


def test_signed_power_at_zero():
    assert signed_power(np.array([0.0, -2.0, 4.0]), 0.5).tolist() == [
        0.0, -np.sqrt(2.0), 2.0
    ]


def test_dirichlet_sum_counts_edges_twice():
    g = path_graph(6)
    f = _on_all(g, np.arange(6.0))
    assert dirichlet_sum(g, f, range(6), 2) == pytest.approx(10.0)
    assert xi(g, f, range(6), 2) == pytest.approx(5.0)


def test_dirichlet_sum_needs_neighbors():
    g = path_graph(4)
    f = VertexFunction([0, 1], [0.0, 1.0])
    with pytest.raises(DomainException):
        dirichlet_sum(g, f, [1], 2)


@settings(max_examples=30, deadline=None)
@given(g=random_trees(), p=exponents, data=st.data())
def test_xi_counts_touching_edges_once(g, p, data):
    values = data.draw(vertex_values(g))
    S = data.draw(
        st.sets(
            st.integers(min_value=0, max_value=g.vertex_count - 1),
            min_size=1))
    f = _on_all(g, values)
    arr = np.array(sorted(S))
    expected = edge_energy(g, values, touching_edges(g, arr), p)
    assert xi(g, f, S, p) == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_norms_of_constants():
    g = grid_graph(2, 3)
    f = constant(range(6), -2.0)
    assert dp_norm(g, f, 0, 3) == pytest.approx(2.0)
    assert bdp_norm(g, f, 3) == pytest.approx(2.0)


def test_edge_density():
    g = path_graph(4)
    rho = EdgeDensity.constant(g, 2.0)
    assert xi_p_edges(g, rho, 2) == pytest.approx(12.0)
    assert rho[(2, 1)] == 2.0
    with pytest.raises(DomainException):
        EdgeDensity(g, [1.0, -1.0, 1.0])
    with pytest.raises(DomainException):
        EdgeDensity.from_dict(g, {(0, 1): 1.0})


def test_product_and_sup_norm():
    f = VertexFunction([0, 1, 2], [1.0, -2.0, 3.0])
    g = VertexFunction([1, 2, 3], [0.5, 2.0, 7.0])
    h = product(f, g)
    assert h.domain.tolist() == [1, 2]
    assert h.values.tolist() == [-1.0, 6.0]
    assert sup_norm(h) == 6.0
    assert sup_norm(product(f, constant([0, 1, 2], 0.0))) == 0.0


def test_worked_examples():
    segment = path_graph(3)
    f = _on_all(segment, [0.0, 1.0, 3.0])
    assert gradient_p(segment, f, 1, 2) == pytest.approx(5.0)
    assert gradient_p(segment, f, 1, 1.5) == pytest.approx(1.0 + 2.0**1.5)
    assert dirichlet_sum(segment, f, [1], 2) == pytest.approx(5.0)
    assert p_laplacian(segment, f, 1, 2) == pytest.approx(1.0)
    assert p_laplacian(segment, f, 1, 1.5) == pytest.approx(
        np.sqrt(2.0) - 1.0)
    assert xi(segment, f, [1], 2) == pytest.approx(5.0)

    star = Graph.from_edges([(0, 1), (0, 2), (0, 3)])
    center = _on_all(star, [1.0, 0.0, 0.0, 0.0])
    assert dirichlet_sum(star, center, range(4), 2) == pytest.approx(6.0)

    edge = path_graph(2)
    h = _on_all(edge, [0.0, 1.0])
    assert dp_norm(edge, h, 0, 2) == pytest.approx(np.sqrt(2.0))
    assert bdp_norm(edge, h, 2) == pytest.approx(np.sqrt(2.0) + 1.0)

    assert xi_p_edges(path_graph(4), EdgeDensity.constant(path_graph(4), 0.5),
                      2) == pytest.approx(0.75)
    for length in (1, 5, 20):
        chain = path_graph(length + 1)
        rho = EdgeDensity.constant(chain, 1.0 / length)
        assert xi_p_edges(chain, rho, 3) == pytest.approx(length**-2.0)


@settings(max_examples=50, deadline=None)
@given(
    g=random_trees(),
    p=exponents,
    c=st.sampled_from([-3.0, -0.5, 0.25, 2.0]),
    data=st.data())
def test_homogeneity_and_translation(g, p, c, data):
    values = data.draw(vertex_values(g))
    f = _on_all(g, values)
    scaled = _on_all(g, c * values)
    shifted = _on_all(g, values + c)
    everything = range(g.vertex_count)
    S = [x for x in everything if x % 2 == 0]
    base = dirichlet_sum(g, f, everything, p)
    assert dirichlet_sum(g, scaled, everything, p) == pytest.approx(
        abs(c)**p * base, rel=1e-10, abs=1e-12)
    assert dirichlet_sum(g, shifted, everything, p) == pytest.approx(
        base, rel=1e-10, abs=1e-12)
    assert xi(g, scaled, S, p) == pytest.approx(
        abs(c)**p * xi(g, f, S, p), rel=1e-10, abs=1e-12)
    for x in everything:
        lap = p_laplacian(g, f, x, p)
        assert p_laplacian(g, scaled, x, p) == pytest.approx(
            abs(c)**(p - 2.0) * c * lap, rel=1e-10, abs=1e-10)
        assert p_laplacian(g, shifted, x, p) == pytest.approx(
            lap, rel=1e-10, abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(g=random_trees(), data=st.data())
def test_quadratic_laplacian_is_linear(g, data):
    a = data.draw(vertex_values(g))
    b = data.draw(vertex_values(g))
    f, h = _on_all(g, a), _on_all(g, b)
    both = _on_all(g, a + b)
    for x in range(g.vertex_count):
        nbrs = np.array(g.adjacency[x], dtype='int64')
        expected = float(np.sum(a[nbrs])) - len(nbrs) * a[x]
        assert p_laplacian(g, f, x, 2) == pytest.approx(expected, abs=1e-12)
        assert p_laplacian(g, both, x, 2) == pytest.approx(
            p_laplacian(g, f, x, 2) + p_laplacian(g, h, x, 2), abs=1e-12)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_xi_gradient_matches_finite_differences(p, seed):
    g = grid_graph(4, 4)
    rng = np.random.RandomState(seed)
    values = rng.uniform(-1.0, 1.0, g.vertex_count)
    S = [5, 6, 9, 10, 2]
    step = 1e-6
    for x in S:
        up, down = values.copy(), values.copy()
        up[x] += step
        down[x] -= step
        numeric = (xi(g, _on_all(g, up), S, p) -
                   xi(g, _on_all(g, down), S, p)) / (2 * step)
        exact = -p * p_laplacian(g, _on_all(g, values), x, p)
        assert abs(numeric - exact) <= 1e-6 * max(1.0, abs(exact))


@settings(max_examples=50, deadline=None)
@given(g=random_trees(), p=exponents, data=st.data())
def test_norm_inequalities(g, p, data):
    a = data.draw(vertex_values(g, low=-2.0, high=2.0))
    b = data.draw(vertex_values(g, low=-2.0, high=2.0))
    f, h = _on_all(g, a), _on_all(g, b)
    o = data.draw(st.integers(min_value=0, max_value=g.vertex_count - 1))
    assert dp_norm(g, f, o, p) <= bdp_norm(g, f, p) * (1 + 1e-12) + 1e-12
    fh = product(f, h)
    assert bdp_norm(g, fh, p) <= \
        bdp_norm(g, f, p) * bdp_norm(g, h, p) * (1 + 1e-12) + 1e-12
