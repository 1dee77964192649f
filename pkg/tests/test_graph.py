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

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppot.graph import EdgePath, Graph, Region
from ppot.graph import ball, components, distance, induced_subgraph
from ppot.graph import outer_boundary, shell
from ppot.graph import grid_graph, path_graph
from ppot.graph.reader import read_graph, read_paths, read_vertex_function
from ppot.graph.reader import read_vertex_set, FormatException
from ppot.utils.exceptions import DomainException
from tests.strategies import random_trees


def test_path_graph_shape():
    g = path_graph(4)
    assert g.vertex_count == 4
    assert g.edge_count == 3
    assert g.edges.tolist() == [[0, 1], [1, 2], [2, 3]]
    assert g.neighbors(1) == (0, 2)
    assert g.degree(0) == 1
    assert g.degree_bound == 2


def test_grid_graph_degrees():
    g = grid_graph(3, 3)
    assert g.edge_count == 12
    assert g.degree(4) == 4
    assert g.degree(0) == 2


@pytest.mark.parametrize("adjacency", [
    [[1], [0, 1]],
    [[1, 1], [0, 0]],
    [[1], []],
    [[1], [0], [3], [2]],
    [[5], [0]],
])
def test_invalid_adjacency_rejected(adjacency):
    with pytest.raises(DomainException):
        Graph(adjacency)


def test_degree_bound_enforced():
    with pytest.raises(DomainException):
        Graph.from_edges([(0, 1), (0, 2), (0, 3)], degree_bound=2)


def test_unknown_vertex_rejected():
    g = path_graph(3)
    for bad in (3, -1, 1.5, True, 'a'):
        with pytest.raises(DomainException):
            g.neighbors(bad)


def test_ball_is_strict():
    g = path_graph(6)
    assert ball(g, 0, 3) == frozenset([0, 1, 2])
    assert ball(g, 2, 1) == frozenset([2])
    assert shell(g, 0, 3) == frozenset([3])
    with pytest.raises(DomainException):
        ball(g, 0, 0)


def test_outer_boundary_of_grid_center():
    g = grid_graph(3, 3)
    assert outer_boundary(g, [4]) == frozenset([1, 3, 5, 7])
    assert outer_boundary(g, range(9)) == frozenset()


def test_components_ordered_by_smallest_vertex():
    g = path_graph(7)
    parts = components(g, [6, 5, 3, 1, 0])
    assert parts == [frozenset([0, 1]), frozenset([3]), frozenset([5, 6])]


def test_induced_subgraph_needs_connected_set():
    g = path_graph(5)
    sub, ids = induced_subgraph(g, [1, 2, 3])
    assert sub.vertex_count == 3
    assert ids.tolist() == [1, 2, 3]
    with pytest.raises(DomainException):
        induced_subgraph(g, [0, 2])


def test_edge_path_checks():
    g = grid_graph(2, 2)
    path = EdgePath(g, [0, 1, 3])
    assert path.length == 2
    assert path.edges == [(0, 1), (1, 3)]
    with pytest.raises(DomainException):
        EdgePath(g, [0, 3])
    with pytest.raises(DomainException):
        EdgePath(g, [0, 1, 0])


def test_region_closure():
    g = path_graph(5)
    region = Region(g, [1, 2])
    assert region.outer_boundary == frozenset([0, 3])
    assert region.closure_array.tolist() == [0, 1, 2, 3]
    assert len(region) == 2


@settings(max_examples=30, deadline=None)
@given(g=random_trees(), n=st.integers(min_value=1, max_value=6))
def test_ball_matches_distances(g, n):
    b = ball(g, 0, n)
    assert b == frozenset(
        x for x in range(g.vertex_count) if distance(g, 0, x) < n)
    bnd = outer_boundary(g, b)
    assert not bnd & b
    for y in bnd:
        assert any(x in b for x in g.neighbors(y))


@settings(max_examples=30, deadline=None)
@given(g=random_trees(), data=st.data())
def test_components_partition_the_set(g, data):
    S = data.draw(
        st.sets(st.integers(min_value=0, max_value=g.vertex_count - 1)))
    parts = components(g, S)
    assert frozenset().union(*parts) == frozenset(S)
    assert sum(len(c) for c in parts) == len(S)
    mins = [min(c) for c in parts]
    assert mins == sorted(mins)


def _as_networkx(g):
    H = nx.Graph()
    H.add_nodes_from(range(g.vertex_count))
    H.add_edges_from(g.edges.tolist())
    return H


@settings(max_examples=30, deadline=None)
@given(g=random_trees(), data=st.data())
def test_agrees_with_networkx(g, data):
    H = _as_networkx(g)
    x = data.draw(st.integers(min_value=0, max_value=g.vertex_count - 1))
    lengths = nx.single_source_shortest_path_length(H, x)
    assert g.distances_from(x).tolist() == [
        lengths[y] for y in range(g.vertex_count)
    ]
    S = data.draw(
        st.sets(st.integers(min_value=0, max_value=g.vertex_count - 1)))
    expected = sorted(
        (frozenset(c) for c in nx.connected_components(H.subgraph(S))),
        key=min)
    assert components(g, S) == expected


def test_read_graph_remaps_ids(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("# a path\n10 20\n20 30\n\n")
    g, ids = read_graph(str(f))
    assert ids.tolist() == [10, 20, 30]
    assert g.edges.tolist() == [[0, 1], [1, 2]]
    s = tmp_path / "s.txt"
    s.write_text("30 10\n")
    assert read_vertex_set(str(s), ids) == frozenset([0, 2])
    v = tmp_path / "v.txt"
    v.write_text("20 0.5\n")
    assert read_vertex_function(str(v), ids)(1) == 0.5


@pytest.mark.parametrize("text", ["0 1\n1 1\n", "0 1\n1 0\n", "0 x\n",
                                  "0 1 2\n", ""])
def test_read_graph_rejects_bad_files(tmp_path, text):
    f = tmp_path / "g.txt"
    f.write_text(text)
    with pytest.raises(FormatException):
        read_graph(str(f))


def test_format_error_names_the_line(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("0 1\n1 2\n2 2\n")
    with pytest.raises(DomainException) as e:
        read_graph(str(f))
    assert "g.txt:3" in str(e.value)


def test_read_paths_checks_adjacency(tmp_path):
    g = path_graph(4)
    f = tmp_path / "p.txt"
    f.write_text("0 1 2\n0 2\n")
    with pytest.raises(FormatException):
        read_paths(str(f), g)
    f.write_text("0 1 2\n3 2\n")
    paths = read_paths(str(f), g)
    assert [p.vertices for p in paths] == [(0, 1, 2), (3, 2)]
