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

from ppot.graph import FamilyBuilder, ends, lattice, path, regular_tree, wedge
from ppot.graph.reader import read_family_metadata, read_graph
from ppot.utils import save_load
from ppot.utils.exceptions import DomainException


def test_regular_tree_levels():
    family = regular_tree(3, 4)
    g = family.graph
    assert g.vertex_count == 1 + 3 + 6 + 12 + 24
    assert g.edge_count == g.vertex_count - 1
    assert g.degree(family.root) == 3
    assert len(family.frontier) == 24
    assert all(g.degree(x) == 1 for x in family.frontier)
    assert family.distances.max() == 4
    # numbered level by level
    assert np.all(np.diff(family.distances) >= 0)


@pytest.mark.parametrize("k, depth", [(1, 3), (3, 0)])
def test_regular_tree_rejects_bad_parameters(k, depth):
    with pytest.raises(DomainException):
        regular_tree(k, depth)


@pytest.mark.parametrize("d, radius, count", [(1, 4, 9), (2, 3, 25),
                                              (3, 2, 25)])
def test_lattice_ball_sizes(d, radius, count):
    family = lattice(d, radius)
    assert family.graph.vertex_count == count
    assert family.coords[family.root].tolist() == [0] * d
    assert family.graph.degree_bound == 2 * d
    # hop distance inside the l1 ball is the l1 norm
    assert np.array_equal(family.distances, np.abs(family.coords).sum(axis=1))


def test_path_family():
    family = path(5)
    assert family.graph.vertex_count == 6
    assert family.frontier == frozenset([5])
    assert family.truncation_radius == 5


def test_wedge_identifies_roots():
    tree = regular_tree(3, 3)
    family = wedge([tree, regular_tree(3, 3)])
    g = family.graph
    assert g.vertex_count == 1 + 2 * (tree.graph.vertex_count - 1)
    assert g.degree(family.root) == 6
    assert len(family.parts) == 2
    a, b = family.parts
    assert not a & b
    assert a | b | {family.root} == frozenset(range(g.vertex_count))
    assert len(family.frontier) == 2 * len(tree.frontier)


def test_wedge_cuts_parts_to_the_smallest_radius():
    family = wedge([regular_tree(3, 3), regular_tree(3, 5), path(7)])
    assert family.truncation_radius == 3
    same = wedge([regular_tree(3, 3), regular_tree(3, 3), path(3)])
    assert family.graph.vertex_count == same.graph.vertex_count
    assert family.graph.edge_count == same.graph.edge_count
    assert [len(p) for p in family.parts] == [21, 21, 3]
    assert family.frontier_array.size == 12 + 12 + 1
    with pytest.raises(DomainException):
        wedge([regular_tree(3, 3)])


def test_ends():
    assert len(ends(regular_tree(3, 4), 1)) == 3
    assert len(ends(regular_tree(3, 4), 2)) == 6
    assert len(ends(lattice(2, 4), 1)) == 1
    assert len(ends(path(5), 1)) == 1
    with pytest.raises(DomainException):
        ends(path(5), 6)


def test_restrict_shifts_levels():
    family = regular_tree(3, 5)
    branch = ends(family, 1)[0]
    sub, ids = family.restrict(branch)
    assert sub.truncation_radius == 4
    assert sub.distances[sub.root] == 0
    assert len(sub.frontier) == 16
    assert np.array_equal(family.distances[ids] - 1, sub.distances)


def test_family_builder():
    family = FamilyBuilder('regular_tree', {'k': 3, 'depth': 2})()
    assert family.graph.vertex_count == 10
    glued = FamilyBuilder('wedge', {
        'parts': [{
            'function': 'path',
            'params': {
                'length': 3
            }
        }] * 3
    })()
    assert glued.graph.degree(glued.root) == 3
    with pytest.raises(DomainException):
        FamilyBuilder('hypercube', {})()


def test_generation_is_deterministic():
    a = lattice(3, 3)
    b = lattice(3, 3)
    assert np.array_equal(a.graph.edges, b.graph.edges)
    assert np.array_equal(a.coords, b.coords)


def test_metadata_sidecar_keeps_the_family(tmp_path):
    family = lattice(2, 3)
    out = str(tmp_path / "z2.txt")
    save_load.write_graph(out, family.graph)
    save_load.write_family_metadata(save_load.metadata_path(out), family)
    g, ids = read_graph(out)
    back = read_family_metadata(save_load.metadata_path(out), g, ids)
    assert back.family_kind == 'lattice'
    assert back.root == family.root
    assert back.frontier == family.frontier
    assert np.array_equal(back.coords, family.coords)
