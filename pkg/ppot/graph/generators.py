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

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import itertools
import sys

import numpy as np

from ppot.graph.graph import Graph, component_arrays, induced_subgraph
from ppot.utils import logger
from ppot.utils.exceptions import DomainException

__all__ = [
    'TruncatedFamily', 'regular_tree', 'lattice', 'path', 'wedge', 'ends',
    'grid_graph', 'path_graph', 'FamilyBuilder'
]

GENERATORS = ('regular_tree', 'lattice', 'path', 'wedge')


class TruncatedFamily(object):
    """
    A finite ball of an infinite family together with its marked frontier.

    Args:
        graph(Graph): the truncation
        family_kind(str): tree, lattice, wedge or path
        truncation_radius(int): distance from the root to the frontier
        root(int): distinguished root
        parts(list): vertex sets of the wedge summands, root excluded
        coords(np.ndarray): lattice coordinates per vertex
    """

    def __init__(self,
                 graph,
                 family_kind,
                 truncation_radius,
                 root=0,
                 parts=None,
                 coords=None,
                 levels=None):
        self.graph = graph
        self.family_kind = family_kind
        self.truncation_radius = int(truncation_radius)
        self.root = graph.check_vertex(root)
        self.parts = [frozenset(p) for p in parts] if parts else None
        self.coords = coords
        self._levels = None
        if levels is not None:
            levels = np.asarray(levels, dtype='int64')
            if levels.shape != (graph.vertex_count, ) or levels.min() < 0 \
                    or levels[self.root] != 0:
                raise DomainException(
                    "levels should be nonnegative per vertex and 0 at the "
                    "root")
            levels.setflags(write=False)
            self._levels = levels
        dist = self.distances
        if dist.max() != self.truncation_radius:
            raise DomainException(
                "family radius {} does not match the farthest vertex at "
                "distance {}".format(self.truncation_radius, dist.max()))
        self.frontier_array = np.nonzero(dist == self.truncation_radius)[0]
        self.frontier = frozenset(self.frontier_array.tolist())

    @property
    def distances(self):
        """
        distance from the root to every vertex, or the inherited levels
        of a restricted family
        """
        if self._levels is not None:
            return self._levels
        return self.graph.distances_from(self.root)

    def restrict(self, vertices):
        """
        The family seen from a connected vertex set reaching the frontier:
        the induced subgraph, levels shifted so that the set's closest
        vertices sit at 0, root the smallest id among them.

        Returns:
            family(TruncatedFamily)
            ids(np.ndarray): ids[i] is the vertex of self behind vertex i
        """
        sub, ids = induced_subgraph(self.graph, vertices)
        levels = self.distances[ids]
        if levels.max() != self.truncation_radius:
            raise DomainException("restricted set does not reach the frontier")
        levels = levels - levels.min()
        root = int(np.nonzero(levels == 0)[0][0])
        coords = self.coords[ids] if self.coords is not None else None
        family = TruncatedFamily(
            sub,
            self.family_kind,
            int(levels.max()),
            root=root,
            coords=coords,
            levels=levels)
        return family, ids

    def __repr__(self):
        return "TruncatedFamily(kind={}, radius={}, vertices={})".format(
            self.family_kind, self.truncation_radius,
            self.graph.vertex_count)


def _bfs_relabel(vertex_count, edges, root):
    """
    Renumber vertices in BFS order from root, neighbors visited in
    ascending order of their old ids.
    """
    adjacency = [[] for _ in range(vertex_count)]
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    order = [root]
    seen = np.zeros(vertex_count, dtype=bool)
    seen[root] = True
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for y in sorted(adjacency[x]):
            if not seen[y]:
                seen[y] = True
                order.append(y)
    new_id = np.empty(vertex_count, dtype='int64')
    new_id[np.array(order, dtype='int64')] = np.arange(vertex_count)
    return new_id


def regular_tree(k, depth):
    """
    Ball of radius depth around the root of the k-regular tree, numbered
    level by level.
    """
    if k < 2:
        raise DomainException("regular_tree needs k >= 2, got {}".format(k))
    if depth < 1:
        raise DomainException("regular_tree needs depth >= 1, got {}".format(
            depth))
    # level j holds k (k-1)^(j-1) vertices, children of one parent are
    # consecutive, so ids are already in BFS order
    parents = []
    level = np.array([0], dtype='int64')
    next_id = 1
    for j in range(1, depth + 1):
        branching = k if j == 1 else k - 1
        children_parent = np.repeat(level, branching)
        parents.append(children_parent)
        level = np.arange(next_id, next_id + children_parent.size)
        next_id += children_parent.size
    parent = np.concatenate(parents)
    child = np.arange(1, next_id, dtype='int64')
    graph = Graph.from_edges(
        np.stack([parent, child], axis=1), vertex_count=next_id,
        degree_bound=k)
    return TruncatedFamily(graph, 'tree', depth, root=0)


def lattice(d, radius):
    """
    Induced subgraph of Z^d on the l1 ball of the given radius around the
    origin, nearest-neighbor edges, BFS numbering from the origin.
    """
    if d < 1:
        raise DomainException("lattice needs d >= 1, got {}".format(d))
    if radius < 1:
        raise DomainException("lattice needs radius >= 1, got {}".format(
            radius))
    axis = range(-radius, radius + 1)
    points = [
        pt for pt in itertools.product(axis, repeat=d)
        if sum(abs(c) for c in pt) <= radius
    ]
    points.sort(key=lambda pt: (sum(abs(c) for c in pt), pt))
    index = {pt: i for i, pt in enumerate(points)}
    edges = []
    for pt, i in index.items():
        for axis_id in range(d):
            nb = pt[:axis_id] + (pt[axis_id] + 1, ) + pt[axis_id + 1:]
            j = index.get(nb)
            if j is not None:
                edges.append((i, j))
    new_id = _bfs_relabel(len(points), edges, index[(0, ) * d])
    coords = np.empty((len(points), d), dtype='int64')
    coords[new_id] = np.array(points, dtype='int64')
    edges = np.array(edges, dtype='int64')
    graph = Graph.from_edges(
        new_id[edges], vertex_count=len(points), degree_bound=2 * d)
    return TruncatedFamily(
        graph, 'lattice', radius, root=0, coords=coords)


def path(length):
    """
    One-sided segment 0-1-...-length rooted at 0.
    """
    if length < 1:
        raise DomainException("path needs length >= 1, got {}".format(length))
    return TruncatedFamily(path_graph(length + 1), 'path', length, root=0)


def wedge(parts):
    """
    Disjoint union of the given families with all roots identified to a
    single new root. Summands are cut down to the smallest truncation
    radius among them.
    """
    if not parts or len(parts) < 2:
        raise DomainException("wedge needs at least 2 parts, got {}".format(
            len(parts) if parts else 0))
    radii = sorted(set(p.truncation_radius for p in parts))
    radius = radii[0]
    if len(radii) > 1:
        logger.warning("wedge parts have radii {}, all cut to {}".format(
            radii, radius))
    edges = []
    members = []
    offset = 1
    for part in parts:
        g = part.graph
        # root of the part becomes vertex 0, the rest shift by offset
        old = np.arange(g.vertex_count)
        keep = part.distances <= radius
        others = old[(old != part.root) & keep]
        local = np.empty(g.vertex_count, dtype='int64')
        local[part.root] = 0
        local[others] = offset + np.arange(others.size)
        inside = g.edges[keep[g.edges[:, 0]] & keep[g.edges[:, 1]]]
        edges.append(local[inside])
        members.append(local[others])
        offset += others.size
    edges = np.concatenate(edges)
    new_id = _bfs_relabel(offset, edges.tolist(), 0)
    degree_bound = max(
        max(p.graph.degree_bound for p in parts),
        sum(p.graph.degree(p.root) for p in parts))
    graph = Graph.from_edges(
        new_id[edges], vertex_count=offset, degree_bound=degree_bound)
    return TruncatedFamily(
        graph,
        'wedge',
        radius,
        root=0,
        parts=[new_id[m].tolist() for m in members])


def ends(family, radius):
    """
    Components of {x : d(root, x) >= radius} that reach the frontier,
    ordered by smallest vertex id.
    """
    if radius < 1 or radius > family.truncation_radius:
        raise DomainException(
            "ends radius should lie in [1, {}], got {}".format(
                family.truncation_radius, radius))
    outside = np.nonzero(family.distances >= radius)[0]
    frontier = np.zeros(family.graph.vertex_count, dtype=bool)
    frontier[family.frontier_array] = True
    return [
        frozenset(c.tolist())
        for c in component_arrays(family.graph, outside) if frontier[c].any()
    ]


def path_graph(n):
    """
    0-1-...-(n-1)
    """
    if n < 1:
        raise DomainException("path_graph needs n >= 1, got {}".format(n))
    i = np.arange(n - 1, dtype='int64')
    return Graph.from_edges(
        np.stack([i, i + 1], axis=1), vertex_count=n, degree_bound=2)


def grid_graph(rows, cols):
    """
    rows x cols grid, vertex r * cols + c.
    """
    if rows < 1 or cols < 1:
        raise DomainException("grid_graph needs positive sides, got "
                              "{}x{}".format(rows, cols))
    ids = np.arange(rows * cols, dtype='int64').reshape(rows, cols)
    horizontal = np.stack([ids[:, :-1].ravel(), ids[:, 1:].ravel()], axis=1)
    vertical = np.stack([ids[:-1, :].ravel(), ids[1:, :].ravel()], axis=1)
    return Graph.from_edges(
        np.concatenate([horizontal, vertical]), vertex_count=rows * cols,
        degree_bound=4)


class FamilyBuilder(object):
    """
    Build a truncated family

    Args:
        function(str): generator name, regular_tree, lattice, path or wedge
        params(dict): parameters of the generator, the parts of a wedge
            are themselves {function, params} dicts
    """

    def __init__(self, function='regular_tree', params={'k': 3, 'depth': 6}):
        self.function = function
        self.params = params

    def __call__(self):
        mod = sys.modules[__name__]
        if self.function not in GENERATORS:
            raise DomainException("unknown family generator {!r}, use one "
                                  "of {}".format(self.function, GENERATORS))
        params = dict(self.params)
        if self.function == 'wedge':
            params['parts'] = [
                p if isinstance(p, TruncatedFamily) else FamilyBuilder(**p)()
                for p in params.get('parts') or []
            ]
        return getattr(mod, self.function)(**params)
