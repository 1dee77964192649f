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

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from ppot.utils.exceptions import DomainException

__all__ = [
    'Graph', 'Region', 'EdgePath', 'distance', 'ball', 'shell',
    'outer_boundary', 'components', 'induced_subgraph', 'vertex_array',
    'boundary_array', 'component_arrays'
]


class Graph(object):
    """
    Immutable undirected graph of bounded degree over dense ids
    0..vertex_count-1.

    Args:
        adjacency(list): for each vertex, the ids of its neighbors
        degree_bound(int): k with deg(x) <= k, defaults to the max degree
        validate(bool): check symmetry, loops, duplicates and connectivity
    """

    def __init__(self, adjacency, degree_bound=None, validate=True):
        adjacency = [list(nbrs) for nbrs in adjacency]
        n = len(adjacency)
        self.vertex_count = n
        self.adjacency = tuple(
            tuple(sorted(int(y) for y in nbrs)) for nbrs in adjacency)
        self.degrees = np.array(
            [len(nbrs) for nbrs in self.adjacency], dtype='int64')
        max_degree = int(self.degrees.max()) if n > 0 else 0
        if degree_bound is None:
            degree_bound = max(max_degree, 1)
        self.degree_bound = int(degree_bound)

        rows = np.repeat(np.arange(n, dtype='int64'), self.degrees)
        cols = np.array(
            [y for nbrs in self.adjacency for y in nbrs], dtype='int64')
        self.pair_rows = rows
        self.pair_cols = cols
        if validate:
            self._validate(max_degree)

        data = np.ones(rows.size, dtype='float64')
        self.csr = sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
        self.csr.sort_indices()

        mask = rows < cols
        self.edges = np.stack([rows[mask], cols[mask]], axis=1)
        self.edge_count = int(self.edges.shape[0])
        self._edge_index = None
        self._dist_cache = {}

    def _validate(self, max_degree):
        n = self.vertex_count
        rows, cols = self.pair_rows, self.pair_cols
        if cols.size and (cols.min() < 0 or cols.max() >= n):
            bad = int(cols[(cols < 0) | (cols >= n)][0])
            raise DomainException("neighbor id out of range", vertex=bad)
        loops = rows[rows == cols]
        if loops.size:
            raise DomainException("self-loops are not allowed",
                                  vertex=int(loops[0]))
        for x, nbrs in enumerate(self.adjacency):
            if len(set(nbrs)) != len(nbrs):
                raise DomainException("duplicate edges are not allowed",
                                      vertex=x)
        if max_degree > self.degree_bound:
            raise DomainException(
                "degree {} exceeds degree_bound {}".format(max_degree,
                                                           self.degree_bound),
                vertex=int(np.argmax(self.degrees)))
        pattern = sparse.csr_matrix(
            (np.ones(rows.size), (rows, cols)), shape=(n, n))
        asym = abs(pattern - pattern.T)
        if asym.nnz and asym.max() > 0:
            bad = int(asym.nonzero()[0][0])
            raise DomainException("adjacency is not symmetric", vertex=bad)
        if n > 0:
            n_comp, _ = csgraph.connected_components(pattern, directed=False)
            if n_comp != 1:
                raise DomainException(
                    "graph is disconnected ({} components)".format(n_comp))

    @classmethod
    def from_edges(cls, edges, vertex_count=None, degree_bound=None):
        """
        Build a graph from (u, v) pairs over ids 0..vertex_count-1.
        """
        edges = np.asarray(edges, dtype='int64').reshape(-1, 2)
        if vertex_count is None:
            vertex_count = int(edges.max()) + 1 if edges.size else 1
        adjacency = [[] for _ in range(vertex_count)]
        for u, v in edges.tolist():
            if u < 0 or v < 0 or u >= vertex_count or v >= vertex_count:
                raise DomainException("edge ({}, {}) out of range".format(
                    u, v))
            adjacency[u].append(v)
            adjacency[v].append(u)
        return cls(adjacency, degree_bound=degree_bound)

    def __len__(self):
        return self.vertex_count

    def __repr__(self):
        return "Graph(vertices={}, edges={}, degree_bound={})".format(
            self.vertex_count, self.edge_count, self.degree_bound)

    def check_vertex(self, x):
        if isinstance(x, (bool, np.bool_)):
            raise DomainException("invalid vertex id", vertex=x)
        try:
            xi = int(x)
        except (TypeError, ValueError):
            raise DomainException("invalid vertex id", vertex=x)
        if xi != x or xi < 0 or xi >= self.vertex_count:
            raise DomainException("invalid vertex id", vertex=x)
        return xi

    def neighbors(self, x):
        return self.adjacency[self.check_vertex(x)]

    def degree(self, x):
        return len(self.adjacency[self.check_vertex(x)])

    @property
    def edge_index(self):
        """
        {(u, v): edge id} over canonical pairs u < v
        """
        if self._edge_index is None:
            self._edge_index = {
                (u, v): i
                for i, (u, v) in enumerate(self.edges.tolist())
            }
        return self._edge_index

    def edge_id(self, u, v):
        key = (u, v) if u < v else (v, u)
        try:
            return self.edge_index[key]
        except KeyError:
            raise DomainException("({}, {}) is not an edge".format(u, v))

    def distances_from(self, x):
        """
        Hop distances from x to every vertex as an int64 array.
        """
        x = self.check_vertex(x)
        dist = self._dist_cache.get(x)
        if dist is None:
            d = csgraph.shortest_path(
                self.csr, directed=False, unweighted=True, indices=x)
            dist = d.astype('int64')
            dist.setflags(write=False)
            if len(self._dist_cache) < 64:
                self._dist_cache[x] = dist
        return dist


def vertex_array(g, S):
    """
    Sorted unique int64 array of the ids in S, each validated.
    """
    if isinstance(S, np.ndarray) and S.dtype.kind in 'iu':
        arr = np.unique(S.astype('int64'))
    else:
        arr = np.unique(np.array([g.check_vertex(x) for x in S],
                                 dtype='int64'))
    if arr.size and (arr[0] < 0 or arr[-1] >= g.vertex_count):
        bad = arr[0] if arr[0] < 0 else arr[-1]
        raise DomainException("invalid vertex id", vertex=int(bad))
    return arr


def _mask(g, arr):
    mask = np.zeros(g.vertex_count, dtype=bool)
    mask[arr] = True
    return mask


def distance(g, x, y):
    """
    Shortest-path distance between x and y.
    """
    y = g.check_vertex(y)
    return int(g.distances_from(x)[y])


def ball(g, x, n):
    """
    B_n(x) = {y : d(x, y) < n}, strict inequality.
    """
    if n < 1:
        raise DomainException("ball radius should be >= 1, got {}".format(n))
    d = g.distances_from(x)
    return frozenset(np.nonzero(d < n)[0].tolist())


def shell(g, x, n):
    """
    {y : d(x, y) = n}
    """
    d = g.distances_from(x)
    return frozenset(np.nonzero(d == n)[0].tolist())


def boundary_array(g, arr):
    """
    Outer boundary of a sorted id array, as a sorted id array.
    """
    if arr.size == 0:
        return np.zeros(0, dtype='int64')
    nbrs = np.unique(g.csr[arr].indices).astype('int64')
    return nbrs[~_mask(g, arr)[nbrs]]


def outer_boundary(g, S):
    """
    Vertices outside S with at least one neighbor in S.
    """
    return frozenset(boundary_array(g, vertex_array(g, S)).tolist())


def component_arrays(g, arr):
    """
    Connected components of the induced subgraph on arr, each a sorted
    id array, ordered by smallest id.
    """
    if arr.size == 0:
        return []
    sub = g.csr[arr][:, arr]
    _, labels = csgraph.connected_components(sub, directed=False)
    # arr is sorted, so first appearance order is smallest-id order
    _, first = np.unique(labels, return_index=True)
    order = labels[np.sort(first)]
    return [arr[labels == lab] for lab in order]


def components(g, S):
    """
    Partition of S into maximal connected subsets, ordered by the
    smallest vertex id of each component.
    """
    return [
        frozenset(c.tolist()) for c in component_arrays(g, vertex_array(g, S))
    ]


def induced_subgraph(g, S):
    """
    The subgraph spanned by a connected S.

    Returns:
        sub(Graph): graph over 0..|S|-1
        ids(np.ndarray): ids[i] is the vertex of g behind vertex i of sub
    """
    arr = vertex_array(g, S)
    if arr.size == 0:
        raise DomainException("induced subgraph of an empty set")
    sub = g.csr[arr][:, arr].tocsr()
    sub.sort_indices()
    adjacency = [
        sub.indices[sub.indptr[i]:sub.indptr[i + 1]].tolist()
        for i in range(arr.size)
    ]
    try:
        graph = Graph(adjacency, degree_bound=g.degree_bound)
    except DomainException as e:
        raise DomainException("induced subgraph is not usable: {}".format(e))
    return graph, arr


class Region(object):
    """
    A vertex set S with its cached outer boundary.
    """

    def __init__(self, graph, interior):
        self.graph = graph
        self.interior_array = vertex_array(graph, interior)
        self.interior = frozenset(self.interior_array.tolist())
        self._boundary = None

    @property
    def boundary_array(self):
        if self._boundary is None:
            self._boundary = boundary_array(self.graph, self.interior_array)
        return self._boundary

    @property
    def outer_boundary(self):
        return frozenset(self.boundary_array.tolist())

    @property
    def closure_array(self):
        """
        S and its outer boundary, sorted
        """
        return np.union1d(self.interior_array, self.boundary_array)

    def __len__(self):
        return int(self.interior_array.size)


class EdgePath(object):
    """
    A path without self-intersections, x_{i+1} a neighbor of x_i.
    """

    def __init__(self, graph, vertices):
        vertices = tuple(graph.check_vertex(x) for x in vertices)
        if len(vertices) == 0:
            raise DomainException("a path needs at least one vertex")
        if len(set(vertices)) != len(vertices):
            raise DomainException("path revisits a vertex")
        for a, b in zip(vertices[:-1], vertices[1:]):
            if b not in graph.adjacency[a]:
                raise DomainException(
                    "consecutive path vertices {} and {} are not "
                    "adjacent".format(a, b),
                    vertex=a)
        self.graph = graph
        self.vertices = vertices

    @property
    def edges(self):
        """
        Ed(path) as canonical (min, max) pairs in path order
        """
        return [(min(a, b), max(a, b))
                for a, b in zip(self.vertices[:-1], self.vertices[1:])]

    @property
    def edge_ids(self):
        return np.array(
            [self.graph.edge_id(a, b) for a, b in self.edges], dtype='int64')

    @property
    def length(self):
        return len(self.vertices) - 1

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, EdgePath) and \
            self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return "EdgePath({})".format(list(self.vertices))
