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

from ppot.calculus.functions import EdgeDensity, VertexFunction
from ppot.graph.generators import TruncatedFamily
from ppot.graph.graph import EdgePath, Graph
from ppot.utils.exceptions import DomainException

__all__ = [
    'read_graph', 'read_vertex_set', 'read_vertex_function', 'read_density',
    'read_paths', 'read_family_metadata'
]


class FormatException(DomainException):
    """
    FormatException
    """

    def __init__(self, message='', path='', line_no=0):
        message = "{}:{}: {}".format(path, line_no, message)
        super(FormatException, self).__init__(message)


def _records(path):
    """
    (line number, tokens) of every non-empty, non-comment line
    """
    with open(path) as f:
        for line_no, line in enumerate(f, 1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            yield line_no, line.split()


def _int(token, path, line_no):
    try:
        value = int(token)
    except ValueError:
        raise FormatException("expected an integer, got {!r}".format(token),
                              path, line_no)
    if value < 0:
        raise FormatException("vertex ids are nonnegative, got {}".format(
            value), path, line_no)
    return value


def _signed(token, path, line_no):
    try:
        return int(token)
    except ValueError:
        raise FormatException("expected an integer, got {!r}".format(token),
                              path, line_no)


def _float(token, path, line_no):
    try:
        return float(token)
    except ValueError:
        raise FormatException("expected a real number, got {!r}".format(
            token), path, line_no)


def _remap(original, index, path, line_no):
    if index is None:
        return original
    if original not in index:
        raise FormatException("vertex {} is not in the graph".format(
            original), path, line_no)
    return index[original]


def id_index(ids):
    """
    {original id: dense id}
    """
    if ids is None:
        return None
    return {int(orig): new for new, orig in enumerate(ids)}


def read_graph(path, degree_bound=None):
    """
    Read a "u v" edge list. Ids are remapped to 0..n-1 in ascending order
    of the original ids.

    Returns:
        graph(Graph)
        ids(np.ndarray): ids[new] is the original id
    """
    pairs = []
    for line_no, tokens in _records(path):
        if len(tokens) != 2:
            raise FormatException("expected two vertex ids per line", path,
                                  line_no)
        pairs.append((_int(tokens[0], path, line_no),
                      _int(tokens[1], path, line_no), line_no))
    if not pairs:
        raise FormatException("no edges found", path, 0)
    ids = np.unique(np.array([(u, v) for u, v, _ in pairs], dtype='int64'))
    index = id_index(ids)
    seen = set()
    adjacency = [[] for _ in range(ids.size)]
    for u, v, line_no in pairs:
        a, b = index[u], index[v]
        if a == b:
            raise FormatException("self-loop at vertex {}".format(u), path,
                                  line_no)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise FormatException("duplicate edge ({}, {})".format(u, v),
                                  path, line_no)
        seen.add(key)
        adjacency[a].append(b)
        adjacency[b].append(a)
    return Graph(adjacency, degree_bound=degree_bound), ids


def read_vertex_set(path, ids=None):
    """
    Whitespace separated vertex ids, any number per line.
    """
    index = id_index(ids)
    out = set()
    for line_no, tokens in _records(path):
        for token in tokens:
            out.add(_remap(_int(token, path, line_no), index, path, line_no))
    return frozenset(out)


def read_vertex_function(path, ids=None):
    """
    One "vertex_id value" pair per line.
    """
    index = id_index(ids)
    mapping = {}
    for line_no, tokens in _records(path):
        if len(tokens) != 2:
            raise FormatException("expected \"vertex value\"", path, line_no)
        x = _remap(_int(tokens[0], path, line_no), index, path, line_no)
        if x in mapping:
            raise FormatException("vertex {} listed twice".format(tokens[0]),
                                  path, line_no)
        mapping[x] = _float(tokens[1], path, line_no)
    return VertexFunction.from_dict(mapping)


def read_density(path, graph, ids=None):
    """
    One "u v value" triple per edge.
    """
    index = id_index(ids)
    mapping = {}
    for line_no, tokens in _records(path):
        if len(tokens) != 3:
            raise FormatException("expected \"u v value\"", path, line_no)
        u = _remap(_int(tokens[0], path, line_no), index, path, line_no)
        v = _remap(_int(tokens[1], path, line_no), index, path, line_no)
        mapping[(min(u, v), max(u, v))] = _float(tokens[2], path, line_no)
    return EdgeDensity.from_dict(graph, mapping)


def read_paths(path, graph, ids=None):
    """
    One path per line as space separated vertex ids.
    """
    index = id_index(ids)
    paths = []
    for line_no, tokens in _records(path):
        vertices = [
            _remap(_int(t, path, line_no), index, path, line_no)
            for t in tokens
        ]
        try:
            paths.append(EdgePath(graph, vertices))
        except DomainException as e:
            raise FormatException(str(e), path, line_no)
    return paths


def read_family_metadata(path, graph, ids=None):
    """
    Parse the sidecar written next to a generated graph.
    """
    index = id_index(ids)
    sections = {}
    current = None
    with open(path) as f:
        for line_no, line in enumerate(f, 1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            if line.startswith('[') and line.endswith(']'):
                current = line[1:-1].strip()
                sections[current] = []
            elif current is None:
                raise FormatException("value before any [header]", path,
                                      line_no)
            else:
                sections[current].append((line_no, line))
    for key in ('family', 'radius', 'root'):
        if len(sections.get(key, [])) != 1:
            raise FormatException("missing [{}] header".format(key), path, 0)

    def ids_of(key):
        return [
            _remap(_int(v, path, n), index, path, n)
            for n, v in sections.get(key, [])
        ]

    kind = sections['family'][0][1]
    line_no, radius = sections['radius'][0]
    radius = _int(radius, path, line_no)
    root = ids_of('root')[0]
    part_keys = sorted(
        (k for k in sections if k.startswith('part ')),
        key=lambda k: int(k.split()[1]))
    parts = [ids_of(k) for k in part_keys] or None
    coords = None
    if sections.get('coords'):
        rows = {}
        for n, v in sections['coords']:
            tokens = v.split()
            vertex = _remap(_int(tokens[0], path, n), index, path, n)
            rows[vertex] = [_signed(t, path, n) for t in tokens[1:]]
        if sorted(rows) != list(range(graph.vertex_count)):
            raise FormatException("[coords] should list every vertex once",
                                  path, 0)
        coords = np.array([rows[v] for v in sorted(rows)], dtype='int64')
    family = TruncatedFamily(
        graph, kind, radius, root=root, parts=parts, coords=coords)
    listed = frozenset(ids_of('frontier'))
    if listed and listed != family.frontier:
        raise FormatException(
            "listed frontier does not match the vertices at distance {} "
            "from the root".format(radius), path, 0)
    return family
