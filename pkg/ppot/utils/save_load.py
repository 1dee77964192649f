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

import errno
import sys
import os

__all__ = [
    'format_value', 'write_lines', 'write_graph', 'write_vertex_set',
    'write_vertex_function', 'write_density', 'write_paths',
    'write_family_metadata', 'write_mapping', 'metadata_path'
]


def _mkdir_if_not_exist(path):
    """
    create the parent directory of an output file, a concurrent writer
    creating it first is fine
    """
    if not path or os.path.isdir(path):
        return
    try:
        os.makedirs(path)
    except OSError as e:
        if e.errno != errno.EEXIST or not os.path.isdir(path):
            raise


def format_value(value):
    """
    Shortest text that reads back to the same float
    """
    return repr(float(value))


def metadata_path(graph_path):
    return graph_path + '.meta'


def write_lines(path, lines):
    """
    Write lines to a file, or to stdout when path is None or '-'.
    """
    text = ''.join(line + '\n' for line in lines)
    if path is None or path == '-':
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    _mkdir_if_not_exist(os.path.dirname(path))
    with open(path, 'w') as f:
        f.write(text)


def write_graph(path, graph):
    """
    One canonical edge "u v" per line, u < v, sorted.
    """
    lines = ['# vertices {} edges {} degree_bound {}'.format(
        graph.vertex_count, graph.edge_count, graph.degree_bound)]
    lines.extend('{} {}'.format(u, v) for u, v in graph.edges.tolist())
    write_lines(path, lines)


def _label(ids):
    if ids is None:
        return lambda v: v
    return lambda v: int(ids[v])


def write_vertex_set(path, vertices, ids=None):
    label = _label(ids)
    write_lines(path, [str(label(v)) for v in sorted(vertices)])


def write_vertex_function(path, f, ids=None):
    """
    One "vertex_id value" pair per line in vertex order, ids[v] written
    for v when the graph was read with remapped ids.
    """
    label = _label(ids)
    write_lines(path, [
        '{} {}'.format(label(v), format_value(x))
        for v, x in zip(f.domain.tolist(), f.values.tolist())
    ])


def write_density(path, graph, rho, ids=None):
    """
    One "u v value" triple per edge, canonical u < v.
    """
    label = _label(ids)
    write_lines(path, [
        '{} {} {}'.format(label(u), label(v), format_value(x))
        for (u, v), x in zip(graph.edges.tolist(), rho.values.tolist())
    ])


def write_paths(path, paths, ids=None):
    label = _label(ids)
    write_lines(path, [
        ' '.join(str(label(v)) for v in p.vertices) for p in paths
    ])


def write_mapping(path, original_ids):
    """
    "original_id new_id" per line.
    """
    write_lines(path, [
        '{} {}'.format(orig, new) for new, orig in enumerate(original_ids)
    ])


def write_family_metadata(path, family):
    """
    Sidecar of a generated family: labeled headers followed by one value
    or vertex id per line.
    """
    lines = ['[family]', family.family_kind, '[radius]',
             str(family.truncation_radius), '[root]', str(family.root),
             '[frontier]']
    lines.extend(str(v) for v in sorted(family.frontier))
    for i, part in enumerate(family.parts or []):
        lines.append('[part {}]'.format(i))
        lines.extend(str(v) for v in sorted(part))
    if family.coords is not None:
        lines.append('[coords]')
        lines.extend(
            '{} {}'.format(v, ' '.join(str(c) for c in row))
            for v, row in enumerate(family.coords.tolist()))
    write_lines(path, lines)
