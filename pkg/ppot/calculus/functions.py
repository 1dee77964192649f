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

from ppot.utils.exceptions import DomainException

__all__ = [
    'PExponent', 'VertexFunction', 'EdgeDensity', 'as_exponent', 'constant',
    'one', 'product', 'sup_norm'
]

# below this distance from 2 the quadratic formulas are used verbatim
QUADRATIC_WINDOW = 1e-12


class PExponent(object):
    """
    Exponent p of the energies, a real number greater than one.
    """

    def __init__(self, p):
        try:
            p = float(p)
        except (TypeError, ValueError):
            raise DomainException("p({}) is not a real number".format(p))
        if not np.isfinite(p) or p <= 1.0:
            raise DomainException(
                "p({}) should be a real number greater than one".format(p))
        self.p = p

    @property
    def is_quadratic(self):
        return abs(self.p - 2.0) < QUADRATIC_WINDOW

    def __float__(self):
        return self.p

    def __repr__(self):
        return "PExponent({})".format(self.p)


def as_exponent(p):
    """
    Validated float value of p
    """
    if isinstance(p, PExponent):
        return p.p
    return PExponent(p).p


class VertexFunction(object):
    """
    Real function on a declared vertex domain. Evaluation outside the
    domain raises, it is never read as zero.

    Args:
        domain: vertex ids
        values: one real per domain vertex, aligned with domain
    """

    def __init__(self, domain, values):
        domain = np.asarray(list(domain) if not isinstance(
            domain, np.ndarray) else domain, dtype='int64').ravel()
        values = np.asarray(values, dtype='float64').ravel()
        if domain.size != values.size:
            raise DomainException(
                "domain has {} vertices but {} values were given".format(
                    domain.size, values.size))
        order = np.argsort(domain, kind='stable')
        domain = domain[order]
        values = values[order]
        if domain.size > 1 and (np.diff(domain) == 0).any():
            dup = domain[1:][np.diff(domain) == 0][0]
            raise DomainException("vertex listed twice", vertex=int(dup))
        if domain.size and domain[0] < 0:
            raise DomainException("invalid vertex id", vertex=int(domain[0]))
        if not np.isfinite(values).all():
            raise DomainException("function values should be finite")
        self.domain = domain
        self.values = values

    @classmethod
    def from_dict(cls, mapping):
        keys = sorted(mapping)
        return cls(keys, [mapping[k] for k in keys])

    @classmethod
    def from_dense(cls, dense, domain):
        """
        Take the entries of a full-length array on the given ids.
        """
        domain = np.asarray(domain, dtype='int64')
        return cls(domain, np.asarray(dense, dtype='float64')[domain])

    def _positions(self, vertices):
        vertices = np.asarray(vertices, dtype='int64')
        pos = np.searchsorted(self.domain, vertices)
        pos = np.clip(pos, 0, max(self.domain.size - 1, 0))
        if self.domain.size == 0:
            hit = np.zeros(vertices.shape, dtype=bool)
        else:
            hit = self.domain[pos] == vertices
        if not hit.all():
            bad = vertices[~hit].ravel()[0]
            raise DomainException("vertex outside the function's domain",
                                  vertex=int(bad))
        return pos

    def covers(self, vertices):
        vertices = np.asarray(vertices, dtype='int64')
        if self.domain.size == 0:
            return vertices.size == 0
        pos = np.clip(
            np.searchsorted(self.domain, vertices), 0, self.domain.size - 1)
        return bool((self.domain[pos] == vertices).all())

    def __call__(self, x):
        return float(self.values[self._positions([x])[0]])

    __getitem__ = __call__

    def values_at(self, vertices):
        return self.values[self._positions(vertices)]

    def dense(self, size, fill=np.nan):
        """
        Full-length array, fill outside the domain
        """
        out = np.full(size, fill, dtype='float64')
        out[self.domain] = self.values
        return out

    def restrict(self, vertices):
        vertices = np.unique(np.asarray(vertices, dtype='int64'))
        return VertexFunction(vertices, self.values_at(vertices))

    def to_dict(self):
        return dict(zip(self.domain.tolist(), self.values.tolist()))

    def _same_domain(self, other):
        return self.domain.size == other.domain.size and \
            np.array_equal(self.domain, other.domain)

    def __add__(self, other):
        if isinstance(other, VertexFunction):
            if not self._same_domain(other):
                raise DomainException("functions live on different domains")
            return VertexFunction(self.domain, self.values + other.values)
        return VertexFunction(self.domain, self.values + float(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, c):
        if isinstance(c, VertexFunction):
            return product(self, c)
        return VertexFunction(self.domain, self.values * float(c))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __len__(self):
        return int(self.domain.size)

    def __repr__(self):
        return "VertexFunction(domain_size={})".format(self.domain.size)


class EdgeDensity(object):
    """
    Nonnegative value per undirected edge of a graph, indexed like
    graph.edges.
    """

    def __init__(self, graph, values):
        values = np.asarray(values, dtype='float64').ravel()
        if values.size != graph.edge_count:
            raise DomainException(
                "density has {} values for {} edges".format(
                    values.size, graph.edge_count))
        if not np.isfinite(values).all():
            raise DomainException("density values should be finite")
        if values.size and values.min() < 0:
            i = int(np.argmin(values))
            raise DomainException(
                "density should be nonnegative, edge {} has {}".format(
                    tuple(graph.edges[i].tolist()), values[i]))
        self.graph = graph
        self.values = values

    @classmethod
    def from_dict(cls, graph, mapping, default=None):
        """
        Build from {(u, v): value}. Missing edges take default, or raise
        when default is None.
        """
        values = np.full(graph.edge_count, np.nan if default is None else
                         float(default))
        for (u, v), x in mapping.items():
            values[graph.edge_id(u, v)] = x
        if default is None and np.isnan(values).any():
            i = int(np.nonzero(np.isnan(values))[0][0])
            raise DomainException("density misses edge {}".format(
                tuple(graph.edges[i].tolist())))
        return cls(graph, values)

    @classmethod
    def constant(cls, graph, c):
        return cls(graph, np.full(graph.edge_count, float(c)))

    def __getitem__(self, edge):
        u, v = edge
        return float(self.values[self.graph.edge_id(u, v)])

    def __len__(self):
        return int(self.values.size)


def constant(domain, c):
    domain = np.unique(np.asarray(list(domain), dtype='int64'))
    return VertexFunction(domain, np.full(domain.size, float(c)))


def one(g):
    """
    1_V on every vertex of g
    """
    return VertexFunction(
        np.arange(g.vertex_count), np.ones(g.vertex_count))


def product(f, g):
    """
    Pointwise product on the common domain.
    """
    common = np.intersect1d(f.domain, g.domain)
    return VertexFunction(common, f.values_at(common) * g.values_at(common))


def sup_norm(f):
    if f.values.size == 0:
        return 0.0
    return float(np.max(np.abs(f.values)))

