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

from ppot.calculus.functions import as_exponent
from ppot.graph.graph import boundary_array, vertex_array
from ppot.utils.exceptions import DomainException

__all__ = [
    'gradient_p', 'dirichlet_sum', 'p_laplacian', 'xi', 'dp_norm',
    'bdp_norm', 'xi_p_edges', 'signed_power', 'laplacian_values',
    'touching_edges', 'edge_energy', 'directed_pairs', 'dense_values'
]


def signed_power(t, q):
    """
    sign(t) |t|^q, zero at t = 0 for every q > 0
    """
    return np.sign(t) * np.abs(t)**q


def directed_pairs(g, arr):
    """
    (x, y) for every x in arr and y in N_x, grouped by x in arr order.

    Returns:
        owner: position of x inside arr
        rows: x
        cols: y
    """
    sub = g.csr[arr]
    counts = np.diff(sub.indptr)
    owner = np.repeat(np.arange(arr.size), counts)
    return owner, arr[owner], sub.indices.astype('int64')


def dense_values(g, f, needed):
    """
    Full-length array of f, checking that f covers every needed id.
    """
    dense = f.dense(g.vertex_count)
    missing = np.isnan(dense[needed])
    if missing.any():
        raise DomainException("vertex outside the function's domain",
                              vertex=int(np.asarray(needed)[missing][0]))
    return dense


def gradient_p(g, f, x, p):
    """
    |Df(x)|^p = sum over neighbors y of |f(y) - f(x)|^p
    """
    p = as_exponent(p)
    x = g.check_vertex(x)
    fx = f(x)
    fy = f.values_at(np.array(g.adjacency[x], dtype='int64'))
    return float(np.sum(np.abs(fy - fx)**p))


def dirichlet_sum(g, f, S, p):
    """
    I_p(f, S) = sum over x in S of |Df(x)|^p.
    """
    p = as_exponent(p)
    arr = vertex_array(g, S)
    _, rows, cols = directed_pairs(g, arr)
    dense = dense_values(g, f, np.concatenate([arr, cols]))
    return float(np.sum(np.abs(dense[cols] - dense[rows])**p))


def p_laplacian(g, f, x, p):
    """
    sum over neighbors y of |f(y) - f(x)|^(p-2) (f(y) - f(x)); a term with
    f(y) = f(x) is zero for every p > 1.
    """
    p = as_exponent(p)
    x = g.check_vertex(x)
    fx = f(x)
    fy = f.values_at(np.array(g.adjacency[x], dtype='int64'))
    return float(np.sum(signed_power(fy - fx, p - 1.0)))


def laplacian_values(g, dense, arr, p):
    """
    Delta_p at every vertex of arr for a full-length value array.
    """
    owner, rows, cols = directed_pairs(g, arr)
    terms = signed_power(dense[cols] - dense[rows], p - 1.0)
    return np.bincount(owner, weights=terms, minlength=arr.size)


def xi(g, f, S, p):
    """
    Xi(f, S) = 1/2 (I_p(f, S) + sum over x in dS, y in N_x and S of
    |f(x) - f(y)|^p)
    """
    p = as_exponent(p)
    arr = vertex_array(g, S)
    interior = dirichlet_sum(g, f, arr, p)
    bnd = boundary_array(g, arr)
    if bnd.size == 0:
        return 0.5 * interior
    in_s = np.zeros(g.vertex_count, dtype=bool)
    in_s[arr] = True
    _, rows, cols = directed_pairs(g, bnd)
    keep = in_s[cols]
    rows, cols = rows[keep], cols[keep]
    dense = dense_values(g, f, rows)
    outer = float(np.sum(np.abs(dense[rows] - dense[cols])**p))
    return 0.5 * (interior + outer)


def touching_edges(g, arr):
    """
    Ids of the edges with at least one endpoint in arr.
    """
    mask = np.zeros(g.vertex_count, dtype=bool)
    mask[arr] = True
    return np.nonzero(mask[g.edges[:, 0]] | mask[g.edges[:, 1]])[0]


def edge_energy(g, dense, edge_ids, p):
    """
    sum of |f(u) - f(v)|^p over the given edges; over the edges touching S
    this equals Xi(f, S).
    """
    e = g.edges[edge_ids]
    return float(np.sum(np.abs(dense[e[:, 0]] - dense[e[:, 1]])**p))


def dp_norm(g, f, o, p):
    """
    (I_p(f, V) + |f(o)|^p)^(1/p)
    """
    p = as_exponent(p)
    o = g.check_vertex(o)
    total = dirichlet_sum(g, f, np.arange(g.vertex_count), p)
    return float((total + abs(f(o))**p)**(1.0 / p))


def bdp_norm(g, f, p):
    """
    I_p(f, V)^(1/p) + sup |f|
    """
    p = as_exponent(p)
    all_v = np.arange(g.vertex_count)
    total = dirichlet_sum(g, f, all_v, p)
    return float(total**(1.0 / p) + np.max(np.abs(f.values_at(all_v))))


def xi_p_edges(g, rho, p):
    """
    xi_p(rho) = sum over edges of rho(e)^p
    """
    p = as_exponent(p)
    if rho.values.size != g.edge_count:
        raise DomainException("density is not defined on every edge")
    return float(np.sum(rho.values**p))
