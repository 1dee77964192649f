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
from sklearn.cluster import AgglomerativeClustering

__all__ = [
    "relative_gap", "aitken_limit", "relative_change", "cluster_limits",
    "sup_distance"
]


def relative_gap(a, b, eps=1e-300):
    """
    |a - b| / max(|b|, eps), zero when both vanish
    """
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(b), eps)


def relative_change(prev, cur, eps=1e-300):
    """
    relative change between two consecutive values of a trace
    """
    return abs(cur - prev) / max(abs(cur), abs(prev), eps)


def aitken_limit(trace):
    """
    Aitken delta-squared estimate of the limit of a monotone trace.

    Args:
        trace: sequence of values, at least three
    Returns:
        the extrapolated limit, or None when the last three values do not
        contract geometrically (ratio outside (0, 1))
    """
    if len(trace) < 3:
        return None
    a, b, c = [float(x) for x in trace[-3:]]
    d1 = b - a
    d2 = c - b
    if d1 == 0.0:
        return c
    q = d2 / d1
    if not 0.0 < q < 1.0:
        return None
    return c + d2 * q / (1.0 - q)


def cluster_limits(values, tol):
    """
    Group scalar limits whose chains are closer than tol.

    Args:
        values: 1-D array of limits, one per ray
        tol: linkage distance threshold
    Returns:
        labels: cluster label per value, relabelled so that 0 is the
            largest cluster (ties broken by smaller center)
        centers: mean of each cluster, indexed by the new labels
    """
    values = np.asarray(values, dtype='float64').reshape(-1, 1)
    if values.shape[0] == 0:
        return np.zeros(0, dtype='int64'), np.zeros(0)
    if values.shape[0] == 1:
        return np.zeros(1, dtype='int64'), values[:, 0].copy()
    model = AgglomerativeClustering(
        n_clusters=None, linkage='single', distance_threshold=tol)
    raw = model.fit_predict(values)
    keys = []
    for lab in np.unique(raw):
        member = values[raw == lab, 0]
        keys.append((-member.size, float(member.mean()), lab))
    keys.sort()
    remap = {k[2]: i for i, k in enumerate(keys)}
    labels = np.array([remap[r] for r in raw], dtype='int64')
    centers = np.array([k[1] for k in keys])
    return labels, centers


def sup_distance(u, v):
    """
    sup norm of the difference of two arrays on a common domain
    """
    u = np.asarray(u, dtype='float64')
    v = np.asarray(v, dtype='float64')
    if u.size == 0:
        return 0.0
    return float(np.max(np.abs(u - v)))
