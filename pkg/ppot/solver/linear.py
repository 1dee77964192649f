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
from scipy.sparse.linalg import spsolve

from ppot.calculus.functions import QUADRATIC_WINDOW, VertexFunction
from ppot.calculus.operators import (edge_energy, laplacian_values,
                                     touching_edges)
from ppot.solver.dirichlet import DirichletSolution
from ppot.utils import logger
from ppot.utils.exceptions import DomainException

__all__ = ['LinearSolve', 'picard_warm_start', 'solve_linear']

MAX_DAMPING_HALVINGS = 12


def _weighted_solve(g, dense, arr, eids, weights):
    """
    Solve sum over y of w_xy (u(x) - u(y)) = 0 for x in arr, the values
    outside arr taken from dense.
    """
    n = g.vertex_count
    pos = np.full(n, -1, dtype='int64')
    pos[arr] = np.arange(arr.size)
    e = g.edges[eids]
    a, b = e[:, 0], e[:, 1]
    pa, pb = pos[a], pos[b]

    diag = np.zeros(arr.size)
    np.add.at(diag, pa[pa >= 0], weights[pa >= 0])
    np.add.at(diag, pb[pb >= 0], weights[pb >= 0])

    both = (pa >= 0) & (pb >= 0)
    rows = np.concatenate([pa[both], pb[both], np.arange(arr.size)])
    cols = np.concatenate([pb[both], pa[both], np.arange(arr.size)])
    vals = np.concatenate([-weights[both], -weights[both], diag])
    matrix = sparse.csc_matrix((vals, (rows, cols)), shape=(arr.size, ) * 2)

    rhs = np.zeros(arr.size)
    only_a = (pa >= 0) & (pb < 0)
    only_b = (pb >= 0) & (pa < 0)
    np.add.at(rhs, pa[only_a], weights[only_a] * dense[b[only_a]])
    np.add.at(rhs, pb[only_b], weights[only_b] * dense[a[only_b]])
    return np.atleast_1d(spsolve(matrix, rhs))


def picard_warm_start(prob, dense, max_iterations=60, rel_tol=1e-14):
    """
    Lagged-diffusivity iteration started from the p = 2 solution: freeze
    w_e = max(|du_e|, delta)^(p-2), solve the weighted linear problem,
    accept the largest damped step (1, 1/2, 1/4, ...) that does not raise
    the energy. Exact in one step when p = 2.

    Args:
        prob(DirichletProblem): the problem
        dense(np.ndarray): start values, full length (a trailing
            sentinel entry is allowed and left alone)
    Returns:
        the improved array
    """
    g = prob.graph
    n = g.vertex_count
    p = prob.p
    arr = prob.region.interior_array
    eids = touching_edges(g, arr)
    bvals = prob.boundary_data.values
    spread = float(bvals.max() - bvals.min())
    if spread == 0.0:
        dense = dense.copy()
        dense[arr] = bvals[0]
        return dense
    delta = 1e-10 * spread
    e = g.edges[eids]

    dense = dense.copy()
    energy = edge_energy(g, dense[:n], eids, p)
    it = 0
    for it in range(max_iterations):
        if it == 0 or abs(p - 2.0) < QUADRATIC_WINDOW:
            # first pass is the p = 2 solve
            weights = np.ones(eids.size)
        else:
            diff = np.abs(dense[e[:, 0]] - dense[e[:, 1]])
            weights = np.maximum(diff, delta)**(p - 2.0)
        target = _weighted_solve(g, dense, arr, eids, weights)
        current = dense[arr].copy()
        step = 1.0
        accepted = False
        for _ in range(MAX_DAMPING_HALVINGS):
            dense[arr] = current + step * (target - current)
            trial = edge_energy(g, dense[:n], eids, p)
            if trial <= energy:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            dense[arr] = current
            break
        drop = energy - trial
        energy = trial
        if drop <= rel_tol * max(energy, 1e-300):
            break
    logger.info("picard warm start: {} linear solves, energy {:.9e}".format(
        it + 1, energy))
    return dense


class LinearSolve(object):
    """
    Direct sparse solve of the p = 2 problem, the reference the iterative
    solver is checked against.
    """

    def __init__(self, **kwargs):
        pass

    def __call__(self, prob):
        if abs(prob.p - 2.0) >= QUADRATIC_WINDOW:
            raise DomainException(
                "LinearSolve only handles p = 2, got p = {}".format(prob.p))
        g = prob.graph
        n = g.vertex_count
        arr = prob.region.interior_array
        eids = touching_edges(g, arr)
        dense = prob.initial_dense('mean')
        dense[arr] = _weighted_solve(g, dense, arr, eids, np.ones(eids.size))
        res = float(
            np.max(np.abs(laplacian_values(g, dense[:n], arr, prob.p))))
        energy = edge_energy(g, dense[:n], eids, prob.p)
        values = VertexFunction.from_dense(dense[:n],
                                           prob.region.closure_array)
        return DirichletSolution(values, res, 0, energy, 0, [energy], [res])


def solve_linear(prob):
    return LinearSolve()(prob)
