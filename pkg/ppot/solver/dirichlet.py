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

import time

import networkx as nx
import numpy as np

from ppot.calculus.functions import (QUADRATIC_WINDOW, VertexFunction,
                                     as_exponent)
from ppot.calculus.operators import (dense_values, edge_energy,
                                     laplacian_values, signed_power,
                                     touching_edges)
from ppot.graph.graph import Region, vertex_array
from ppot.utils import logger
from ppot.utils.exceptions import (ConsistencyException, ConvergenceException,
                                   DomainException)

__all__ = [
    'DirichletProblem', 'DirichletSolution', 'CoordinateDescent',
    'solve_dirichlet', 'local_update', 'residual'
]

MAX_INNER_STEPS = 200
# plain sweeps used to measure the contraction rate before relaxing
ESTIMATE_SWEEPS = 30
RATE_WINDOW = 10
# relaxed sweeps watched before the factor is kept
CHECK_SWEEPS = 20
MAX_RELAXATION = 1.95
# relative slack allowed on the per-sweep energy decrease
ENERGY_SLACK = 1e-10


class DirichletProblem(object):
    """
    Minimize Xi(., S) over functions with the given values on dS.

    Args:
        region(Region): finite nonempty interior S
        boundary_data(VertexFunction): values on exactly dS
        p(float|PExponent): exponent, p > 1
        tolerance(float): target for max over S of |Delta_p f|
        max_iterations(int): budget of local updates
    """

    def __init__(self,
                 region,
                 boundary_data,
                 p,
                 tolerance=1e-9,
                 max_iterations=1000000):
        self.region = region
        self.graph = region.graph
        self.p = as_exponent(p)
        if len(region) == 0:
            raise DomainException("Dirichlet problem with an empty interior")
        bnd = region.boundary_array
        if bnd.size == 0:
            raise DomainException(
                "interior has no outer boundary, the problem is not anchored")
        if not np.array_equal(boundary_data.domain, bnd):
            extra = np.setdiff1d(boundary_data.domain, bnd)
            missing = np.setdiff1d(bnd, boundary_data.domain)
            bad = missing[0] if missing.size else extra[0]
            raise DomainException(
                "boundary data should cover exactly the outer boundary "
                "({} missing, {} extra)".format(missing.size, extra.size),
                vertex=int(bad))
        if not tolerance > 0:
            raise DomainException("tolerance({}) should be positive".format(
                tolerance))
        if not max_iterations >= 1:
            raise DomainException("max_iterations({}) should be >= 1".format(
                max_iterations))
        self.boundary_data = boundary_data
        self.tolerance = float(tolerance)
        self.max_iterations = int(max_iterations)

    @classmethod
    def from_sets(cls, graph, interior, boundary_values, p, **kwargs):
        """
        Build from an interior set and a {vertex: value} map or a callable
        on boundary vertices.
        """
        region = Region(graph, interior)
        bnd = region.boundary_array
        if callable(boundary_values):
            values = [boundary_values(int(x)) for x in bnd]
        else:
            try:
                values = [boundary_values[int(x)] for x in bnd]
            except KeyError as e:
                raise DomainException("no boundary value given",
                                      vertex=e.args[0])
        return cls(region, VertexFunction(bnd, values), p, **kwargs)

    def initial_dense(self, init='mean'):
        """
        Full-length array (plus one trailing sentinel) holding the boundary
        values and a constant start on S.
        """
        n = self.graph.vertex_count
        dense = np.zeros(n + 1, dtype='float64')
        bvals = self.boundary_data.values
        dense[self.boundary_data.domain] = bvals
        if init in ('mean', 'picard'):
            start = float(np.mean(bvals))
        elif init == 'min':
            start = float(np.min(bvals))
        elif init == 'max':
            start = float(np.max(bvals))
        else:
            raise DomainException(
                "unknown init {!r}, use mean, min, max or picard".format(init))
        dense[self.region.interior_array] = start
        return dense


class DirichletSolution(object):
    """
    values on S and dS, max |Delta_p| over S, local updates used and the
    final Xi energy
    """

    def __init__(self,
                 values,
                 residual,
                 iterations_used,
                 energy,
                 sweeps=0,
                 energy_trace=None,
                 residual_trace=None,
                 relaxation=1.0):
        self.values = values
        self.residual = float(residual)
        self.iterations_used = int(iterations_used)
        self.energy = float(energy)
        self.sweeps = int(sweeps)
        self.energy_trace = list(energy_trace or [])
        self.residual_trace = list(residual_trace or [])
        self.relaxation = float(relaxation)

    def __repr__(self):
        return "DirichletSolution(residual={:.3e}, energy={:.6e}, " \
               "iterations={})".format(self.residual, self.energy,
                                       self.iterations_used)


def _local_minimizers(Y, W, p, inner_tol):
    """
    Row-wise argmin over t of sum_j W_j |t - Y_j|^p, i.e. the root of the
    decreasing map t -> sum_j W_j phi(Y_j - t), by Newton steps kept
    inside a shrinking bracket, bisection when a step leaves it.
    """
    mask = W > 0
    lo = np.where(mask, Y, np.inf).min(axis=1)
    hi = np.where(mask, Y, -np.inf).max(axis=1)
    t = np.where(mask, Y, 0.0).sum(axis=1) / W.sum(axis=1)
    if abs(p - 2.0) < QUADRATIC_WINDOW:
        return t
    q = p - 1.0
    done = ~(hi > lo)
    t = np.where(done, lo, t)
    for _ in range(MAX_INNER_STEPS):
        D = Y - t[:, None]
        g = np.where(mask, signed_power(D, q), 0.0).sum(axis=1)
        with np.errstate(divide='ignore', invalid='ignore'):
            dg = -q * np.where(mask, np.abs(D)**(q - 1.0), 0.0).sum(axis=1)
        lo = np.where(g > 0, t, lo)
        hi = np.where(g < 0, t, hi)
        done = done | (np.abs(g) <= inner_tol) | (
            hi - lo <= 4 * np.finfo('float64').eps * (1.0 + np.abs(t)))
        if done.all():
            break
        with np.errstate(divide='ignore', invalid='ignore'):
            newton = t - g / dg
        ok = np.isfinite(newton) & (newton > lo) & (newton < hi) & (
            newton != t)
        t = np.where(done, t, np.where(ok, newton, 0.5 * (lo + hi)))
    return t


def local_update(g, f, x, p, inner_tol=1e-12):
    """
    argmin over t of sum over y in N_x of |t - f(y)|^p.
    """
    p = as_exponent(p)
    x = g.check_vertex(x)
    nbrs = np.array(g.adjacency[x], dtype='int64')
    if nbrs.size == 0:
        raise DomainException("vertex has no neighbors", vertex=x)
    Y = f.values_at(nbrs)[None, :]
    return float(_local_minimizers(Y, np.ones_like(Y), p, inner_tol)[0])


def _local_energies(Y, W, t, p):
    return (W * np.abs(Y - t[:, None])**p).sum(axis=1)


def contraction_rate(steps, window=RATE_WINDOW):
    """
    Mean per-sweep ratio of the last window sweep steps, None when it
    cannot be read off.

    Args:
        steps(list): norm of the change made by each sweep
    """
    if len(steps) <= window or not steps[-1 - window] > 0:
        return None
    rate = (steps[-1] / steps[-1 - window])**(1.0 / window)
    if not np.isfinite(rate) or rate <= 0:
        return None
    return float(rate)


def relaxation_factor(rate):
    """
    Over-relaxation factor 2 / (1 + sqrt(1 - rate)) for a plain sweep
    contraction rate, capped at MAX_RELAXATION.
    """
    if rate is None:
        return 1.0
    if rate >= 1.0:
        return MAX_RELAXATION
    return float(min(2.0 / (1.0 + np.sqrt(1.0 - rate)), MAX_RELAXATION))


def residual(g, f, S, p):
    """
    max over x in S of |Delta_p f(x)|
    """
    p = as_exponent(p)
    arr = vertex_array(g, S)
    if arr.size == 0:
        return 0.0
    dense = dense_values(g, f, np.concatenate([arr, g.csr[arr].indices]))
    return float(np.max(np.abs(laplacian_values(g, dense, arr, p))))


class _Block(object):
    """
    An independent set of interior vertices with padded neighbor lists,
    the sentinel id marks padding
    """

    def __init__(self, g, ids):
        sub = g.csr[ids]
        counts = np.diff(sub.indptr)
        width = int(counts.max()) if counts.size else 0
        owner = np.repeat(np.arange(ids.size), counts)
        slot = np.arange(sub.indices.size) - np.repeat(sub.indptr[:-1],
                                                       counts)
        self.ids = ids
        self.nbr = np.full((ids.size, width), g.vertex_count, dtype='int64')
        self.nbr[owner, slot] = sub.indices
        self.weight = np.zeros((ids.size, width), dtype='float64')
        self.weight[owner, slot] = 1.0


def color_blocks(g, arr):
    """
    Greedy coloring of the interior in vertex-id order, one block per color.
    """
    sub = g.csr[arr][:, arr]
    G = nx.from_scipy_sparse_array(sub)
    colors = nx.greedy_color(G, strategy=lambda G, colors: sorted(G))
    labels = np.array([colors[i] for i in range(arr.size)], dtype='int64')
    return [_Block(g, arr[labels == c]) for c in np.unique(labels)]


class CoordinateDescent(object):
    """
    Nonlinear Gauss-Seidel on Xi. Interior vertices are visited block by
    block (color classes of a greedy coloring in id order); members of a
    block share no edge, so relaxing a block at once is the same as
    relaxing its members one after the other. After ESTIMATE_SWEEPS plain
    sweeps the steps are over-relaxed by a factor read off their
    contraction rate, and dropped back to 1 when CHECK_SWEEPS relaxed
    sweeps contract no faster. A vertex whose over-relaxed value would
    raise its local energy takes the plain minimizer, so Xi never
    increases.

    Args:
        init(str): mean, min, max or picard (lagged-diffusivity warm start
            from the mean, exact for p = 2)
        inner_tol(float): tolerance on the 1-D derivative
        print_interval(int): log every that many sweeps
        picard_iterations(int): cap on warm start linear solves
        relaxation(str|float): auto, or a fixed factor in (0, 2), 1.0 is
            plain Gauss-Seidel
        writer: optional visualdl LogWriter
    """

    def __init__(self,
                 init='mean',
                 inner_tol=1e-12,
                 print_interval=1000,
                 picard_iterations=60,
                 relaxation='auto',
                 writer=None,
                 tag='dirichlet'):
        if relaxation != 'auto' and not (isinstance(
                relaxation, (int, float)) and 0 < relaxation < 2):
            raise DomainException(
                "relaxation({}) should be auto or a number in (0, 2)".format(
                    relaxation))
        self.init = init
        self.inner_tol = inner_tol
        self.print_interval = print_interval
        self.picard_iterations = picard_iterations
        self.relaxation = relaxation
        self.writer = writer
        self.tag = tag

    def __call__(self, prob, initial=None):
        g = prob.graph
        n = g.vertex_count
        p = prob.p
        arr = prob.region.interior_array
        eids = touching_edges(g, arr)

        dense = prob.initial_dense(
            self.init if initial is None else 'mean')
        if initial is not None:
            dense[arr] = initial.values_at(arr)
        elif self.init == 'picard':
            from ppot.solver.linear import picard_warm_start
            dense = picard_warm_start(
                prob, dense, max_iterations=self.picard_iterations)

        def measure():
            lap = laplacian_values(g, dense[:n], arr, p)
            return float(np.max(np.abs(lap))), edge_energy(g, dense[:n],
                                                           eids, p)

        res, energy = measure()
        energy_trace = [energy]
        residual_trace = [res]
        used = 0
        sweeps = 0
        blocks = None
        phase = 'estimate' if self.relaxation == 'auto' else 'fixed'
        omega = 1.0 if phase == 'estimate' else float(self.relaxation)
        plain_rate = None
        steps = []
        tic = time.time()
        while res > prob.tolerance:
            if used + arr.size > prob.max_iterations:
                best = VertexFunction.from_dense(dense[:n],
                                                 prob.region.closure_array)
                raise ConvergenceException(
                    "Dirichlet solve on {} vertices did not reach "
                    "tolerance {}".format(arr.size, prob.tolerance),
                    best=best,
                    residual=res,
                    iterations=used)
            if blocks is None:
                blocks = color_blocks(g, arr)
            before = dense[arr].copy() if phase != 'fixed' else None
            for block in blocks:
                Y = dense[block.nbr]
                t = _local_minimizers(Y, block.weight, p, self.inner_tol)
                if omega != 1.0:
                    cur = dense[block.ids]
                    over = cur + omega * (t - cur)
                    keep = _local_energies(Y, block.weight, over, p) <= \
                        _local_energies(Y, block.weight, cur, p)
                    t = np.where(keep, over, t)
                dense[block.ids] = t
            used += arr.size
            sweeps += 1
            if phase != 'fixed':
                steps.append(float(np.linalg.norm(dense[arr] - before)))
                if phase == 'estimate' and len(steps) > ESTIMATE_SWEEPS:
                    plain_rate = contraction_rate(steps)
                    omega = relaxation_factor(plain_rate)
                    phase = 'check' if omega != 1.0 else 'fixed'
                    steps = []
                elif phase == 'check' and len(steps) > CHECK_SWEEPS:
                    rate = contraction_rate(steps)
                    if rate is not None and rate >= plain_rate:
                        omega = 1.0
                    phase = 'fixed'
                    logger.info("sweep {}: relaxation factor {:.4f}".format(
                        sweeps, omega))
            res, new_energy = measure()
            if new_energy > energy + ENERGY_SLACK * max(energy, 1e-300):
                raise ConsistencyException(
                    "energy increased during a sweep",
                    detail="sweep {}: {!r} -> {!r}".format(sweeps, energy,
                                                           new_energy))
            energy = new_energy
            energy_trace.append(energy)
            residual_trace.append(res)
            logger.scaler(self.tag + '/residual', res, sweeps, self.writer)
            if self.print_interval and sweeps % self.print_interval == 0:
                logger.info(
                    "sweep {}: residual {:.3e}, energy {:.9e}, elapsed "
                    "{:.2f}s".format(sweeps, res, energy, time.time() - tic))

        values = VertexFunction.from_dense(dense[:n],
                                           prob.region.closure_array)
        return DirichletSolution(values, res, used, energy, sweeps,
                                 energy_trace, residual_trace, omega)


def solve_dirichlet(prob, solver=None, initial=None):
    """
    Solve a DirichletProblem, by default with CoordinateDescent.
    """
    if solver is None:
        solver = CoordinateDescent()
    if isinstance(solver, CoordinateDescent):
        return solver(prob, initial=initial)
    return solver(prob)
