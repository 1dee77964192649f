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

from ppot.calculus.functions import VertexFunction, as_exponent
from ppot.calculus.operators import edge_energy, touching_edges
from ppot.graph.generators import TruncatedFamily, ends
from ppot.graph.graph import Graph, Region, component_arrays, vertex_array
from ppot.solver import DirichletProblem, SolverBuilder, ScheduleBuilder
from ppot.solver.schedule import check_radii
from ppot.utils import logger
from ppot.utils.exceptions import ConsistencyException, DomainException
from ppot.utils.metrics import aitken_limit, relative_change
from ppot.utils.misc import run_ordered

__all__ = [
    'CapacityProblem', 'ExhaustionReport', 'capacity_finite', 'classify',
    'hyperbolic_ends', 'as_family'
]

HYPERBOLIC = 'hyperbolic'
PARABOLIC = 'parabolic'
UNDECIDED = 'undecided'


def as_family(host, root=0):
    """
    Use a plain graph as a family whose frontier is the set of vertices
    farthest from root.
    """
    if isinstance(host, TruncatedFamily):
        return host
    if isinstance(host, Graph):
        radius = int(host.distances_from(root).max())
        return TruncatedFamily(host, 'graph', radius, root=root)
    raise DomainException("host should be a TruncatedFamily or a Graph")


def exhaustion_limit(values):
    """
    Aitken estimate of the limit of a trace, the last value when the
    trace does not contract geometrically
    """
    if not values:
        return None
    limit = aitken_limit(values)
    return values[-1] if limit is None else limit


class ExhaustionReport(object):
    """
    Values of an exhaustion along a radius schedule with the verdict drawn
    from them.

    Args:
        entries(list): (radius, value) pairs
        monotone_nonincreasing(bool): trace never goes up beyond slack
        limit_estimate(float): extrapolated limit
        verdict(str): hyperbolic, parabolic or undecided (capacity), or
            massive, not-massive, undecided (inner potentials)
        details(list): one dict per entry with solver diagnostics
    """

    def __init__(self,
                 entries,
                 monotone_nonincreasing,
                 limit_estimate,
                 verdict,
                 details=None,
                 settings=None):
        self.entries = list(entries)
        self.monotone_nonincreasing = bool(monotone_nonincreasing)
        self.limit_estimate = limit_estimate
        self.verdict = verdict
        self.details = list(details or [])
        self.settings = dict(settings or {})

    @property
    def radii(self):
        return [r for r, _ in self.entries]

    @property
    def values(self):
        return [v for _, v in self.entries]

    def lines(self):
        """
        labeled lines, one "radius value" per entry then the verdict
        """
        out = ['{} {}'.format(k, self.settings[k])
               for k in sorted(self.settings)]
        out.extend('{} {!r}'.format(r, float(v)) for r, v in self.entries)
        out.append('monotone: {}'.format(
            'yes' if self.monotone_nonincreasing else 'no'))
        out.append('limit: {!r}'.format(
            None if self.limit_estimate is None else float(
                self.limit_estimate)))
        out.append('verdict: {}'.format(self.verdict))
        return out

    def __repr__(self):
        return "ExhaustionReport(verdict={}, limit={}, entries={})".format(
            self.verdict, self.limit_estimate, len(self.entries))


class CapacityProblem(object):
    """
    Cap_p(A, infinity, S) on a truncated family.

    Args:
        host(TruncatedFamily|Graph): truncation with a frontier
        A: finite nonempty vertex set inside S
        p(float): exponent
        S: vertex set standing for the infinite set, all vertices by default
        radius_schedule(list): strictly increasing radii, by default the
            schedule builder's radii up to the family radius
        tolerance(float): parabolic threshold
        stabilization(float): relative change accepted as stabilized
        slack(float): allowed increase between consecutive radii
        solver_config(dict): SolverBuilder function and params
        max_iterations(int): local update budget per solve
        num_workers(int): concurrent radii, 0 solves in order
        writer: optional visualdl LogWriter
    """

    def __init__(self,
                 host,
                 A,
                 p,
                 S=None,
                 radius_schedule=None,
                 tolerance=1e-4,
                 stabilization=0.01,
                 slack=1e-9,
                 solver_tol=1e-9,
                 solver_config=None,
                 max_iterations=1000000,
                 num_workers=0,
                 writer=None):
        self.host = as_family(host)
        g = self.host.graph
        self.p = as_exponent(p)
        self.A = vertex_array(g, A)
        if self.A.size == 0:
            raise DomainException("capacity needs a nonempty set A")
        self.S = np.arange(g.vertex_count) if S is None else vertex_array(
            g, S)
        missing = np.setdiff1d(self.A, self.S)
        if missing.size:
            raise DomainException("A should lie inside S",
                                  vertex=int(missing[0]))
        if radius_schedule is None:
            radius_schedule = ScheduleBuilder()(self.host.truncation_radius)
        self.radius_schedule = check_radii(radius_schedule)
        if self.radius_schedule[-1] > self.host.truncation_radius:
            raise DomainException(
                "schedule reaches {} beyond the truncation radius {}".format(
                    self.radius_schedule[-1], self.host.truncation_radius))
        self.tolerance = float(tolerance)
        self.stabilization = float(stabilization)
        self.slack = float(slack)
        self.solver_tol = float(solver_tol)
        self.solver_config = solver_config or {
            'function': 'CoordinateDescent',
            'params': {
                'init': 'picard'
            }
        }
        self.max_iterations = int(max_iterations)
        self.num_workers = int(num_workers)
        self.writer = writer

    def solver(self):
        return SolverBuilder(**self.solver_config)(writer=self.writer,
                                                    tag='capacity')

    def solve_radius(self, radius):
        """
        Solve the truncated problem at one radius.

        Returns:
            dict with radius, value (Xi over the truncated S, each edge
            touching it once), dirichlet_sum (literal I_p), residual,
            iterations
        """
        g = self.host.graph
        dist = self.host.distances
        if radius < 1 or radius > self.host.truncation_radius:
            raise DomainException("radius {} outside [1, {}]".format(
                radius, self.host.truncation_radius))
        outside = self.A[dist[self.A] >= radius]
        if outside.size:
            raise DomainException(
                "A is not inside the ball of radius {}".format(radius),
                vertex=int(outside[0]))
        s_r = self.S[dist[self.S] < radius]
        if len(component_arrays(g, s_r)) != 1:
            raise DomainException(
                "truncation of S at radius {} is disconnected".format(radius))

        dense = np.zeros(g.vertex_count, dtype='float64')
        dense[self.A] = 1.0
        unknown = np.setdiff1d(s_r, self.A)
        residual, iterations = 0.0, 0
        if unknown.size:
            region = Region(g, unknown)
            bnd = region.boundary_array
            data = dense[bnd]
            prob = DirichletProblem(
                region,
                VertexFunction(bnd, data),
                self.p,
                tolerance=self.solver_tol,
                max_iterations=self.max_iterations)
            sol = self.solver()(prob)
            dense[unknown] = sol.values.values_at(unknown)
            residual, iterations = sol.residual, sol.iterations_used

        value = edge_energy(g, dense, touching_edges(g, s_r), self.p)
        pairs = g.csr[s_r]
        rows = np.repeat(s_r, np.diff(pairs.indptr))
        literal = float(
            np.sum(np.abs(dense[pairs.indices] - dense[rows])**self.p))
        return {
            'radius': int(radius),
            'value': value,
            'dirichlet_sum': literal,
            'residual': residual,
            'iterations': iterations
        }


def capacity_finite(prob, radius):
    """
    Capacity of A relative to the frontier shell at the given radius.
    """
    return prob.solve_radius(radius)['value']


def verdict_from_trace(values, tolerance, stabilization):
    """
    parabolic when the trace or its extrapolation falls below tolerance,
    hyperbolic when the last two raw values (or the last two
    extrapolations) agree within stabilization above tolerance
    """
    limit = exhaustion_limit(values)
    if limit is not None:
        limit = max(float(limit), 0.0)
    if values and (values[-1] < tolerance or limit < tolerance):
        return PARABOLIC, limit
    if len(values) >= 2 and limit >= tolerance:
        if relative_change(values[-2], values[-1]) < stabilization:
            return HYPERBOLIC, limit
        if len(values) >= 4:
            previous = exhaustion_limit(values[:-1])
            if previous is not None and relative_change(
                    previous, limit) < stabilization:
                return HYPERBOLIC, limit
    return UNDECIDED, limit


def classify(prob):
    """
    Run the capacity along the schedule and draw the verdict.
    """
    details = run_ordered(prob.solve_radius, prob.radius_schedule,
                          prob.num_workers, 'capacity')
    values = [d['value'] for d in details]
    for step, d in enumerate(details):
        logger.info("capacity radius {}: {:.9e} (residual {:.2e})".format(
            d['radius'], d['value'], d['residual']))
        logger.scaler('capacity/value', d['value'], step, prob.writer)
    for prev, cur, d in zip(values[:-1], values[1:], details[1:]):
        if cur > prev + prob.slack * max(abs(prev), 1.0):
            raise ConsistencyException(
                "capacity increased along the schedule",
                detail="radius {}: {!r} > {!r}, tighten the solver "
                "tolerance".format(d['radius'], cur, prev))
    verdict, limit = verdict_from_trace(values, prob.tolerance,
                                        prob.stabilization)
    settings = {
        'p': prob.p,
        'tolerance': prob.tolerance,
        'stabilization': prob.stabilization,
        'schedule': ','.join(str(r) for r in prob.radius_schedule)
    }
    return ExhaustionReport(
        [(d['radius'], d['value']) for d in details],
        True,
        limit,
        verdict,
        details=details,
        settings=settings)


def hyperbolic_ends(family, radius, p, schedule=None, **kwargs):
    """
    Classify every end of the truncation outside the given radius: each end
    is viewed as its own family (induced subgraph, inherited levels) with A
    its innermost shell.

    Returns:
        list of (end vertex set, ExhaustionReport)
    """
    out = []
    for end in ends(family, radius):
        sub, ids = family.restrict(end)
        A = np.nonzero(sub.distances == 0)[0]
        if schedule is None:
            radii = ScheduleBuilder()(sub.truncation_radius)
        else:
            radii = [r - radius for r in schedule if r - radius >= 2]
        radii = [r for r in radii if 2 <= r <= sub.truncation_radius]
        if not radii:
            raise DomainException(
                "no schedule radius lies beyond the end radius {}".format(
                    radius))
        report = classify(
            CapacityProblem(sub, A, p, radius_schedule=radii, **kwargs))
        logger.info("end at vertex {}: {}".format(
            int(ids[sub.root]), report.verdict))
        out.append((end, report))
    return out
