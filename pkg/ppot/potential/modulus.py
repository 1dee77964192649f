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

import networkx as nx
import numpy as np
from scipy import sparse
from scipy.optimize import brentq, minimize

from ppot.calculus.functions import EdgeDensity, VertexFunction, as_exponent
from ppot.graph.graph import EdgePath, Region, component_arrays
from ppot.graph.graph import induced_subgraph, vertex_array
from ppot.solver import DirichletProblem, SolverBuilder
from ppot.utils import logger
from ppot.utils.exceptions import ConvergenceException, DomainException

__all__ = [
    'PathFamily', 'ModulusResult', 'admissible_check', 'modulus',
    'duality_check', 'duality_summary', 'exceptional_modulus',
    'two_sided_capacity', 'ray_family'
]

ADMISSIBLE_SLACK = 1e-9
ACTIVE_WINDOW = 1e-6


class PathFamily(object):
    """
    A family of paths without self-intersections, either an explicit list
    or every path from A to B inside the subgraph spanned by S.
    """

    def __init__(self, graph, paths=None, sources=None, targets=None,
                 within=None):
        self.graph = graph
        if paths is not None:
            self.kind = 'explicit'
            self.paths = [
                p if isinstance(p, EdgePath) else EdgePath(graph, p)
                for p in paths
            ]
            self.sources = self.targets = self.within = None
        else:
            self.kind = 'connecting'
            self.paths = None
            self.sources = vertex_array(graph, sources)
            self.targets = vertex_array(graph, targets)
            self.within = np.arange(graph.vertex_count) if within is None \
                else vertex_array(graph, within)
            if self.sources.size == 0 or self.targets.size == 0:
                raise DomainException(
                    "connecting family needs nonempty A and B")
            self.sources = np.intersect1d(self.sources, self.within)
            self.targets = np.intersect1d(self.targets, self.within)

    @classmethod
    def explicit(cls, graph, paths):
        return cls(graph, paths=paths)

    @classmethod
    def connecting(cls, graph, A, B, S=None):
        return cls(graph, sources=A, targets=B, within=S)

    def subgraph(self):
        """
        networkx view of the subgraph spanned by S, edges carry their id
        """
        if not hasattr(self, '_nx'):
            g = self.graph
            inside = np.zeros(g.vertex_count, dtype=bool)
            inside[self.within] = True
            keep = inside[g.edges[:, 0]] & inside[g.edges[:, 1]]
            H = nx.Graph()
            H.add_nodes_from(self.within.tolist())
            H.add_edges_from((int(u), int(v), {
                'eid': int(i)
            }) for i, (u, v) in zip(
                np.nonzero(keep)[0], g.edges[keep].tolist()))
            self._nx = H
        return self._nx

    def has_empty_path(self):
        if self.kind == 'explicit':
            return any(p.length == 0 for p in self.paths)
        return np.intersect1d(self.sources, self.targets).size > 0

    def materialize(self, max_paths=10000):
        """
        The paths of the family, for a connecting family every simple path
        from A to B in the subgraph whose inner vertices avoid A and B, at
        most max_paths of them in a deterministic order
        """
        if self.kind == 'explicit':
            return list(self.paths)
        if self.has_empty_path():
            return [EdgePath(self.graph, [int(x)])
                    for x in np.intersect1d(self.sources, self.targets)]
        H = self.subgraph().copy()
        starts = set(self.sources.tolist())
        stops = set(self.targets.tolist())
        ends = starts | stops
        # edges inside A or inside B never start a minimal path
        H.remove_edges_from([(u, v) for u, v in list(H.edges())
                             if u in ends and v in ends and not (
                                 (u in starts and v in stops) or
                                 (v in starts and u in stops))])
        src, dst = 'source', 'target'
        H.add_edges_from((src, int(a)) for a in self.sources)
        H.add_edges_from((int(b), dst) for b in self.targets)
        out = []
        for walk in itertools.islice(
                nx.all_simple_paths(H, src, dst), max_paths):
            inner = walk[1:-1]
            if any(x in ends for x in inner[1:-1]):
                continue
            out.append(EdgePath(self.graph, inner))
        out.sort(key=lambda p: (p.length, p.vertices))
        return out


class ModulusResult(object):
    """
    modulus (xi_p of the density), extremal length, optimal density,
    active paths and the relative duality gap
    """

    def __init__(self,
                 modulus,
                 density,
                 active_paths=None,
                 dual_gap=0.0,
                 infinite=False,
                 rounds=0,
                 paths_used=0):
        self.modulus = float(modulus)
        self.infinite = bool(infinite)
        if self.infinite:
            self.extremal_length = 0.0
        elif self.modulus > 0:
            self.extremal_length = 1.0 / self.modulus
        else:
            self.extremal_length = float('inf')
        self.density = density
        self.active_paths = list(active_paths or [])
        self.dual_gap = float(dual_gap)
        self.rounds = int(rounds)
        self.paths_used = int(paths_used)

    def lines(self):
        return [
            'modulus: {!r}'.format(self.modulus),
            'extremal_length: {!r}'.format(self.extremal_length),
            'infinite: {}'.format('yes' if self.infinite else 'no'),
            'active_paths: {}'.format(len(self.active_paths)),
            'dual_gap: {!r}'.format(self.dual_gap),
        ]

    def __repr__(self):
        return "ModulusResult(modulus={}, gap={})".format(
            self.modulus, self.dual_gap)


def admissible_check(rho, gamma):
    """
    sum of rho over the edges of gamma against 1.

    Returns:
        admissible(bool), slack(float) = sum - 1
    """
    total = float(sum(rho[e] for e in gamma.edges))
    return total >= 1.0 - ADMISSIBLE_SLACK, total - 1.0


class _DualProgram(object):
    """
    Concave dual of min sum rho^p s.t. every working path has rho-length
    >= 1, in path multipliers lam >= 0:
    rho_e = (F_e / p)^(1/(p-1)) with F = flow of lam through e, and
    g(lam) = sum lam - (p - 1) sum (F_e / p)^(p/(p-1)).
    """

    def __init__(self, edge_count, p):
        self.edge_count = edge_count
        self.p = p
        self.paths = []
        self.lam = np.zeros(0)
        self._incidence = None

    def add(self, edge_ids):
        self.paths.append(np.asarray(edge_ids, dtype='int64'))
        self.lam = np.append(self.lam, 0.0)
        self._incidence = None

    @property
    def incidence(self):
        if self._incidence is None:
            rows = np.concatenate([
                np.full(e.size, i, dtype='int64')
                for i, e in enumerate(self.paths)
            ])
            cols = np.concatenate(self.paths)
            self._incidence = sparse.csr_matrix(
                (np.ones(rows.size), (rows, cols)),
                shape=(len(self.paths), self.edge_count))
        return self._incidence

    def density(self, lam=None):
        lam = self.lam if lam is None else lam
        flow = self.incidence.T.dot(lam)
        return (np.maximum(flow, 0.0) / self.p)**(1.0 / (self.p - 1.0))

    def dual_value(self, lam=None):
        lam = self.lam if lam is None else lam
        flow = self.incidence.T.dot(lam)
        q = self.p / (self.p - 1.0)
        return float(
            np.sum(lam) - (self.p - 1.0) * np.sum(
                (np.maximum(flow, 0.0) / self.p)**q))

    def lengths(self, rho):
        return self.incidence.dot(rho)

    def gap(self):
        """
        relative gap between the rescaled primal density and the dual
        """
        rho = self.density()
        shortest = float(self.lengths(rho).min())
        if shortest <= 0.0:
            return float('inf')
        primal = float(np.sum(rho**self.p)) / shortest**self.p
        return max(primal - self.dual_value(), 0.0) / primal

    def sweep(self):
        """
        One pass of exact coordinate ascent over the path multipliers.
        """
        p = self.p
        flow = self.incidence.T.dot(self.lam)
        expo = 1.0 / (p - 1.0)
        for i, e in enumerate(self.paths):
            base = np.maximum(flow[e] - self.lam[i], 0.0)

            def excess(t):
                return float(np.sum(((base + t) / p)**expo)) - 1.0

            if excess(0.0) >= 0.0:
                t = 0.0
            else:
                hi = p * (1.0 + float(base.max()))
                t = brentq(excess, 0.0, hi, xtol=1e-300, rtol=1e-15,
                           maxiter=500)
            flow[e] = base + t
            self.lam[i] = t

    def polish(self, maxiter=5000):
        """
        L-BFGS-B ascent on the dual from the current multipliers.
        """
        incidence = self.incidence

        def objective(lam):
            rho = self.density(lam)
            return -self.dual_value(lam), -(1.0 - incidence.dot(rho))

        res = minimize(
            objective,
            self.lam,
            jac=True,
            method='L-BFGS-B',
            bounds=[(0.0, None)] * self.lam.size,
            options={'maxiter': maxiter,
                     'ftol': 1e-16,
                     'gtol': 1e-13})
        if -res.fun >= self.dual_value():
            self.lam = np.maximum(res.x, 0.0)

    def solve(self, gap_tol, max_sweeps):
        gap = self.gap() if self.paths else 0.0
        for it in range(max_sweeps):
            if gap <= gap_tol:
                break
            self.sweep()
            if it % 50 == 49 and len(self.paths) > 1:
                self.polish()
            gap = self.gap()
        return gap


def _finish(graph, program, paths, p, gap_tol, rounds):
    """
    Rescale the dual density to be admissible on every given path and
    package the result.
    """
    rho = program.density()
    edge_ids = [q.edge_ids for q in paths]
    lengths = np.array([rho[e].sum() for e in edge_ids])
    shortest = float(lengths.min())
    if shortest <= 0.0:
        raise ConvergenceException(
            "modulus density leaves a path uncovered",
            best=EdgeDensity(graph, rho),
            residual=shortest,
            iterations=rounds)
    rho = rho / shortest
    density = EdgeDensity(graph, rho)
    value = float(np.sum(rho**p))
    dual = program.dual_value()
    gap = max(value - dual, 0.0) / value
    lengths = lengths / shortest
    active = [q for q, l in zip(paths, lengths) if l - 1.0 <= ACTIVE_WINDOW]
    if gap > gap_tol:
        raise ConvergenceException(
            "modulus duality gap {:.3e} above {:.1e}".format(gap, gap_tol),
            best=density,
            residual=gap,
            iterations=rounds)
    return ModulusResult(value, density, active, gap, rounds=rounds,
                         paths_used=len(program.paths))


def _zero_result(graph):
    return ModulusResult(0.0, EdgeDensity.constant(graph, 0.0))


def _infinite_result(graph):
    return ModulusResult(float('inf'), EdgeDensity.constant(graph, 0.0),
                         infinite=True)


def _explicit_modulus(graph, paths, p, gap_tol, max_sweeps):
    if not paths:
        return _zero_result(graph)
    if any(q.length == 0 for q in paths):
        return _infinite_result(graph)
    program = _DualProgram(graph.edge_count, p)
    # paths with the same edge set give the same constraint
    seen = set()
    for q in paths:
        key = tuple(sorted(q.edge_ids.tolist()))
        if key not in seen:
            seen.add(key)
            program.add(q.edge_ids)
    program.solve(gap_tol * 1e-3, max_sweeps)
    return _finish(graph, program, paths, p, gap_tol, 1)


def _shortest_path(family, rho):
    """
    rho-shortest path from A to B, ties broken by the smallest end vertex
    """
    H = family.subgraph()
    sources = [int(a) for a in family.sources]
    dist, routes = nx.multi_source_dijkstra(
        H, sources, weight=lambda u, v, d: rho[d['eid']])
    best = None
    for b in family.targets.tolist():
        if b in dist and (best is None or dist[b] < dist[best]):
            best = b
    if best is None:
        return None, None
    return float(dist[best]), EdgePath(family.graph, routes[best])


def _connecting_modulus(family, p, gap_tol, violation, max_rounds,
                        max_sweeps):
    graph = family.graph
    if family.sources.size == 0 or family.targets.size == 0:
        return _zero_result(graph)
    if family.has_empty_path():
        return _infinite_result(graph)
    program = _DualProgram(graph.edge_count, p)
    rho = np.zeros(graph.edge_count)
    length, gamma = _shortest_path(family, rho)
    if gamma is None:
        return _zero_result(graph)
    working = []
    rounds = 0
    while length < 1.0 - violation:
        if rounds >= max_rounds:
            raise ConvergenceException(
                "constraint generation did not close after {} "
                "rounds".format(rounds),
                best=EdgeDensity(graph, rho),
                residual=1.0 - length,
                iterations=rounds)
        if gamma in working:
            # the shortest path is already a constraint: solve tighter
            program.solve(gap_tol * 1e-6, max_sweeps)
        else:
            working.append(gamma)
            program.add(gamma.edge_ids)
            program.solve(gap_tol * 1e-3, max_sweeps)
        rounds += 1
        rho = program.density()
        length, gamma = _shortest_path(family, rho)
        logger.info("constraint round {}: {} paths, shortest length "
                    "{:.9f}".format(rounds, len(working), length))
    # rescaling by the global shortest length makes rho admissible for
    # every path of the family, not only the working ones
    result = _finish(graph, program, working, p, gap_tol, rounds)
    final, _ = _shortest_path(family, result.density.values)
    if final < 1.0 - ADMISSIBLE_SLACK:
        scale = 1.0 / final
        density = EdgeDensity(graph, result.density.values * scale)
        value = float(np.sum(density.values**p))
        result = ModulusResult(
            value,
            density,
            result.active_paths,
            max(value - program.dual_value(), 0.0) / value,
            rounds=rounds,
            paths_used=len(working))
    return result


def modulus(family, p, gap_tol=1e-6, violation=1e-7, max_rounds=500,
            max_sweeps=20000):
    """
    p-modulus of a path family: the least xi_p over densities giving every
    path rho-length at least 1. Connecting families are solved by
    constraint generation with a rho-shortest-path oracle.
    """
    p = as_exponent(p)
    if family.kind == 'explicit':
        return _explicit_modulus(family.graph, family.paths, p, gap_tol,
                                 max_sweeps)
    return _connecting_modulus(family, p, gap_tol, violation, max_rounds,
                               max_sweeps)


def exceptional_modulus(family, predicate, p, max_paths=10000, **kwargs):
    """
    Modulus of the paths of the family where predicate fails.
    """
    paths = family.materialize(max_paths=max_paths)
    failing = [q for q in paths if not predicate(q)]
    if not failing:
        return _zero_result(family.graph)
    return modulus(PathFamily.explicit(family.graph, failing), p, **kwargs)


def two_sided_capacity(g, A, B, S, p, solver_config=None, tolerance=1e-12,
                       max_iterations=10000000):
    """
    Energy of the p-harmonic u with u = 1 on A, u = 0 on B inside the
    subgraph spanned by S, every edge of that subgraph counted once.

    Returns:
        value(float), u(VertexFunction on S)
    """
    p = as_exponent(p)
    S = vertex_array(g, S)
    A = np.intersect1d(vertex_array(g, A), S)
    B = np.intersect1d(vertex_array(g, B), S)
    if np.intersect1d(A, B).size:
        raise DomainException("A and B should be disjoint",
                              vertex=int(np.intersect1d(A, B)[0]))
    solver_config = solver_config or {
        'function': 'CoordinateDescent',
        'params': {
            'init': 'picard'
        }
    }
    values = np.zeros(g.vertex_count)
    values[A] = 1.0
    total = 0.0
    for comp in component_arrays(g, S):
        has_a = np.intersect1d(comp, A).size > 0
        has_b = np.intersect1d(comp, B).size > 0
        if not (has_a and has_b):
            if has_a:
                values[comp] = 1.0
            continue
        sub, ids = induced_subgraph(g, comp)
        local = np.zeros(sub.vertex_count)
        fixed = np.isin(ids, A) | np.isin(ids, B)
        local[np.isin(ids, A)] = 1.0
        unknown = np.nonzero(~fixed)[0]
        if unknown.size:
            region = Region(sub, unknown)
            bnd = region.boundary_array
            prob = DirichletProblem(
                region,
                VertexFunction(bnd, local[bnd]),
                p,
                tolerance=tolerance,
                max_iterations=max_iterations)
            sol = SolverBuilder(**solver_config)()(prob)
            local[unknown] = sol.values.values_at(unknown)
        values[ids] = local
        e = sub.edges
        total += float(np.sum(np.abs(local[e[:, 0]] - local[e[:, 1]])**p))
    return total, VertexFunction(S, values[S])


def duality_summary(g, A, B, S, p, eps=1e-12, **kwargs):
    """
    Modulus of the A-to-B family inside S next to the two-sided capacity.
    """
    p = as_exponent(p)
    S = np.arange(g.vertex_count) if S is None else vertex_array(g, S)
    A = vertex_array(g, A)
    B = vertex_array(g, B)
    if np.intersect1d(A, B).size:
        raise DomainException("A and B should be disjoint",
                              vertex=int(np.intersect1d(A, B)[0]))
    result = modulus(PathFamily.connecting(g, A, B, S), p, **kwargs)
    cap, _ = two_sided_capacity(g, A, B, S, p)
    if result.modulus == 0.0 and cap == 0.0:
        gap = 0.0
    else:
        gap = abs(result.modulus - cap) / max(cap, eps)
    return {'modulus': result, 'capacity': cap, 'gap': gap}


def duality_check(g, A, B, S, p, **kwargs):
    """
    |Mod - Cap| / max(Cap, eps) for the A-to-B family inside S
    """
    return duality_summary(g, A, B, S, p, **kwargs)['gap']


def ray_family(family, F):
    """
    Paths inside F from its vertex closest to the root (smallest id on
    ties) to the frontier part of F.
    """
    g = family.graph
    F = vertex_array(g, F)
    if F.size == 0:
        raise DomainException("ray family of an empty set")
    dist = family.distances[F]
    start = int(F[np.argmin(dist)])
    targets = np.intersect1d(F, family.frontier_array)
    if targets.size == 0:
        raise DomainException("set does not reach the frontier")
    return PathFamily.connecting(g, [start], targets, F)
