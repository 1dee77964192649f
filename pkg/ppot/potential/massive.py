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

import math

import numpy as np
from scipy.sparse import csgraph

from ppot.calculus.functions import VertexFunction, as_exponent, sup_norm
from ppot.calculus.operators import dirichlet_sum
from ppot.graph.generators import ends
from ppot.graph.graph import EdgePath, Region, boundary_array
from ppot.graph.graph import component_arrays, vertex_array
from ppot.potential.capacity import ExhaustionReport, exhaustion_limit
from ppot.potential.modulus import PathFamily, modulus
from ppot.solver import DirichletProblem, ScheduleBuilder, SolverBuilder
from ppot.solver.schedule import check_radii, refine_radii
from ppot.utils import logger
from ppot.utils.exceptions import ConvergenceException, DomainException
from ppot.utils.metrics import cluster_limits, relative_change
from ppot.utils.misc import TraceMeter, run_ordered

__all__ = [
    'MassiveCertificate', 'HarmonicWitness', 'ACResult', 'inner_potential',
    'level_set_components', 'bhd_basis', 'prescribed_harmonic',
    'disjoint_massive_search', 'boundary_lower_bound', 'asymptotic_value',
    'sample_rays', 'ac_check', 'liouville_evidence'
]

MASSIVE = 'massive'
NOT_MASSIVE = 'not-massive'
UNDECIDED = 'undecided'

AC_CONSISTENT = 'AC-consistent'
AC_VIOLATED = 'AC-violated'

# radii needed to compare two extrapolated limits
MIN_STABLE_RADII = 4


class MassiveCertificate(object):
    """
    Evidence that a vertex set carries an inner potential.

    Args:
        candidate(frozenset): the set U
        inner_potential(VertexFunction): solution at the largest radius on
            the truncated U and its outer boundary
        sup_value(float): retained fraction of the anchor maximum in the
            extrapolated limit, in [0, 1]
        raw_sup(float): anchor maximum at the largest radius
        inner_sup(float): maximum over U inside half the largest radius
        laplacian_residual(float): worst interior max |Delta_p u|
        boundary_zero_violation(float): max |u| on the outer boundary of U
        exhaustion(ExhaustionReport): anchor maximum per radius
        verdict(str): massive, not-massive or undecided
        retention(list): retained fraction per radius
        limits(list): extrapolated limit from each window of three radii
        stability(float): 1 minus the relative change of the last two
            limits, the last two retentions when only three radii ran
    """

    def __init__(self, candidate, inner_potential, sup_value, raw_sup,
                 inner_sup, laplacian_residual, boundary_zero_violation,
                 exhaustion, verdict, retention=None, limits=None,
                 stability=0.0):
        self.candidate = frozenset(candidate)
        self.inner_potential = inner_potential
        self.sup_value = float(sup_value)
        self.raw_sup = float(raw_sup)
        self.inner_sup = float(inner_sup)
        self.laplacian_residual = float(laplacian_residual)
        self.boundary_zero_violation = float(boundary_zero_violation)
        self.exhaustion = exhaustion
        self.verdict = verdict
        self.retention = list(retention or [])
        self.limits = list(limits or [])
        self.stability = float(stability)

    def summary(self):
        return 'verdict={} n={} sup={!r} residual={!r}'.format(
            self.verdict, self.exhaustion.radii[-1], self.sup_value,
            self.laplacian_residual)

    def lines(self):
        out = ['candidate_size: {}'.format(len(self.candidate)),
               'smallest_vertex: {}'.format(min(self.candidate))]
        out.extend(self.exhaustion.lines())
        out.extend([
            'retention: {}'.format(' '.join(
                repr(float(r)) for r in self.retention)),
            'limits: {}'.format(' '.join(
                repr(float(v)) for v in self.limits)),
            'stability: {!r}'.format(self.stability),
            'raw_sup: {!r}'.format(self.raw_sup),
            'inner_sup: {!r}'.format(self.inner_sup),
            'boundary_zero_violation: {!r}'.format(
                self.boundary_zero_violation),
            self.summary()
        ])
        return out

    def __repr__(self):
        return "MassiveCertificate({})".format(self.summary())


class HarmonicWitness(object):
    """
    A bounded p-harmonic function on a truncation with its diagnostics.

    Args:
        values(VertexFunction): h on the ball of the largest radius
        dirichlet_sum_trace(list): (radius, I_p over the interior)
        bound(float): sup norm of h
        residual(float): interior max |Delta_p h| at the largest radius
        branch_profile(list): h along one sampled ray per branch
        core_trace(list): (radius, h on the fixed core) per radius
    """

    def __init__(self, values, dirichlet_sum_trace, bound, residual,
                 branch_profile=None, core_trace=None, boundary_values=None):
        self.values = values
        self.dirichlet_sum_trace = list(dirichlet_sum_trace)
        self.bound = float(bound)
        self.residual = float(residual)
        self.branch_profile = list(branch_profile or [])
        self.core_trace = list(core_trace or [])
        self.boundary_values = list(boundary_values or [])

    @property
    def radii(self):
        return [r for r, _ in self.dirichlet_sum_trace]

    def lines(self):
        out = ['boundary_values: {}'.format(' '.join(
            repr(float(a)) for a in self.boundary_values))]
        out.extend('{} {!r}'.format(r, float(v))
                   for r, v in self.dirichlet_sum_trace)
        for k, profile in enumerate(self.branch_profile):
            out.append('branch {}: {}'.format(k, ' '.join(
                '{:.6f}'.format(v) for v in profile)))
        out.append('bound: {!r}'.format(self.bound))
        out.append('residual: {!r}'.format(self.residual))
        return out

    def __repr__(self):
        return "HarmonicWitness(bound={}, residual={})".format(
            self.bound, self.residual)


class ACResult(object):
    """
    Ray limits of a function on a set, grouped into clusters.
    """

    def __init__(self, verdict, constant=None, clusters=None, limits=None,
                 exceptional_modulus=0.0, total_modulus=0.0, ratio=0.0):
        self.verdict = verdict
        self.constant = constant
        self.clusters = list(clusters if clusters is not None else [])
        self.limits = list(limits if limits is not None else [])
        self.exceptional_modulus = float(exceptional_modulus)
        self.total_modulus = float(total_modulus)
        self.ratio = float(ratio)

    def lines(self):
        return [
            'rays: {}'.format(len(self.limits)),
            'clusters: {}'.format(' '.join(
                '{:.6f}'.format(c) for c in self.clusters)),
            'exceptional_modulus: {!r}'.format(self.exceptional_modulus),
            'total_modulus: {!r}'.format(self.total_modulus),
            'ratio: {!r}'.format(self.ratio),
            'constant: {}'.format('-' if self.constant is None else repr(
                float(self.constant))),
            'verdict: {}'.format(self.verdict),
        ]

    def __repr__(self):
        return "ACResult(verdict={}, clusters={})".format(self.verdict,
                                                         self.clusters)


def _schedule(family, schedule):
    if schedule is None:
        return ScheduleBuilder()(family.truncation_radius)
    radii = check_radii(schedule)
    if radii[-1] > family.truncation_radius:
        raise DomainException(
            "schedule reaches {} beyond the truncation radius {}".format(
                radii[-1], family.truncation_radius))
    return radii


def _default_solver(solver_config):
    return solver_config or {
        'function': 'CoordinateDescent',
        'params': {
            'init': 'picard'
        }
    }


def _solve(g, interior, dense, p, tol, max_iterations, solver_config, tag):
    """
    Solve in place on interior with dense holding the boundary values.
    """
    region = Region(g, interior)
    bnd = region.boundary_array
    prob = DirichletProblem(
        region,
        VertexFunction(bnd, dense[bnd]),
        p,
        tolerance=tol,
        max_iterations=max_iterations)
    sol = SolverBuilder(**solver_config)(tag=tag)(prob)
    dense[interior] = sol.values.values_at(interior)
    return sol


def _clamped_limit(values):
    return min(max(float(exhaustion_limit(values)), 0.0), values[-1])


def inner_potential(family,
                    U,
                    p,
                    schedule=None,
                    tol=1e-9,
                    massive_threshold=0.99,
                    vanish_threshold=1e-3,
                    boundary_tol=1e-12,
                    slack=1e-9,
                    solver_config=None,
                    max_iterations=10000000):
    """
    Exhaust U by balls: at radius n solve on U inside the ball with 0 on
    the outer boundary of U and 1 on the shell part of U, and follow the
    maximum over a fixed anchor set near U's closest approach to the root.
    Massive once the extrapolated limit of that maximum is positive and
    holds still: the limits from the last two windows of three radii agree
    to massive_threshold, or with only three radii the last two retained
    fractions reach it.

    Returns:
        MassiveCertificate
    """
    p = as_exponent(p)
    g = family.graph
    dist = family.distances
    U = vertex_array(g, U)
    if U.size == 0:
        raise DomainException("candidate set is empty")
    if np.intersect1d(U, family.frontier_array).size == 0:
        raise DomainException(
            "candidate set does not reach the frontier, a finite set "
            "cannot be massive")
    dU = boundary_array(g, U)
    if dU.size == 0:
        raise DomainException("candidate set has an empty outer boundary")
    solver_config = _default_solver(solver_config)
    closest = int(dist[U].min())

    radii = []
    for r in _schedule(family, schedule):
        if np.any(dist[U] < r):
            radii.append(r)
        else:
            logger.warning("radius {}: candidate has no vertex inside, "
                           "skipped".format(r))
    if not radii:
        raise DomainException("no schedule radius reaches the candidate")
    depth = closest + int(math.ceil((radii[0] - closest) / 2.0))
    anchor = U[dist[U] < max(depth, closest + 1)]

    trace = TraceMeter('anchor_sup')
    details = []
    worst_residual = 0.0
    dense = None
    for r in radii:
        interior = U[dist[U] < r]
        if len(component_arrays(g, interior)) != 1:
            raise DomainException(
                "candidate set is disconnected at radius {}".format(r))
        dense = np.zeros(g.vertex_count, dtype='float64')
        shell = U[dist[U] == r]
        dense[shell] = 1.0
        sol = _solve(g, interior, dense, p, tol, max_iterations,
                     solver_config, 'massive')
        worst_residual = max(worst_residual, sol.residual)
        half = interior[dist[interior] < r / 2.0]
        inner_sup = float(dense[half].max()) if half.size else 0.0
        trace.update(dense[anchor].max())
        details.append({
            'radius': r,
            'anchor_sup': trace.val,
            'inner_sup': inner_sup,
            'residual': sol.residual,
            'iterations': sol.iterations_used
        })
        logger.info("massive radius {}: anchor sup {:.9f}, inner sup "
                    "{:.9f}".format(r, trace.val, inner_sup))

    values = trace.history
    limits = [
        _clamped_limit(values[:k]) for k in range(3, len(values) + 1)
    ]
    limit = limits[-1] if limits else _clamped_limit(values)
    retention = [min(limit / v, 1.0) if v > 0 else 0.0 for v in values]
    if len(limits) >= 2:
        stability = 1.0 - relative_change(limits[-2], limits[-1])
    elif len(values) >= 3:
        stability = min(retention[-2:])
    else:
        stability = 0.0
    last = radii[-1]
    closure = np.union1d(U[dist[U] <= last], dU[dist[dU] <= last])
    potential = VertexFunction(closure, dense[closure])
    violation = float(np.max(np.abs(dense[dU])))

    if len(values) >= 3 and stability >= massive_threshold and \
            limit >= vanish_threshold and worst_residual <= tol and \
            violation <= boundary_tol:
        verdict = MASSIVE
    elif trace.is_nonincreasing(slack) and limit < vanish_threshold:
        verdict = NOT_MASSIVE
    else:
        verdict = UNDECIDED
    report = ExhaustionReport(
        [(r, v) for r, v in zip(radii, values)],
        trace.is_nonincreasing(slack),
        limit,
        verdict,
        details=details,
        settings={'p': p,
                  'schedule': ','.join(str(r) for r in radii)})
    return MassiveCertificate(
        U.tolist(),
        potential,
        retention[-1],
        values[-1],
        details[-1]['inner_sup'],
        worst_residual,
        violation,
        report,
        verdict,
        retention=retention,
        limits=limits,
        stability=stability)


def level_set_components(g, h, U, a, b):
    """
    Components of {x in U : h(x) > b} and of {x in U : h(x) < a} under
    inf_U h < a < b < sup_U h.

    Returns:
        superlevel(list), sublevel(list): frozensets ordered by smallest id
    """
    U = vertex_array(g, U)
    if U.size == 0:
        raise DomainException("level sets of an empty set")
    if not a < b:
        raise DomainException("level sandwich needs a < b, got a={} "
                              "b={}".format(a, b))
    hv = h.values_at(U)
    low, high = float(hv.min()), float(hv.max())
    if not low < a or not b < high:
        raise DomainException(
            "level sandwich {} < {} < {} < {} does not hold".format(
                low, a, b, high))
    superlevel = [frozenset(c.tolist())
                  for c in component_arrays(g, U[hv > b])]
    sublevel = [frozenset(c.tolist())
                for c in component_arrays(g, U[hv < a])]
    return superlevel, sublevel


def _branch_arrays(g, branches):
    arrays = [vertex_array(g, b) for b in branches]
    if not arrays:
        raise DomainException("no branches given")
    seen = np.zeros(g.vertex_count, dtype=bool)
    for arr in arrays:
        if arr.size == 0:
            raise DomainException("branch is empty")
        if seen[arr].any():
            raise DomainException("branches overlap",
                                  vertex=int(arr[seen[arr]][0]))
        seen[arr] = True
    return arrays


def prescribed_harmonic(family,
                        branches,
                        boundary_values,
                        p,
                        schedule=None,
                        tol=1e-9,
                        solver_config=None,
                        max_iterations=10000000,
                        rays=None):
    """
    Solve on each ball of the schedule with boundary_values[i] on the
    shell part of branch i and 0 on the rest of the shell.

    Returns:
        HarmonicWitness
    """
    p = as_exponent(p)
    g = family.graph
    dist = family.distances
    arrays = _branch_arrays(g, branches)
    if len(boundary_values) != len(arrays):
        raise DomainException("{} boundary values for {} branches".format(
            len(boundary_values), len(arrays)))
    target = np.zeros(g.vertex_count, dtype='float64')
    for arr, a in zip(arrays, boundary_values):
        target[arr] = float(a)
    solver_config = _default_solver(solver_config)
    radii = _schedule(family, schedule)
    core = np.nonzero(dist <= radii[0] // 2)[0]

    energy, core_trace = [], []
    dense, sol = None, None
    for r in radii:
        interior = np.nonzero(dist < r)[0]
        dense = np.zeros(g.vertex_count, dtype='float64')
        shell = np.nonzero(dist == r)[0]
        dense[shell] = target[shell]
        sol = _solve(g, interior, dense, p, tol, max_iterations,
                     solver_config, 'bhd')
        closure = np.nonzero(dist <= r)[0]
        h = VertexFunction(closure, dense[closure])
        energy.append((r, dirichlet_sum(g, h, interior, p)))
        core_trace.append((r, dense[core].copy()))
    values = VertexFunction(closure, dense[closure])
    if rays is None:
        rays = [sample_rays(family, arr, max_rays=1)[:1] for arr in arrays]
        rays = [rs[0] if rs else None for rs in rays]
    profile = []
    for ray in rays:
        on_ball = [x for x in ray.vertices if dist[x] <= radii[-1]] \
            if ray is not None else []
        profile.append(values.values_at(np.array(on_ball, dtype='int64'))
                       .tolist())
    return HarmonicWitness(
        values,
        energy,
        sup_norm(values),
        sol.residual,
        branch_profile=profile,
        core_trace=core_trace,
        boundary_values=boundary_values)


def bhd_basis(family, branches, p, schedule=None, tol=1e-9,
              solver_config=None, max_iterations=10000000, num_workers=0):
    """
    One witness per branch: boundary data 1 on the frontier part of the
    branch and 0 on the rest of the frontier.
    """
    arrays = _branch_arrays(family.graph, branches)
    rays = [sample_rays(family, arr, max_rays=1) for arr in arrays]
    rays = [rs[0] if rs else None for rs in rays]

    def build(k):
        data = [1.0 if j == k else 0.0 for j in range(len(arrays))]
        logger.info("bhd witness {} of {}".format(k + 1, len(arrays)))
        return prescribed_harmonic(
            family,
            arrays,
            data,
            p,
            schedule=schedule,
            tol=tol,
            solver_config=solver_config,
            max_iterations=max_iterations,
            rays=rays)

    return run_ordered(build, range(len(arrays)), num_workers, 'bhd')


def _seeds(family):
    if family.parts:
        return [np.array(sorted(part), dtype='int64') for part in family.parts]
    return [np.array(sorted(e), dtype='int64') for e in ends(family, 1)]


def disjoint_massive_search(family,
                            n_target,
                            p,
                            epsilon=0.2,
                            schedule=None,
                            seeds=None,
                            tol=1e-9,
                            solver_config=None,
                            max_iterations=10000000,
                            num_workers=0,
                            **certify_kwargs):
    """
    Seeds (wedge parts, else the ends of the truncation) give witnesses,
    the components of {h > 1 - epsilon} reaching the frontier are
    certified on the schedule with its gaps halved until it has
    MIN_STABLE_RADII radii, and massive ones are kept round-robin over the
    seeds while they stay disjoint from those already kept.

    Returns:
        list of MassiveCertificate, at most n_target, all massive
    """
    if n_target < 1:
        raise DomainException("n_target should be >= 1, got {}".format(
            n_target))
    if not 0 < epsilon < 0.25:
        raise DomainException("epsilon({}) should lie in (0, 0.25)".format(
            epsilon))
    g = family.graph
    radii = _schedule(family, schedule)
    if radii[-1] != family.truncation_radius:
        logger.warning("search schedule extended to the truncation radius "
                       "{}".format(family.truncation_radius))
        radii = radii + [family.truncation_radius]
    seeds = _seeds(family) if seeds is None else [
        vertex_array(g, s) for s in seeds
    ]
    if not seeds:
        return []
    witnesses = bhd_basis(
        family,
        seeds,
        p,
        schedule=radii,
        tol=tol,
        solver_config=solver_config,
        max_iterations=max_iterations,
        num_workers=num_workers)

    # certification compares extrapolated limits, so it needs more radii
    cert_radii = refine_radii(radii, MIN_STABLE_RADII)
    frontier = np.zeros(g.vertex_count, dtype=bool)
    frontier[family.frontier_array] = True
    everything = np.arange(g.vertex_count)
    candidates = []
    for k, w in enumerate(witnesses):
        try:
            superlevel, _ = level_set_components(g, w.values, everything,
                                                 epsilon, 1.0 - epsilon)
        except DomainException as e:
            logger.warning("seed {}: no level sandwich, skipped ({})".format(
                k, str(e).splitlines()[0]))
            candidates.append([])
            continue
        candidates.append([
            c for c in superlevel
            if frontier[np.fromiter(c, dtype='int64')].any()
        ])

    kept = []
    taken = np.zeros(g.vertex_count, dtype=bool)
    depth = max(len(c) for c in candidates)
    for level in range(depth):
        for k, comps in enumerate(candidates):
            if len(kept) >= n_target:
                return kept
            if level >= len(comps):
                continue
            arr = np.fromiter(comps[level], dtype='int64')
            if taken[arr].any():
                continue
            try:
                cert = inner_potential(
                    family,
                    arr,
                    p,
                    schedule=cert_radii,
                    tol=tol,
                    solver_config=solver_config,
                    max_iterations=max_iterations,
                    **certify_kwargs)
            except (DomainException, ConvergenceException) as e:
                logger.warning("seed {} component {}: {}".format(
                    k, level, str(e).splitlines()[0]))
                continue
            logger.info("seed {} component {}: {}".format(
                k, level, cert.summary()))
            if cert.verdict == MASSIVE:
                kept.append(cert)
                taken[arr] = True
    return kept


def boundary_lower_bound(certs):
    """
    Number of pairwise disjoint massive certificates, the size the
    p-harmonic boundary is at least.
    """
    seen = {}
    for i, cert in enumerate(certs):
        if cert.verdict != MASSIVE:
            raise DomainException(
                "certificate {} has verdict {}".format(i, cert.verdict))
        for x in cert.candidate:
            if x in seen:
                raise DomainException(
                    "certificates {} and {} overlap".format(seen[x], i),
                    vertex=x)
            seen[x] = i
    return len(certs)


def asymptotic_value(family, h, ray):
    """
    Mean of h over the last quarter of the ray with the oscillation on
    that tail and the total variation along the whole ray.

    Returns:
        value(float), diagnostics(dict)
    """
    if len(ray) < 4:
        raise DomainException("ray has {} vertices, at least 4 are "
                              "needed".format(len(ray)))
    if ray.vertices[-1] not in family.frontier:
        raise DomainException("ray does not reach the frontier",
                              vertex=ray.vertices[-1])
    values = h.values_at(np.array(ray.vertices, dtype='int64'))
    tail = values[-int(math.ceil(len(values) / 4.0)):]
    value = float(tail.mean())
    return value, {
        'oscillation': float(tail.max() - tail.min()),
        'variation': float(np.sum(np.abs(np.diff(values)))),
        'tail': tail.tolist()
    }


def _geodesic_rays(family, F, max_rays):
    g = family.graph
    dist = family.distances
    pairs = []
    for comp in component_arrays(g, F):
        targets = np.intersect1d(comp, family.frontier_array)
        if targets.size == 0:
            continue
        start = int(comp[np.argmin(dist[comp])])
        pairs.extend((comp, start, int(t)) for t in targets)
    if max_rays and len(pairs) > max_rays:
        picks = np.unique(
            np.linspace(0, len(pairs) - 1, max_rays).round().astype('int64'))
        pairs = [pairs[i] for i in picks]
    rays = []
    cache = {}
    for comp, start, target in pairs:
        if start not in cache:
            sub = g.csr[comp][:, comp]
            local = int(np.searchsorted(comp, start))
            _, pred = csgraph.breadth_first_order(
                sub, local, directed=False, return_predecessors=True)
            cache[start] = (comp, pred)
        comp, pred = cache[start]
        node = int(np.searchsorted(comp, target))
        walk = [node]
        while pred[node] >= 0:
            node = int(pred[node])
            walk.append(node)
        rays.append(EdgePath(g, comp[np.array(walk[::-1])].tolist()))
    return rays


def _lattice_rays(family, F, seed, n_random):
    g = family.graph
    coords = family.coords
    index = {tuple(c): i for i, c in enumerate(coords.tolist())}
    d = coords.shape[1]
    radius = family.truncation_radius
    origin = coords[family.root]
    inside = np.zeros(g.vertex_count, dtype=bool)
    inside[F] = True
    walks = []
    for axis in range(d):
        for sign in (1, -1):
            step = np.zeros(d, dtype='int64')
            step[axis] = sign
            walks.append([origin + k * step for k in range(radius + 1)])
    rng = np.random.default_rng(seed)
    for _ in range(n_random):
        signs = rng.choice([-1, 1], size=d)
        point = origin.copy()
        walk = [point.copy()]
        for _ in range(radius):
            axis = int(rng.integers(d))
            point[axis] += signs[axis]
            walk.append(point.copy())
        walks.append(walk)
    rays = []
    for walk in walks:
        ids = [index.get(tuple(pt.tolist())) for pt in walk]
        if any(i is None or not inside[i] for i in ids):
            continue
        rays.append(EdgePath(g, ids))
    return rays


def sample_rays(family, F=None, seed=2021, n_random=8, max_rays=64):
    """
    Rays inside F ending on the frontier. Lattices get the axis rays and
    n_random random monotone rays from the root; other families get the
    geodesic rays of each component of F from its vertex closest to the
    root, at most max_rays of them spread evenly over the frontier.
    """
    g = family.graph
    F = np.arange(g.vertex_count) if F is None else vertex_array(g, F)
    if family.family_kind == 'lattice' and family.coords is not None:
        return _lattice_rays(family, F, seed, n_random)
    return _geodesic_rays(family, F, max_rays)


def ac_check(family,
             h,
             F,
             p,
             rays=None,
             ac_tol=0.05,
             cluster_tol=0.1,
             seed=2021,
             n_random=8,
             max_rays=64,
             gap_tol=1e-3,
             max_sweeps=2000):
    """
    Group the limits of h along sampled rays in F. The rays outside the
    largest group form the exceptional family; h looks asymptotically
    constant on F when its modulus is at most ac_tol of the modulus of
    all sampled rays.

    Returns:
        ACResult
    """
    p = as_exponent(p)
    g = family.graph
    F = vertex_array(g, F)
    if rays is None:
        rays = sample_rays(family, F, seed=seed, n_random=n_random,
                           max_rays=max_rays)
    inside = np.zeros(g.vertex_count, dtype=bool)
    inside[F] = True
    for ray in rays:
        if not inside[np.array(ray.vertices)].all():
            raise DomainException("ray leaves F", vertex=next(
                x for x in ray.vertices if not inside[x]))
    rays = [r for r in rays if r.vertices[-1] in family.frontier]
    if not rays:
        logger.warning("no ray reaches the frontier inside F")
        return ACResult(UNDECIDED)
    limits = [asymptotic_value(family, h, ray)[0] for ray in rays]
    labels, centers = cluster_limits(limits, cluster_tol)
    if centers.size == 1:
        return ACResult(AC_CONSISTENT, float(centers[0]), centers.tolist(),
                        limits)
    options = {'gap_tol': gap_tol, 'max_sweeps': max_sweeps}
    total = modulus(PathFamily.explicit(g, rays), p, **options).modulus
    exceptional = [r for r, lab in zip(rays, labels) if lab != 0]
    part = modulus(PathFamily.explicit(g, exceptional), p,
                   **options).modulus
    ratio = part / total if total > 0 else 0.0
    logger.info("ac check: {} clusters, exceptional modulus ratio "
                "{:.3e}".format(centers.size, ratio))
    verdict = AC_CONSISTENT if ratio <= ac_tol else AC_VIOLATED
    constant = float(centers[0]) if verdict == AC_CONSISTENT else None
    return ACResult(verdict, constant, centers.tolist(), limits, part, total,
                    ratio)


def liouville_evidence(witnesses):
    """
    Per radius, the largest spread max |h - mean h| over the fixed core
    among all witnesses; a trace going to 0 is what the Liouville property
    looks like on a truncation.

    Returns:
        list of (radius, flatness)
    """
    if not witnesses:
        return []
    radii = witnesses[0].radii
    trace = []
    for i, r in enumerate(radii):
        spread = 0.0
        for w in witnesses:
            core = w.core_trace[i][1]
            if core.size:
                spread = max(spread, float(np.max(np.abs(core - core.mean()))))
        trace.append((r, spread))
    return trace
