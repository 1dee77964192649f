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

import os

import numpy as np

import ppot
from ppot.graph import FamilyBuilder, ends
from ppot.graph.graph import Region
from ppot.graph.reader import read_family_metadata, read_graph
from ppot.graph.reader import read_paths, read_vertex_function
from ppot.graph.reader import read_vertex_set, id_index
from ppot.potential import capacity as cap
from ppot.potential import massive
from ppot.potential import modulus as mod
from ppot.solver import DirichletProblem, ScheduleBuilder, SolverBuilder
from ppot.solver import parse_schedule
from ppot.utils import logger
from ppot.utils import save_load
from ppot.utils.exceptions import DomainException

__all__ = [
    'load_family', 'run_generate', 'run_solve', 'run_capacity',
    'run_modulus', 'run_massive', 'run_search', 'run_bhd', 'run_ac'
]


class Loaded(object):
    """
    A family with the original vertex ids it was read with
    """

    def __init__(self, family, ids=None):
        self.family = family
        self.graph = family.graph
        self.ids = ids


def family_config(args, kind=None):
    """
    FamilyBuilder settings from the --family flags
    """
    kind = kind or args.family
    if kind == 'tree':
        return {'function': 'regular_tree',
                'params': {'k': args.k, 'depth': args.depth}}
    if kind == 'lattice':
        return {'function': 'lattice',
                'params': {'d': args.d, 'radius': args.radius}}
    if kind == 'path':
        return {'function': 'path', 'params': {'length': args.length}}
    if kind == 'wedge':
        if args.base == 'wedge':
            raise DomainException("a wedge of wedges is not supported")
        part = family_config(args, kind=args.base)
        return {'function': 'wedge',
                'params': {'parts': [part] * args.copies}}
    raise DomainException("unknown family {!r}".format(kind))


def load_family(args):
    """
    The family named by --family, or the graph of --graph with its sidecar
    (--meta, or GRAPH.meta when present). A bare graph is rooted at --root.
    """
    if getattr(args, 'family', None):
        if getattr(args, 'graph', None):
            raise DomainException("give either --family or --graph")
        return Loaded(FamilyBuilder(**family_config(args))())
    if not getattr(args, 'graph', None):
        raise DomainException("a family (--family) or a graph (--graph) is "
                              "needed")
    graph, ids = read_graph(args.graph)
    if getattr(args, 'mapping', None):
        save_load.write_mapping(args.mapping, ids.tolist())
    meta = getattr(args, 'meta', None) or save_load.metadata_path(args.graph)
    if os.path.exists(meta):
        family = read_family_metadata(meta, graph, ids)
        return Loaded(family, ids)
    root = 0
    if args.root is not None:
        index = id_index(ids)
        if args.root not in index:
            raise DomainException("unknown root", vertex=args.root)
        root = index[args.root]
    return Loaded(cap.as_family(graph, root), ids)


def _vertices(ids, path):
    return np.array(sorted(read_vertex_set(path, ids)), dtype='int64')


def header(config, **extra):
    """
    version and settings lines every report starts with
    """
    settings = {'p': config.p, 'tol': config.tol, 'max_iter': config.max_iter}
    settings.update(extra)
    lines = ['version: {}'.format(ppot.__version__)]
    lines.extend('{}: {}'.format(k, settings[k]) for k in sorted(settings))
    return lines


def solver_config(config, writer=None):
    params = dict(config.SOLVER.get('params', {}))
    params['print_interval'] = config.print_interval
    if writer is not None:
        params['writer'] = writer
    return {'function': config.SOLVER.function, 'params': params}


def radii(config, family):
    if config.get('schedule'):
        schedule = config.schedule
        if isinstance(schedule, str):
            schedule = parse_schedule(schedule)
        return list(schedule)
    return ScheduleBuilder(**config.SCHEDULE)(family.truncation_radius)


def _schedule_text(schedule):
    return ','.join(str(r) for r in schedule)


def _beside_data(out, lines):
    # stdout also carries the data, keep it readable as a data file
    if out == '-':
        return ['# ' + line for line in lines]
    return lines


def run_generate(args, config, writer=None):
    loaded = load_family(args)
    family = loaded.family
    out = args.out or '-'
    save_load.write_graph(out, family.graph)
    if out != '-':
        save_load.write_family_metadata(save_load.metadata_path(out), family)
    logger.info("generated {}".format(family))
    lines = header(
        config,
        family=family.family_kind,
        schedule=_schedule_text(radii(config, family)))
    lines.append('vertices={} edges={} radius={}'.format(
        family.graph.vertex_count, family.graph.edge_count,
        family.truncation_radius))
    return _beside_data(out, lines)


def run_solve(args, config, writer=None):
    if not args.graph or not args.interior or not args.boundary:
        raise DomainException("solve needs --graph, --interior and "
                              "--boundary")
    graph, ids = read_graph(args.graph)
    interior = _vertices(ids, args.interior)
    region = Region(graph, interior)
    data = read_vertex_function(args.boundary, ids)
    prob = DirichletProblem(
        region,
        data.restrict(region.boundary_array),
        config.p,
        tolerance=config.tol,
        max_iterations=config.max_iter)
    sol = SolverBuilder(**solver_config(config, writer))(tag='solve')(prob)
    out = args.out or '-'
    save_load.write_vertex_function(out, sol.values, ids)
    lines = header(
        config,
        solver=config.SOLVER.function,
        relaxation='{:.4f}'.format(sol.relaxation))
    lines.append('residual={!r} energy={!r} iterations={}'.format(
        sol.residual, sol.energy, sol.iterations_used))
    return _beside_data(out, lines)


def run_capacity(args, config, writer=None):
    loaded = load_family(args)
    family = loaded.family
    A = _vertices(loaded.ids, args.set_a) if args.set_a else [family.root]
    S = _vertices(loaded.ids, args.within) if args.within else None
    schedule = radii(config, family)
    options = dict(config.CAPACITY)
    lines = header(config, schedule=_schedule_text(schedule))
    if args.ends:
        for end, report in cap.hyperbolic_ends(
                family,
                args.ends,
                config.p,
                schedule=schedule,
                solver_tol=config.tol,
                solver_config=solver_config(config),
                max_iterations=config.max_iter,
                **options):
            lines.append('[end {}]'.format(min(end)))
            lines.extend(report.lines())
        return lines
    prob = cap.CapacityProblem(
        family,
        A,
        config.p,
        S=S,
        radius_schedule=schedule,
        solver_tol=config.tol,
        solver_config=solver_config(config, writer),
        max_iterations=config.max_iter,
        num_workers=config.num_workers,
        writer=writer,
        **options)
    report = cap.classify(prob)
    lines.extend(report.lines())
    return lines


def run_modulus(args, config, writer=None):
    if not args.graph:
        raise DomainException("modulus needs --graph")
    graph, ids = read_graph(args.graph)
    options = {
        k: config.MODULUS[k]
        for k in ('gap_tol', 'violation', 'max_rounds', 'max_sweeps')
    }
    lines = header(config, gap_tol=options['gap_tol'])
    if args.paths:
        if args.source or args.target:
            raise DomainException("give either --paths or --from/--to")
        family = mod.PathFamily.explicit(graph,
                                         read_paths(args.paths, graph, ids))
        options.pop('violation')
        options.pop('max_rounds')
        result = mod.modulus(family, config.p, **options)
    else:
        if not args.source or not args.target:
            raise DomainException("modulus needs --paths or --from and --to")
        A = _vertices(ids, args.source)
        B = _vertices(ids, args.target)
        S = _vertices(ids, args.within) if args.within else None
        if args.duality:
            summary = mod.duality_summary(graph, A, B, S, config.p,
                                          **options)
            result = summary['modulus']
            lines.append('capacity: {!r}'.format(summary['capacity']))
            lines.append('duality_gap: {!r}'.format(summary['gap']))
        else:
            family = mod.PathFamily.connecting(graph, A, B, S)
            result = mod.modulus(family, config.p, **options)
    lines.extend(result.lines())
    if args.density:
        save_load.write_density(args.density, graph, result.density, ids)
    return lines


def _certify_options(config):
    m = config.MASSIVE
    return {
        'massive_threshold': m.massive_threshold,
        'vanish_threshold': m.vanish_threshold,
        'boundary_tol': m.boundary_tol,
        'slack': config.CAPACITY.slack
    }


def run_massive(args, config, writer=None):
    loaded = load_family(args)
    if not args.candidate:
        raise DomainException("massive needs --candidate")
    family = loaded.family
    schedule = radii(config, family)
    cert = massive.inner_potential(
        family,
        _vertices(loaded.ids, args.candidate),
        config.p,
        schedule=schedule,
        tol=config.tol,
        solver_config=solver_config(config, writer),
        max_iterations=config.max_iter,
        **_certify_options(config))
    if args.potential:
        save_load.write_vertex_function(args.potential, cert.inner_potential,
                                        loaded.ids)
    return header(config, schedule=_schedule_text(schedule)) + cert.lines()


def search(loaded, config, n_target, writer=None):
    family = loaded.family
    return massive.disjoint_massive_search(
        family,
        n_target,
        config.p,
        epsilon=config.MASSIVE.epsilon,
        schedule=radii(config, family),
        tol=config.tol,
        solver_config=solver_config(config, writer),
        max_iterations=config.max_iter,
        num_workers=config.num_workers,
        **_certify_options(config))


def search_lines(certs):
    lines = []
    for i, cert in enumerate(certs):
        lines.append('[certificate {}]'.format(i))
        lines.extend(cert.lines())
    bound = massive.boundary_lower_bound(certs)
    lines.append('lower_bound: {}'.format(bound))
    sup = min([c.sup_value for c in certs] or [0.0])
    residual = max([c.laplacian_residual for c in certs] or [0.0])
    lines.append('verdict={} n={} sup={!r} residual={!r}'.format(
        'massive' if certs else 'undecided', bound, sup, residual))
    return lines


def run_search(args, config, writer=None):
    loaded = load_family(args)
    schedule = radii(config, loaded.family)
    certs = search(loaded, config, args.n_target, writer)
    lines = header(
        config,
        schedule=_schedule_text(schedule),
        epsilon=config.MASSIVE.epsilon,
        n_target=args.n_target)
    return lines + search_lines(certs)


def branches(loaded, paths=None):
    family = loaded.family
    if paths:
        return [_vertices(loaded.ids, p) for p in paths]
    if family.parts:
        return [sorted(part) for part in family.parts]
    return [sorted(e) for e in ends(family, 1)]


def witnesses(loaded, config, paths=None, writer=None):
    family = loaded.family
    return massive.bhd_basis(
        family,
        branches(loaded, paths),
        config.p,
        schedule=radii(config, family),
        tol=config.tol,
        solver_config=solver_config(config, writer),
        max_iterations=config.max_iter,
        num_workers=config.num_workers)


def witness_lines(ws):
    lines = []
    for k, w in enumerate(ws):
        lines.append('[witness {}]'.format(k))
        lines.extend(w.lines())
    lines.append('[flatness]')
    lines.extend('{} {!r}'.format(r, v)
                 for r, v in massive.liouville_evidence(ws))
    return lines


def run_bhd(args, config, writer=None):
    loaded = load_family(args)
    ws = witnesses(loaded, config, args.branch, writer)
    if args.values:
        for k, w in enumerate(ws):
            save_load.write_vertex_function('{}.{}'.format(args.values, k),
                                            w.values, loaded.ids)
    schedule = radii(config, loaded.family)
    return header(config, schedule=_schedule_text(schedule)) + \
        witness_lines(ws)


def ac(loaded, config, h, F):
    m = config.MASSIVE
    return massive.ac_check(
        loaded.family,
        h,
        F,
        config.p,
        ac_tol=m.ac_tol,
        cluster_tol=m.cluster_tol,
        seed=config.seed,
        n_random=m.n_random_rays,
        max_rays=m.max_rays)


def run_ac(args, config, writer=None):
    loaded = load_family(args)
    family = loaded.family
    residual = None
    if args.function:
        h = read_vertex_function(args.function, loaded.ids)
    else:
        ws = witnesses(loaded, config, writer=writer)
        if not 0 <= args.witness < len(ws):
            raise DomainException("witness index {} outside [0, {})".format(
                args.witness, len(ws)))
        h = ws[args.witness].values
        residual = ws[args.witness].residual
    F = _vertices(loaded.ids, args.set) if args.set else np.arange(
        family.graph.vertex_count)
    result = ac(loaded, config, h, F)
    lines = header(config, seed=config.seed)
    lines.extend(result.lines())
    lines.append('verdict={} n={} sup={} ratio={!r} residual={}'.format(
        result.verdict, len(result.limits), '-' if result.constant is None
        else repr(result.constant), result.ratio, '-' if residual is None
        else repr(residual)))
    return lines
