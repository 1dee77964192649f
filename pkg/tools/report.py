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

import argparse
import os
import sys
__dir__ = os.path.dirname(os.path.abspath(__file__))
sys.path.append(os.path.abspath(os.path.join(__dir__, '..')))

import numpy as np
import ujson

from ppot.graph import FamilyBuilder
from ppot.potential import capacity as cap
from ppot.utils import logger
from ppot.utils import save_load
from ppot.utils.config import get_config
from ppot.utils.exceptions import DomainException
from tools import program

__all__ = ['run_report', 'STAGES']

STAGES = ('generate', 'capacity', 'ends', 'search', 'bhd', 'ac')


class _Run(object):
    """
    state shared by the stages of one pipeline
    """

    def __init__(self, config, writer=None):
        self.config = config
        self.writer = writer
        self.loaded = program.Loaded(FamilyBuilder(**config.FAMILY)())
        self.witnesses = None
        self.summary = {'family': repr(self.loaded.family)}

    @property
    def family(self):
        return self.loaded.family

    def get_witnesses(self):
        if self.witnesses is None:
            self.witnesses = program.witnesses(
                self.loaded, self.config, writer=self.writer)
        return self.witnesses


def stage_generate(run):
    family = run.family
    g = family.graph
    out = run.config.get('save_graph')
    if out:
        save_load.write_graph(out, g)
        save_load.write_family_metadata(save_load.metadata_path(out), family)
    run.summary['vertices'] = g.vertex_count
    run.summary['edges'] = g.edge_count
    return [
        'kind: {}'.format(family.family_kind),
        'vertices: {}'.format(g.vertex_count),
        'edges: {}'.format(g.edge_count),
        'degree_bound: {}'.format(g.degree_bound),
        'truncation_radius: {}'.format(family.truncation_radius),
        'frontier: {}'.format(len(family.frontier)),
    ]


def stage_capacity(run):
    config = run.config
    family = run.family
    prob = cap.CapacityProblem(
        family, [family.root],
        config.p,
        radius_schedule=program.radii(config, family),
        solver_tol=config.tol,
        solver_config=program.solver_config(config, run.writer),
        max_iterations=config.max_iter,
        num_workers=config.num_workers,
        writer=run.writer,
        **dict(config.CAPACITY))
    report = cap.classify(prob)
    run.summary['capacity'] = {
        'values': report.values,
        'limit': report.limit_estimate,
        'verdict': report.verdict
    }
    return report.lines()


def stage_ends(run):
    config = run.config
    radius = config.get('ENDS', {}).get('radius', 1)
    lines = []
    verdicts = []
    for end, report in cap.hyperbolic_ends(
            run.family,
            radius,
            config.p,
            schedule=program.radii(config, run.family),
            solver_tol=config.tol,
            solver_config=program.solver_config(config),
            max_iterations=config.max_iter,
            **dict(config.CAPACITY)):
        lines.append('[end {}]'.format(min(end)))
        lines.extend(report.lines())
        verdicts.append(report.verdict)
    run.summary['ends'] = verdicts
    return lines


def stage_search(run):
    n_target = run.config.get('SEARCH', {}).get('n_target', 1)
    certs = program.search(run.loaded, run.config, n_target, run.writer)
    run.summary['search'] = {
        'n_target': n_target,
        'certificates': [c.verdict for c in certs],
        'lower_bound': len(certs)
    }
    return program.search_lines(certs)


def stage_bhd(run):
    ws = run.get_witnesses()
    run.summary['bhd'] = {
        'witnesses': len(ws),
        'bounds': [w.bound for w in ws],
        'residuals': [w.residual for w in ws]
    }
    return program.witness_lines(ws)


def stage_ac(run):
    settings = run.config.get('AC', {})
    ws = run.get_witnesses()
    index = settings.get('witness', 0)
    if not 0 <= index < len(ws):
        raise DomainException("witness index {} outside [0, {})".format(
            index, len(ws)))
    chosen = settings.get('branches')
    if chosen is None:
        F = np.arange(run.family.graph.vertex_count)
    else:
        parts = program.branches(run.loaded)
        F = np.array(
            sorted(set().union(*[parts[i] for i in chosen])), dtype='int64')
    result = program.ac(run.loaded, run.config, ws[index].values, F)
    run.summary['ac'] = {
        'verdict': result.verdict,
        'clusters': result.clusters,
        'ratio': result.ratio
    }
    return result.lines()


def run_report(config, json_path=None, writer=None):
    """
    Run the stages listed under PIPELINE on the family of FAMILY.

    Returns:
        lines(list): the header then one labeled section per stage
    """
    if not config.get('FAMILY'):
        raise DomainException("report needs a FAMILY section in the config")
    pipeline = config.get('PIPELINE') or ['generate', 'capacity']
    for name in pipeline:
        if name not in STAGES:
            raise DomainException("unknown stage {!r}, use one of {}".format(
                name, STAGES))
    run = _Run(config, writer)
    lines = program.header(config, pipeline=','.join(pipeline))
    for name in pipeline:
        logger.info("stage {}".format(name))
        lines.append('[{}]'.format(name))
        lines.extend(getattr(sys.modules[__name__], 'stage_' + name)(run))
    if json_path:
        text = ujson.dumps(run.summary, indent=2)
        save_load.write_lines(json_path, [text])
    return lines


def parse_args():
    parser = argparse.ArgumentParser("PPotential report script")
    parser.add_argument(
        '-c',
        '--config',
        type=str,
        default='./configs/tree/k3_d12.yaml',
        help='config file path')
    parser.add_argument(
        '-o',
        '--override',
        action='append',
        default=[],
        help='config options to be overridden')
    parser.add_argument("--json", type=str, default=None)
    return parser.parse_args()


def main(args):
    config = get_config(args.config, overrides=args.override, show=True)
    writer = logger.create_writer(config.vdl_dir)
    try:
        lines = run_report(config, json_path=args.json, writer=writer)
    finally:
        writer.close() if writer else None
    save_load.write_lines('-', lines)


if __name__ == '__main__':
    main(parse_args())
