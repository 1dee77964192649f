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
import sys
__dir__ = os.path.dirname(os.path.abspath(__file__))
sys.path.append(__dir__)
import argparse

import ppot
from ppot.solver import parse_schedule
from ppot.utils import logger
from ppot.utils import save_load
from ppot.utils.config import check_config, load_defaults, merge_config
from ppot.utils.config import override_config, parse_config
from ppot.utils.exceptions import ConsistencyException, ConvergenceException
from ppot.utils.exceptions import DomainException
from ppot.utils.exceptions import EXIT_CONSISTENCY, EXIT_CONVERGENCE
from ppot.utils.exceptions import EXIT_DOMAIN, EXIT_OK
from tools import program
from tools import report

__all__ = ['main', 'parse_args']

COMMANDS = ('generate', 'solve', 'capacity', 'modulus', 'massive', 'search',
            'bhd', 'ac', 'report')


class _Parser(argparse.ArgumentParser):
    """
    Usage errors exit with the domain code instead of argparse's 2.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        logger.error(message)
        sys.exit(EXIT_DOMAIN)


def _global_flags():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--p", type=float, default=None)
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--max-iter", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", type=str, default=None)
    parser.add_argument("--quiet", action='store_true')
    parser.add_argument("--vdl-dir", type=str, default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument(
        '-c', '--config', type=str, default=None, help='config file path')
    parser.add_argument(
        '-o',
        '--override',
        action='append',
        default=[],
        help='config options to be overridden')
    return parser


def _family_flags():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "--family", choices=['tree', 'lattice', 'path', 'wedge'])
    parser.add_argument("--k", type=int, default=3)
    parser.add_argument("--depth", type=int, default=6)
    parser.add_argument("--d", type=int, default=2)
    parser.add_argument("--radius", type=int, default=8)
    parser.add_argument("--length", type=int, default=16)
    parser.add_argument(
        "--base", choices=['tree', 'lattice', 'path'], default='tree')
    parser.add_argument("--copies", type=int, default=2)
    parser.add_argument("--graph", type=str, default=None)
    parser.add_argument("--meta", type=str, default=None)
    parser.add_argument("--root", type=int, default=None)
    parser.add_argument("--mapping", type=str, default=None)
    parser.add_argument("--schedule", type=str, default=None)
    return parser


def parse_args(argv=None):
    parser = _Parser("ppotential")
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    common = _global_flags()
    family = _family_flags()

    sub.add_parser('generate', parents=[common, family])

    p = sub.add_parser('solve', parents=[common])
    p.add_argument("--graph", type=str, default=None)
    p.add_argument("--interior", type=str, default=None)
    p.add_argument("--boundary", type=str, default=None)

    p = sub.add_parser('capacity', parents=[common, family])
    p.add_argument("--set-a", type=str, default=None)
    p.add_argument("--within", type=str, default=None)
    p.add_argument("--ends", type=int, default=None)

    p = sub.add_parser('modulus', parents=[common])
    p.add_argument("--graph", type=str, default=None)
    p.add_argument("--paths", type=str, default=None)
    p.add_argument("--from", dest='source', type=str, default=None)
    p.add_argument("--to", dest='target', type=str, default=None)
    p.add_argument("--within", type=str, default=None)
    p.add_argument("--density", type=str, default=None)
    p.add_argument("--duality", action='store_true')

    p = sub.add_parser('massive', parents=[common, family])
    p.add_argument("--candidate", type=str, default=None)
    p.add_argument("--potential", type=str, default=None)

    p = sub.add_parser('search', parents=[common, family])
    p.add_argument("--n-target", type=int, default=1)
    p.add_argument("--epsilon", type=float, default=None)

    p = sub.add_parser('bhd', parents=[common, family])
    p.add_argument("--branch", action='append', default=[])
    p.add_argument("--values", type=str, default=None)

    p = sub.add_parser('ac', parents=[common, family])
    p.add_argument("--function", type=str, default=None)
    p.add_argument("--witness", type=int, default=0)
    p.add_argument("--set", type=str, default=None)

    p = sub.add_parser('report', parents=[common])
    p.add_argument("--json", type=str, default=None)

    args = parser.parse_args(argv)
    if args.command is None:
        parser.error("a subcommand is needed, one of {}".format(
            ', '.join(COMMANDS)))
    return args


def build_config(args):
    """
    defaults, then the config file, then -o overrides, then flags
    """
    config = load_defaults()
    if args.config:
        if not os.path.exists(args.config):
            raise DomainException("config file({}) is not exist".format(
                args.config))
        config = merge_config(config, parse_config(args.config))
    override_config(config, args.override)
    flags = (('p', 'p'), ('tol', 'tol'), ('max_iter', 'max_iter'),
             ('seed', 'seed'), ('workers', 'num_workers'),
             ('vdl_dir', 'vdl_dir'))
    for flag, key in flags:
        value = getattr(args, flag, None)
        if value is not None:
            config[key] = value
    if getattr(args, 'schedule', None):
        config['schedule'] = parse_schedule(args.schedule)
    if getattr(args, 'epsilon', None) is not None:
        config.MASSIVE['epsilon'] = args.epsilon
    check_config(config)
    return config


def run(args, config):
    writer = logger.create_writer(config.vdl_dir)
    try:
        if args.command == 'report':
            lines = report.run_report(config, json_path=args.json,
                                      writer=writer)
        else:
            runner = getattr(program, 'run_{}'.format(args.command))
            lines = runner(args, config, writer)
    finally:
        writer.close() if writer else None
    if lines:
        # solve and generate write their data to --out
        target = '-' if args.command in ('solve', 'generate') else args.out
        save_load.write_lines(target or '-', lines)


def main(argv=None):
    """
    Entry point, returns the exit code.
    """
    try:
        args = parse_args(argv)
        logger.set_quiet(args.quiet)
        config = build_config(args)
        logger.banner(
            ppot.__version__,
            command=args.command,
            p=config.p,
            tol=config.tol,
            max_iter=config.max_iter)
        run(args, config)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_DOMAIN
    except (DomainException, AssertionError) as e:
        logger.error("domain error: {}".format(e))
        return EXIT_DOMAIN
    except (IOError, OSError) as e:
        logger.error("cannot read or write: {}".format(e))
        return EXIT_DOMAIN
    except ConvergenceException as e:
        logger.error("convergence failure: {}".format(e))
        return EXIT_CONVERGENCE
    except ConsistencyException as e:
        logger.error("consistency failure: {}".format(e))
        return EXIT_CONSISTENCY
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
