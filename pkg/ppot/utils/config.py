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
import copy
import os
from ast import literal_eval

import yaml

from ppot.utils import check
from ppot.utils import logger
from ppot.utils.exceptions import DomainException

__all__ = [
    'get_config', 'load_defaults', 'merge_config', 'override_config',
    'parse_config', 'check_config', 'print_config', 'AttrDict'
]

DEFAULT_CONFIG = os.path.join(
    os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(
        __file__)))), 'configs', 'default.yaml')

# used when the yaml defaults are not shipped next to the package
BUILTIN_DEFAULTS = {
    'p': 2.0,
    'tol': 1e-9,
    'max_iter': 1000000,
    'seed': 2021,
    'print_interval': 1000,
    'num_workers': 0,
    'vdl_dir': None,
    'SOLVER': {
        'function': 'CoordinateDescent',
        'params': {
            'init': 'picard',
            'inner_tol': 1e-12,
            'relaxation': 'auto'
        }
    },
    'SCHEDULE': {
        'function': 'Doubling',
        'params': {
            'start': 4
        }
    },
    'CAPACITY': {
        'tolerance': 1e-4,
        'stabilization': 0.01,
        'slack': 1e-9
    },
    'MODULUS': {
        'gap_tol': 1e-6,
        'violation': 1e-7,
        'max_rounds': 500,
        'max_sweeps': 20000,
        'max_paths': 10000
    },
    'MASSIVE': {
        'epsilon': 0.2,
        'massive_threshold': 0.99,
        'vanish_threshold': 0.001,
        'boundary_tol': 1e-12,
        'ac_tol': 0.05,
        'n_random_rays': 8,
        'max_rays': 64,
        'cluster_tol': 0.1
    }
}


class AttrDict(dict):
    """
    dict whose keys read as attributes, config.MASSIVE.epsilon
    """

    def __getattr__(self, key):
        try:
            return self[key]
        except KeyError:
            raise AttributeError(key)

    def __setattr__(self, key, value):
        self[key] = value

    def __deepcopy__(self, memo):
        return AttrDict(copy.deepcopy(dict(self), memo))


def _parse_value(text):
    """
    '3' -> 3, '1e-6' -> 1e-06, '[4, 8]' -> [4, 8], 'mean' stays a string
    """
    try:
        return literal_eval(text)
    except (ValueError, SyntaxError):
        return text


def _to_attr(value):
    if isinstance(value, dict):
        return AttrDict((k, _to_attr(v)) for k, v in value.items())
    if isinstance(value, list):
        # wedge parts are dicts inside a list
        return [_to_attr(v) if isinstance(v, dict) else v for v in value]
    if isinstance(value, str):
        return _parse_value(value)
    return value


def parse_config(cfg_file):
    """Load a yaml config file into AttrDict"""
    with open(cfg_file, 'r') as fopen:
        raw = yaml.load(fopen, Loader=yaml.SafeLoader)
    if raw is None:
        return AttrDict()
    if not isinstance(raw, dict):
        raise DomainException("config file({}) should hold a mapping at the "
                              "top level".format(cfg_file))
    return _to_attr(raw)


def merge_config(base, extra):
    """
    Recursively merge extra into a copy of base, extra wins.
    """
    merged = copy.deepcopy(dict(base))
    for k, v in extra.items():
        if isinstance(v, dict) and isinstance(merged.get(k), dict):
            merged[k] = merge_config(merged[k], v)
        else:
            merged[k] = copy.deepcopy(v)
    return _to_attr(merged)


def load_defaults(fname=None):
    """
    Defaults from configs/default.yaml layered on the builtin table.
    """
    base = _to_attr(copy.deepcopy(BUILTIN_DEFAULTS))
    fname = fname or DEFAULT_CONFIG
    if os.path.exists(fname):
        base = merge_config(base, parse_config(fname))
    return base


def print_config(config, indent=0):
    """
    Log every key, sections indented below their name.
    """
    pad = " " * indent
    for key in sorted(config):
        value = config[key]
        name = logger.coloring(key, "HEADER")
        if isinstance(value, dict):
            logger.info("%s%s :", pad, name)
            print_config(value, indent + 4)
        elif isinstance(value, list) and value and isinstance(value[0],
                                                              dict):
            logger.info("%s%s :", pad, name)
            for item in value:
                print_config(item, indent + 4)
        else:
            logger.info("%s%s : %s", pad, name,
                        logger.coloring(value, "VALUE"))
        if indent == 0 and key.isupper():
            logger.info("-" * 60)


def check_config(config):
    """
    Check config, exits with code 1 on a bad value
    """
    check.check_exponent(config.get('p'))
    check.check_positive(config.get('tol'), 'tol')
    check.check_positive(config.get('max_iter'), 'max_iter')

    schedule = config.get('schedule')
    if schedule is not None:
        check.check_schedule(schedule)

    massive = config.get('MASSIVE', {})
    check.check_epsilon(massive.get('epsilon', 0.2))

    check.check_function_params(config, 'SOLVER')
    check.check_function_params(config, 'SCHEDULE')


def _step(node, key):
    """
    child of a section or list entry, new sections are created
    """
    if isinstance(node, list):
        index = _parse_value(key)
        assert isinstance(index, int) and 0 <= index < len(node), (
            'index({}) out of range for a list of {}'.format(key, len(node)))
        return node[index]
    assert isinstance(node, dict), ('{} is not a section'.format(key))
    if key not in node:
        logger.warning('new config section ({}) created'.format(key))
        node[key] = AttrDict()
    return node[key]


def _assign(node, key, value):
    if isinstance(node, list):
        index = _parse_value(key)
        assert isinstance(index, int) and 0 <= index < len(node), (
            'index({}) out of range for a list of {}'.format(key, len(node)))
        node[index] = value
        return
    assert isinstance(node, dict), ('{} is not a section'.format(key))
    if key not in node:
        logger.warning('new config key ({}) added'.format(key))
    node[key] = value


def override_config(config, options=None):
    """
    Apply "key.sub.idx=value" options in order

    Args:
        config(dict): loaded config, changed in place
        options(list): e.g. ['p=3', 'MASSIVE.epsilon=0.1',
            'FAMILY.params.parts.0.params.radius=4']

    Returns:
        config(dict): the same config
    """
    for opt in options or []:
        assert isinstance(opt, str), (
            "option({}) should be a str".format(opt))
        assert opt.count('=') == 1, (
            "option({}) should look like key.sub=value".format(opt))
        key, value = opt.split('=')
        keys = key.split('.')
        assert all(keys), ("option({}) has an empty key".format(opt))
        node = config
        for k in keys[:-1]:
            node = _step(node, k)
        _assign(node, keys[-1], _parse_value(value))
    return config


def get_config(fname, overrides=None, show=True):
    """
    Read config from file, layered on the defaults
    """
    assert os.path.exists(fname), (
        'config file({}) is not exist'.format(fname))
    config = merge_config(load_defaults(), parse_config(fname))
    override_config(config, overrides)
    if show:
        print_config(config)
    check_config(config)
    return config
