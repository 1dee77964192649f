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

import os

import pytest

from ppot.utils import check
from ppot.utils.config import AttrDict, check_config, get_config
from ppot.utils.config import load_defaults, merge_config, override_config
from ppot.utils.config import parse_config
from ppot.utils.metrics import aitken_limit, cluster_limits, relative_change
from ppot.utils.metrics import relative_gap, sup_distance
from ppot.utils.misc import TraceMeter, run_ordered

CONFIGS = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'configs')


def test_defaults():
    config = load_defaults()
    assert config.p == 2.0
    assert config.tol == 1e-9
    assert config.SOLVER.function == 'CoordinateDescent'
    assert config.SOLVER.params.init == 'picard'
    assert config.SCHEDULE.params.start == 4
    assert config.MASSIVE.epsilon == 0.2
    assert config.vdl_dir is None
    check_config(config)


def test_attr_dict():
    d = AttrDict({'a': 1})
    d.b = 2
    assert d['b'] == 2 and d.a == 1
    with pytest.raises(AttributeError):
        d.missing


def test_merge_keeps_nested_defaults():
    base = load_defaults()
    merged = merge_config(base, {'MASSIVE': {'epsilon': 0.1}, 'p': 3.0})
    assert merged.MASSIVE.epsilon == 0.1
    assert merged.MASSIVE.ac_tol == 0.05
    assert merged.p == 3.0
    assert base.p == 2.0


def test_overrides():
    config = load_defaults()
    override_config(config, [
        'p=3', 'MASSIVE.epsilon=0.1', 'SOLVER.params.init=mean',
        'SEARCH.n_target=2'
    ])
    assert config.p == 3
    assert config.MASSIVE.epsilon == 0.1
    assert config.SOLVER.params.init == 'mean'
    assert config.SEARCH.n_target == 2
    with pytest.raises(AssertionError):
        override_config(config, ['p'])
    with pytest.raises(AssertionError):
        override_config(config, ['p=3=4'])


@pytest.mark.parametrize("key, value", [
    ('p', 1.0),
    ('p', 'two'),
    ('tol', 0.0),
    ('max_iter', -5),
    ('schedule', [4, 2]),
    ('schedule', []),
])
def test_check_config_exits_on_bad_values(key, value):
    config = load_defaults()
    config[key] = value
    with pytest.raises(SystemExit) as e:
        check_config(config)
    assert e.value.code == 1


def test_check_config_epsilon_and_sections():
    config = load_defaults()
    config.MASSIVE['epsilon'] = 0.25
    with pytest.raises(SystemExit):
        check_config(config)
    config = load_defaults()
    config.SOLVER['function'] = ''
    with pytest.raises(AssertionError):
        check_config(config)


def test_check_choice_suggests():
    with pytest.raises(SystemExit):
        check.check_choice('regular_tre', ['regular_tree', 'lattice'],
                           'generator')
    assert check.similar_names('latice', ['regular_tree', 'lattice'])[0] == \
        'lattice'


def test_shipped_configs_load():
    for kind, name in [('tree', 'k3_d12.yaml'), ('lattice', 'z3_r8.yaml'),
                       ('path', 'z_half_line.yaml'),
                       ('wedge', 'z3_wedge.yaml')]:
        config = get_config(os.path.join(CONFIGS, kind, name), show=False)
        assert config.FAMILY.function
        assert config.PIPELINE[0] == 'generate'
    tree = parse_config(os.path.join(CONFIGS, 'tree', 'k3_d12.yaml'))
    assert tree.schedule == [4, 8, 12]
    assert tree.SEARCH.n_target == 3


def test_aitken_limit():
    assert aitken_limit([1.0, 0.5, 0.25]) == pytest.approx(0.0, abs=1e-15)
    assert aitken_limit([2.0, 1.5, 1.25]) == pytest.approx(1.0)
    assert aitken_limit([1.0, 1.0, 1.0]) == 1.0
    assert aitken_limit([1.0, 2.0]) is None
    # growing geometrically, no limit
    assert aitken_limit([1.0, 2.0, 4.0]) is None
    # oscillating
    assert aitken_limit([1.0, 2.0, 1.5]) is None


def test_relative_measures():
    assert relative_change(1.0, 2.0) == pytest.approx(0.5)
    assert relative_change(0.0, 0.0) == 0.0
    assert relative_gap(0.0, 0.0) == 0.0
    assert relative_gap(1.5, 1.0) == pytest.approx(0.5)
    assert sup_distance([], []) == 0.0
    assert sup_distance([1.0, 2.0], [1.5, 2.0]) == pytest.approx(0.5)


def test_cluster_limits():
    labels, centers = cluster_limits([0.0, 0.5, 0.01, 0.52, 0.51], 0.1)
    assert labels.tolist() == [1, 0, 1, 0, 0]
    assert centers == pytest.approx([0.51, 0.005])
    labels, centers = cluster_limits([0.3], 0.1)
    assert labels.tolist() == [0] and centers.tolist() == [0.3]
    labels, centers = cluster_limits([], 0.1)
    assert labels.size == 0 and centers.size == 0


def test_trace_meter():
    meter = TraceMeter('cap', fmt='.3f')
    assert meter.value == 'cap: -'
    for v in (3.0, 2.0, 2.5):
        meter.update(v)
    assert meter.count == 3
    assert meter.best == 2.0
    assert meter.value == 'cap: 2.500'
    assert meter.minimum == 'cap_min: 2.000'
    assert not meter.is_nonincreasing()
    assert meter.is_nonincreasing(slack=0.5)
    meter.reset()
    assert meter.history == []


@pytest.mark.parametrize("workers", [0, 1, 3])
def test_run_ordered_keeps_order(workers):
    assert run_ordered(lambda x: x * x, range(6), workers) == \
        [0, 1, 4, 9, 16, 25]
