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

import numpy as np
import pytest

from ppot.graph import ends, lattice, regular_tree
from ppot.potential import capacity as cap
from ppot.potential import massive


@pytest.mark.parametrize("p", [2, 3])
def test_capacity_does_not_depend_on_workers(p):
    family = lattice(2, 6)
    traces = []
    for workers in (0, 2):
        prob = cap.CapacityProblem(
            family, [family.root], p, radius_schedule=[2, 4, 6],
            num_workers=workers)
        traces.append(cap.classify(prob).values)
    assert traces[0] == traces[1]


def test_witnesses_do_not_depend_on_workers():
    family = regular_tree(3, 6)
    branches = ends(family, 1)
    first = massive.bhd_basis(family, branches, 2, schedule=[3, 6])
    second = massive.bhd_basis(family, branches, 2, schedule=[3, 6],
                               num_workers=3)
    for a, b in zip(first, second):
        assert np.array_equal(a.values.values, b.values.values)


def test_lattice_rays_follow_the_seed():
    family = lattice(3, 5)
    a = massive.sample_rays(family, seed=11)
    b = massive.sample_rays(family, seed=11)
    assert [r.vertices for r in a] == [r.vertices for r in b]
    assert len(a) >= 6
