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
from hypothesis import strategies as st

from ppot.graph import Graph


@st.composite
def random_trees(draw, min_size=2, max_size=30):
    """
    trees over 0..n-1 where vertex i hangs below some j < i
    """
    n = draw(st.integers(min_value=min_size, max_value=max_size))
    parents = [
        draw(st.integers(min_value=0, max_value=i - 1)) for i in range(1, n)
    ]
    return Graph.from_edges(
        [(p, i) for i, p in enumerate(parents, 1)], vertex_count=n)


@st.composite
def vertex_values(draw, g, low=-1.0, high=1.0):
    """
    a finite value per vertex of g
    """
    values = draw(
        st.lists(
            st.floats(min_value=low, max_value=high, allow_nan=False),
            min_size=g.vertex_count,
            max_size=g.vertex_count))
    return np.array(values, dtype='float64')


exponents = st.sampled_from([1.5, 2.0, 3.0])
