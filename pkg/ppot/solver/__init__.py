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

import sys

from .dirichlet import DirichletProblem, DirichletSolution
from .dirichlet import CoordinateDescent
from .dirichlet import solve_dirichlet, local_update, residual
from .linear import LinearSolve, picard_warm_start, solve_linear
from .schedule import ScheduleBuilder, parse_schedule

from ppot.utils.exceptions import DomainException

__all__ = [
    'SolverBuilder', 'DirichletProblem', 'DirichletSolution',
    'CoordinateDescent', 'LinearSolve', 'ScheduleBuilder', 'solve_dirichlet',
    'local_update', 'residual', 'picard_warm_start', 'solve_linear',
    'parse_schedule'
]


class SolverBuilder(object):
    """
    Build a Dirichlet solver

    Args:
        function(str): class name of the solver, CoordinateDescent or
            LinearSolve
        params(dict): parameters used for init the class
    """

    def __init__(self, function='CoordinateDescent', params={'init': 'mean'}):
        self.function = function
        self.params = params

    def __call__(self, **extra):
        mod = sys.modules[__name__]
        if self.function not in ('CoordinateDescent', 'LinearSolve'):
            raise DomainException("unknown solver {!r}".format(self.function))
        params = dict(self.params)
        params.update(extra)
        return getattr(mod, self.function)(**params)
