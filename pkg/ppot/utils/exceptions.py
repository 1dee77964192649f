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

__all__ = [
    'DomainException', 'ConvergenceException', 'ConsistencyException',
    'EXIT_OK', 'EXIT_DOMAIN', 'EXIT_CONVERGENCE', 'EXIT_CONSISTENCY'
]

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_CONVERGENCE = 2
EXIT_CONSISTENCY = 3


class DomainException(ValueError):
    """
    DomainException: the input is wrong (unknown vertex, value outside
    a function's domain, violated precondition)
    """

    def __init__(self, message='', vertex=None):
        if vertex is not None:
            message += "\nOffending vertex: {}".format(vertex)
        super(DomainException, self).__init__(message)
        self.vertex = vertex


class ConvergenceException(RuntimeError):
    """
    ConvergenceException: the iteration budget ran out before the
    tolerance was met. The best iterate is kept on the exception.
    """

    def __init__(self, message='', best=None, residual=None,
                 iterations=None):
        message += "\nBest residual {} after {} iterations. Raise " \
            "max_iterations or loosen the tolerance.".format(residual,
                                                              iterations)
        super(ConvergenceException, self).__init__(message)
        self.best = best
        self.residual = residual
        self.iterations = iterations


class ConsistencyException(RuntimeError):
    """
    ConsistencyException: a numerical invariant broke, which signals a
    bug or a solver tolerance that is too loose for the check.
    """

    def __init__(self, message='', detail=None):
        if detail is not None:
            message += "\nDetail: {}".format(detail)
        super(ConsistencyException, self).__init__(message)
        self.detail = detail
