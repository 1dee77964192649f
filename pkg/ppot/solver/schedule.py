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

from ppot.utils.exceptions import DomainException

__all__ = [
    'ScheduleBuilder', 'parse_schedule', 'check_radii', 'refine_radii'
]


def check_radii(radii):
    """
    Radii should be positive integers in strictly increasing order.
    """
    radii = [int(r) for r in radii]
    if not radii:
        raise DomainException("the radius schedule is empty")
    if radii[0] < 1 or any(a >= b for a, b in zip(radii[:-1], radii[1:])):
        raise DomainException(
            "schedule {} should be strictly increasing positive "
            "integers".format(radii))
    return radii


def refine_radii(radii, count):
    """
    Split every gap of at least 2 at its midpoint until there are count
    radii or no gap can be split, [4, 8, 12] -> [4, 6, 8, 10, 12].
    """
    radii = check_radii(radii)
    while len(radii) < count:
        finer = radii[:1]
        for a, b in zip(radii[:-1], radii[1:]):
            if b - a >= 2:
                finer.append((a + b) // 2)
            finer.append(b)
        if len(finer) == len(radii):
            break
        radii = finer
    return radii


def parse_schedule(text):
    """
    "4,8,16" -> [4, 8, 16]
    """
    try:
        radii = [int(t) for t in str(text).replace(' ', '').split(',') if t]
    except ValueError:
        raise DomainException("cannot parse schedule {!r}".format(text))
    return check_radii(radii)


class Doubling(object):
    """
    start, 2 start, 4 start, ... up to the family radius, which is always
    the last entry

    Args:
        start(int): first radius
    """

    def __init__(self, start=4, **kwargs):
        self.start = int(start)

    def __call__(self, max_radius):
        radii = []
        r = self.start
        while r < max_radius:
            radii.append(r)
            r *= 2
        radii.append(max_radius)
        return check_radii(radii)


class Linear(object):
    """
    start, start + step, ... up to the family radius

    Args:
        start(int): first radius
        step(int): increment
    """

    def __init__(self, start=4, step=1, **kwargs):
        self.start = int(start)
        self.step = int(step)
        if self.step < 1:
            raise DomainException("step({}) should be >= 1".format(step))

    def __call__(self, max_radius):
        radii = list(range(self.start, max_radius, self.step))
        radii.append(max_radius)
        return check_radii(radii)


class Explicit(object):
    """
    A fixed list, cut at the family radius

    Args:
        radii(list|str): the radii
    """

    def __init__(self, radii=(4, 8, 16), **kwargs):
        if isinstance(radii, str):
            radii = parse_schedule(radii)
        self.radii = check_radii(radii)

    def __call__(self, max_radius):
        radii = [r for r in self.radii if r <= max_radius]
        if len(radii) < len(self.radii):
            raise DomainException(
                "schedule {} goes beyond the truncation radius {}".format(
                    self.radii, max_radius))
        return radii


class ScheduleBuilder(object):
    """
    Build a radius schedule

    Args:
        function(str): class name of the schedule
        params(dict): parameters used for init the class
    """

    def __init__(self, function='Doubling', params={'start': 4}):
        self.function = function
        self.params = params

    def __call__(self, max_radius):
        mod = sys.modules[__name__]
        try:
            schedule = getattr(mod, self.function)(**self.params)
        except AttributeError:
            raise DomainException("unknown schedule {!r}".format(
                self.function))
        return schedule(max_radius)
