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

from concurrent.futures import ThreadPoolExecutor

from tqdm import tqdm

from ppot.utils import logger

__all__ = ['TraceMeter', 'run_ordered']


class TraceMeter(object):
    """
    Stores every value of a per-step quantity (residual, energy,
    capacity per radius) together with its current, best and last values
    """

    def __init__(self, name='', fmt='.6e', postfix=""):
        self.name = name
        self.fmt = fmt
        self.postfix = postfix
        self.reset()

    def reset(self):
        """ reset """
        self.history = []
        self.val = None
        self.best = None

    def update(self, val):
        """ update """
        val = float(val)
        self.history.append(val)
        self.val = val
        if self.best is None or val < self.best:
            self.best = val

    @property
    def count(self):
        return len(self.history)

    def is_nonincreasing(self, slack=0.0):
        """
        True when every step is at most the previous step plus slack,
        slack being relative to the previous magnitude
        """
        for prev, cur in zip(self.history[:-1], self.history[1:]):
            if cur > prev + slack * max(abs(prev), 1.0):
                return False
        return True

    @property
    def value(self):
        if self.val is None:
            return '{self.name}: -'.format(self=self)
        return '{self.name}: {self.val:{self.fmt}}{self.postfix}'.format(
            self=self)

    @property
    def minimum(self):
        if self.best is None:
            return '{self.name}_min: -'.format(self=self)
        return '{self.name}_min: {self.best:{self.fmt}}{self.postfix}'.format(
            self=self)


def run_ordered(func, items, num_workers=0, desc=None):
    """
    Apply func to every item, concurrently when num_workers > 0, results
    in the order of items
    """
    items = list(items)
    if num_workers > 0 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=num_workers) as pool:
            return list(pool.map(func, items))
    return [
        func(item)
        for item in tqdm(items, desc=desc, disable=logger.is_quiet(),
                         leave=False)
    ]
