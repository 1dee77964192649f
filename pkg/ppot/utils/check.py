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
from difflib import SequenceMatcher

from ppot.utils import logger


def similar_names(name='', names=[], thresh=0.1, topk=10):
    """
    inferred similar names, used to suggest a family or solver
    when a config spells one wrong
    """
    scores = []
    for idx, n in enumerate(names):
        if n.startswith('__'):
            continue
        score = SequenceMatcher(None, n.lower(), name.lower()).quick_ratio()
        if score > thresh:
            scores.append((idx, score))
    scores.sort(key=lambda x: x[1], reverse=True)
    return [names[s[0]] for s in scores[:min(topk, len(scores))]]


def check_exponent(p):
    """
    check p > 1
    """
    err = "p({}) should be a real number greater than one".format(p)
    try:
        assert isinstance(p, (int, float)) and not isinstance(p, bool)
        assert p > 1
    except AssertionError:
        logger.error(err)
        sys.exit(1)


def check_positive(value, name):
    """
    check tolerances and budgets
    """
    err = "{}({}) should be a positive number".format(name, value)
    try:
        assert isinstance(value, (int, float)) and not isinstance(value, bool)
        assert value > 0
    except AssertionError:
        logger.error(err)
        sys.exit(1)


def check_schedule(schedule):
    """
    check that radii are positive integers and strictly increasing
    """
    err = "schedule({}) should be a nonempty, strictly increasing " \
          "list of positive integers".format(schedule)
    try:
        assert isinstance(schedule, (list, tuple)) and len(schedule) > 0
        assert all(isinstance(r, int) and r >= 1 for r in schedule)
        assert all(a < b for a, b in zip(schedule[:-1], schedule[1:]))
    except AssertionError:
        logger.error(err)
        sys.exit(1)


def check_epsilon(epsilon):
    """
    check the level-set margin, kept inside (0, 1/4)
    """
    err = "epsilon({}) should lie strictly between 0 and 0.25".format(
        epsilon)
    try:
        assert 0 < epsilon < 0.25
    except (AssertionError, TypeError):
        logger.error(err)
        sys.exit(1)


def check_choice(name, choices, what):
    """
    check a named choice and recommend similar ones
    """
    suggestions = ', '.join(similar_names(name, list(choices)))
    err = "{} [{}] is not exist! Maybe you want: [{}]".format(what, name,
                                                             suggestions)
    try:
        assert name in choices
    except AssertionError:
        logger.error(err)
        sys.exit(1)


def check_function_params(config, key):
    """
    a builder section names its function and carries a params dict
    """
    section = config.get(key)
    assert isinstance(section, dict), (
        "section {} is missing from the config".format(key))
    assert section.get("function"), (
        "{}.function should name a class".format(key))
    assert isinstance(section.get("params"), dict), (
        "{}.params should be a mapping, got {!r}".format(
            key, section.get("params")))
