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

import logging
import os

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s %(levelname)s: %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S")

_logger = logging.getLogger("ppot")

# ansi codes, only used when PPOT_COLORING is set
Color = {
    'HEADER': '\033[35m',
    'VALUE': '\033[92m',
    'WARN': '\033[93m',
    'FAIL': '\033[91m',
    'END': '\033[0m'
}


def coloring(message, color="VALUE"):
    if color not in Color:
        raise KeyError("unknown color {}".format(color))
    if not os.environ.get('PPOT_COLORING'):
        return message
    return "{}{}{}".format(Color[color], message, Color['END'])


def set_quiet(quiet=True):
    """
    Only warnings and errors reach stderr when quiet is on.
    """
    _logger.setLevel(logging.WARNING if quiet else logging.INFO)


def is_quiet():
    return _logger.getEffectiveLevel() > logging.INFO


def info(fmt, *args):
    _logger.info(fmt, *args)


def warning(fmt, *args):
    _logger.warning(coloring(fmt, "WARN"), *args)


def error(fmt, *args):
    _logger.error(coloring(fmt, "FAIL"), *args)


def scaler(name, value, step, writer):
    """
    Add one point to a visualdl curve, e.g. capacity per radius or the
    residual per sweep. Nothing happens without a writer.

    Preview with:
        visualdl --logdir ./vdl --port 8830
    """
    if writer is None:
        return
    writer.add_scalar(tag=name, step=step, value=float(value))


def create_writer(vdl_dir):
    """
    Open a visualdl LogWriter, None when no directory is configured.
    """
    if not vdl_dir:
        return None
    from visualdl import LogWriter
    return LogWriter(vdl_dir)


def banner(version, **settings):
    """
    Log the run header, the settings framed below the version:

    ====================================
    ==        PPotential 0.1.0        ==
    ====================================
    ==  command : capacity            ==
    ==  p : 2.0                       ==
    ====================================
    """
    title = "PPotential {}".format(version)
    rows = ["  {} : {}".format(k, settings[k]) for k in sorted(settings)]
    width = 4 + max(len(r) for r in [title] + rows)
    rule = "=" * (width + 4)
    body = ["=={}==".format(title.center(width)), rule]
    body.extend("=={}==".format(r.ljust(width)) for r in rows)
    info(coloring("\n".join(["", rule] + body + [rule, ""]), "HEADER"))
