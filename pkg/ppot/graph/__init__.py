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

from . import graph
from . import generators

from .graph import Graph, Region, EdgePath
from .graph import distance, ball, shell, outer_boundary, components
from .graph import induced_subgraph
from .generators import TruncatedFamily
from .generators import regular_tree, lattice, path, wedge, ends
from .generators import grid_graph, path_graph
from .generators import FamilyBuilder
