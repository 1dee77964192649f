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

from . import capacity
from . import modulus
from . import massive

from .capacity import CapacityProblem, ExhaustionReport
from .capacity import capacity_finite, classify, hyperbolic_ends
from .modulus import PathFamily, ModulusResult
from .modulus import admissible_check, duality_check, exceptional_modulus
from .modulus import two_sided_capacity, ray_family
from .modulus import modulus as path_modulus
from .massive import MassiveCertificate, HarmonicWitness, ACResult
from .massive import inner_potential, level_set_components, bhd_basis
from .massive import prescribed_harmonic, disjoint_massive_search
from .massive import boundary_lower_bound, asymptotic_value, sample_rays
from .massive import ac_check, liouville_evidence
