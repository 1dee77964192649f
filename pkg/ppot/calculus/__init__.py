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

from .functions import PExponent, VertexFunction, EdgeDensity
from .functions import as_exponent, constant, one, product, sup_norm
from .operators import gradient_p, dirichlet_sum, p_laplacian, xi
from .operators import dp_norm, bdp_norm, xi_p_edges
