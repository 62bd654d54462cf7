// SPDX-License-Identifier: Apache-2.0
//
// dgmp-sim: compressive channel estimation simulator for wideband
// hybrid-precoded massive MIMO uplinks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <vector>

#include "dgmp/types.hpp"

namespace dgmp {

/// Normalized mean squared error over all users and subcarriers:
/// sum ||H_est - H_true||_F^2 / sum ||H_true||_F^2.
/// Throws std::domain_error on a zero-energy truth.
double nmse(const std::vector<std::vector<CMat>>& h_true,
            const std::vector<std::vector<CMat>>& h_est);

} // namespace dgmp
