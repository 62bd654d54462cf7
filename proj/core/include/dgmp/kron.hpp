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

#include "dgmp/steering.hpp"
#include "dgmp/types.hpp"

namespace dgmp {

/// Column-major stacking, vect(X).
CVec vectorize(const CMat& x);
CMat unvectorize(const CVec& v, Eigen::Index rows, Eigen::Index cols);

/// vect(A*X*B), evaluated as the plain matrix product. Identical to
/// kronecker(B.transpose(), A) * vectorize(X); the two routes are kept
/// separate so they can check each other.
CVec vectorize_sandwich(const CMat& a, const CMat& x, const CMat& b);

/// Explicit Kronecker product materialization (companion/testing route).
CMat kronecker(const CMat& a, const CMat& b);

/// Angle-domain transform H_a = A_bs^H * H_f * A_ue for canonical
/// (square, full-grid) dictionaries.
CMat angle_transform(const CMat& h_f, const AngleDictionary& a_bs,
                     const AngleDictionary& a_ue);

/// Inverse of angle_transform: H_f = A_bs * H_a * A_ue^H / (N_bs*N_ue).
/// The 1/(N_bs*N_ue) factor compensates A*A^H = N*I for unnormalized
/// steering columns.
CMat inverse_angle_transform(const CMat& h_a, const AngleDictionary& a_bs,
                             const AngleDictionary& a_ue);

} // namespace dgmp
