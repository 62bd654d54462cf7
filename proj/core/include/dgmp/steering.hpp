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

#include "dgmp/types.hpp"

namespace dgmp {

/// Wraps a spatial frequency x = d*sin(angle)/lambda into [0, 1).
/// The ULA steering map is 1-periodic in x, so nothing is lost.
double wrap_frequency(double x);

/// ULA array response. Entries are unit modulus and unnormalized
/// (norm sqrt(N)); entry n is exp(j*2*pi*n*x).
struct SteeringVector {
  CVec entries;
  double spatial_freq = 0.0; // stored modulo 1
};

/// Throws std::invalid_argument for n_antennas < 1.
SteeringVector steering_vector(int n_antennas, double spatial_freq);

/// Column q is the steering vector at grid[q]. For the canonical grid
/// {q/N} and Q = N this is a DFT matrix up to column ordering.
struct AngleDictionary {
  CMat columns; // N x Q
  RVec grid;    // Q spatial frequencies

  int n_antennas() const { return static_cast<int>(columns.rows()); }
  int size() const { return static_cast<int>(columns.cols()); }
};

/// Throws std::invalid_argument for an empty grid.
AngleDictionary build_dictionary(int n_antennas, const RVec& grid);

/// The canonical virtual-angle grid {q/N, q = 0..N-1}.
RVec canonical_grid(int n_antennas);

/// build_dictionary over the canonical grid.
AngleDictionary canonical_dictionary(int n_antennas);

/// Canonical grid shifted by a common fractional offset: {(q + delta)/N}.
RVec shifted_grid(int n_antennas, double delta);

} // namespace dgmp
