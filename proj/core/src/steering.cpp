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

#include "dgmp/steering.hpp"

#include <cmath>
#include <stdexcept>

namespace dgmp {

double wrap_frequency(double x) {
  double w = x - std::floor(x);
  if (w >= 1.0) w -= 1.0; // floor can leave exactly 1.0 for tiny negative x
  return w;
}

SteeringVector steering_vector(int n_antennas, double spatial_freq) {
  if (n_antennas < 1)
    throw std::invalid_argument("steering_vector: n_antennas must be >= 1");
  SteeringVector s;
  s.spatial_freq = wrap_frequency(spatial_freq);
  s.entries.resize(n_antennas);
  for (int n = 0; n < n_antennas; ++n) {
    const double phase = kTwoPi * n * spatial_freq;
    s.entries(n) = cxd(std::cos(phase), std::sin(phase));
  }
  return s;
}

AngleDictionary build_dictionary(int n_antennas, const RVec& grid) {
  if (grid.size() == 0)
    throw std::invalid_argument("build_dictionary: grid must be nonempty");
  AngleDictionary d;
  d.grid = grid;
  d.columns.resize(n_antennas, grid.size());
  for (Eigen::Index q = 0; q < grid.size(); ++q)
    d.columns.col(q) = steering_vector(n_antennas, grid(q)).entries;
  return d;
}

RVec canonical_grid(int n_antennas) {
  RVec g(n_antennas);
  for (int q = 0; q < n_antennas; ++q)
    g(q) = static_cast<double>(q) / n_antennas;
  return g;
}

AngleDictionary canonical_dictionary(int n_antennas) {
  return build_dictionary(n_antennas, canonical_grid(n_antennas));
}

RVec shifted_grid(int n_antennas, double delta) {
  RVec g(n_antennas);
  for (int q = 0; q < n_antennas; ++q)
    g(q) = (static_cast<double>(q) + delta) / n_antennas;
  return g;
}

} // namespace dgmp
