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

#include "dgmp/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace dgmp {

std::uint64_t mix_seed(std::uint64_t parent, std::uint64_t tag) {
  std::uint64_t z = parent + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  // Rejection sampling for an unbiased draw.
  const std::uint64_t limit =UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % n;
}

cxd Rng::complex_gaussian(double variance) {
  if (variance == 0.0) return {0.0, 0.0};
  // Polar Box-Muller: sqrt(-v ln u1) e^{j 2pi u2} has E|z|^2 = v and
  // independent N(0, v/2) components.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double r = std::sqrt(-variance * std::log(u1));
  const double phi = kTwoPi * uniform();
  return {r * std::cos(phi), r * std::sin(phi)};
}

CVec Rng::complex_gaussian_vector(Eigen::Index n, double variance) {
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_gaussian(variance);
  return v;
}

} // namespace dgmp
