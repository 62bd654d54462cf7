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

#include <cstdint>
#include <random>

#include "dgmp/types.hpp"

namespace dgmp {

/// One mixing round of SplitMix64. Used to derive child seeds from a parent
/// seed plus a tag so that every random stream in a run is a pure function of
/// (master seed, trial index, stream tag, ...).
std::uint64_t mix_seed(std::uint64_t parent, std::uint64_t tag);

// Stream tags for the seed-derivation tree:
//   master -> trial        : mix_seed(master, trial)
//   trial  -> channel      : mix_seed(trial_seed, kStreamChannel)
//   trial  -> pilot (per G): mix_seed(mix_seed(trial_seed, g), kStreamPilot)
//   trial  -> noise        : mix_seed(mix_seed(mix_seed(trial_seed, g), snr_index), kStreamNoise)
inline constexpr std::uint64_t kStreamChannel = 0x6368616eULL; // "chan"
inline constexpr std::uint64_t kStreamPilot = 0x70696c74ULL;   // "pilt"
inline constexpr std::uint64_t kStreamNoise = 0x6e6f6973ULL;   // "nois"
inline constexpr std::uint64_t kStreamSymbols = 0x73796d62ULL; // "symb"

/// Deterministic random stream. Distributions are implemented on top of the
/// raw 64-bit output (not std::*_distribution) so that sequences do not
/// depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n). Requires n > 0.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Circularly-symmetric complex Gaussian CN(0, variance).
  cxd complex_gaussian(double variance);

  /// Vector of i.i.d. CN(0, variance) entries.
  CVec complex_gaussian_vector(Eigen::Index n, double variance);

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

} // namespace dgmp
