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
#include <stdexcept>
#include <string>

namespace dgmp {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All physical and algorithmic parameters of one simulated uplink.
/// Defaults reproduce the reference wideband setup: 30 GHz carrier,
/// 0.25 GHz sampling, 100 ns delay spread, 128x32 antennas, 4 users.
struct SystemConfig {
  int n_ant_bs = 128;  // BS array size N_bs
  int n_rf_bs = 4;     // BS RF chains (= n_users in the reference setup)
  int n_ant_ue = 32;   // UE array size N_ue
  int n_rf_ue = 1;     // UE RF chains
  int n_users = 4;     // K
  int n_subcarriers = 32; // P (pilot subcarriers / DFT size)
  int cp_len = 25;        // L_CP; derived from tau_max * f_s when loading if absent
  int n_symbols = 20;     // G, training OFDM symbols per coherence block

  double carrier_freq_hz = 30e9;
  double sample_rate_hz = 0.25e9;
  double tau_max_s = 100e-9;
  double antenna_spacing_ratio = 0.5; // d / lambda
  double k_factor_db = 20.0;          // LOS power over summed NLOS power
  int n_paths = 4;                    // L_k, same for every user
  int refine_factor = 10;             // J, local grid oversampling
  double epsilon = 1e-3;              // inner-loop stop threshold
  double snr_db = 0.0;                // +inf means noiseless
  std::uint64_t rng_seed = 1;

  /// Throws ConfigError naming every violated constraint.
  void validate() const;

  /// Minimum admissible CP length ceil(tau_max * f_s).
  int min_cp_len() const;
};

/// Small configuration for fast experiments and tests.
SystemConfig desk_config();

/// Parses a flat key=value file ('#' comments, blank lines allowed).
/// Unknown keys and malformed lines raise ConfigError with the line number.
/// cp_len may be omitted and is then derived as ceil(tau_max * f_s).
SystemConfig load_config(const std::string& path);
SystemConfig parse_config(const std::string& text, const std::string& origin);

/// Canonical key=value rendering (stable key order, units in key names).
std::string config_to_string(const SystemConfig& cfg);

/// FNV-1a hash of the canonical rendering, as fixed-width hex.
std::string config_hash(const SystemConfig& cfg);

} // namespace dgmp
