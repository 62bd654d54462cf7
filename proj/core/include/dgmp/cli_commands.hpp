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
#include <optional>
#include <string>
#include <vector>

namespace dgmp::cli {

struct CommonArgs {
  std::string config_path; // empty: built-in defaults
  std::optional<std::uint64_t> seed;
};

struct EstimateArgs {
  CommonArgs common;
  std::vector<std::string> schemes{"dgmp"};
  long ber_bits = 0;
  bool on_grid = false;
  std::string export_meas_prefix;   // optional: write measurement container
  std::string export_result_path;   // optional: write EstimateResult JSON
  std::string export_channel_path;  // optional: write channel JSON
};

struct SweepArgs {
  CommonArgs common;
  std::vector<std::string> schemes{"dgmp", "somp", "omp", "oracle"};
  std::vector<int> g_values{20};
  std::vector<double> snr_values{0.0, 10.0, 20.0};
  int trials = 10;
  int jobs = 1;
  long ber_bits = 0;
  bool on_grid = false;
  std::string out_dir = "out";
};

struct ReplayArgs {
  CommonArgs common;
  std::string meas_prefix;        // from --export-meas of a previous run
  std::string scheme = "dgmp";
  std::string out_result_path;    // optional: write result JSON
  std::string compare_result_path; // optional: exit 1 unless identical
};

int cmd_validate_config(const std::string& config_path);
int cmd_estimate(const EstimateArgs& args);
int cmd_sweep(const SweepArgs& args);
int cmd_replay(const ReplayArgs& args);

} // namespace dgmp::cli
