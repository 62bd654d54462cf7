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

#include <optional>
#include <string>
#include <vector>

#include "dgmp/config.hpp"
#include "dgmp/estimators.hpp"
#include "dgmp/link_eval.hpp"
#include "dgmp/metrics.hpp"

namespace dgmp {

enum class Scheme { kDgmp, kSomp, kOmpPerSubcarrier, kOracle };

std::string scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(const std::string& name);

struct TrialRecord {
  Scheme scheme = Scheme::kDgmp;
  int g = 0;
  double snr_db = 0.0;
  int trial = 0;
  double nmse = 0.0;
  double se_bpcu = 0.0;
  double ber = 0.0; // NaN when BER is disabled for the sweep
  std::uint64_t seed = 0;
  double runtime_s = 0.0; // not written to CSV (non-deterministic)
};

struct CellAggregate {
  Scheme scheme;
  int g = 0;
  double snr_db = 0.0;
  int n_trials = 0;
  double nmse_mean = 0.0, nmse_stderr = 0.0;
  double se_mean = 0.0, se_stderr = 0.0;
  double ber_mean = 0.0, ber_stderr = 0.0;
};

struct SweepOptions {
  std::vector<Scheme> schemes{Scheme::kDgmp, Scheme::kOracle};
  std::vector<int> g_values{20};
  std::vector<double> snr_values{0.0, 10.0, 20.0};
  int n_trials = 10;
  int n_jobs = 1;
  long ber_bits = 0; // 0 disables BER; otherwise rounded up to 4*K*P
  bool on_grid = false;
};

/// Full factorial Monte-Carlo over (G, SNR, trial) cells; every random
/// stream derives from (cfg.rng_seed, trial, G, SNR index), so results are
/// independent of n_jobs and reproducible. Per-trial failures are reported
/// via the failures output and the sweep continues.
std::vector<TrialRecord> run_sweep(const SystemConfig& cfg, const SweepOptions& opt,
                                   std::vector<std::string>* failures = nullptr);

/// One estimator run used by run_sweep and the single-shot CLI path.
EstimateResult run_scheme(Scheme scheme, const MeasurementSet& meas,
                          const PilotBlock& pilots, const ChannelRealization& chan,
                          const SystemConfig& cfg);

std::vector<CellAggregate> aggregate_records(const std::vector<TrialRecord>& records);

std::string trials_to_csv(const std::vector<TrialRecord>& records);
std::string aggregates_to_csv(const std::vector<CellAggregate>& cells);

} // namespace dgmp
