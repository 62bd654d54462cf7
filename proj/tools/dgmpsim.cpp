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

#include <CLI11.hpp>

#include "dgmp/cli_commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"dgmpsim: multi-user wideband massive MIMO channel estimation simulator"};
  app.require_subcommand(1);

  dgmp::cli::EstimateArgs est;
  dgmp::cli::SweepArgs swp;
  dgmp::cli::ReplayArgs rep;
  std::string validate_path;

  std::uint64_t est_seed = 0, swp_seed = 0, rep_seed = 0;

  auto* estimate = app.add_subcommand("estimate", "Run one trial end to end and print metrics");
  estimate->add_option("--config", est.common.config_path, "Config file (key = value)");
  auto* est_seed_opt = estimate->add_option("--seed", est_seed, "Master RNG seed");
  estimate->add_option("--schemes", est.schemes, "Estimators to run (dgmp somp omp oracle)")
      ->delimiter(',');
  estimate->add_option("--ber-bits", est.ber_bits, "Also measure 16-QAM BER over this many bits");
  estimate->add_flag("--on-grid", est.on_grid, "Draw path angles on the canonical grids");
  estimate->add_option("--export-meas", est.export_meas_prefix,
                       "Write measurement container to PREFIX.bin/.json");
  estimate->add_option("--export-result", est.export_result_path,
                       "Write first scheme's estimate to this JSON file");
  estimate->add_option("--export-channel", est.export_channel_path,
                       "Write channel realization to this JSON file");

  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over G and SNR, write CSVs");
  sweep->add_option("--config", swp.common.config_path, "Config file (key = value)");
  auto* swp_seed_opt = sweep->add_option("--seed", swp_seed, "Master RNG seed");
  sweep->add_option("--schemes", swp.schemes, "Estimators to run")->delimiter(',');
  sweep->add_option("--g-values", swp.g_values, "Training lengths G")->delimiter(',');
  sweep->add_option("--snr-values", swp.snr_values, "SNR points in dB")->delimiter(',');
  sweep->add_option("--trials", swp.trials, "Trials per cell");
  sweep->add_option("--jobs", swp.jobs, "Parallel workers");
  sweep->add_option("--ber-bits", swp.ber_bits, "16-QAM BER bits per trial (0 = skip)");
  sweep->add_flag("--on-grid", swp.on_grid, "Draw path angles on the canonical grids");
  sweep->add_option("--out", swp.out_dir, "Output directory");

  auto* replay = app.add_subcommand("replay", "Re-run an estimator on an exported measurement");
  replay->add_option("--config", rep.common.config_path, "Config file used for the export")
      ->required();
  auto* rep_seed_opt = replay->add_option("--seed", rep_seed, "Master RNG seed override");
  replay->add_option("--meas", rep.meas_prefix, "Measurement prefix (from --export-meas)")
      ->required();
  replay->add_option("--scheme", rep.scheme, "Estimator to run (dgmp somp omp)");
  replay->add_option("--out", rep.out_result_path, "Write the estimate to this JSON file");
  replay->add_option("--compare", rep.compare_result_path,
                     "Compare against a previous result JSON; exit 1 on mismatch");

  auto* validate = app.add_subcommand("validate-config", "Parse and validate a config file");
  validate->add_option("config", validate_path, "Config file")->required();

  CLI11_PARSE(app, argc, argv);

  if (est_seed_opt->count()) est.common.seed = est_seed;
  if (swp_seed_opt->count()) swp.common.seed = swp_seed;
  if (rep_seed_opt->count()) rep.common.seed = rep_seed;

  if (estimate->parsed()) return dgmp::cli::cmd_estimate(est);
  if (sweep->parsed()) return dgmp::cli::cmd_sweep(swp);
  if (replay->parsed()) return dgmp::cli::cmd_replay(rep);
  if (validate->parsed()) return dgmp::cli::cmd_validate_config(validate_path);
  return 1;
}
