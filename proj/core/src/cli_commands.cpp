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

#include "dgmp/cli_commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "dgmp/measurement.hpp"
#include "dgmp/serialize.hpp"
#include "dgmp/sweep.hpp"

#ifndef DGMP_VERSION
#define DGMP_VERSION "dev"
#endif

namespace dgmp::cli {

namespace {

SystemConfig resolve_config(const CommonArgs& args) {
  SystemConfig cfg =
      args.config_path.empty() ? SystemConfig{} : load_config(args.config_path);
  if (args.seed) cfg.rng_seed = *args.seed;
  cfg.validate();
  return cfg;
}

std::vector<Scheme> resolve_schemes(const std::vector<std::string>& names) {
  std::vector<Scheme> schemes;
  for (const auto& n : names) {
    const auto s = scheme_from_name(n);
    if (!s)
      throw std::invalid_argument("unknown scheme '" + n +
                                  "' (expected dgmp, somp, omp or oracle)");
    schemes.push_back(*s);
  }
  return schemes;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string metric_str(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

} // namespace

int cmd_validate_config(const std::string& config_path) {
  try {
    const SystemConfig cfg = load_config(config_path);
    std::cout << "ok (hash " << config_hash(cfg) << ")\n" << config_to_string(cfg);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_estimate(const EstimateArgs& args) {
  try {
    const SystemConfig cfg = resolve_config(args.common);
    const auto schemes = resolve_schemes(args.schemes);

    const std::uint64_t trial_seed = mix_seed(cfg.rng_seed, 0);
    Rng chan_rng(mix_seed(trial_seed, kStreamChannel));
    Rng pilot_rng(mix_seed(mix_seed(trial_seed, cfg.n_symbols), kStreamPilot));
    Rng noise_rng(mix_seed(mix_seed(mix_seed(trial_seed, cfg.n_symbols), 0), kStreamNoise));

    const auto chan = generate_channel(cfg, chan_rng, args.on_grid);
    const auto pilots = generate_pilots(cfg, pilot_rng);
    const auto meas = assemble_measurement(pilots, chan, cfg, noise_rng);

    if (!args.export_meas_prefix.empty())
      save_measurement(meas, pilots, cfg, args.export_meas_prefix);
    if (!args.export_channel_path.empty())
      write_file(args.export_channel_path, channel_to_json(chan, cfg));

    for (std::size_t i = 0; i < schemes.size(); ++i) {
      const auto result = run_scheme(schemes[i], meas, pilots, chan, cfg);
      const double err = nmse(chan.freq_channels, reconstruct_channel(result, cfg));
      const double se = spectral_efficiency(chan, result, cfg, cfg.snr_db);
      std::cout << "scheme=" << scheme_name(schemes[i]) << " G=" << cfg.n_symbols
                << " snr_db=" << metric_str(cfg.snr_db) << " nmse=" << metric_str(err)
                << " nmse_db=" << metric_str(10.0 * std::log10(err));
      std::cout << " se_bpcu=" << metric_str(se);
      if (args.ber_bits > 0) {
        const long chunk = 4L * cfg.n_users * cfg.n_subcarriers;
        const long bits = ((args.ber_bits + chunk - 1) / chunk) * chunk;
        Rng ber_rng(mix_seed(mix_seed(trial_seed, cfg.n_symbols), kStreamSymbols));
        std::cout << " ber="
                  << metric_str(ber_16qam(chan, result, cfg, cfg.snr_db, bits, ber_rng));
      }
      std::cout << " realized_snr_db=" << metric_str(meas.snr_db_realized) << "\n";
      if (!args.export_result_path.empty() && i == 0)
        write_file(args.export_result_path, result_to_json(result));
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_sweep(const SweepArgs& args) {
  try {
    const SystemConfig cfg = resolve_config(args.common);
    SweepOptions opt;
    opt.schemes = resolve_schemes(args.schemes);
    opt.g_values = args.g_values;
    opt.snr_values = args.snr_values;
    opt.n_trials = args.trials;
    opt.n_jobs = args.jobs;
    opt.ber_bits = args.ber_bits;
    opt.on_grid = args.on_grid;

    const auto wall0 = std::chrono::steady_clock::now();
    std::vector<std::string> failures;
    const auto records = run_sweep(cfg, opt, &failures);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();

    namespace fs = std::filesystem;
    fs::create_directories(args.out_dir);
    const std::string trials_path = (fs::path(args.out_dir) / "trials.csv").string();
    const std::string agg_path = (fs::path(args.out_dir) / "aggregate.csv").string();
    const std::string manifest_path = (fs::path(args.out_dir) / "manifest.json").string();
    write_file(trials_path, trials_to_csv(records));
    write_file(agg_path, aggregates_to_csv(aggregate_records(records)));

    nlohmann::json manifest;
    manifest["version"] = DGMP_VERSION;
    manifest["config"] = config_to_string(cfg);
    manifest["config_hash"] = config_hash(cfg);
    manifest["master_seed"] = cfg.rng_seed;
    for (const auto& s : opt.schemes) manifest["schemes"].push_back(scheme_name(s));
    manifest["g_values"] = opt.g_values;
    manifest["snr_values"] = opt.snr_values;
    manifest["trials"] = opt.n_trials;
    manifest["jobs"] = opt.n_jobs;
    manifest["ber_bits"] = opt.ber_bits;
    manifest["on_grid"] = opt.on_grid;
    manifest["outputs"] = {trials_path, agg_path};
    manifest["wall_time_s"] = wall;
    manifest["timestamp_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch()).count();
    manifest["failures"] = failures;
    write_file(manifest_path, manifest.dump(2) + "\n");

    for (const auto& f : failures) std::cerr << "warning: " << f << "\n";
    std::cout << "wrote " << trials_path << ", " << agg_path << ", " << manifest_path
              << " (" << records.size() << " records, " << metric_str(wall) << " s)\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_replay(const ReplayArgs& args) {
  try {
    const SystemConfig cfg = resolve_config(args.common);
    const auto scheme = scheme_from_name(args.scheme);
    if (!scheme) throw std::invalid_argument("unknown scheme '" + args.scheme + "'");
    if (*scheme == Scheme::kOracle)
      throw std::invalid_argument("replay supports dgmp/somp/omp (oracle needs the channel)");

    const LoadedMeasurement lm = load_measurement(cfg, args.meas_prefix);
    EstimateResult result;
    switch (*scheme) {
      case Scheme::kDgmp: result = dgmp_estimate(lm.meas, lm.pilots, cfg); break;
      case Scheme::kSomp: result = somp_baseline(lm.meas, cfg, cfg.n_users); break;
      default: result = omp_per_subcarrier_baseline(lm.meas, cfg, cfg.n_users); break;
    }
    const std::string json = result_to_json(result);
    if (!args.out_result_path.empty()) write_file(args.out_result_path, json);

    if (!args.compare_result_path.empty()) {
      std::ifstream ref(args.compare_result_path);
      if (!ref) throw std::runtime_error("cannot open '" + args.compare_result_path + "'");
      std::ostringstream ss;
      ss << ref.rdbuf();
      if (ss.str() != json) {
        std::cerr << "replay result differs from " << args.compare_result_path << "\n";
        return 1;
      }
      std::cout << "replay identical to " << args.compare_result_path << "\n";
    } else if (args.out_result_path.empty()) {
      std::cout << json << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace dgmp::cli
