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

#include "dgmp/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "dgmp/measurement.hpp"
#include "dgmp/pilots.hpp"

namespace dgmp {

namespace {

std::string csv_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Cell {
  int g_index, snr_index, trial;
};

} // namespace

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kDgmp: return "dgmp";
    case Scheme::kSomp: return "somp";
    case Scheme::kOmpPerSubcarrier: return "omp";
    case Scheme::kOracle: return "oracle";
  }
  return "unknown";
}

std::optional<Scheme> scheme_from_name(const std::string& name) {
  if (name == "dgmp") return Scheme::kDgmp;
  if (name == "somp") return Scheme::kSomp;
  if (name == "omp") return Scheme::kOmpPerSubcarrier;
  if (name == "oracle") return Scheme::kOracle;
  return std::nullopt;
}

EstimateResult run_scheme(Scheme scheme, const MeasurementSet& meas,
                          const PilotBlock& pilots, const ChannelRealization& chan,
                          const SystemConfig& cfg) {
  switch (scheme) {
    case Scheme::kDgmp: return dgmp_estimate(meas, pilots, cfg);
    case Scheme::kSomp: return somp_baseline(meas, cfg, cfg.n_users);
    case Scheme::kOmpPerSubcarrier:
      return omp_per_subcarrier_baseline(meas, cfg, cfg.n_users);
    case Scheme::kOracle: return oracle_estimate(meas, chan, cfg);
  }
  throw std::logic_error("run_scheme: unknown scheme");
}

std::vector<TrialRecord> run_sweep(const SystemConfig& cfg, const SweepOptions& opt,
                                   std::vector<std::string>* failures) {
  cfg.validate();
  if (opt.schemes.empty() || opt.g_values.empty() || opt.snr_values.empty() ||
      opt.n_trials <= 0)
    throw std::invalid_argument("run_sweep: schemes, g_values, snr_values and trials must be nonempty");

  std::vector<Cell> cells;
  for (int gi = 0; gi < static_cast<int>(opt.g_values.size()); ++gi)
    for (int si = 0; si < static_cast<int>(opt.snr_values.size()); ++si)
      for (int trial = 0; trial < opt.n_trials; ++trial)
        cells.push_back({gi, si, trial});

  const int n_schemes = static_cast<int>(opt.schemes.size());
  std::vector<TrialRecord> records(cells.size() * n_schemes);
  std::vector<std::string> local_failures(cells.size());

  auto run_cell = [&](std::size_t ci) {
    const Cell& cell = cells[ci];
    SystemConfig trial_cfg = cfg;
    trial_cfg.n_symbols = opt.g_values[cell.g_index];
    trial_cfg.snr_db = opt.snr_values[cell.snr_index];

    const std::uint64_t trial_seed = mix_seed(cfg.rng_seed, cell.trial);
    const std::uint64_t g_seed = mix_seed(trial_seed, trial_cfg.n_symbols);
    const std::uint64_t cell_seed = mix_seed(g_seed, cell.snr_index);
    try {
      Rng chan_rng(mix_seed(trial_seed, kStreamChannel));
      Rng pilot_rng(mix_seed(g_seed, kStreamPilot));
      Rng noise_rng(mix_seed(cell_seed, kStreamNoise));

      const auto chan = generate_channel(trial_cfg, chan_rng, opt.on_grid);
      const auto pilots = generate_pilots(trial_cfg, pilot_rng);
      const auto meas = assemble_measurement(pilots, chan, trial_cfg, noise_rng);

      long ber_bits = 0;
      if (opt.ber_bits > 0) {
        const long chunk = 4L * trial_cfg.n_users * trial_cfg.n_subcarriers;
        ber_bits = ((opt.ber_bits + chunk - 1) / chunk) * chunk;
      }

      for (int si = 0; si < n_schemes; ++si) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto result =
            run_scheme(opt.schemes[si], meas, pilots, chan, trial_cfg);
        TrialRecord rec;
        rec.scheme = opt.schemes[si];
        rec.g = trial_cfg.n_symbols;
        rec.snr_db = trial_cfg.snr_db;
        rec.trial = cell.trial;
        rec.seed = trial_seed;
        rec.nmse = nmse(chan.freq_channels, reconstruct_channel(result, trial_cfg));
        rec.se_bpcu = spectral_efficiency(chan, result, trial_cfg, trial_cfg.snr_db);
        if (ber_bits > 0) {
          // Common random numbers across schemes: same symbol/noise stream.
          Rng ber_rng(mix_seed(cell_seed, kStreamSymbols));
          rec.ber = ber_16qam(chan, result, trial_cfg, trial_cfg.snr_db, ber_bits, ber_rng);
        } else {
          rec.ber = std::numeric_limits<double>::quiet_NaN();
        }
        rec.runtime_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        records[ci * n_schemes + si] = rec;
      }
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "trial failed (G=" << trial_cfg.n_symbols << ", snr_db=" << trial_cfg.snr_db
          << ", trial=" << cell.trial << "): " << e.what();
      local_failures[ci] = msg.str();
      for (int si = 0; si < n_schemes; ++si) {
        TrialRecord rec;
        rec.scheme = opt.schemes[si];
        rec.g = trial_cfg.n_symbols;
        rec.snr_db = trial_cfg.snr_db;
        rec.trial = cell.trial;
        rec.seed = trial_seed;
        rec.nmse = rec.se_bpcu = rec.ber = std::numeric_limits<double>::quiet_NaN();
        records[ci * n_schemes + si] = rec;
      }
    }
  };

  const int jobs = std::max(1, opt.n_jobs);
  if (jobs == 1 || cells.size() <= 1) {
    for (std::size_t ci = 0; ci < cells.size(); ++ci) run_cell(ci);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t ci = next.fetch_add(1); ci < cells.size(); ci = next.fetch_add(1))
        run_cell(ci);
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min<std::size_t>(jobs, cells.size());
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  if (failures)
    for (auto& f : local_failures)
      if (!f.empty()) failures->push_back(std::move(f));
  return records;
}

std::vector<CellAggregate> aggregate_records(const std::vector<TrialRecord>& records) {
  // Cells keyed by (scheme, g, snr) in first-appearance order, which is
  // already deterministic.
  std::vector<CellAggregate> cells;
  auto find_cell = [&](const TrialRecord& r) -> CellAggregate& {
    for (auto& c : cells)
      if (c.scheme == r.scheme && c.g == r.g && c.snr_db == r.snr_db) return c;
    cells.push_back(CellAggregate{r.scheme, r.g, r.snr_db, 0, 0, 0, 0, 0, 0, 0});
    return cells.back();
  };

  struct Acc {
    double s = 0, s2 = 0;
    void add(double v) { s += v; s2 += v * v; }
  };
  std::vector<std::array<Acc, 3>> accs;
  for (const auto& r : records) {
    if (std::isnan(r.nmse)) continue; // failed trial
    CellAggregate& c = find_cell(r);
    const std::size_t idx = &c - cells.data();
    if (accs.size() < cells.size()) accs.resize(cells.size());
    ++c.n_trials;
    accs[idx][0].add(r.nmse);
    accs[idx][1].add(r.se_bpcu);
    if (!std::isnan(r.ber)) accs[idx][2].add(r.ber);
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto& c = cells[i];
    const int n = c.n_trials;
    if (n == 0) continue;
    auto finish = [n](const Acc& a, double& mean, double& se) {
      mean = a.s / n;
      const double var = std::max(0.0, a.s2 / n - mean * mean);
      se = (n > 1) ? std::sqrt(var / (n - 1)) : 0.0;
    };
    finish(accs[i][0], c.nmse_mean, c.nmse_stderr);
    finish(accs[i][1], c.se_mean, c.se_stderr);
    finish(accs[i][2], c.ber_mean, c.ber_stderr);
  }
  return cells;
}

std::string trials_to_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "scheme,g,snr_db,trial,nmse,se_bpcu,ber,seed\n";
  for (const auto& r : records) {
    out << scheme_name(r.scheme) << ',' << r.g << ',' << csv_double(r.snr_db) << ','
        << r.trial << ',' << csv_double(r.nmse) << ',' << csv_double(r.se_bpcu) << ','
        << csv_double(r.ber) << ',' << r.seed << '\n';
  }
  return out.str();
}

std::string aggregates_to_csv(const std::vector<CellAggregate>& cells) {
  std::ostringstream out;
  out << "scheme,g,snr_db,n_trials,nmse_mean,nmse_stderr,se_bpcu_mean,se_bpcu_stderr,"
         "ber_mean,ber_stderr\n";
  for (const auto& c : cells) {
    out << scheme_name(c.scheme) << ',' << c.g << ',' << csv_double(c.snr_db) << ','
        << c.n_trials << ',' << csv_double(c.nmse_mean) << ',' << csv_double(c.nmse_stderr)
        << ',' << csv_double(c.se_mean) << ',' << csv_double(c.se_stderr) << ','
        << csv_double(c.ber_mean) << ',' << csv_double(c.ber_stderr) << '\n';
  }
  return out.str();
}

} // namespace dgmp
