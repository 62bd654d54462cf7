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

#include <benchmark/benchmark.h>

#include "dgmp/estimators.hpp"
#include "dgmp/factored_op.hpp"
#include "dgmp/measurement.hpp"

namespace {

using namespace dgmp;

struct Fixture {
  SystemConfig cfg;
  ChannelRealization chan;
  PilotBlock pilots;
  MeasurementSet meas;

  explicit Fixture(int n_bs, int n_ue, int users, int p, int g) {
    cfg = desk_config();
    cfg.n_ant_bs = n_bs;
    cfg.n_ant_ue = n_ue;
    cfg.n_users = users;
    cfg.n_rf_bs = users;
    cfg.n_subcarriers = p;
    cfg.cp_len = p / 2;
    cfg.tau_max_s = cfg.cp_len / cfg.sample_rate_hz;
    cfg.n_symbols = g;
    cfg.snr_db = 0.0;
    Rng chan_rng(1), pilot_rng(2), noise_rng(3);
    chan = generate_channel(cfg, chan_rng, false);
    pilots = generate_pilots(cfg, pilot_rng);
    meas = assemble_measurement(pilots, chan, cfg, noise_rng);
  }
};

void BM_AssembleMeasurement(benchmark::State& state) {
  Fixture fx(64, 16, 2, 8, 8);
  Rng noise_rng(3);
  for (auto _ : state) {
    auto meas = assemble_measurement(fx.pilots, fx.chan, fx.cfg, noise_rng);
    benchmark::DoNotOptimize(meas.r_bar);
  }
}
BENCHMARK(BM_AssembleMeasurement)->Unit(benchmark::kMillisecond);

void BM_JointCorrelation(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)), 16, 2, 8, 8);
  const auto op = make_full_operator(fx.meas);
  for (auto _ : state) {
    for (int p = 1; p <= fx.cfg.n_subcarriers; ++p) {
      auto c = op.correlate(p, fx.meas.r_bar[p - 1]);
      benchmark::DoNotOptimize(c);
    }
  }
}
BENCHMARK(BM_JointCorrelation)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_DgmpEstimate(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)), 8, 2, 8, 8);
  for (auto _ : state) {
    auto result = dgmp_estimate(fx.meas, fx.pilots, fx.cfg);
    benchmark::DoNotOptimize(result.atoms);
  }
}
BENCHMARK(BM_DgmpEstimate)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SompBaseline(benchmark::State& state) {
  Fixture fx(32, 8, 2, 8, 8);
  for (auto _ : state) {
    auto result = somp_baseline(fx.meas, fx.cfg, fx.cfg.n_users);
    benchmark::DoNotOptimize(result.atoms);
  }
}
BENCHMARK(BM_SompBaseline)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
