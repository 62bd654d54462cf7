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

#include "dgmp/pilots.hpp"

#include <cmath>

namespace dgmp {

namespace {

cxd unit_phase(Rng& rng) {
  const double phi = kTwoPi * rng.uniform();
  return {std::cos(phi), std::sin(phi)};
}

CMat random_phase_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  CMat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = unit_phase(rng);
  return m;
}

} // namespace

CMat PilotBlock::composite_combiner(int t, int p) const {
  return z_rf.at(t) * z_bb.at(t).at(p - 1);
}

CVec PilotBlock::effective_pilot(int t, int p, int k) const {
  return f_rf.at(t).at(k) * s_eff.at(t).at(p - 1).at(k);
}

PilotBlock generate_pilots(const SystemConfig& cfg, Rng& rng) {
  cfg.validate();
  const int g = cfg.n_symbols;
  const int p_count = cfg.n_subcarriers;

  PilotBlock blk;
  blk.z_rf.reserve(g);
  blk.z_bb.resize(g);
  blk.f_rf.resize(g);
  blk.s_eff.resize(g);

  // Draw order is fixed (t, then family, then p/k) so that a seed pins the
  // whole block.
  for (int t = 0; t < g; ++t) {
    blk.z_rf.push_back(random_phase_matrix(cfg.n_ant_bs, cfg.n_rf_bs, rng));
    blk.f_rf[t].reserve(cfg.n_users);
    for (int k = 0; k < cfg.n_users; ++k)
      blk.f_rf[t].push_back(random_phase_matrix(cfg.n_ant_ue, cfg.n_rf_ue, rng));
    blk.z_bb[t].reserve(p_count);
    blk.s_eff[t].resize(p_count);
    for (int p = 0; p < p_count; ++p) {
      blk.z_bb[t].push_back(random_phase_matrix(cfg.n_rf_bs, cfg.n_rf_bs, rng));
      blk.s_eff[t][p].reserve(cfg.n_users);
      for (int k = 0; k < cfg.n_users; ++k) {
        CVec s(cfg.n_rf_ue);
        for (int i = 0; i < cfg.n_rf_ue; ++i) s(i) = unit_phase(rng);
        blk.s_eff[t][p].push_back(std::move(s));
      }
    }
  }
  return blk;
}

} // namespace dgmp
