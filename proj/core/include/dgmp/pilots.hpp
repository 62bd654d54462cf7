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

#include <vector>

#include "dgmp/config.hpp"
#include "dgmp/rng.hpp"
#include "dgmp/types.hpp"

namespace dgmp {

/// Randomized constant-modulus training block for G OFDM symbols.
/// RF stages (z_rf, f_rf) are shared by all subcarriers; baseband stages
/// (z_bb, s_eff) are drawn per subcarrier. Every entry is exp(j*phi) with
/// phi i.i.d. uniform on [0, 2*pi).
struct PilotBlock {
  std::vector<CMat> z_rf;                            // [t] N_bs x N_rf_bs
  std::vector<std::vector<CMat>> z_bb;               // [t][p-1] N_rf_bs x N_rf_bs
  std::vector<std::vector<CMat>> f_rf;               // [t][k] N_ue x N_rf_ue
  std::vector<std::vector<std::vector<CVec>>> s_eff; // [t][p-1][k] N_rf_ue

  int n_symbols() const { return static_cast<int>(z_rf.size()); }

  /// Composite BS combiner Z_rf * Z_bb for symbol t (0-based) and
  /// subcarrier p (1-based); N_bs x N_rf_bs.
  CMat composite_combiner(int t, int p) const;

  /// Effective transmitted pilot f = F_rf * s_eff for user k; N_ue x 1.
  CVec effective_pilot(int t, int p, int k) const;
};

PilotBlock generate_pilots(const SystemConfig& cfg, Rng& rng);

} // namespace dgmp
