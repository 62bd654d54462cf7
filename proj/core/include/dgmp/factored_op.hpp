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

#include "dgmp/measurement.hpp"
#include "dgmp/pilots.hpp"
#include "dgmp/types.hpp"

namespace dgmp {

/// Factored form of a per-subcarrier stacked measurement operator
///   Gamma_p = [kron(w_p^(t)T, M_p^(t))]_{t=1..G}   (rows grouped by t)
/// with M = Z^H * A_grid_bs (N_rf x grid_bs) and w = A_grid_ue^H * f
/// (one row per symbol). Column j = q_ue * grid_bs + q_bs is
/// w[q_ue] * M[:, q_bs] stacked over t. Keeping the factors avoids
/// materializing G*N_rf x grid_bs*grid_ue matrices; correlations, column
/// norms and single columns are exact and O(factor sizes).
struct FactoredOp {
  int n_rf = 0, n_symbols = 0;
  int grid_bs = 0, grid_ue = 0;
  std::vector<CMat> m_stack;   // [p-1] (G*N_rf) x grid_bs
  std::vector<CMat> w_stack;   // [p-1] G x grid_ue
  std::vector<RVec> col_norm2; // [p-1] grid_ue*grid_bs, squared column norms

  int n_subcarriers() const { return static_cast<int>(m_stack.size()); }
  int n_columns() const { return grid_bs * grid_ue; }

  /// Gamma_p^H * b for subcarrier p (1-based); unnormalized columns.
  CVec correlate(int p, const CVec& b) const;

  /// Unnormalized column j of Gamma_p.
  CVec column(int p, int j) const;
};

/// Full multi-user operator on the canonical grids; grid_ue = K * N_ue and
/// columns are grouped by user, matching vect([H^a_1 .. H^a_K]).
FactoredOp make_full_operator(const MeasurementSet& meas);

/// Single-user operator on arbitrary BS/UE spatial-frequency grids, built
/// from that user's own pilots (the adaptive measurement matrix of the
/// refinement loop).
FactoredOp make_user_operator(const MeasurementSet& meas, const PilotBlock& pilots,
                              int user, const RVec& grid_bs_freqs,
                              const RVec& grid_ue_freqs);

} // namespace dgmp
