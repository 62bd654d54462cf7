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

#include <utility>
#include <vector>

#include "dgmp/channel.hpp"
#include "dgmp/config.hpp"
#include "dgmp/pilots.hpp"
#include "dgmp/rng.hpp"
#include "dgmp/types.hpp"

namespace dgmp {

/// Scales every column to unit Euclidean norm; returns the scaled matrix and
/// the original norms. A zero column raises std::invalid_argument naming its
/// index.
std::pair<CMat, RVec> normalize_columns(const CMat& m);

struct MeasurementDims {
  int n_bs = 0, n_rf_bs = 0, n_ue = 0, n_users = 0;
  int n_subcarriers = 0, n_symbols = 0;

  static MeasurementDims from(const SystemConfig& cfg);
  int rows() const { return n_symbols * n_rf_bs; }        // G * N_rf
  int cols_per_user() const { return n_bs * n_ue; }
  int cols() const { return n_users * cols_per_user(); }
};

/// Aggregated per-subcarrier measurements over G symbols, plus the composite
/// pilot quantities needed to interpret them (and to rebuild the aggregated
/// measurement matrices, which at full scale are too large to keep resident).
class MeasurementSet {
 public:
  MeasurementDims dims;
  std::vector<CVec> r_bar;                        // [p-1] length G*N_rf
  std::vector<std::vector<CMat>> z_comp;          // [p-1][t] N_bs x N_rf
  std::vector<std::vector<std::vector<CVec>>> f_eff; // [p-1][t][k] N_ue
  double noise_var = 0.0;
  double snr_db_realized = 0.0;

  /// Aggregated measurement matrix for subcarrier p (1-based):
  /// rows stack t = 1..G of kron((A_ue_bar^H f_bar)^T, Z^H A_bs).
  /// Materialized on demand via the explicit Kronecker product.
  CMat psi_bar(int p) const;

  /// Euclidean norms of psi_bar(p)'s columns, computed without
  /// materializing the matrix.
  RVec column_norms(int p) const;

  /// Stacked unnormalized measurement-domain atom of user k at arbitrary
  /// spatial frequencies: segment t is (a_ue^H f) * (Z^H a_bs).
  CVec atom(int p, int user, double aoa_freq, double aod_freq) const;
};

/// Builds the per-subcarrier aggregated measurements. Evaluates the received
/// signal twice -- directly from the frequency-domain channels, and through
/// the materialized measurement matrix acting on the vectorized angle-domain
/// channels -- and requires the two routes to agree to 1e-10 relative error.
/// Noise is circular complex Gaussian, calibrated per realization so the
/// aggregate signal/noise energy ratio matches cfg.snr_db exactly in
/// expectation (snr_db = +inf gives a noiseless set).
MeasurementSet assemble_measurement(const PilotBlock& pilots,
                                    const ChannelRealization& chan,
                                    const SystemConfig& cfg, Rng& noise_rng);

} // namespace dgmp
