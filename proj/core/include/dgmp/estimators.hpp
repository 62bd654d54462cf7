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

#include "dgmp/factored_op.hpp"
#include "dgmp/measurement.hpp"
#include "dgmp/steering.hpp"
#include "dgmp/types.hpp"

namespace dgmp {

/// Least squares via SVD pseudo-inverse; singular values below
/// rtol * sigma_max are treated as zero.
CVec ls_solve_pinv(const CMat& a, const CVec& b, double rtol = 1e-10);

/// One recovered measurement-domain atom: a (user, angle pair) with its
/// per-subcarrier gains in physical channel units (de-scaled by the
/// measurement column norms).
struct EstimateAtom {
  int user = 0;
  double aoa_freq = 0.0;
  double aod_freq = 0.0;
  CVec gains; // length P
};

struct UserDiagnostics {
  int inner_iterations = 0;
  double final_beta = 0.0;
  bool converged = true; // false when the inner loop hit its iteration cap
  bool covered = true;   // false when no atom was selected for this user
};

struct EstimateResult {
  int n_users = 0;
  int n_subcarriers = 0;
  int n_ant_bs = 0, n_ant_ue = 0;

  std::vector<EstimateAtom> atoms; // in selection order

  // Per-user LOS summary. Uncovered users (possible for the fixed-grid
  // baselines) get spatial frequency 0 and zero gains, flagged in
  // diagnostics.
  std::vector<double> los_aoa_freq; // [k]
  std::vector<double> los_aod_freq; // [k]
  std::vector<CVec> los_gains;      // [k] length P
  std::vector<UserDiagnostics> diagnostics;
  RVec alpha_display; // [k] subcarrier-averaged |gain|, display only

  // Selected dictionary column indices per subcarrier (canonical grid for
  // the baselines; refined coarse indices for the greedy joint estimator).
  std::vector<std::vector<int>> support_per_subcarrier; // [p-1]

  SteeringVector los_steering_bs(int user) const;
  SteeringVector los_steering_ue(int user) const;
};

/// Running state of the greedy joint estimation: per-subcarrier residues,
/// chosen users, the growing unit-norm atom matrices and the current LS
/// gains (normalized-atom domain).
struct DgmpState {
  std::vector<CVec> residues; // [p-1] b_p
  std::vector<int> chosen_users;
  std::vector<std::pair<double, double>> refined_freqs; // per chosen user
  std::vector<CMat> atom_matrix;  // [p-1] rows x |chosen|
  std::vector<RVec> atom_prenorm; // [p-1] |chosen| pre-normalization norms
  CMat gains;                     // |chosen| x P
  std::vector<double> residual_energy_trace; // after each outer refit

  double residual_energy() const;
};

struct InnerRefineResult {
  double aoa_freq = 0.0; // refined BS-side spatial frequency
  double aod_freq = 0.0; // refined UE-side spatial frequency
  double beta = 0.0;
  int iterations = 0;
  bool converged = true;
  int coarse_bs_idx = 0, coarse_ue_idx = 0; // final n (0-based grid indices)
  int local_bs_idx = 0, local_ue_idx = 0;   // final m (0-based local indices)
  double delta_bs = 0.0, delta_ue = 0.0;    // final offsets in grid-index units
  std::vector<double> beta_trace;           // beta per pass
  FactoredOp final_op; // shifted full-grid operator of the refined user
};

/// Grid-matching refinement for one user: alternates a coarse argmax over
/// the user's (possibly shifted) full grid with a local search over
/// (2J-1)^2 candidates spaced 1/(2J*N) in spatial frequency, rebuilding the
/// user's measurement operator with the winning fractional offset, until
/// the correlation peak beta changes by less than epsilon (at least two
/// passes; hard cap 50 with a diagnostic flag).
InnerRefineResult inner_refine(const DgmpState& state, int user,
                               const PilotBlock& pilots, const MeasurementSet& meas,
                               const SystemConfig& cfg);

/// Distributed grid matching pursuit: K outer iterations of joint
/// correlation over all subcarriers with per-user exclusion, inner grid
/// refinement, and per-subcarrier LS gain refits of all chosen atoms.
/// final_state, when given, receives the residues/atoms after the last
/// outer iteration.
EstimateResult dgmp_estimate(const MeasurementSet& meas, const PilotBlock& pilots,
                             const SystemConfig& cfg,
                             DgmpState* final_state = nullptr);

/// Simultaneous (joint across subcarriers) matching pursuit on the fixed
/// canonical grid; no refinement, no per-user exclusion.
EstimateResult somp_baseline(const MeasurementSet& meas, const SystemConfig& cfg,
                             int n_atoms);

/// Matching pursuit run independently per subcarrier; support sets may
/// differ across subcarriers.
EstimateResult omp_per_subcarrier_baseline(const MeasurementSet& meas,
                                           const SystemConfig& cfg, int n_atoms);

/// Performance bound: atoms built from the true LOS steering vectors,
/// per-subcarrier LS gain fit.
EstimateResult oracle_estimate(const MeasurementSet& meas,
                               const ChannelRealization& chan,
                               const SystemConfig& cfg);

/// Rank-1 LOS reconstruction per user and subcarrier,
/// H_hat = sum over the user's atoms of gain * a_bs * a_ue^H.
std::vector<std::vector<CMat>> reconstruct_channel(const EstimateResult& result,
                                                   const SystemConfig& cfg);

/// JSON serialization of an estimate (angles, gains, diagnostics) for
/// replay comparison.
std::string result_to_json(const EstimateResult& result);
EstimateResult result_from_json(const std::string& json_text);

} // namespace dgmp
