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

#include "dgmp/measurement.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dgmp/kron.hpp"
#include "dgmp/steering.hpp"

namespace dgmp {

std::pair<CMat, RVec> normalize_columns(const CMat& m) {
  CMat out = m;
  RVec norms(m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double nj = m.col(j).norm();
    if (nj == 0.0)
      throw std::invalid_argument("normalize_columns: column " + std::to_string(j) +
                                  " has zero norm");
    out.col(j) /= nj;
    norms(j) = nj;
  }
  return {std::move(out), std::move(norms)};
}

MeasurementDims MeasurementDims::from(const SystemConfig& cfg) {
  MeasurementDims d;
  d.n_bs = cfg.n_ant_bs;
  d.n_rf_bs = cfg.n_rf_bs;
  d.n_ue = cfg.n_ant_ue;
  d.n_users = cfg.n_users;
  d.n_subcarriers = cfg.n_subcarriers;
  d.n_symbols = cfg.n_symbols;
  return d;
}

CMat MeasurementSet::psi_bar(int p) const {
  const auto& z_p = z_comp.at(p - 1);
  const auto& f_p = f_eff.at(p - 1);
  const auto a_bs = canonical_dictionary(dims.n_bs);
  const auto a_ue = canonical_dictionary(dims.n_ue);

  CMat psi(dims.rows(), dims.cols());
  CMat w_row(1, dims.n_users * dims.n_ue);
  for (int t = 0; t < dims.n_symbols; ++t) {
    for (int k = 0; k < dims.n_users; ++k)
      w_row.block(0, k * dims.n_ue, 1, dims.n_ue) =
          (a_ue.columns.adjoint() * f_p[t][k]).transpose();
    const CMat m_t = z_p[t].adjoint() * a_bs.columns; // N_rf x N_bs
    psi.middleRows(t * dims.n_rf_bs, dims.n_rf_bs) = kronecker(w_row, m_t);
  }
  return psi;
}

RVec MeasurementSet::column_norms(int p) const {
  const auto& z_p = z_comp.at(p - 1);
  const auto& f_p = f_eff.at(p - 1);
  const auto a_bs = canonical_dictionary(dims.n_bs);
  const auto a_ue = canonical_dictionary(dims.n_ue);

  // norm^2 of column (k, q_ue, q_bs) = sum_t |w_k[q_ue]|^2 * ||m_t[:,q_bs]||^2
  RMat bs_part = RMat::Zero(dims.n_symbols, dims.n_bs);
  RMat ue_part = RMat::Zero(dims.n_symbols, dims.n_users * dims.n_ue);
  for (int t = 0; t < dims.n_symbols; ++t) {
    const CMat m_t = z_p[t].adjoint() * a_bs.columns;
    bs_part.row(t) = m_t.colwise().squaredNorm();
    for (int k = 0; k < dims.n_users; ++k)
      ue_part.row(t).segment(k * dims.n_ue, dims.n_ue) =
          (a_ue.columns.adjoint() * f_p[t][k]).cwiseAbs2().transpose();
  }
  const RMat norm2 = bs_part.transpose() * ue_part; // N_bs x (K*N_ue)
  return Eigen::Map<const RVec>(norm2.data(), norm2.size()).cwiseSqrt();
}

CVec MeasurementSet::atom(int p, int user, double aoa_freq, double aod_freq) const {
  const auto& z_p = z_comp.at(p - 1);
  const auto& f_p = f_eff.at(p - 1);
  const CVec a_bs = steering_vector(dims.n_bs, aoa_freq).entries;
  const CVec a_ue = steering_vector(dims.n_ue, aod_freq).entries;
  CVec col(dims.rows());
  for (int t = 0; t < dims.n_symbols; ++t) {
    const cxd w = (a_ue.adjoint() * f_p[t][user])(0);
    col.segment(t * dims.n_rf_bs, dims.n_rf_bs) = w * (z_p[t].adjoint() * a_bs);
  }
  return col;
}

MeasurementSet assemble_measurement(const PilotBlock& pilots,
                                    const ChannelRealization& chan,
                                    const SystemConfig& cfg, Rng& noise_rng) {
  cfg.validate();
  const MeasurementDims dims = MeasurementDims::from(cfg);
  if (pilots.n_symbols() != dims.n_symbols)
    throw std::invalid_argument("assemble_measurement: pilot block has wrong G");
  if (chan.n_users() != dims.n_users || chan.n_subcarriers() != dims.n_subcarriers)
    throw std::invalid_argument("assemble_measurement: channel dimensions mismatch");

  MeasurementSet meas;
  meas.dims = dims;
  meas.r_bar.resize(dims.n_subcarriers);
  meas.z_comp.resize(dims.n_subcarriers);
  meas.f_eff.resize(dims.n_subcarriers);

  const auto a_bs = canonical_dictionary(dims.n_bs);
  const auto a_ue = canonical_dictionary(dims.n_ue);
  const double angle_scale = static_cast<double>(dims.n_bs) * dims.n_ue;

  std::vector<CVec> signal(dims.n_subcarriers);
  double signal_energy = 0.0;

  for (int p = 1; p <= dims.n_subcarriers; ++p) {
    auto& z_p = meas.z_comp[p - 1];
    auto& f_p = meas.f_eff[p - 1];
    z_p.reserve(dims.n_symbols);
    f_p.resize(dims.n_symbols);

    // Direct evaluation: segment t of the aggregate signal is
    // Z^H * sum_k H_f(k, p) * f_{p,k}.
    CVec sig(dims.rows());
    for (int t = 0; t < dims.n_symbols; ++t) {
      z_p.push_back(pilots.composite_combiner(t, p));
      f_p[t].reserve(dims.n_users);
      CVec rx = CVec::Zero(dims.n_bs);
      for (int k = 0; k < dims.n_users; ++k) {
        f_p[t].push_back(pilots.effective_pilot(t, p, k));
        if (!f_p[t][k].allFinite())
          throw std::invalid_argument("assemble_measurement: non-finite pilot");
        rx.noalias() += chan.h_f(k, p) * f_p[t][k];
      }
      sig.segment(t * dims.n_rf_bs, dims.n_rf_bs) = z_p[t].adjoint() * rx;
    }
    if (!sig.allFinite())
      throw std::invalid_argument("assemble_measurement: non-finite signal");

    // Measurement-matrix evaluation: psi_bar acting on the vectorized
    // angle-domain coefficients (angle transform scaled so that
    // H_f = A_bs * C * A_ue^H holds exactly).
    CVec h_a(dims.cols());
    for (int k = 0; k < dims.n_users; ++k)
      h_a.segment(k * dims.cols_per_user(), dims.cols_per_user()) =
          vectorize(angle_transform(chan.h_f(k, p), a_bs, a_ue)) / angle_scale;
    const CVec sig_psi = meas.psi_bar(p) * h_a;

    const double ref = std::max(sig.norm(), sig_psi.norm());
    if ((sig - sig_psi).norm() > 1e-10 * std::max(ref, 1e-300))
      throw std::logic_error(
          "assemble_measurement: direct and measurement-matrix evaluations "
          "disagree beyond 1e-10 at subcarrier " + std::to_string(p));

    signal_energy += sig.squaredNorm();
    signal[p - 1] = std::move(sig);
  }

  // Noise calibration against the mean per-subcarrier signal energy.
  const double mean_energy = signal_energy / dims.n_subcarriers;
  const bool noiseless = std::isinf(cfg.snr_db) && cfg.snr_db > 0;
  const double snr_lin = noiseless ? 0.0 : std::pow(10.0, cfg.snr_db / 10.0);
  meas.noise_var =
      (noiseless || mean_energy == 0.0) ? 0.0 : mean_energy / (dims.rows() * snr_lin);

  double noise_energy = 0.0;
  for (int p = 0; p < dims.n_subcarriers; ++p) {
    const CVec v = noise_rng.complex_gaussian_vector(dims.rows(), meas.noise_var);
    noise_energy += v.squaredNorm();
    meas.r_bar[p] = signal[p] + v;
  }
  meas.snr_db_realized =
      (noise_energy > 0.0) ? 10.0 * std::log10(signal_energy / noise_energy)
                           : std::numeric_limits<double>::infinity();
  return meas;
}

} // namespace dgmp
