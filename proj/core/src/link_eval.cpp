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

#include "dgmp/link_eval.hpp"

#include <cmath>
#include <stdexcept>

namespace dgmp {

namespace {

struct PrecodedLink {
  std::vector<CMat> eff;      // [p-1] K x K effective channel after ZF scaling
  double combined_noise = 0.0; // noise variance after UE combining
  int loaded = 0;
};

// Downlink: H_dl = H_ul^T (TDD reciprocity). BS transmits F_rf * B * s with
// F_rf[:,k] = conj(a_bs_hat_k)/sqrt(N_bs); user k combines with
// w_k = conj(a_ue_hat_k). The effective K x K channel is zero-forced at
// baseband with a common scaling meeting total power K.
PrecodedLink build_precoded_link(const ChannelRealization& chan,
                                 const EstimateResult& result,
                                 const SystemConfig& cfg, double noise_var) {
  const int k_users = cfg.n_users;
  const int n_p = cfg.n_subcarriers;

  CMat f_rf(cfg.n_ant_bs, k_users);
  std::vector<CVec> combiners(k_users);
  for (int k = 0; k < k_users; ++k) {
    f_rf.col(k) = result.los_steering_bs(k).entries.conjugate() /
                  std::sqrt(static_cast<double>(cfg.n_ant_bs));
    combiners[k] = result.los_steering_ue(k).entries.conjugate();
  }

  PrecodedLink link;
  link.eff.reserve(n_p);
  link.combined_noise = noise_var * cfg.n_ant_ue; // ||w_k||^2 = N_ue

  for (int p = 1; p <= n_p; ++p) {
    CMat g(k_users, k_users);
    for (int k = 0; k < k_users; ++k) {
      const CMat h_dl = chan.h_f(k, p).transpose(); // N_ue x N_bs
      g.row(k) = combiners[k].adjoint() * h_dl * f_rf;
    }

    Eigen::JacobiSVD<CMat> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double s_max = svd.singularValues()(0);
    const double s_min = svd.singularValues()(k_users - 1);
    CMat b_raw;
    if (s_max > 0.0 && s_min > 1e-12 * s_max) {
      b_raw = svd.solve(CMat::Identity(k_users, k_users));
    } else {
      // Diagonal loading 1e-6 * trace keeps the inverse bounded.
      const double lam = 1e-6 * (g * g.adjoint()).trace().real() + 1e-300;
      b_raw = g.adjoint() *
              (g * g.adjoint() + lam * CMat::Identity(k_users, k_users)).inverse();
      ++link.loaded;
    }
    const double pw = (f_rf * b_raw).squaredNorm();
    if (pw > 0.0) {
      const double gamma = std::sqrt(static_cast<double>(k_users) / pw);
      link.eff.push_back(g * b_raw * gamma);
    } else {
      link.eff.push_back(CMat::Zero(k_users, k_users));
      ++link.loaded;
    }
  }
  return link;
}

double noise_var_from_snr(double snr_db) {
  if (std::isinf(snr_db) && snr_db > 0) return 0.0;
  return std::pow(10.0, -snr_db / 10.0);
}

// Gray-mapped 16-QAM, unit average power: two bits per axis,
// 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3, scaled by 1/sqrt(10).
constexpr double kQamScale = 0.31622776601683794; // 1/sqrt(10)

double gray_level(unsigned two_bits) {
  switch (two_bits) {
    case 0b00: return -3.0;
    case 0b01: return -1.0;
    case 0b11: return 1.0;
    default: return 3.0; // 0b10
  }
}

unsigned gray_demap(double x) {
  if (!(x == x)) return 0b11; // NaN-safe deterministic guess
  if (x < -2.0) return 0b00;
  if (x < 0.0) return 0b01;
  if (x < 2.0) return 0b11;
  return 0b10;
}

} // namespace

double spectral_efficiency(const ChannelRealization& chan, const EstimateResult& result,
                           const SystemConfig& cfg, double snr_db,
                           LinkDiagnostics* diag) {
  cfg.validate();
  if (result.n_users != cfg.n_users)
    throw std::invalid_argument("spectral_efficiency: result does not cover all users");
  const double noise_var = noise_var_from_snr(snr_db);
  const PrecodedLink link = build_precoded_link(chan, result, cfg, noise_var);
  if (diag) diag->loaded_subcarriers = link.loaded;

  double se = 0.0;
  for (const auto& eff : link.eff) {
    for (int k = 0; k < cfg.n_users; ++k) {
      const double sig = std::norm(eff(k, k));
      const double interference = eff.row(k).squaredNorm() - sig;
      const double sinr = sig / (link.combined_noise + interference);
      se += std::log2(1.0 + sinr);
    }
  }
  return se / cfg.n_subcarriers;
}

double ber_16qam(const ChannelRealization& chan, const EstimateResult& result,
                 const SystemConfig& cfg, double snr_db, long n_bits, Rng& rng) {
  cfg.validate();
  if (result.n_users != cfg.n_users)
    throw std::invalid_argument("ber_16qam: result does not cover all users");
  const long bits_per_round = 4L * cfg.n_users * cfg.n_subcarriers;
  if (n_bits <= 0 || n_bits % bits_per_round != 0)
    throw std::invalid_argument("ber_16qam: n_bits must be a positive multiple of 4*K*P");

  const double noise_var = noise_var_from_snr(snr_db);
  const PrecodedLink link = build_precoded_link(chan, result, cfg, noise_var);
  const long uses_per_subcarrier = n_bits / bits_per_round;
  const int k_users = cfg.n_users;

  long errors = 0;
  std::vector<unsigned> tx_bits(static_cast<std::size_t>(k_users) * 4);
  CVec symbols(k_users);
  for (int p = 0; p < cfg.n_subcarriers; ++p) {
    const CMat& eff = link.eff[p];
    for (long use = 0; use < uses_per_subcarrier; ++use) {
      for (int k = 0; k < k_users; ++k) {
        const unsigned nibble = static_cast<unsigned>(rng.raw() & 0xF);
        for (int b = 0; b < 4; ++b) tx_bits[4 * k + b] = (nibble >> b) & 1u;
        const unsigned bi = tx_bits[4 * k] | (tx_bits[4 * k + 1] << 1);
        const unsigned bq = tx_bits[4 * k + 2] | (tx_bits[4 * k + 3] << 1);
        symbols(k) = kQamScale * cxd(gray_level(bi), gray_level(bq));
      }
      for (int k = 0; k < k_users; ++k) {
        const cxd rx =
            (eff.row(k) * symbols)(0) + rng.complex_gaussian(link.combined_noise);
        const cxd gain = eff(k, k);
        const cxd eq = (gain == cxd(0.0, 0.0)) ? cxd(0.0, 0.0) : rx / gain;
        const unsigned bi = gray_demap(eq.real() / kQamScale);
        const unsigned bq = gray_demap(eq.imag() / kQamScale);
        const unsigned rx_bits[4] = {bi & 1u, (bi >> 1) & 1u, bq & 1u, (bq >> 1) & 1u};
        for (int b = 0; b < 4; ++b)
          if (rx_bits[b] != tx_bits[4 * k + b]) ++errors;
      }
    }
  }
  return static_cast<double>(errors) / static_cast<double>(n_bits);
}

} // namespace dgmp
