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

#include "dgmp/factored_op.hpp"

#include <stdexcept>

#include "dgmp/kron.hpp"
#include "dgmp/steering.hpp"

namespace dgmp {

namespace {

// Per-symbol BS-side factors stacked vertically: row block t is
// Z_p^(t)H * A_bs. One gemm per subcarrier.
CMat stack_bs_factors(const std::vector<CMat>& z_p, const CMat& a_bs_cols) {
  const int g = static_cast<int>(z_p.size());
  const int n_rf = static_cast<int>(z_p[0].cols());
  CMat z_all(z_p[0].rows(), static_cast<Eigen::Index>(g) * n_rf);
  for (int t = 0; t < g; ++t) z_all.middleCols(t * n_rf, n_rf) = z_p[t];
  return z_all.adjoint() * a_bs_cols;
}

void finalize_norms(FactoredOp& op) {
  op.col_norm2.resize(op.m_stack.size());
  for (int p = 0; p < op.n_subcarriers(); ++p) {
    RMat bs_part(op.n_symbols, op.grid_bs); // ||M^(t)[:,q]||^2
    for (int t = 0; t < op.n_symbols; ++t)
      bs_part.row(t) =
          op.m_stack[p].middleRows(t * op.n_rf, op.n_rf).colwise().squaredNorm();
    const RMat ue_part = op.w_stack[p].cwiseAbs2(); // G x grid_ue
    const RMat norm2 = bs_part.transpose() * ue_part; // grid_bs x grid_ue
    op.col_norm2[p] = Eigen::Map<const RVec>(norm2.data(), norm2.size());
  }
}

} // namespace

CVec FactoredOp::correlate(int p, const CVec& b) const {
  const CMat& m = m_stack.at(p - 1);
  const CMat& w = w_stack.at(p - 1);
  if (b.size() != static_cast<Eigen::Index>(n_symbols) * n_rf)
    throw std::invalid_argument("FactoredOp::correlate: residue length mismatch");
  CMat u(grid_bs, n_symbols);
  for (int t = 0; t < n_symbols; ++t)
    u.col(t) = m.middleRows(t * n_rf, n_rf).adjoint() * b.segment(t * n_rf, n_rf);
  const CMat c = u * w.conjugate(); // grid_bs x grid_ue
  return Eigen::Map<const CVec>(c.data(), c.size());
}

CVec FactoredOp::column(int p, int j) const {
  const CMat& m = m_stack.at(p - 1);
  const CMat& w = w_stack.at(p - 1);
  const int q_ue = j / grid_bs;
  const int q_bs = j % grid_bs;
  CVec col(static_cast<Eigen::Index>(n_symbols) * n_rf);
  for (int t = 0; t < n_symbols; ++t)
    col.segment(t * n_rf, n_rf) = w(t, q_ue) * m.block(t * n_rf, q_bs, n_rf, 1);
  return col;
}

FactoredOp make_full_operator(const MeasurementSet& meas) {
  const auto& d = meas.dims;
  FactoredOp op;
  op.n_rf = d.n_rf_bs;
  op.n_symbols = d.n_symbols;
  op.grid_bs = d.n_bs;
  op.grid_ue = d.n_users * d.n_ue;
  op.m_stack.resize(d.n_subcarriers);
  op.w_stack.resize(d.n_subcarriers);

  const auto a_bs = canonical_dictionary(d.n_bs);
  const auto a_ue = canonical_dictionary(d.n_ue);
  for (int p = 0; p < d.n_subcarriers; ++p) {
    op.m_stack[p] = stack_bs_factors(meas.z_comp[p], a_bs.columns);
    CMat w(d.n_symbols, op.grid_ue);
    for (int t = 0; t < d.n_symbols; ++t)
      for (int k = 0; k < d.n_users; ++k)
        w.row(t).segment(k * d.n_ue, d.n_ue) =
            (a_ue.columns.adjoint() * meas.f_eff[p][t][k]).transpose();
    op.w_stack[p] = std::move(w);
  }
  finalize_norms(op);
  return op;
}

FactoredOp make_user_operator(const MeasurementSet& meas, const PilotBlock& pilots,
                              int user, const RVec& grid_bs_freqs,
                              const RVec& grid_ue_freqs) {
  const auto& d = meas.dims;
  if (user < 0 || user >= d.n_users)
    throw std::invalid_argument("make_user_operator: user index out of range");
  FactoredOp op;
  op.n_rf = d.n_rf_bs;
  op.n_symbols = d.n_symbols;
  op.grid_bs = static_cast<int>(grid_bs_freqs.size());
  op.grid_ue = static_cast<int>(grid_ue_freqs.size());
  op.m_stack.resize(d.n_subcarriers);
  op.w_stack.resize(d.n_subcarriers);

  const auto a_bs = build_dictionary(d.n_bs, grid_bs_freqs);
  const auto a_ue = build_dictionary(d.n_ue, grid_ue_freqs);
  for (int p = 0; p < d.n_subcarriers; ++p) {
    op.m_stack[p] = stack_bs_factors(meas.z_comp[p], a_bs.columns);
    CMat w(d.n_symbols, op.grid_ue);
    for (int t = 0; t < d.n_symbols; ++t)
      w.row(t) = (a_ue.columns.adjoint() * pilots.effective_pilot(t, p + 1, user))
                     .transpose();
    op.w_stack[p] = std::move(w);
  }
  finalize_norms(op);
  return op;
}

} // namespace dgmp
