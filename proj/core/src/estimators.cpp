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

#include "dgmp/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "dgmp/kron.hpp"

namespace dgmp {

namespace {

constexpr int kInnerIterationCap = 50;

int argmax_lowest(const RVec& v) {
  int best = 0;
  for (int i = 1; i < v.size(); ++i)
    if (v(i) > v(best)) best = i;
  return best;
}

// Joint correlation energy per normalized column, summed over subcarriers:
// sum_p |Gamma_p^H b_p|_j^2 / ||col_j||^2. Zero columns score zero.
RVec normalized_scores(const FactoredOp& op, const std::vector<CVec>& residues) {
  RVec score = RVec::Zero(op.n_columns());
  for (int p = 1; p <= op.n_subcarriers(); ++p) {
    const CVec c = op.correlate(p, residues[p - 1]);
    const RVec& n2 = op.col_norm2[p - 1];
    for (int j = 0; j < score.size(); ++j)
      if (n2(j) > 0.0) score(j) += std::norm(c(j)) / n2(j);
  }
  return score;
}

// Appends the normalized atom at column j of op to the state's per-subcarrier
// atom matrices, refits all gains by LS and updates the residues.
void append_atom_and_refit(DgmpState& st, const std::vector<CVec>& r_bar,
                           const FactoredOp& op, int j) {
  const int n_p = static_cast<int>(r_bar.size());
  const int n_sel = static_cast<int>(st.chosen_users.size());
  CMat gains(n_sel, n_p);
  for (int p = 1; p <= n_p; ++p) {
    double nu = std::sqrt(op.col_norm2[p - 1](j));
    if (nu == 0.0) nu = 1.0; // degenerate atom; LS then assigns it zero gain
    CMat& xi = st.atom_matrix[p - 1];
    xi.conservativeResize(Eigen::NoChange, n_sel);
    xi.col(n_sel - 1) = op.column(p, j) / nu;
    st.atom_prenorm[p - 1].conservativeResize(n_sel);
    st.atom_prenorm[p - 1](n_sel - 1) = nu;

    const CVec g = ls_solve_pinv(xi, r_bar[p - 1]);
    gains.col(p - 1) = g;
    st.residues[p - 1] = r_bar[p - 1] - xi * g;
  }
  st.gains = std::move(gains);
}

EstimateResult make_result_shell(const MeasurementDims& d) {
  EstimateResult res;
  res.n_users = d.n_users;
  res.n_subcarriers = d.n_subcarriers;
  res.n_ant_bs = d.n_bs;
  res.n_ant_ue = d.n_ue;
  res.los_aoa_freq.assign(d.n_users, 0.0);
  res.los_aod_freq.assign(d.n_users, 0.0);
  res.los_gains.assign(d.n_users, CVec::Zero(d.n_subcarriers));
  res.diagnostics.assign(d.n_users, UserDiagnostics{0, 0.0, true, false});
  res.alpha_display = RVec::Zero(d.n_users);
  res.support_per_subcarrier.assign(d.n_subcarriers, {});
  return res;
}

// Fills the per-user LOS summary from the atom list: the user's strongest
// atom (by total gain energy) wins; users without atoms stay flagged
// uncovered with the zero-frequency fallback beam.
void summarize_users(EstimateResult& res) {
  std::vector<double> best_energy(res.n_users, -1.0);
  for (const auto& atom : res.atoms) {
    const double e = atom.gains.squaredNorm();
    if (e > best_energy[atom.user]) {
      best_energy[atom.user] = e;
      res.los_aoa_freq[atom.user] = atom.aoa_freq;
      res.los_aod_freq[atom.user] = atom.aod_freq;
      res.los_gains[atom.user] = atom.gains;
      res.diagnostics[atom.user].covered = true;
    }
  }
  for (int k = 0; k < res.n_users; ++k)
    res.alpha_display(k) = res.los_gains[k].cwiseAbs().mean();
}

void check_meas_matches_cfg(const MeasurementSet& meas, const SystemConfig& cfg) {
  const auto d = MeasurementDims::from(cfg);
  const auto& m = meas.dims;
  if (d.n_bs != m.n_bs || d.n_rf_bs != m.n_rf_bs || d.n_ue != m.n_ue ||
      d.n_users != m.n_users || d.n_subcarriers != m.n_subcarriers ||
      d.n_symbols != m.n_symbols)
    throw std::invalid_argument("estimator: measurement set does not match config");
}

} // namespace

CVec ls_solve_pinv(const CMat& a, const CVec& b, double rtol) {
  if (a.cols() == 0) return CVec(0);
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(rtol);
  return svd.solve(b);
}

SteeringVector EstimateResult::los_steering_bs(int user) const {
  return steering_vector(n_ant_bs, los_aoa_freq.at(user));
}

SteeringVector EstimateResult::los_steering_ue(int user) const {
  return steering_vector(n_ant_ue, los_aod_freq.at(user));
}

double DgmpState::residual_energy() const {
  double e = 0.0;
  for (const auto& b : residues) e += b.squaredNorm();
  return e;
}

InnerRefineResult inner_refine(const DgmpState& state, int user,
                               const PilotBlock& pilots, const MeasurementSet& meas,
                               const SystemConfig& cfg) {
  const int n_bs = meas.dims.n_bs;
  const int n_ue = meas.dims.n_ue;
  const int j_factor = cfg.refine_factor;
  const int n_local = 2 * j_factor - 1;

  // The first pass works on the unshifted canonical grid, i.e. the user's
  // block of the initial measurement matrix.
  FactoredOp op = make_user_operator(meas, pilots, user, canonical_grid(n_bs),
                                     canonical_grid(n_ue));

  InnerRefineResult out;
  double beta = 0.0;
  double beta_last = std::numeric_limits<double>::infinity();
  int iter = 0;
  bool converged = false;

  while (iter < kInnerIterationCap) {
    ++iter;
    // Coarse pick over the current (shifted) full grid.
    const RVec score = normalized_scores(op, state.residues);
    const int rho = argmax_lowest(score);
    beta_last = beta;
    beta = score(rho);
    out.beta_trace.push_back(beta);
    out.coarse_ue_idx = rho / n_bs;
    out.coarse_bs_idx = rho % n_bs;

    // Local candidates around the canonical point, spaced 1/(2J*N).
    RVec local_bs(n_local), local_ue(n_local);
    for (int m = 0; m < n_local; ++m) {
      const double off = static_cast<double>(m - (j_factor - 1)) / (2.0 * j_factor);
      local_bs(m) = (out.coarse_bs_idx + off) / n_bs;
      local_ue(m) = (out.coarse_ue_idx + off) / n_ue;
    }
    const FactoredOp local = make_user_operator(meas, pilots, user, local_bs, local_ue);
    const RVec local_score = normalized_scores(local, state.residues);
    const int eta = argmax_lowest(local_score);
    out.local_ue_idx = eta / n_local;
    out.local_bs_idx = eta % n_local;
    out.delta_bs = static_cast<double>(out.local_bs_idx - (j_factor - 1)) / (2.0 * j_factor);
    out.delta_ue = static_cast<double>(out.local_ue_idx - (j_factor - 1)) / (2.0 * j_factor);

    // Shift the whole grid by the winning fractional offset.
    op = make_user_operator(meas, pilots, user, shifted_grid(n_bs, out.delta_bs),
                            shifted_grid(n_ue, out.delta_ue));

    // beta_last is meaningless before the second pass.
    if (iter >= 2 && std::abs(beta_last - beta) < cfg.epsilon) {
      converged = true;
      break;
    }
  }

  out.aoa_freq = wrap_frequency((out.coarse_bs_idx + out.delta_bs) / n_bs);
  out.aod_freq = wrap_frequency((out.coarse_ue_idx + out.delta_ue) / n_ue);
  out.beta = beta;
  out.iterations = iter;
  out.converged = converged;
  out.final_op = std::move(op);
  return out;
}

EstimateResult dgmp_estimate(const MeasurementSet& meas, const PilotBlock& pilots,
                             const SystemConfig& cfg, DgmpState* final_state) {
  cfg.validate();
  check_meas_matches_cfg(meas, cfg);
  const auto& d = meas.dims;
  const FactoredOp full = make_full_operator(meas);

  DgmpState st;
  st.residues = meas.r_bar;
  st.atom_matrix.assign(d.n_subcarriers, CMat(d.rows(), 0));
  st.atom_prenorm.assign(d.n_subcarriers, RVec(0));

  EstimateResult res = make_result_shell(d);
  std::vector<bool> taken(d.n_users, false);
  std::vector<int> refined_cols; // user-global column of each refined atom

  for (int outer = 0; outer < d.n_users; ++outer) {
    // Joint correlation restricted to columns of not-yet-chosen users.
    RVec score = normalized_scores(full, st.residues);
    for (int k = 0; k < d.n_users; ++k)
      if (taken[k])
        score.segment(static_cast<Eigen::Index>(k) * d.cols_per_user(),
                      d.cols_per_user()).setConstant(-1.0);
    const int rho = argmax_lowest(score);
    const int user = rho / d.cols_per_user();
    taken[user] = true;
    st.chosen_users.push_back(user);

    InnerRefineResult ref = inner_refine(st, user, pilots, meas, cfg);
    st.refined_freqs.emplace_back(ref.aoa_freq, ref.aod_freq);
    refined_cols.push_back(user * d.cols_per_user() +
                           ref.coarse_ue_idx * d.n_bs + ref.coarse_bs_idx);

    const int j = ref.coarse_ue_idx * d.n_bs + ref.coarse_bs_idx;
    append_atom_and_refit(st, meas.r_bar, ref.final_op, j);
    st.residual_energy_trace.push_back(st.residual_energy());

    res.diagnostics[user] = UserDiagnostics{ref.iterations, ref.beta, ref.converged, true};
  }

  for (int i = 0; i < d.n_users; ++i) {
    EstimateAtom atom;
    atom.user = st.chosen_users[i];
    atom.aoa_freq = st.refined_freqs[i].first;
    atom.aod_freq = st.refined_freqs[i].second;
    atom.gains.resize(d.n_subcarriers);
    for (int p = 0; p < d.n_subcarriers; ++p)
      atom.gains(p) = st.gains(i, p) / st.atom_prenorm[p](i);
    res.atoms.push_back(std::move(atom));
  }
  for (int p = 0; p < d.n_subcarriers; ++p)
    res.support_per_subcarrier[p] = refined_cols;
  summarize_users(res);
  if (final_state) *final_state = std::move(st);
  return res;
}

EstimateResult somp_baseline(const MeasurementSet& meas, const SystemConfig& cfg,
                             int n_atoms) {
  cfg.validate();
  check_meas_matches_cfg(meas, cfg);
  const auto& d = meas.dims;
  if (n_atoms < 0 || n_atoms > d.cols())
    throw std::invalid_argument("somp_baseline: n_atoms out of range");
  const FactoredOp full = make_full_operator(meas);

  DgmpState st;
  st.residues = meas.r_bar;
  st.atom_matrix.assign(d.n_subcarriers, CMat(d.rows(), 0));
  st.atom_prenorm.assign(d.n_subcarriers, RVec(0));

  std::vector<int> selected;
  for (int it = 0; it < n_atoms; ++it) {
    RVec score = normalized_scores(full, st.residues);
    for (int s : selected) score(s) = -1.0;
    const int j = argmax_lowest(score);
    selected.push_back(j);
    st.chosen_users.push_back(j / d.cols_per_user()); // sizes the gain refit
    append_atom_and_refit(st, meas.r_bar, full, j);
  }

  EstimateResult res = make_result_shell(d);
  for (int i = 0; i < n_atoms; ++i) {
    const int j = selected[i];
    const int within = j % d.cols_per_user();
    EstimateAtom atom;
    atom.user = j / d.cols_per_user();
    atom.aoa_freq = static_cast<double>(within % d.n_bs) / d.n_bs;
    atom.aod_freq = static_cast<double>(within / d.n_bs) / d.n_ue;
    atom.gains.resize(d.n_subcarriers);
    for (int p = 0; p < d.n_subcarriers; ++p)
      atom.gains(p) = st.gains(i, p) / st.atom_prenorm[p](i);
    res.atoms.push_back(std::move(atom));
  }
  for (int p = 0; p < d.n_subcarriers; ++p)
    res.support_per_subcarrier[p] = selected;
  summarize_users(res);
  return res;
}

EstimateResult omp_per_subcarrier_baseline(const MeasurementSet& meas,
                                           const SystemConfig& cfg, int n_atoms) {
  cfg.validate();
  check_meas_matches_cfg(meas, cfg);
  const auto& d = meas.dims;
  if (n_atoms < 0 || n_atoms > d.cols())
    throw std::invalid_argument("omp_per_subcarrier_baseline: n_atoms out of range");
  const FactoredOp full = make_full_operator(meas);

  EstimateResult res = make_result_shell(d);
  // Atom bookkeeping across subcarriers: one entry per distinct column,
  // created on first selection (deterministic order).
  std::map<int, int> atom_index;

  for (int p = 1; p <= d.n_subcarriers; ++p) {
    CVec residue = meas.r_bar[p - 1];
    CMat xi(d.rows(), 0);
    RVec prenorm(0);
    std::vector<int> selected;
    CVec gains;
    for (int it = 0; it < n_atoms; ++it) {
      const CVec c = full.correlate(p, residue);
      const RVec& n2 = full.col_norm2[p - 1];
      RVec score(c.size());
      for (int j = 0; j < score.size(); ++j)
        score(j) = (n2(j) > 0.0) ? std::norm(c(j)) / n2(j) : 0.0;
      for (int s : selected) score(s) = -1.0;
      const int j = argmax_lowest(score);
      selected.push_back(j);

      double nu = std::sqrt(n2(j));
      if (nu == 0.0) nu = 1.0;
      xi.conservativeResize(Eigen::NoChange, it + 1);
      xi.col(it) = full.column(p, j) / nu;
      prenorm.conservativeResize(it + 1);
      prenorm(it) = nu;
      gains = ls_solve_pinv(xi, meas.r_bar[p - 1]);
      residue = meas.r_bar[p - 1] - xi * gains;
    }
    res.support_per_subcarrier[p - 1] = selected;
    for (int i = 0; i < static_cast<int>(selected.size()); ++i) {
      const int j = selected[i];
      auto [it_pos, inserted] = atom_index.try_emplace(j, static_cast<int>(res.atoms.size()));
      if (inserted) {
        const int within = j % d.cols_per_user();
        EstimateAtom atom;
        atom.user = j / d.cols_per_user();
        atom.aoa_freq = static_cast<double>(within % d.n_bs) / d.n_bs;
        atom.aod_freq = static_cast<double>(within / d.n_bs) / d.n_ue;
        atom.gains = CVec::Zero(d.n_subcarriers);
        res.atoms.push_back(std::move(atom));
      }
      res.atoms[it_pos->second].gains(p - 1) = gains(i) / prenorm(i);
    }
  }
  summarize_users(res);
  return res;
}

EstimateResult oracle_estimate(const MeasurementSet& meas,
                               const ChannelRealization& chan,
                               const SystemConfig& cfg) {
  cfg.validate();
  check_meas_matches_cfg(meas, cfg);
  const auto& d = meas.dims;
  if (chan.n_users() != d.n_users)
    throw std::invalid_argument("oracle_estimate: channel has wrong user count");

  EstimateResult res = make_result_shell(d);
  for (int k = 0; k < d.n_users; ++k) {
    const auto& los = chan.los_path(k);
    EstimateAtom atom;
    atom.user = k;
    atom.aoa_freq = wrap_frequency(los.aoa_freq);
    atom.aod_freq = wrap_frequency(los.aod_freq);
    atom.gains = CVec::Zero(d.n_subcarriers);
    res.atoms.push_back(std::move(atom));
  }
  for (int p = 1; p <= d.n_subcarriers; ++p) {
    CMat a(d.rows(), d.n_users);
    for (int k = 0; k < d.n_users; ++k)
      a.col(k) = meas.atom(p, k, res.atoms[k].aoa_freq, res.atoms[k].aod_freq);
    const CVec g = ls_solve_pinv(a, meas.r_bar[p - 1]); // atoms unnormalized:
    for (int k = 0; k < d.n_users; ++k)                 // gains are physical
      res.atoms[k].gains(p - 1) = g(k);
  }
  summarize_users(res);
  return res;
}

std::vector<std::vector<CMat>> reconstruct_channel(const EstimateResult& result,
                                                   const SystemConfig& cfg) {
  if (cfg.n_ant_bs != result.n_ant_bs || cfg.n_ant_ue != result.n_ant_ue ||
      cfg.n_users != result.n_users || cfg.n_subcarriers != result.n_subcarriers)
    throw std::invalid_argument("reconstruct_channel: result does not match config");
  std::vector<std::vector<CMat>> h(
      result.n_users,
      std::vector<CMat>(result.n_subcarriers, CMat::Zero(result.n_ant_bs, result.n_ant_ue)));
  for (const auto& atom : result.atoms) {
    const CVec a_bs = steering_vector(result.n_ant_bs, atom.aoa_freq).entries;
    const CVec a_ue = steering_vector(result.n_ant_ue, atom.aod_freq).entries;
    const CMat outer = a_bs * a_ue.adjoint();
    for (int p = 0; p < result.n_subcarriers; ++p)
      if (atom.gains(p) != cxd(0.0, 0.0)) h[atom.user][p] += atom.gains(p) * outer;
  }
  return h;
}

std::string result_to_json(const EstimateResult& result) {
  nlohmann::json j;
  j["n_users"] = result.n_users;
  j["n_subcarriers"] = result.n_subcarriers;
  j["n_ant_bs"] = result.n_ant_bs;
  j["n_ant_ue"] = result.n_ant_ue;
  auto& atoms = j["atoms"] = nlohmann::json::array();
  for (const auto& atom : result.atoms) {
    nlohmann::json ja;
    ja["user"] = atom.user;
    ja["aoa_freq"] = atom.aoa_freq;
    ja["aod_freq"] = atom.aod_freq;
    auto& g = ja["gains"] = nlohmann::json::array();
    for (int p = 0; p < atom.gains.size(); ++p)
      g.push_back({atom.gains(p).real(), atom.gains(p).imag()});
    atoms.push_back(std::move(ja));
  }
  auto& users = j["users"] = nlohmann::json::array();
  for (int k = 0; k < result.n_users; ++k) {
    nlohmann::json ju;
    ju["los_aoa_freq"] = result.los_aoa_freq[k];
    ju["los_aod_freq"] = result.los_aod_freq[k];
    ju["alpha_display"] = result.alpha_display(k);
    ju["inner_iterations"] = result.diagnostics[k].inner_iterations;
    ju["final_beta"] = result.diagnostics[k].final_beta;
    ju["converged"] = result.diagnostics[k].converged;
    ju["covered"] = result.diagnostics[k].covered;
    auto& g = ju["los_gains"] = nlohmann::json::array();
    for (int p = 0; p < result.los_gains[k].size(); ++p)
      g.push_back({result.los_gains[k](p).real(), result.los_gains[k](p).imag()});
    users.push_back(std::move(ju));
  }
  j["support_per_subcarrier"] = result.support_per_subcarrier;
  return j.dump(2);
}

EstimateResult result_from_json(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  EstimateResult res;
  res.n_users = j.at("n_users").get<int>();
  res.n_subcarriers = j.at("n_subcarriers").get<int>();
  res.n_ant_bs = j.at("n_ant_bs").get<int>();
  res.n_ant_ue = j.at("n_ant_ue").get<int>();
  for (const auto& ja : j.at("atoms")) {
    EstimateAtom atom;
    atom.user = ja.at("user").get<int>();
    atom.aoa_freq = ja.at("aoa_freq").get<double>();
    atom.aod_freq = ja.at("aod_freq").get<double>();
    const auto& g = ja.at("gains");
    atom.gains.resize(g.size());
    for (std::size_t p = 0; p < g.size(); ++p)
      atom.gains(p) = cxd(g[p][0].get<double>(), g[p][1].get<double>());
    res.atoms.push_back(std::move(atom));
  }
  res.alpha_display = RVec::Zero(res.n_users);
  for (const auto& ju : j.at("users")) {
    res.los_aoa_freq.push_back(ju.at("los_aoa_freq").get<double>());
    res.los_aod_freq.push_back(ju.at("los_aod_freq").get<double>());
    UserDiagnostics diag;
    diag.inner_iterations = ju.at("inner_iterations").get<int>();
    diag.final_beta = ju.at("final_beta").get<double>();
    diag.converged = ju.at("converged").get<bool>();
    diag.covered = ju.at("covered").get<bool>();
    res.diagnostics.push_back(diag);
    const auto& g = ju.at("los_gains");
    CVec gains(g.size());
    for (std::size_t p = 0; p < g.size(); ++p)
      gains(p) = cxd(g[p][0].get<double>(), g[p][1].get<double>());
    res.los_gains.push_back(std::move(gains));
    res.alpha_display(static_cast<Eigen::Index>(res.los_aoa_freq.size()) - 1) =
        ju.at("alpha_display").get<double>();
  }
  res.support_per_subcarrier =
      j.at("support_per_subcarrier").get<std::vector<std::vector<int>>>();
  return res;
}

} // namespace dgmp
