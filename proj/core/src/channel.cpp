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

#include "dgmp/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "dgmp/kron.hpp"
#include "dgmp/steering.hpp"

namespace dgmp {

const PathComponent& ChannelRealization::los_path(int user) const {
  for (const auto& path : per_user_paths.at(user))
    if (path.is_los) return path;
  throw std::logic_error("ChannelRealization: user has no LOS path");
}

ChannelRealization generate_channel(const SystemConfig& cfg, Rng& rng, bool on_grid) {
  cfg.validate();
  const int n_paths = cfg.n_paths;
  const double k_lin = std::pow(10.0, cfg.k_factor_db / 10.0);

  // Per-user power split: LOS variance + summed NLOS variance = 1,
  // LOS variance / summed NLOS variance = k_factor. A single-path user is
  // LOS-only with unit variance.
  const double var_los = (n_paths == 1) ? 1.0 : k_lin / (1.0 + k_lin);
  const double var_nlos =
      (n_paths == 1) ? 0.0 : 1.0 / ((1.0 + k_lin) * (n_paths - 1));

  ChannelRealization chan;
  chan.per_user_paths.resize(cfg.n_users);
  chan.freq_channels.resize(cfg.n_users);

  for (int k = 0; k < cfg.n_users; ++k) {
    auto& paths = chan.per_user_paths[k];
    paths.resize(n_paths);

    std::vector<double> delays(n_paths);
    for (auto& d : delays) d = rng.uniform(0.0, cfg.tau_max_s);
    // LOS arrives first: move the minimum drawn delay to slot 0.
    const auto min_it = std::min_element(delays.begin(), delays.end());
    std::swap(*min_it, delays[0]);

    for (int l = 0; l < n_paths; ++l) {
      auto& path = paths[l];
      path.is_los = (l == 0);
      path.delay_s = delays[l];
      path.gain = rng.complex_gaussian(path.is_los ? var_los : var_nlos);
      if (on_grid) {
        path.aoa_freq = static_cast<double>(rng.uniform_index(cfg.n_ant_bs)) / cfg.n_ant_bs;
        path.aod_freq = static_cast<double>(rng.uniform_index(cfg.n_ant_ue)) / cfg.n_ant_ue;
      } else {
        path.aoa_freq = rng.uniform();
        path.aod_freq = rng.uniform();
      }
    }

    chan.freq_channels[k].reserve(cfg.n_subcarriers);
    for (int p = 1; p <= cfg.n_subcarriers; ++p)
      chan.freq_channels[k].push_back(freq_response(paths, p, cfg));
  }
  return chan;
}

CMat freq_response(const std::vector<PathComponent>& paths, int p,
                   const SystemConfig& cfg) {
  if (p < 1 || p > cfg.n_subcarriers)
    throw std::out_of_range("freq_response: subcarrier index p out of [1, P]");
  CMat h = CMat::Zero(cfg.n_ant_bs, cfg.n_ant_ue);
  for (const auto& path : paths) {
    const double phase = -kTwoPi * cfg.sample_rate_hz * path.delay_s * p / cfg.n_subcarriers;
    const cxd rot(std::cos(phase), std::sin(phase));
    const CVec a_bs = steering_vector(cfg.n_ant_bs, path.aoa_freq).entries;
    const CVec a_ue = steering_vector(cfg.n_ant_ue, path.aod_freq).entries;
    h.noalias() += (path.gain * rot) * (a_bs * a_ue.adjoint());
  }
  return h;
}

std::vector<std::vector<int>> common_support(const ChannelRealization& chan,
                                             int user, double rel_threshold) {
  const auto& mats = chan.freq_channels.at(user);
  if (mats.empty()) return {};
  const auto d_bs = canonical_dictionary(static_cast<int>(mats[0].rows()));
  const auto d_ue = canonical_dictionary(static_cast<int>(mats[0].cols()));

  std::vector<std::vector<int>> supports;
  supports.reserve(mats.size());
  for (const auto& h_f : mats) {
    const CVec h_a = vectorize(angle_transform(h_f, d_bs, d_ue));
    const double peak = h_a.cwiseAbs().maxCoeff();
    std::vector<int> idx;
    if (peak > 0.0) {
      for (Eigen::Index i = 0; i < h_a.size(); ++i)
        if (std::abs(h_a(i)) > rel_threshold * peak) idx.push_back(static_cast<int>(i));
    }
    supports.push_back(std::move(idx));
  }
  return supports;
}

std::string channel_to_json(const ChannelRealization& chan, const SystemConfig& cfg) {
  nlohmann::json j;
  j["config_hash"] = config_hash(cfg);
  j["n_users"] = chan.n_users();
  auto& users = j["users"] = nlohmann::json::array();
  for (const auto& paths : chan.per_user_paths) {
    nlohmann::json ju;
    auto& jp = ju["paths"] = nlohmann::json::array();
    for (const auto& path : paths) {
      jp.push_back({{"gain_re", path.gain.real()},
                    {"gain_im", path.gain.imag()},
                    {"delay_s", path.delay_s},
                    {"aoa_freq", path.aoa_freq},
                    {"aod_freq", path.aod_freq},
                    {"is_los", path.is_los}});
    }
    users.push_back(std::move(ju));
  }
  return j.dump(2);
}

ChannelRealization channel_from_json(const std::string& json_text,
                                     const SystemConfig& cfg) {
  const auto j = nlohmann::json::parse(json_text);
  if (j.at("config_hash").get<std::string>() != config_hash(cfg))
    throw std::runtime_error("channel_from_json: config hash mismatch");
  ChannelRealization chan;
  for (const auto& ju : j.at("users")) {
    std::vector<PathComponent> paths;
    for (const auto& jp : ju.at("paths")) {
      PathComponent path;
      path.gain = cxd(jp.at("gain_re").get<double>(), jp.at("gain_im").get<double>());
      path.delay_s = jp.at("delay_s").get<double>();
      path.aoa_freq = jp.at("aoa_freq").get<double>();
      path.aod_freq = jp.at("aod_freq").get<double>();
      path.is_los = jp.at("is_los").get<bool>();
      paths.push_back(path);
    }
    chan.per_user_paths.push_back(std::move(paths));
  }
  chan.freq_channels.resize(chan.per_user_paths.size());
  for (int k = 0; k < chan.n_users(); ++k)
    for (int p = 1; p <= cfg.n_subcarriers; ++p)
      chan.freq_channels[k].push_back(freq_response(chan.per_user_paths[k], p, cfg));
  return chan;
}

} // namespace dgmp
