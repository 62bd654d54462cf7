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

/// One propagation path. Angles are carried as spatial frequencies
/// d*sin(.)/lambda in [0, 1).
struct PathComponent {
  cxd gain;
  double delay_s = 0.0;
  double aoa_freq = 0.0; // BS side
  double aod_freq = 0.0; // UE side
  bool is_los = false;
};

/// A drawn multipath channel for all K users plus its per-subcarrier
/// frequency responses (N_bs x N_ue each).
struct ChannelRealization {
  std::vector<std::vector<PathComponent>> per_user_paths; // K lists
  std::vector<std::vector<CMat>> freq_channels;           // [k][p-1]

  int n_users() const { return static_cast<int>(per_user_paths.size()); }
  int n_subcarriers() const {
    return per_user_paths.empty() ? 0 : static_cast<int>(freq_channels[0].size());
  }
  /// p is the physical subcarrier index, 1 <= p <= P.
  const CMat& h_f(int user, int p) const { return freq_channels[user][p - 1]; }
  /// The user's LOS path (index with is_los set).
  const PathComponent& los_path(int user) const;
};

/// Draws a Rician multipath realization. Per user: n_paths paths with
/// zero-mean complex Gaussian gains, LOS/NLOS variance split by k_factor_db
/// and total average power 1; delays uniform on [0, tau_max] with the LOS
/// path taking the minimum drawn delay; spatial frequencies uniform on
/// [0, 1), or drawn from the canonical grids when on_grid is set.
ChannelRealization generate_channel(const SystemConfig& cfg, Rng& rng, bool on_grid);

/// Per-subcarrier frequency response, sum over paths of
/// gain * exp(-j*2*pi*f_s*tau*p/P) * a_bs(aoa) * a_ue(aod)^H.
/// p is 1-based; out-of-range p throws std::out_of_range.
CMat freq_response(const std::vector<PathComponent>& paths, int p,
                   const SystemConfig& cfg);

/// Angle-domain support per subcarrier: indices of vect(A_bs^H H_f A_ue)
/// whose magnitude exceeds rel_threshold times the per-subcarrier maximum.
/// A zero subcarrier yields an empty set.
std::vector<std::vector<int>> common_support(const ChannelRealization& chan,
                                             int user, double rel_threshold);

/// JSON replay schema: config hash + per-user path lists.
std::string channel_to_json(const ChannelRealization& chan, const SystemConfig& cfg);
ChannelRealization channel_from_json(const std::string& json_text,
                                     const SystemConfig& cfg);

} // namespace dgmp
