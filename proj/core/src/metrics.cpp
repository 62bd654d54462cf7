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

#include "dgmp/metrics.hpp"

#include <stdexcept>

namespace dgmp {

double nmse(const std::vector<std::vector<CMat>>& h_true,
            const std::vector<std::vector<CMat>>& h_est) {
  if (h_true.size() != h_est.size())
    throw std::invalid_argument("nmse: user count mismatch");
  double err = 0.0, ref = 0.0;
  for (std::size_t k = 0; k < h_true.size(); ++k) {
    if (h_true[k].size() != h_est[k].size())
      throw std::invalid_argument("nmse: subcarrier count mismatch");
    for (std::size_t p = 0; p < h_true[k].size(); ++p) {
      if (h_true[k][p].rows() != h_est[k][p].rows() ||
          h_true[k][p].cols() != h_est[k][p].cols())
        throw std::invalid_argument("nmse: matrix shape mismatch");
      err += (h_est[k][p] - h_true[k][p]).squaredNorm();
      ref += h_true[k][p].squaredNorm();
    }
  }
  if (ref == 0.0) throw std::domain_error("nmse: zero-energy reference channel");
  return err / ref;
}

} // namespace dgmp
