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

#include "dgmp/kron.hpp"

#include <stdexcept>
#include <string>

namespace dgmp {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

} // namespace

CVec vectorize(const CMat& x) {
  return Eigen::Map<const CVec>(x.data(), x.size());
}

CMat unvectorize(const CVec& v, Eigen::Index rows, Eigen::Index cols) {
  require(v.size() == rows * cols, "unvectorize: size mismatch");
  return Eigen::Map<const CMat>(v.data(), rows, cols);
}

CVec vectorize_sandwich(const CMat& a, const CMat& x, const CMat& b) {
  require(a.cols() == x.rows() && x.cols() == b.rows(),
          "vectorize_sandwich: dimensions not conformable (" +
              std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " * " +
              std::to_string(x.rows()) + "x" + std::to_string(x.cols()) + " * " +
              std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
  return vectorize(a * x * b);
}

CMat kronecker(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat angle_transform(const CMat& h_f, const AngleDictionary& a_bs,
                     const AngleDictionary& a_ue) {
  require(a_bs.columns.rows() == h_f.rows() && a_ue.columns.rows() == h_f.cols(),
          "angle_transform: dictionary/channel dimension mismatch");
  return a_bs.columns.adjoint() * h_f * a_ue.columns;
}

CMat inverse_angle_transform(const CMat& h_a, const AngleDictionary& a_bs,
                             const AngleDictionary& a_ue) {
  require(a_bs.columns.cols() == h_a.rows() && a_ue.columns.cols() == h_a.cols(),
          "inverse_angle_transform: dictionary/channel dimension mismatch");
  const double scale =
      static_cast<double>(a_bs.columns.rows()) * static_cast<double>(a_ue.columns.rows());
  return (a_bs.columns * h_a * a_ue.columns.adjoint()) / scale;
}

} // namespace dgmp
