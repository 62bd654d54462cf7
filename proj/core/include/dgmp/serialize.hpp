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

#include <map>
#include <string>
#include <vector>

#include "dgmp/measurement.hpp"
#include "dgmp/pilots.hpp"

namespace dgmp {

/// Minimal named-tensor container: little-endian binary file of complex128
/// tensors, each entry (name, dims, data). Column-major data order.
struct TensorFile {
  struct Tensor {
    std::vector<std::uint64_t> dims;
    std::vector<cxd> data;
  };
  std::map<std::string, Tensor> tensors;

  void add(const std::string& name, std::vector<std::uint64_t> dims,
           std::vector<cxd> data);
  void add_matrix(const std::string& name, const CMat& m);
  void add_vector(const std::string& name, const CVec& v);
  CMat matrix(const std::string& name) const;
  CVec vector(const std::string& name) const;

  void save(const std::string& path) const;
  static TensorFile load(const std::string& path);
};

/// Writes <prefix>.bin (tensors: measurements + pilot block) and
/// <prefix>.json (shapes, config hash, seeds, SNR bookkeeping).
void save_measurement(const MeasurementSet& meas, const PilotBlock& pilots,
                      const SystemConfig& cfg, const std::string& prefix);

struct LoadedMeasurement {
  MeasurementSet meas;
  PilotBlock pilots;
};

/// Reads a pair written by save_measurement; validates the config hash.
LoadedMeasurement load_measurement(const SystemConfig& cfg, const std::string& prefix);

} // namespace dgmp
