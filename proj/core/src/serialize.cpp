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

#include "dgmp/serialize.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace dgmp {

namespace {

constexpr char kMagic[8] = {'D', 'G', 'M', 'P', 'T', 'N', 'S', '1'};

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("tensor file: truncated read");
  return v;
}

std::string tensor_name(const std::string& base, int a) {
  return base + "/" + std::to_string(a);
}
std::string tensor_name(const std::string& base, int a, int b) {
  return base + "/" + std::to_string(a) + "/" + std::to_string(b);
}
std::string tensor_name(const std::string& base, int a, int b, int c) {
  return base + "/" + std::to_string(a) + "/" + std::to_string(b) + "/" +
         std::to_string(c);
}

} // namespace

void TensorFile::add(const std::string& name, std::vector<std::uint64_t> dims,
                     std::vector<cxd> data) {
  std::uint64_t count = 1;
  for (auto d : dims) count *= d;
  if (count != data.size())
    throw std::invalid_argument("TensorFile::add: dims/data mismatch for " + name);
  tensors[name] = Tensor{std::move(dims), std::move(data)};
}

void TensorFile::add_matrix(const std::string& name, const CMat& m) {
  add(name,
      {static_cast<std::uint64_t>(m.rows()), static_cast<std::uint64_t>(m.cols())},
      std::vector<cxd>(m.data(), m.data() + m.size()));
}

void TensorFile::add_vector(const std::string& name, const CVec& v) {
  add(name, {static_cast<std::uint64_t>(v.size())},
      std::vector<cxd>(v.data(), v.data() + v.size()));
}

CMat TensorFile::matrix(const std::string& name) const {
  const auto it = tensors.find(name);
  if (it == tensors.end() || it->second.dims.size() != 2)
    throw std::runtime_error("tensor file: missing matrix " + name);
  const auto& t = it->second;
  return Eigen::Map<const CMat>(t.data.data(), t.dims[0], t.dims[1]);
}

CVec TensorFile::vector(const std::string& name) const {
  const auto it = tensors.find(name);
  if (it == tensors.end() || it->second.dims.size() != 1)
    throw std::runtime_error("tensor file: missing vector " + name);
  const auto& t = it->second;
  return Eigen::Map<const CVec>(t.data.data(), t.dims[0]);
}

void TensorFile::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(kMagic, sizeof(kMagic));
  write_pod<std::uint64_t>(out, tensors.size());
  for (const auto& [name, t] : tensors) {
    write_pod<std::uint64_t>(out, name.size());
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    write_pod<std::uint64_t>(out, t.dims.size());
    for (auto d : t.dims) write_pod<std::uint64_t>(out, d);
    out.write(reinterpret_cast<const char*>(t.data.data()),
              static_cast<std::streamsize>(t.data.size() * sizeof(cxd)));
  }
  if (!out) throw std::runtime_error("tensor file: write failed for '" + path + "'");
}

TensorFile TensorFile::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::string(magic, 8) != std::string(kMagic, 8))
    throw std::runtime_error("tensor file: bad magic in '" + path + "'");
  TensorFile tf;
  const auto count = read_pod<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto name_len = read_pod<std::uint64_t>(in);
    std::string name(name_len, '\0');
    in.read(name.data(), static_cast<std::streamsize>(name_len));
    const auto ndim = read_pod<std::uint64_t>(in);
    std::vector<std::uint64_t> dims(ndim);
    std::uint64_t total = 1;
    for (auto& d : dims) {
      d = read_pod<std::uint64_t>(in);
      total *= d;
    }
    std::vector<cxd> data(total);
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(total * sizeof(cxd)));
    if (!in) throw std::runtime_error("tensor file: truncated data in '" + path + "'");
    tf.tensors[name] = Tensor{std::move(dims), std::move(data)};
  }
  return tf;
}

void save_measurement(const MeasurementSet& meas, const PilotBlock& pilots,
                      const SystemConfig& cfg, const std::string& prefix) {
  const auto& d = meas.dims;
  TensorFile tf;
  for (int p = 0; p < d.n_subcarriers; ++p) {
    tf.add_vector(tensor_name("r_bar", p), meas.r_bar[p]);
    for (int t = 0; t < d.n_symbols; ++t) {
      tf.add_matrix(tensor_name("z_comp", p, t), meas.z_comp[p][t]);
      for (int k = 0; k < d.n_users; ++k)
        tf.add_vector(tensor_name("f_eff", p, t, k), meas.f_eff[p][t][k]);
    }
  }
  for (int t = 0; t < d.n_symbols; ++t) {
    tf.add_matrix(tensor_name("pilots/z_rf", t), pilots.z_rf[t]);
    for (int p = 0; p < d.n_subcarriers; ++p) {
      tf.add_matrix(tensor_name("pilots/z_bb", t, p), pilots.z_bb[t][p]);
      for (int k = 0; k < d.n_users; ++k)
        tf.add_vector(tensor_name("pilots/s_eff", t, p, k), pilots.s_eff[t][p][k]);
    }
    for (int k = 0; k < d.n_users; ++k)
      tf.add_matrix(tensor_name("pilots/f_rf", t, k), pilots.f_rf[t][k]);
  }
  tf.save(prefix + ".bin");

  nlohmann::json j;
  j["format"] = "dgmp-measurement-v1";
  j["config_hash"] = config_hash(cfg);
  j["noise_var"] = meas.noise_var;
  j["snr_db_realized"] = meas.snr_db_realized;
  j["shapes"] = {{"n_bs", d.n_bs},       {"n_rf_bs", d.n_rf_bs},
                 {"n_ue", d.n_ue},       {"n_users", d.n_users},
                 {"n_subcarriers", d.n_subcarriers}, {"n_symbols", d.n_symbols}};
  j["seed"] = cfg.rng_seed;
  if (std::isinf(cfg.snr_db))
    j["snr_db_target"] = "inf"; // JSON has no infinity literal
  else
    j["snr_db_target"] = cfg.snr_db;
  j["data_file"] = prefix + ".bin";
  std::ofstream out(prefix + ".json");
  if (!out) throw std::runtime_error("cannot open '" + prefix + ".json' for writing");
  out << j.dump(2) << "\n";
}

LoadedMeasurement load_measurement(const SystemConfig& cfg, const std::string& prefix) {
  std::ifstream in(prefix + ".json");
  if (!in) throw std::runtime_error("cannot open '" + prefix + ".json'");
  nlohmann::json j;
  in >> j;
  if (j.at("format").get<std::string>() != "dgmp-measurement-v1")
    throw std::runtime_error("load_measurement: unknown format");
  if (j.at("config_hash").get<std::string>() != config_hash(cfg))
    throw std::runtime_error("load_measurement: config hash mismatch");

  LoadedMeasurement lm;
  auto& meas = lm.meas;
  meas.dims.n_bs = j["shapes"]["n_bs"].get<int>();
  meas.dims.n_rf_bs = j["shapes"]["n_rf_bs"].get<int>();
  meas.dims.n_ue = j["shapes"]["n_ue"].get<int>();
  meas.dims.n_users = j["shapes"]["n_users"].get<int>();
  meas.dims.n_subcarriers = j["shapes"]["n_subcarriers"].get<int>();
  meas.dims.n_symbols = j["shapes"]["n_symbols"].get<int>();
  meas.noise_var = j.at("noise_var").get<double>();
  meas.snr_db_realized = j.at("snr_db_realized").get<double>();

  const TensorFile tf = TensorFile::load(j.at("data_file").get<std::string>());
  const auto& d = meas.dims;
  meas.r_bar.resize(d.n_subcarriers);
  meas.z_comp.resize(d.n_subcarriers);
  meas.f_eff.resize(d.n_subcarriers);
  for (int p = 0; p < d.n_subcarriers; ++p) {
    meas.r_bar[p] = tf.vector(tensor_name("r_bar", p));
    meas.z_comp[p].resize(d.n_symbols);
    meas.f_eff[p].resize(d.n_symbols);
    for (int t = 0; t < d.n_symbols; ++t) {
      meas.z_comp[p][t] = tf.matrix(tensor_name("z_comp", p, t));
      meas.f_eff[p][t].resize(d.n_users);
      for (int k = 0; k < d.n_users; ++k)
        meas.f_eff[p][t][k] = tf.vector(tensor_name("f_eff", p, t, k));
    }
  }
  auto& pilots = lm.pilots;
  pilots.z_rf.resize(d.n_symbols);
  pilots.z_bb.resize(d.n_symbols);
  pilots.f_rf.resize(d.n_symbols);
  pilots.s_eff.resize(d.n_symbols);
  for (int t = 0; t < d.n_symbols; ++t) {
    pilots.z_rf[t] = tf.matrix(tensor_name("pilots/z_rf", t));
    pilots.z_bb[t].resize(d.n_subcarriers);
    pilots.s_eff[t].resize(d.n_subcarriers);
    for (int p = 0; p < d.n_subcarriers; ++p) {
      pilots.z_bb[t][p] = tf.matrix(tensor_name("pilots/z_bb", t, p));
      pilots.s_eff[t][p].resize(d.n_users);
      for (int k = 0; k < d.n_users; ++k)
        pilots.s_eff[t][p][k] = tf.vector(tensor_name("pilots/s_eff", t, p, k));
    }
    pilots.f_rf[t].resize(d.n_users);
    for (int k = 0; k < d.n_users; ++k)
      pilots.f_rf[t][k] = tf.matrix(tensor_name("pilots/f_rf", t, k));
  }
  return lm;
}

} // namespace dgmp
