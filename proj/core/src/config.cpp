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

#include "dgmp/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

namespace dgmp {

namespace {

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& where) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": cannot parse number '" + s + "'");
  }
}

long long parse_int(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": cannot parse integer '" + s + "'");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

} // namespace

int SystemConfig::min_cp_len() const {
  return static_cast<int>(std::ceil(tau_max_s * sample_rate_hz - 1e-9));
}

void SystemConfig::validate() const {
  std::vector<std::string> errs;
  auto positive = [&](long long v, const char* name) {
    if (v <= 0) errs.push_back(std::string(name) + " must be positive");
  };
  positive(n_ant_bs, "n_ant_bs");
  positive(n_rf_bs, "n_rf_bs");
  positive(n_ant_ue, "n_ant_ue");
  positive(n_rf_ue, "n_rf_ue");
  positive(n_users, "n_users");
  positive(n_subcarriers, "n_subcarriers");
  positive(n_symbols, "n_symbols");
  positive(n_paths, "n_paths");
  positive(refine_factor, "refine_factor");
  if (n_rf_bs > n_ant_bs) errs.push_back("n_rf_bs <= n_ant_bs violated");
  if (n_rf_ue > n_ant_ue) errs.push_back("n_rf_ue <= n_ant_ue violated");
  if (carrier_freq_hz <= 0) errs.push_back("carrier_freq_ghz must be positive");
  if (sample_rate_hz <= 0) errs.push_back("sample_rate_ghz must be positive");
  if (tau_max_s < 0) errs.push_back("tau_max_ns must be non-negative");
  if (antenna_spacing_ratio <= 0) errs.push_back("antenna_spacing_ratio must be positive");
  if (epsilon <= 0) errs.push_back("epsilon must be positive");
  if (cp_len < min_cp_len()) {
    errs.push_back("cp_len violates L_CP >= ceil(tau_max * f_s) = " +
                   std::to_string(min_cp_len()));
  }
  if (n_subcarriers <= cp_len) {
    errs.push_back("n_subcarriers violates P > L_CP (P = " +
                   std::to_string(n_subcarriers) + ", L_CP = " + std::to_string(cp_len) + ")");
  }
  if (!errs.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errs) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
}

SystemConfig desk_config() {
  SystemConfig cfg;
  cfg.n_ant_bs = 32;
  cfg.n_rf_bs = 2;
  cfg.n_ant_ue = 8;
  cfg.n_rf_ue = 1;
  cfg.n_users = 2;
  cfg.n_subcarriers = 8;
  cfg.cp_len = 4;
  cfg.n_symbols = 8;
  cfg.sample_rate_hz = 0.25e9;
  cfg.tau_max_s = 16e-9;
  cfg.n_paths = 4;
  return cfg;
}

SystemConfig parse_config(const std::string& text, const std::string& origin) {
  SystemConfig cfg;
  bool cp_seen = false;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError(where + ": empty key or value");
    if (seen.count(key))
      throw ConfigError(where + ": duplicate key '" + key + "' (first at line " +
                        std::to_string(seen[key]) + ")");
    seen[key] = lineno;

    if (key == "n_ant_bs") cfg.n_ant_bs = static_cast<int>(parse_int(val, where));
    else if (key == "n_rf_bs") cfg.n_rf_bs = static_cast<int>(parse_int(val, where));
    else if (key == "n_ant_ue") cfg.n_ant_ue = static_cast<int>(parse_int(val, where));
    else if (key == "n_rf_ue") cfg.n_rf_ue = static_cast<int>(parse_int(val, where));
    else if (key == "n_users") cfg.n_users = static_cast<int>(parse_int(val, where));
    else if (key == "n_subcarriers") cfg.n_subcarriers = static_cast<int>(parse_int(val, where));
    else if (key == "cp_len") { cfg.cp_len = static_cast<int>(parse_int(val, where)); cp_seen = true; }
    else if (key == "n_symbols") cfg.n_symbols = static_cast<int>(parse_int(val, where));
    else if (key == "carrier_freq_ghz") cfg.carrier_freq_hz = parse_double(val, where) * 1e9;
    else if (key == "sample_rate_ghz") cfg.sample_rate_hz = parse_double(val, where) * 1e9;
    else if (key == "tau_max_ns") cfg.tau_max_s = parse_double(val, where) * 1e-9;
    else if (key == "antenna_spacing_ratio") cfg.antenna_spacing_ratio = parse_double(val, where);
    else if (key == "k_factor_db") cfg.k_factor_db = parse_double(val, where);
    else if (key == "n_paths") cfg.n_paths = static_cast<int>(parse_int(val, where));
    else if (key == "refine_factor") cfg.refine_factor = static_cast<int>(parse_int(val, where));
    else if (key == "epsilon") cfg.epsilon = parse_double(val, where);
    else if (key == "snr_db") cfg.snr_db = parse_double(val, where);
    else if (key == "rng_seed") cfg.rng_seed = static_cast<std::uint64_t>(parse_int(val, where));
    else throw ConfigError(where + ": unknown key '" + key + "'");
  }
  if (!cp_seen) cfg.cp_len = cfg.min_cp_len();
  cfg.validate();
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path);
}

std::string config_to_string(const SystemConfig& cfg) {
  std::ostringstream out;
  out << "n_ant_bs = " << cfg.n_ant_bs << "\n"
      << "n_rf_bs = " << cfg.n_rf_bs << "\n"
      << "n_ant_ue = " << cfg.n_ant_ue << "\n"
      << "n_rf_ue = " << cfg.n_rf_ue << "\n"
      << "n_users = " << cfg.n_users << "\n"
      << "n_subcarriers = " << cfg.n_subcarriers << "\n"
      << "cp_len = " << cfg.cp_len << "\n"
      << "n_symbols = " << cfg.n_symbols << "\n"
      << "carrier_freq_ghz = " << fmt_double(cfg.carrier_freq_hz / 1e9) << "\n"
      << "sample_rate_ghz = " << fmt_double(cfg.sample_rate_hz / 1e9) << "\n"
      << "tau_max_ns = " << fmt_double(cfg.tau_max_s * 1e9) << "\n"
      << "antenna_spacing_ratio = " << fmt_double(cfg.antenna_spacing_ratio) << "\n"
      << "k_factor_db = " << fmt_double(cfg.k_factor_db) << "\n"
      << "n_paths = " << cfg.n_paths << "\n"
      << "refine_factor = " << cfg.refine_factor << "\n"
      << "epsilon = " << fmt_double(cfg.epsilon) << "\n"
      << "snr_db = " << fmt_double(cfg.snr_db) << "\n"
      << "rng_seed = " << cfg.rng_seed << "\n";
  return out.str();
}

std::string config_hash(const SystemConfig& cfg) {
  const std::string s = config_to_string(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace dgmp
