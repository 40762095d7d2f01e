#include "cmgvccm/cmg_params.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "cmgvccm/errors.hpp"

namespace vccm {

using nlohmann::json;

CmgParams CmgParams::nominal() {
  CmgParams p;
  p.I_A = 0.0902;
  p.J_A = 0.0534;
  p.K_A = 0.0374;
  p.I_B = 0.0039;
  p.J_B = 0.0186;
  p.K_B = 0.0200;
  p.I_C = 9.2087e-4;
  p.J_C = 0.0016;
  p.K_C = 0.0026;
  p.I_D = 0.0030;
  p.J_D = 0.0055;
  p.K_D = 0.0374;
  p.f_v << 1.1050e-5, 1.2420e-5, 0.0141, 0.0327;
  p.k_m << 0.0680, 0.1006, 0.1053, 0.0606;
  return p;
}

namespace {

Eigen::Vector4d vec4_from_json(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 4) {
    throw ConfigError("expected 4-element array for '" + key + "'");
  }
  Eigen::Vector4d v;
  for (int i = 0; i < 4; ++i) v[i] = j.at(key).at(i).get<double>();
  return v;
}

double moment_from_json(const json& j, const std::string& body,
                        const std::string& axis) {
  try {
    return j.at("moments").at(body).at(axis).get<double>();
  } catch (const json::exception&) {
    throw ConfigError("missing moment '" + axis + "' for body '" + body + "'");
  }
}

}  // namespace

CmgParams CmgParams::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open parameter file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("parse error in " + path.string() + ": " + e.what());
  }
  CmgParams p;
  p.I_A = moment_from_json(j, "A", "I");
  p.J_A = moment_from_json(j, "A", "J");
  p.K_A = moment_from_json(j, "A", "K");
  p.I_B = moment_from_json(j, "B", "I");
  p.J_B = moment_from_json(j, "B", "J");
  p.K_B = moment_from_json(j, "B", "K");
  p.I_C = moment_from_json(j, "C", "I");
  p.J_C = moment_from_json(j, "C", "J");
  p.K_C = moment_from_json(j, "C", "K");
  p.I_D = moment_from_json(j, "D", "I");
  p.J_D = moment_from_json(j, "D", "J");
  p.K_D = moment_from_json(j, "D", "K");
  p.f_v = vec4_from_json(j, "f_v");
  p.k_m = vec4_from_json(j, "k_m");
  return p;
}

void CmgParams::save(const std::filesystem::path& path) const {
  json j;
  j["moments"]["A"] = {{"I", I_A}, {"J", J_A}, {"K", K_A}};
  j["moments"]["B"] = {{"I", I_B}, {"J", J_B}, {"K", K_B}};
  j["moments"]["C"] = {{"I", I_C}, {"J", J_C}, {"K", K_C}};
  j["moments"]["D"] = {{"I", I_D}, {"J", J_D}, {"K", K_D}};
  j["f_v"] = {f_v[0], f_v[1], f_v[2], f_v[3]};
  j["k_m"] = {k_m[0], k_m[1], k_m[2], k_m[3]};
  std::ofstream out(path);
  if (!out) throw IoError("cannot write parameter file: " + path.string());
  out << j.dump(2) << "\n";
}

std::vector<std::string> CmgParams::validate() const {
  std::vector<std::string> issues;
  const struct {
    const char* name;
    double value;
  } moments[] = {{"I_A", I_A}, {"J_A", J_A}, {"K_A", K_A}, {"I_B", I_B},
                 {"J_B", J_B}, {"K_B", K_B}, {"I_C", I_C}, {"J_C", J_C},
                 {"K_C", K_C}, {"I_D", I_D}, {"J_D", J_D}, {"K_D", K_D}};
  for (const auto& m : moments) {
    if (!(m.value > 0.0)) {
      issues.push_back(std::string(m.name) + " must be strictly positive");
    }
  }
  for (int i = 0; i < 4; ++i) {
    if (!(k_m[i] > 0.0)) {
      issues.push_back("k_m[" + std::to_string(i + 1) + "] must be positive");
    }
    if (f_v[i] < 0.0) {
      issues.push_back("f_v[" + std::to_string(i + 1) + "] must be nonnegative");
    }
  }
  return issues;
}

}  // namespace vccm
