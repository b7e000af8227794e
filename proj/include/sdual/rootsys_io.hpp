#pragma once

// JSON serialization of root systems and an on-disk cache keyed by type string.
// The cache is only an optimization: anything loaded is checked against a
// fresh build before it is used.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "sdual/rootsys.hpp"

namespace sdual {

namespace detail {

inline nlohmann::ordered_json rational_matrix_json(const RationalMatrix& m) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& row : m) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& v : row) r.push_back(v.str());
    out.push_back(std::move(r));
  }
  return out;
}

inline RationalMatrix rational_matrix_from(const nlohmann::json& j) {
  RationalMatrix m;
  for (const auto& row : j) {
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(parse_rational(v.get<std::string>()));
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace detail

/// Cache schema version; bump when the layout changes.
inline constexpr int kRootSystemSchema = 1;

inline nlohmann::ordered_json to_json(const RootSystem& rs) {
  nlohmann::ordered_json j;
  j["schema"] = kRootSystemSchema;
  j["type"] = rs.type().str();
  j["rank"] = rs.rank();
  j["dimension"] = rs.dimension();
  j["cartan"] = rs.cartan();
  j["root_gram"] = detail::rational_matrix_json(rs.root_gram());
  j["form"] = detail::rational_matrix_json(rs.form());
  j["rho"] = rs.rho().labels;
  auto comps = nlohmann::ordered_json::array();
  for (const auto& c : rs.components()) {
    nlohmann::ordered_json cj;
    cj["type"] = c.type.str();
    cj["offset"] = c.offset;
    cj["dimension"] = c.dimension;
    cj["dual_coxeter"] = c.dual_coxeter;
    cj["coxeter"] = c.coxeter;
    cj["marks"] = c.marks;
    cj["comarks"] = c.comarks;
    cj["theta"] = c.theta.labels;
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  j["positive_root_coords"] = rs.positive_root_coords();
  return j;
}

inline std::string dump(const RootSystem& rs) { return to_json(rs).dump(1) + "\n"; }

/// Rebuild from JSON; the result must agree with build() on the stated type.
inline RootSystem root_system_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<int>() != kRootSystemSchema) throw VerificationError("root system cache schema mismatch");
    const LieType type = LieType::parse(j.at("type").get<std::string>());
    std::vector<Component> comps;
    for (const auto& cj : j.at("components")) {
      Component c;
      const LieType ct = LieType::parse(cj.at("type").get<std::string>());
      if (!ct.is_simple()) throw VerificationError("component type is not simple");
      c.type = ct.components[0];
      c.offset = cj.at("offset").get<int>();
      c.dimension = cj.at("dimension").get<int>();
      c.dual_coxeter = cj.at("dual_coxeter").get<int>();
      c.coxeter = cj.at("coxeter").get<int>();
      c.marks = cj.at("marks").get<std::vector<int>>();
      c.comarks = cj.at("comarks").get<std::vector<int>>();
      c.theta = Weight(cj.at("theta").get<std::vector<int>>());
      comps.push_back(std::move(c));
    }
    RootSystem rs = assemble(type, j.at("cartan").get<IntMatrix>(), detail::rational_matrix_from(j.at("root_gram")),
                             j.at("positive_root_coords").get<std::vector<std::vector<int>>>(), std::move(comps));
    if (!(rs == build(type))) throw VerificationError("cached root system for " + type.str() + " disagrees with a fresh build");
    if (detail::rational_matrix_from(j.at("form")) != rs.form())
      throw VerificationError("cached form for " + type.str() + " is inconsistent");
    return rs;
  } catch (const nlohmann::json::exception& e) {
    throw VerificationError(std::string("malformed root system JSON: ") + e.what());
  }
}

inline RootSystem root_system_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw VerificationError(std::string("malformed root system JSON: ") + e.what());
  }
  return root_system_from_json(j);
}

/// Cache directory: explicit argument, else SDUAL_CACHE_DIR, else none.
inline std::filesystem::path cache_dir(const std::string& explicit_dir = {}) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("SDUAL_CACHE_DIR"); env && *env) return env;
  return {};
}

/// Build through the cache: load <dir>/<type>.json when present, else build and write it.
inline RootSystem cached_build(const std::string& type, const std::filesystem::path& dir) {
  const LieType t = LieType::parse(type);
  if (dir.empty()) return build(t);
  const auto file = dir / (t.str() + ".json");
  if (std::filesystem::exists(file)) {
    std::ifstream in(file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return root_system_from_json(ss.str());
  }
  RootSystem rs = build(t);
  std::filesystem::create_directories(dir);
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << dump(rs);
  }
  std::filesystem::rename(tmp, file);
  return rs;
}

}  // namespace sdual
