#pragma once

// Scenario files for the Heisenberg model: the center Z of a simply connected
// group P with its level-one pairing, the kernel N of P -> E8, and the genera
// to examine.
//
//   {"schema": 1, "name": "sl3_e6", "group": "SL(3) x E6",
//    "generators": ["A2+E6:1", "A2+E6:3"],           coweight classes generating Z
//    "center": {"orders": [3, 3], "form": [["2/3", "0"], ["0", "1/3"]]},
//    "kernel": [[1, 1]], "genus": [1, 2],
//    "duality": {"split": 1, "iota": [[1]]}}           optional
//
// With a duality block the first `split` cyclic factors form A, the rest form
// B, and N is the graph of iota: A -> B.

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sdual/heisenberg.hpp"
#include "sdual/rootsys_io.hpp"

namespace sdual {

inline constexpr int kScenarioSchema = 1;

struct Scenario {
  std::string name;
  std::string group;
  std::vector<std::string> generators;
  FiniteAbelian center;
  std::vector<std::vector<int>> kernel;
  std::vector<int> genera;
  std::optional<std::size_t> split;
  GroupMap iota;
};

inline Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario s;
  try {
    if (j.at("schema").get<int>() != kScenarioSchema) throw DomainError("unsupported scenario schema");
    s.name = j.at("name").get<std::string>();
    s.group = j.value("group", s.name);
    s.generators = j.value("generators", std::vector<std::string>{});
    s.center.orders = j.at("center").at("orders").get<std::vector<int>>();
    if (j.at("center").contains("form")) s.center.form = detail::rational_matrix_from(j.at("center").at("form"));
    s.kernel = j.at("kernel").get<std::vector<std::vector<int>>>();
    s.genera = j.at("genus").get<std::vector<int>>();
    if (j.contains("duality")) {
      s.split = j.at("duality").at("split").get<std::size_t>();
      s.iota.images = j.at("duality").at("iota").get<std::vector<std::vector<int>>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("scenario has missing or mistyped fields: ") + e.what());
  }
  validate(s.center);
  for (const auto& n : s.kernel)
    if (n.size() != s.center.rank()) throw DomainError("kernel generator has the wrong number of coordinates");
  if (s.split) {
    if (*s.split == 0 || *s.split >= s.center.rank()) throw DomainError("duality split must leave both sides non-empty");
    for (std::size_t i = 0; i < *s.split; ++i)
      for (std::size_t j = *s.split; j < s.center.rank(); ++j)
        if (frac(s.center.beta(i, j)) != 0) throw DomainError("pairing does not split along the duality");
  }
  return s;
}

inline Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DomainError("cannot read scenario " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return scenario_from_json(nlohmann::json::parse(ss.str()));
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("scenario " + file.string() + " is not valid JSON: " + e.what());
  }
}

/// A and B of the duality block.
inline std::pair<FiniteAbelian, FiniteAbelian> split_center(const Scenario& s) {
  if (!s.split) throw DomainError("scenario has no duality block");
  FiniteAbelian a, b;
  const std::size_t k = *s.split, r = s.center.rank();
  a.orders.assign(s.center.orders.begin(), s.center.orders.begin() + static_cast<std::ptrdiff_t>(k));
  b.orders.assign(s.center.orders.begin() + static_cast<std::ptrdiff_t>(k), s.center.orders.end());
  if (!s.center.form.empty()) {
    for (std::size_t i = 0; i < k; ++i) {
      a.form.emplace_back();
      for (std::size_t j = 0; j < k; ++j) a.form.back().push_back(s.center.form[i][j]);
    }
    for (std::size_t i = k; i < r; ++i) {
      b.form.emplace_back();
      for (std::size_t j = k; j < r; ++j) b.form.back().push_back(s.center.form[i][j]);
    }
  }
  return {a, b};
}

/// N^g x N^g inside Z^g x Z^g.
inline std::vector<HeisenbergModel::Element> kernel_lagrangian(const Scenario& s, const HeisenbergModel& m) {
  std::vector<HeisenbergModel::Element> gens;
  const std::size_t r = s.center.rank();
  for (int blk = 0; blk < 2 * m.genus(); ++blk)
    for (const auto& n : s.kernel) {
      auto v = m.zero();
      for (std::size_t i = 0; i < r; ++i) v[static_cast<std::size_t>(blk) * r + i] = n[i];
      gens.push_back(std::move(v));
    }
  return gens;
}

struct ScenarioGenusReport {
  int genus = 0;
  bool skipped = false;
  std::string note;
  std::size_t group_order = 0;
  std::size_t dimension = 0;
  std::size_t kernel_order = 0;
  bool kernel_isotropic = false;
  std::size_t lifts = 0;
  std::vector<std::size_t> kernel_dims;  // invariant dimension for the lifts examined
  std::vector<std::size_t> random_dims;  // random maximal isotropic subgroups and lifts
  std::optional<SchurRankReport> duality;
  bool ok() const {
    if (skipped) return true;
    bool good = kernel_isotropic && kernel_order == dimension;
    for (auto d : kernel_dims) good = good && d == 1;
    for (auto d : random_dims) good = good && d == 1;
    if (duality) good = good && duality->ok() && duality->rank == duality->dim_a;
    return good;
  }
};

struct ScenarioReport {
  std::string name, group, center;
  std::vector<ScenarioGenusReport> genera;
  bool ok() const {
    for (const auto& g : genera)
      if (!g.ok()) return false;
    return true;
  }
};

struct ScenarioOptions {
  std::size_t max_lifts = 8;
  int random_samples = 10;
  std::uint64_t seed = 20240101;
  std::size_t limit = kDefaultGroupLimit;
};

inline ScenarioReport run_scenario(const Scenario& s, const ScenarioOptions& opt = {}) {
  ScenarioReport rep;
  rep.name = s.name;
  rep.group = s.group;
  rep.center = s.center.str();
  std::mt19937_64 rng(opt.seed);
  for (int g : s.genera) {
    ScenarioGenusReport gr;
    gr.genus = g;
    std::optional<HeisenbergModel> model;
    try {
      model.emplace(s.center, g, opt.limit);
    } catch (const ResourceError& e) {
      gr.skipped = true;
      gr.note = e.what();
      rep.genera.push_back(std::move(gr));
      continue;
    }
    const HeisenbergModel& m = *model;
    gr.group_order = m.group_order();
    gr.dimension = m.dim();
    const auto gens = kernel_lagrangian(s, m);
    gr.kernel_isotropic = is_isotropic(m, gens);
    gr.kernel_order = span(m, gens).size();
    if (gr.kernel_isotropic) {
      const auto lifts = enumerate_lifts(m, gens);
      gr.lifts = lifts.size();
      const std::size_t step = std::max<std::size_t>(1, lifts.size() / opt.max_lifts);
      for (std::size_t i = 0; i < lifts.size() && gr.kernel_dims.size() < opt.max_lifts; i += step)
        gr.kernel_dims.push_back(invariant_report(m, gens, lifts[i], false).dimension);
    }
    for (int t = 0; t < opt.random_samples; ++t) {
      const auto lg = random_maximal_isotropic(m, rng);
      gr.random_dims.push_back(invariant_report(m, lg, random_lift(m, lg, rng)).dimension);
    }
    if (s.split) {
      const auto [a, b] = split_center(s);
      DualityModel d(a, b, s.iota, g, opt.limit);
      gr.duality = strange_duality_map(d);
    }
    rep.genera.push_back(std::move(gr));
  }
  return rep;
}

inline nlohmann::ordered_json to_json(const ScenarioReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = kScenarioSchema;
  j["scenario"] = r.name;
  j["group"] = r.group;
  j["center"] = r.center;
  j["genera"] = nlohmann::ordered_json::array();
  for (const auto& g : r.genera) {
    nlohmann::ordered_json e;
    e["genus"] = g.genus;
    if (g.skipped) {
      e["skipped"] = g.note;
      j["genera"].push_back(std::move(e));
      continue;
    }
    e["group_order"] = g.group_order;
    e["dimension"] = g.dimension;
    e["kernel_order"] = g.kernel_order;
    e["kernel_isotropic"] = g.kernel_isotropic;
    e["lifts"] = g.lifts;
    e["kernel_invariant_dims"] = g.kernel_dims;
    e["random_invariant_dims"] = g.random_dims;
    if (g.duality) {
      const auto& d = *g.duality;
      e["duality"] = {{"dim_a", d.dim_a},
                      {"dim_b", d.dim_b},
                      {"invariant_tensors", d.invariant_tensors},
                      {"rank", d.rank},
                      {"equivariant", d.equivariant},
                      {"schur_scalar", d.schur_scalar},
                      {"schur_nonzero", d.schur_nonzero}};
    }
    e["status"] = g.ok() ? "PASS" : "FAIL";
    j["genera"].push_back(std::move(e));
  }
  j["status"] = r.ok() ? "PASS" : "FAIL";
  return j;
}

}  // namespace sdual
