#pragma once

// The reproduction suite: one check per acceptance criterion, selectable by
// number or key, with embedding data overridable from files.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sdual/catalog.hpp"
#include "sdual/check/series.hpp"
#include "sdual/heisenberg.hpp"
#include "sdual/verlinde.hpp"
#include "sdual/weyl.hpp"

namespace sdual {

struct SuiteConfig {
  // each file replaces the built-in embedding named by its ambient and sub fields;
  // a file that cannot be read that far replaces e8:G2+F4, the one shipped as data
  std::vector<std::filesystem::path> embedding_files;
  Precision precision;
  std::uint64_t seed = 20240607;
};

struct CriterionResult {
  int id = 0;
  std::string key;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Resolves embedding specs, honoring overrides.
class EmbeddingSource {
 public:
  explicit EmbeddingSource(const std::vector<std::filesystem::path>& files) {
    for (const auto& f : files) {
      std::ifstream in(f, std::ios::binary);
      if (!in) throw DomainError("cannot read embedding file " + f.string());
      std::stringstream ss;
      ss << in.rdbuf();
      std::string target = "e8:G2+F4";
      try {
        const auto j = nlohmann::json::parse(ss.str());
        target = to_lower(LieType::parse(j.at("ambient").get<std::string>()).str()) + ":" +
                 LieType::parse(j.at("sub").get<std::string>()).str();
      } catch (const std::exception&) {
      }
      overrides_[target] = Override{ss.str(), f.filename().string()};
    }
  }

  static std::string key_of(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return spec;
    return to_lower(LieType::parse(spec.substr(0, colon)).str()) + ":" + LieType::parse(spec.substr(colon + 1)).str();
  }

  bool overrides(const std::string& spec) const { return overrides_.contains(key_of(spec)); }

  Embedding get(const std::string& spec) const {
    const std::string key = key_of(spec);
    if (auto it = overrides_.find(key); it != overrides_.end()) {
      try {
        Embedding e = embedding_from_text(it->second.text, it->second.name);
        e.name = key;
        return e;
      } catch (const std::exception& ex) {
        throw VerificationError(it->second.name + ": " + ex.what());
      }
    }
    return resolve_embedding(spec);
  }

 private:
  struct Override {
    std::string text, name;
  };
  static std::string to_lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }
  std::map<std::string, Override> overrides_;
};

namespace detail {

struct Criterion {
  int id;
  std::string key;
  std::vector<std::string> aliases;
  std::string title;
  std::function<std::string(const SuiteConfig&, const EmbeddingSource&)> run;  // throws on failure
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw VerificationError(what);
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline std::string weight_list(const std::vector<BranchEntry>& entries) {
  std::string s;
  for (const auto& e : entries) s += (s.empty() ? "" : " ") + e.mu.weight.str() + "@" + std::to_string(e.shift);
  return s;
}

inline std::string criterion_conformal(const SuiteConfig&, const EmbeddingSource& src) {
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& spec : e8_conformal_specs()) {
    const Embedding e = src.get(spec);
    const auto one = is_conformal(e, 1);
    require(one.conformal && one.sub_anomaly == 8 && one.ambient_anomaly == 8,
            spec + " at level 1: c(p) = " + one.sub_anomaly.str() + ", c(e8) = " + one.ambient_anomaly.str());
    require(!is_conformal(e, 2).conformal, spec + " is conformal at level 2");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(secs < 1.0, "conformal classification took " + std::to_string(secs) + " s");
  return std::to_string(e8_conformal_specs().size()) + " subalgebras conformal at k=1 with c=8, none at k=2";
}

// Non-trivial highest weights in the basic e8 module, Dynkin labels of the sub algebra.
inline const std::map<std::string, std::vector<std::vector<int>>>& table11() {
  static const std::map<std::string, std::vector<std::vector<int>>> t{
      {"e8:D8", {{0, 0, 0, 0, 0, 0, 1, 0}}},
      {"e8:A8", {{0, 0, 1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0, 0}}},
      {"e8:A4+A4", {{1, 0, 0, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 0, 0, 0, 1}, {0, 0, 1, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 1, 0}}},
      {"e8:A2+E6", {{1, 0, 1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0, 1}}},
      {"e8:A1+E7", {{1, 0, 0, 0, 0, 0, 0, 1}}},
  };
  return t;
}

inline std::string criterion_table11(const SuiteConfig&, const EmbeddingSource& src) {
  std::string detail;
  for (const auto& [spec, nonzero] : table11()) {
    const Embedding e = src.get(spec);
    const auto r = branch_affine(e, LevelWeight{e.ambient.zero(), {1}}, 3);
    std::vector<std::tuple<int, Weight, std::int64_t>> got, want{{0, e.sub.zero(), 1}};
    for (const auto& w : nonzero) want.emplace_back(1, Weight(w), 1);
    for (const auto& en : r.entries) got.emplace_back(en.shift, en.mu.weight, en.mult);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    require(got == want, spec + ": B(0) = " + weight_list(r.entries));
    if (!detail.empty()) detail += "; ";
    detail += spec + " " + std::to_string(r.entries.size()) + " entries";
  }
  return detail;
}

inline std::string criterion_duality(const SuiteConfig&, const EmbeddingSource& src) {
  std::vector<std::string> rows;
  for (const auto& [spec, _] : table11()) rows.push_back(spec);
  rows.push_back("e8:G2+F4");
  for (const auto& spec : rows) {
    const Embedding e = src.get(spec);
    require(duality_check(e, LevelWeight{e.ambient.zero(), {1}}, 3), spec + ": B(0) is not closed under dagger");
  }
  return std::to_string(rows.size()) + " rows closed under dagger";
}

inline std::string criterion_verlinde(const SuiteConfig& cfg, const EmbeddingSource&) {
  std::vector<std::pair<std::string, std::int64_t>> rows;
  for (int n = 2; n <= 9; ++n) rows.emplace_back("A" + std::to_string(n - 1), n);
  for (auto [t, b] : std::vector<std::pair<std::string, std::int64_t>>{{"D8", 4}, {"D4", 4}, {"D4+D4", 16}, {"E6", 3}, {"E7", 2}, {"E8", 1}})
    rows.emplace_back(t, b);
  double worst = 0;
  for (const auto& [t, base] : rows) {
    const RootSystem rs = build(t);
    for (int g = 0; g <= 4; ++g) {
      const auto v = fusion_value(rs, uniform_levels(rs, 1), FusionQuery{g, {}}, cfg.precision);
      const double dev = std::abs(v.raw - static_cast<double>(ipow(base, g)));
      worst = std::max(worst, dev);
      require(v.dimension == ipow(base, g) && dev < kRoundingTolerance,
              t + " genus " + std::to_string(g) + ": " + std::to_string(v.dimension));
    }
  }
  std::ostringstream os;
  os << rows.size() << " types, g = 0..4, max deviation " << std::scientific << std::setprecision(1) << worst;
  return os.str();
}

inline std::string criterion_g2f4(const SuiteConfig& cfg, const EmbeddingSource&) {
  std::string detail = "dims";
  for (int g = 0; g <= 4; ++g) {
    const auto r = strange_duality_dims("G2", "F4", g, cfg.precision);
    require(r.equal() && r.closed_form_ok(), "genus " + std::to_string(g) + ": " + std::to_string(r.dim_a) + " vs " +
                                                 std::to_string(r.dim_b));
    detail += " " + std::to_string(r.dim_a);
  }
  return detail + " for g = 0..4";
}

inline std::string criterion_factorization(const SuiteConfig& cfg, const EmbeddingSource&) {
  std::mt19937_64 rng(cfg.seed);
  int checks = 0;
  for (const char* t : {"A1", "A2", "D4", "G2"}) {
    const RootSystem rs = build(t);
    const auto al = alcove(rs, 1);
    std::uniform_int_distribution<std::size_t> pick(0, al.size() - 1);
    for (int g = 1; g <= 3; ++g) {
      factorization_check(rs, Levels{1}, g, {}, cfg.precision);
      factorization_check(rs, Levels{1}, g, {al[pick(rng)].weight}, cfg.precision);
      checks += 2;
    }
  }
  return std::to_string(checks) + " identities";
}

inline std::string criterion_heisenberg(const SuiteConfig& cfg, const EmbeddingSource&) {
  std::mt19937_64 rng(cfg.seed);
  int samples = 0;
  for (const auto& orders : std::vector<std::vector<int>>{{2}, {3}, {5}, {2, 2}, {3, 3}})
    for (int g : {1, 2}) {
      const HeisenbergModel m(FiniteAbelian{orders, {}}, g);
      for (int t = 0; t < 10; ++t) {
        const auto gens = random_maximal_isotropic(m, rng);
        const auto rep = invariant_report(m, gens, random_lift(m, gens, rng));
        require(rep.dimension == 1 && rep.idempotent,
                m.base().str() + " g=" + std::to_string(g) + ": invariant dimension " + std::to_string(rep.dimension));
        ++samples;
      }
    }
  return std::to_string(samples) + " random Lagrangians with lifts, all one-dimensional";
}

inline std::string criterion_schur(const SuiteConfig&, const EmbeddingSource&) {
  std::string detail;
  for (auto [n, g] : std::vector<std::pair<int, int>>{{5, 1}, {3, 1}, {2, 2}}) {
    const FiniteAbelian a{{n}, {}};
    const DualityModel d(a, a, GroupMap{{{1}}}, g);
    const auto r = strange_duality_map(d);
    require(r.ok() && r.rank == d.a().dim(), "Z/" + std::to_string(n) + " g=" + std::to_string(g) + ": rank " +
                                                 std::to_string(r.rank) + " of " + std::to_string(d.a().dim()));
    if (!detail.empty()) detail += ", ";
    detail += "Z/" + std::to_string(n) + " g=" + std::to_string(g) + " rank " + std::to_string(r.rank);
  }
  return detail;
}

inline std::string criterion_properties(const SuiteConfig& cfg, const EmbeddingSource& src) {
  std::mt19937_64 rng(cfg.seed);
  // dagger is an involution
  const std::vector<std::string> types{"A1", "A4", "A8", "B3", "C3", "D4", "D5", "D8", "E6", "E7", "E8", "F4", "G2"};
  for (int t = 0; t < 200; ++t) {
    const RootSystem rs = build(types[rng() % types.size()]);
    Weight w = rs.zero();
    for (int i = 0; i < rs.rank(); ++i) w[i] = static_cast<int>(rng() % 4);
    require(dagger(rs, dagger(rs, w)) == w, "dagger is not an involution on " + w.str());
    // anomaly and norm are Weyl invariant
    const Weight x = reflect(rs, w, 1 + static_cast<int>(rng() % static_cast<unsigned>(rs.rank())));
    require(inner(rs, x, x) == inner(rs, w, w), "reflection changed the norm of " + w.str());
    require(dominant(rs, x) == w, "dominant representative of a reflected weight differs");
    const Levels k = uniform_levels(rs, std::max(1, level_of(rs, w, 0)));
    require(trace_anomaly(rs, LevelWeight{w, k}) == trace_anomaly(rs, LevelWeight{dagger(rs, w), k}),
            "trace anomaly differs on dagger of " + w.str());
  }
  // S^2 = C
  for (auto [t, k] : std::vector<std::pair<std::string, int>>{{"A3", 2}, {"D5", 1}, {"E6", 1}, {"G2", 2}, {"C3", 1}, {"A2+E6", 1}}) {
    const RootSystem rs = build(t);
    const SMatrix s = s_matrix(rs, k);
    for (std::size_t i = 0; i < s.alcove.size(); ++i) {
      const std::size_t di = s.index_of(dagger(rs, s.alcove[i].weight));
      for (std::size_t j = 0; j < s.alcove.size(); ++j) {
        Cx<double> acc;
        for (std::size_t m = 0; m < s.alcove.size(); ++m) acc += s.entries[i][m] * s.entries[m][j];
        require(std::abs(acc.re - (j == di ? 1.0 : 0.0)) < kUnitarityTolerance && std::abs(acc.im) < kUnitarityTolerance,
                "S^2 is not charge conjugation for " + t);
      }
    }
  }
  // shift-0 entries are the finite branching
  for (auto [spec, node] : std::vector<std::pair<std::string, int>>{{"d8:D4+D4", 7}, {"e6:A2+A2+A2", 1}, {"e7:A7", 7}, {"e8:A8", 0}}) {
    const Embedding e = src.get(spec);
    const Weight lam = node ? e.ambient.fundamental(node) : e.ambient.zero();
    const auto r = branch_affine(e, LevelWeight{lam, {1}}, 2);
    std::map<Weight, std::int64_t> zero;
    for (const auto& en : r.entries)
      if (en.shift == 0) zero[en.mu.weight] += en.mult;
    require(zero == branch_finite(e, lam), spec + ": shift-0 entries differ from finite branching");
  }
  // characters against the theta-function and lattice routes
  const auto e8 = graded_character(build("E8"), LevelWeight{build("E8").zero(), {1}}, 3);
  const auto dims = check::multiply(check::e8_theta(3), check::inverse_eta_power(8, 3), 3);
  for (int m = 0; m <= 3; ++m) require(e8.grade_dimension(m) == dims[m], "E8 basic module grade " + std::to_string(m));
  for (int n = 1; n <= 4; ++n) {
    const RootSystem rs = build("A" + std::to_string(n));
    for (int j = 0; j <= n; ++j) {
      const Weight lam = j ? rs.fundamental(j) : rs.zero();
      const auto ch = graded_character(rs, LevelWeight{lam, {1}}, 3);
      const auto lat = check::a_level_one(n, j, 3);
      for (int m = 0; m <= 3; ++m)
        require(ch.grades[m] == lat[m], "A" + std::to_string(n) + " level one, varpi_" + std::to_string(j) + ", grade " + std::to_string(m));
    }
  }
  return "dagger, Weyl invariance, S^2 = C, shift-0 branching, character oracles";
}

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "conformal", {}, "conformal classification in e8", criterion_conformal},
      {2, "table11", {"branching"}, "basic-module branching of maximal-rank subalgebras", criterion_table11},
      {3, "duality", {}, "duality of branching sets", criterion_duality},
      {4, "verlinde", {}, "Verlinde dimensions at level one", criterion_verlinde},
      {5, "g2f4", {}, "G2/F4 dimensions and closed form", criterion_g2f4},
      {6, "factorization", {}, "factorization rules", criterion_factorization},
      {7, "heisenberg", {"invariants"}, "Heisenberg invariant lines", criterion_heisenberg},
      {8, "schur", {"strange-duality"}, "Schur rank of the duality map", criterion_schur},
      {9, "properties", {}, "property suites", criterion_properties},
  };
  return list;
}

inline bool matches(const Criterion& c, const std::string& token) {
  if (token == std::to_string(c.id) || token == c.key) return true;
  for (const auto& a : c.aliases)
    if (a == token) return true;
  return false;
}

}  // namespace detail

/// Parses a comma separated --only filter into criterion ids; empty means all.
inline std::vector<int> select_criteria(const std::string& only) {
  std::vector<int> ids;
  if (only.empty()) {
    for (const auto& c : detail::criteria()) ids.push_back(c.id);
    return ids;
  }
  std::stringstream ss(only);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    bool found = false;
    for (const auto& c : detail::criteria())
      if (detail::matches(c, tok)) {
        if (std::find(ids.begin(), ids.end(), c.id) == ids.end()) ids.push_back(c.id);
        found = true;
      }
    if (!found) throw DomainError("unknown suite criterion '" + tok + "'");
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

inline std::vector<CriterionResult> run_suite(const SuiteConfig& cfg, const std::vector<int>& ids,
                                              const std::function<void(const CriterionResult&)>& progress = {}) {
  const EmbeddingSource src(cfg.embedding_files);
  std::vector<CriterionResult> out;
  for (const auto& c : detail::criteria()) {
    if (std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    CriterionResult r{c.id, c.key, c.title, false, "", 0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.detail = c.run(cfg, src);
      r.pass = true;
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (progress) progress(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sdual
