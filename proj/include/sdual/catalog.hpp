#pragma once

// Named embeddings addressed as "ambient:sub", e.g. "e8:A4+A4".
//
// For e8 the maximal-rank rows come from deleting one node of the extended
// diagram (node 0 is the affine node, attached to node 8). The node orders
// below fix how each component is identified with its Bourbaki diagram; the
// orientation is chosen so the level-one branching of the basic module reads
// as {0, varpi_7} for D8, {(varpi_1, varpi_1), (varpi_2, varpi_6)} for A2+E6 and
// pairs (varpi_i, varpi_{2i mod 5}) for A4+A4.
// G2+F4 is not of maximal rank and is shipped as data (see kE8G2F4).

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdual/embed.hpp"
#include "sdual/embed_io.hpp"

namespace sdual {

struct NodeDeletion {
  int node;
  std::vector<std::vector<int>> orders;
};

inline const std::map<std::string, NodeDeletion>& e8_node_deletions() {
  static const std::map<std::string, NodeDeletion> table{
      {"D8", {1, {{0, 8, 7, 6, 5, 4, 3, 2}}}},
      {"A8", {2, {{0, 8, 7, 6, 5, 4, 3, 1}}}},
      {"A4+A4", {5, {{0, 8, 7, 6}, {1, 3, 4, 2}}}},
      {"A2+E6", {7, {{0, 8}, {1, 2, 3, 4, 5, 6}}}},
      {"A1+E7", {8, {{0}, {1, 2, 3, 4, 5, 6, 7}}}},
  };
  return table;
}

/// so(8)+so(8) inside so(16): delete node 4 of the extended D8 diagram.
inline const NodeDeletion& d8_to_d4_d4() {
  static const NodeDeletion d{4, {{0, 2, 1, 3}, {5, 6, 7, 8}}};
  return d;
}

/// G2+F4 in E8 through E8 > D4+D4: G2 sits triality-invariantly in the first
/// D4, F4 contains the second D4 as its long-root subalgebra.
inline const char* const kE8G2F4 = R"({
  "ambient": "E8",
  "sub": "G2+F4",
  "restriction": [
    [0, -1, -1, -2, -2, -2, -1, -2],
    [0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, 1, -1, 0, 0, 0, 0, 0],
    [0, -1, 0, 0, 1, 0, 0, 0]
  ],
  "declared_index": [1, 1]
}
)";

/// Subalgebras of e8 that are conformal at level one, as embedding specs.
inline std::vector<std::string> e8_conformal_specs() {
  return {"e8:D8", "e8:A8", "e8:A4+A4", "e8:A2+E6", "e8:A1+E7", "e8:G2+F4", "e8:D4+D4"};
}

/// Resolve "ambient:sub". Unknown maximal-rank subalgebras are searched among
/// all single-node deletions with automatic component ordering.
inline Embedding resolve_embedding(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw DomainError("embedding spec must look like ambient:sub, got '" + spec + "'");
  const LieType amb_type = LieType::parse(spec.substr(0, colon));
  const LieType sub_type = LieType::parse(spec.substr(colon + 1));
  if (!amb_type.is_simple()) throw DomainError("ambient algebra must be simple");
  const RootSystem ambient = build(amb_type);
  const std::string sub = sub_type.str();
  Embedding e;
  bool found = false;
  if (sub == amb_type.str()) {
    e = identity_embedding(ambient);
    found = true;
  } else if (amb_type.str() == "E8") {
    const auto& table = e8_node_deletions();
    if (auto it = table.find(sub); it != table.end()) {
      e = borel_de_siebenthal(ambient, it->second.node, it->second.orders);
      found = true;
    } else if (sub == "D4+D4") {
      const auto& d8 = table.at("D8");
      const Embedding outer = borel_de_siebenthal(ambient, d8.node, d8.orders);
      e = compose(outer, borel_de_siebenthal(outer.sub, d8_to_d4_d4().node, d8_to_d4_d4().orders));
      found = true;
    } else if (sub == "G2+F4") {
      e = embedding_from_text(kE8G2F4);
      found = true;
    }
  }
  if (!found) {
    for (int node = 0; node <= ambient.rank() && !found; ++node) {
      Embedding cand = borel_de_siebenthal(ambient, node);
      if (cand.sub.type().str() == sub) {
        e = std::move(cand);
        found = true;
      }
    }
  }
  if (!found) throw DomainError("no built-in embedding " + spec);
  std::string name = spec;
  std::transform(name.begin(), name.begin() + static_cast<std::ptrdiff_t>(colon), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  e.name = name;
  return e;
}

}  // namespace sdual
