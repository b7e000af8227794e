#pragma once

// Embedding data files:
//   {"ambient": "E8", "sub": "G2+F4", "restriction": [[...], ...], "declared_index": [1, 1]}
// The writer emits one canonical layout so load followed by save reproduces a
// canonical file byte for byte.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "sdual/embed.hpp"

namespace sdual {

inline std::string embedding_to_text(const Embedding& e) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"ambient\": \"" << e.ambient.type().str() << "\",\n";
  os << "  \"sub\": \"" << e.sub.type().str() << "\",\n";
  os << "  \"restriction\": [\n";
  for (std::size_t r = 0; r < e.restriction.size(); ++r) {
    os << "    [";
    for (std::size_t c = 0; c < e.restriction[r].size(); ++c) os << (c ? ", " : "") << e.restriction[r][c];
    os << "]" << (r + 1 < e.restriction.size() ? "," : "") << "\n";
  }
  os << "  ],\n";
  os << "  \"declared_index\": [";
  for (std::size_t i = 0; i < e.index.size(); ++i) os << (i ? ", " : "") << e.index[i];
  os << "]\n}\n";
  return os.str();
}

/// Parse and validate an embedding description. The computed Dynkin index must
/// equal declared_index, and the ambient adjoint module must branch into
/// genuine sub characters containing the sub adjoint.
inline Embedding embedding_from_text(const std::string& text, const std::string& name = "file") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw VerificationError(std::string("embedding file is not valid JSON: ") + ex.what());
  }
  Embedding e;
  try {
    const auto ambient = build(j.at("ambient").get<std::string>());
    const auto sub = build(j.at("sub").get<std::string>());
    const auto restriction = j.at("restriction").get<IntMatrix>();
    const auto declared = j.at("declared_index").get<Levels>();
    if (declared.size() != sub.components().size())
      throw VerificationError("declared_index has " + std::to_string(declared.size()) + " entries, sub has " +
                              std::to_string(sub.components().size()) + " components");
    e = make_embedding(ambient, sub, restriction, name, declared);
  } catch (const nlohmann::json::exception& ex) {
    throw VerificationError(std::string("embedding file has missing or mistyped fields: ") + ex.what());
  } catch (const DomainError& ex) {
    throw VerificationError(std::string("embedding file rejected: ") + ex.what());
  }
  const auto decomposition = branch_finite(e, e.ambient.theta());
  std::int64_t total = 0;
  for (const auto& [mu, c] : decomposition) total += c * weyl_dimension(e.sub, mu).convert_to<std::int64_t>();
  if (total != e.ambient.dimension()) throw VerificationError("adjoint restriction has the wrong dimension");
  for (std::size_t c = 0; c < e.sub.components().size(); ++c)
    if (!decomposition.contains(e.sub.theta(c)))
      throw VerificationError("adjoint restriction does not contain the adjoint of " + e.sub.components()[c].type.str());
  return e;
}

inline Embedding load_embedding(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DomainError("cannot open embedding file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return embedding_from_text(ss.str(), file.stem().string());
}

inline void save_embedding(const Embedding& e, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw DomainError("cannot write embedding file " + file.string());
  out << embedding_to_text(e);
}

}  // namespace sdual
