#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_set>
#include <vector>

#include "sdual/rootsys.hpp"

namespace sdual {

/// Simple reflection s_node, node counted from 1.
inline Weight reflect(const RootSystem& rs, Weight w, int node) {
  rs.check_weight(w);
  rs.check_node(node);
  const int i = node - 1;
  const int c = w[i];
  if (c == 0) return w;
  const auto& a = rs.cartan();
  for (int k = 0; k < rs.rank(); ++k) w[k] -= c * a[k][i];
  return w;
}

struct DominantResult {
  Weight weight;
  int sign = 1;  ///< (-1)^length, or 0 when the input lies on a wall
  std::int64_t length = 0;
};

/// Dominant Weyl conjugate, reflecting at the most negative label (lowest index
/// on ties) until none is negative.
inline DominantResult to_dominant(const RootSystem& rs, Weight w) {
  rs.check_weight(w);
  const auto& a = rs.cartan();
  const int n = rs.rank();
  std::int64_t length = 0;
  for (;;) {
    int best = -1;
    int most = 0;
    for (int i = 0; i < n; ++i)
      if (w[i] < most) {
        most = w[i];
        best = i;
      }
    if (best < 0) break;
    const int c = w[best];
    for (int k = 0; k < n; ++k) w[k] -= c * a[k][best];
    ++length;
  }
  DominantResult r;
  bool wall = false;
  for (int v : w.labels)
    if (v == 0) wall = true;
  r.sign = wall ? 0 : (length % 2 == 0 ? 1 : -1);
  r.length = length;
  r.weight = std::move(w);
  return r;
}

/// Dominant representative only; hot path for multiplicity lookups.
inline Weight dominant(const RootSystem& rs, Weight w) {
  const auto& a = rs.cartan();
  const int n = rs.rank();
  for (;;) {
    int best = -1;
    int most = 0;
    for (int i = 0; i < n; ++i)
      if (w[i] < most) {
        most = w[i];
        best = i;
      }
    if (best < 0) return w;
    const int c = w[best];
    for (int k = 0; k < n; ++k) w[k] -= c * a[k][best];
  }
}

/// lambda^dagger = -w_0(lambda), the highest weight of the dual module.
inline Weight dagger(const RootSystem& rs, const Weight& lambda) {
  rs.check_weight(lambda);
  if (!lambda.is_dominant()) throw DomainError("dagger needs a dominant weight, got " + lambda.str());
  return dominant(rs, -lambda);
}

struct OrbitReport {
  Weight representative;
  std::int64_t size = 0;
  std::optional<std::vector<Weight>> elements;
};

/// Weyl orbit of w. Throws ResourceError once more than cap elements are found.
inline OrbitReport orbit(const RootSystem& rs, const Weight& w, std::int64_t cap, bool keep_elements = true) {
  if (cap <= 0) throw DomainError("orbit cap must be positive");
  OrbitReport rep;
  rep.representative = dominant(rs, w);
  std::unordered_set<Weight, WeightHash> seen{rep.representative};
  std::deque<Weight> queue{rep.representative};
  std::vector<Weight> order{rep.representative};
  const int n = rs.rank();
  const auto& a = rs.cartan();
  while (!queue.empty()) {
    Weight cur = std::move(queue.front());
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      // from a dominant start, moving down through positive labels reaches the whole orbit
      if (cur[i] <= 0) continue;
      Weight next = cur;
      const int c = cur[i];
      for (int k = 0; k < n; ++k) next[k] -= c * a[k][i];
      if (seen.insert(next).second) {
        if (static_cast<std::int64_t>(seen.size()) > cap)
          throw ResourceError("Weyl orbit of " + w.str() + " exceeds cap " + std::to_string(cap));
        if (keep_elements) order.push_back(next);
        queue.push_back(std::move(next));
      }
    }
  }
  rep.size = static_cast<std::int64_t>(seen.size());
  if (keep_elements) rep.elements = std::move(order);
  return rep;
}

}  // namespace sdual
