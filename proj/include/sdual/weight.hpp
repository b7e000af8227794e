#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sdual/error.hpp"

namespace sdual {

/// A weight in Dynkin-label (fundamental weight) coordinates, Bourbaki numbering,
/// concatenated over the simple components of a semisimple system.
struct Weight {
  std::vector<int> labels;

  Weight() = default;
  explicit Weight(std::size_t rank) : labels(rank, 0) {}
  explicit Weight(std::vector<int> l) : labels(std::move(l)) {}
  Weight(std::initializer_list<int> l) : labels(l) {}

  std::size_t size() const { return labels.size(); }
  int& operator[](std::size_t i) { return labels[i]; }
  int operator[](std::size_t i) const { return labels[i]; }

  bool is_zero() const {
    for (int v : labels)
      if (v != 0) return false;
    return true;
  }
  bool is_dominant() const {
    for (int v : labels)
      if (v < 0) return false;
    return true;
  }

  Weight& operator+=(const Weight& o) {
    check_same(o);
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] += o.labels[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    check_same(o);
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] -= o.labels[i];
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator-(Weight a) {
    for (int& v : a.labels) v = -v;
    return a;
  }
  friend Weight operator*(int s, Weight a) {
    for (int& v : a.labels) v *= s;
    return a;
  }

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight& a, const Weight& b) { return a.labels <=> b.labels; }

  std::string str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i];
    os << ')';
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.str(); }

 private:
  void check_same(const Weight& o) const {
    if (o.labels.size() != labels.size())
      throw DomainError("weight length mismatch: " + std::to_string(labels.size()) + " vs " +
                        std::to_string(o.labels.size()));
  }
};

struct WeightHash {
  std::size_t operator()(const Weight& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int v : w.labels) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(v)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Concatenate component weights into a semisimple weight.
inline Weight concat(const Weight& a, const Weight& b) {
  Weight r = a;
  r.labels.insert(r.labels.end(), b.labels.begin(), b.labels.end());
  return r;
}

}  // namespace sdual
