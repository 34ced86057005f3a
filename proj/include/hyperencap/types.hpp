#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperencap {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Malformed dataset or edge-list input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quantity is undefined for the given input (e.g. density of a 1-node graph).
class UndefinedInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Graph input violates a structural precondition (e.g. a cycle in a DAG).
class MalformedGraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A randomized procedure gave up after its retry budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hash for sorted node lists. Used for hyperedge dedup and lookup.
struct NodeListHash {
  using is_transparent = void;
  std::size_t operator()(std::span<const NodeId> nodes) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (NodeId u : nodes) {
      h ^= u + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
  std::size_t operator()(const std::vector<NodeId>& nodes) const noexcept {
    return (*this)(std::span<const NodeId>(nodes));
  }
};

struct NodeListEqual {
  using is_transparent = void;
  bool operator()(std::span<const NodeId> a, std::span<const NodeId> b) const noexcept {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  }
};

/// Binomial coefficient as a double (sizes here are at most a few dozen).
inline double binomial(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace hyperencap
