#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hyperencap/types.hpp"

namespace hyperencap {

template <class L>
concept NodeLabel = std::totally_ordered<L> && std::copyable<L> && requires(const L& l) {
  { std::hash<L>{}(l) } -> std::convertible_to<std::size_t>;
};

// A simple (set-semantics) hypergraph over labeled nodes.
//
// Nodes are relabeled to the dense range [0, n) in ascending label order and
// the node set is exactly the set of nodes that appear in some hyperedge.
// Hyperedges keep their first-appearance order; each is stored as a sorted
// node list and its id is its position. Immutable after construction.
template <NodeLabel Label>
class BasicHypergraph {
 public:
  using label_type = Label;

  BasicHypergraph() = default;

  /// Builds from hyperedges given as label lists. Repeated hyperedges collapse
  /// onto their first occurrence. Throws FormatError for an empty hyperedge or
  /// a label repeated inside one hyperedge.
  static BasicHypergraph from_edges(const std::vector<std::vector<Label>>& raw) {
    std::vector<Label> labels;
    std::unordered_map<Label, NodeId> index;
    std::vector<std::vector<NodeId>> edges;
    edges.reserve(raw.size());
    for (const auto& e : raw) {
      std::vector<NodeId> ids;
      ids.reserve(e.size());
      for (const auto& l : e) {
        auto [it, inserted] = index.try_emplace(l, static_cast<NodeId>(labels.size()));
        if (inserted) labels.push_back(l);
        ids.push_back(it->second);
      }
      edges.push_back(std::move(ids));
    }
    return BasicHypergraph(std::move(labels), std::move(edges));
  }

  /// Builds from hyperedges over indices into `labels`. Labels must be
  /// distinct. Nodes that appear in no hyperedge are dropped.
  BasicHypergraph(std::vector<Label> labels, std::vector<std::vector<NodeId>> edges) {
    std::vector<char> used(labels.size(), 0);
    for (auto& e : edges) {
      if (e.empty()) throw FormatError("empty hyperedge");
      std::sort(e.begin(), e.end());
      if (std::adjacent_find(e.begin(), e.end()) != e.end())
        throw FormatError("node repeated within a hyperedge");
      if (e.back() >= labels.size()) throw FormatError("hyperedge references unknown node");
      for (NodeId u : e) used[u] = 1;
    }

    // Dense relabel in label order.
    std::vector<NodeId> order;
    for (NodeId u = 0; u < labels.size(); ++u)
      if (used[u]) order.push_back(u);
    std::sort(order.begin(), order.end(),
              [&](NodeId a, NodeId b) { return labels[a] < labels[b]; });
    for (std::size_t i = 1; i < order.size(); ++i)
      if (!(labels[order[i - 1]] < labels[order[i]]))
        throw FormatError("duplicate node label");
    std::vector<NodeId> remap(labels.size(), 0);
    labels_.reserve(order.size());
    for (NodeId i = 0; i < order.size(); ++i) {
      remap[order[i]] = i;
      labels_.push_back(std::move(labels[order[i]]));
    }
    for (NodeId i = 0; i < labels_.size(); ++i) label_index_.emplace(labels_[i], i);

    lookup_.reserve(edges.size());
    edges_.reserve(edges.size());
    for (auto& e : edges) {
      for (NodeId& u : e) u = remap[u];
      std::sort(e.begin(), e.end());
      if (!lookup_.try_emplace(e, static_cast<EdgeId>(edges_.size())).second) continue;
      edges_.push_back(std::move(e));
    }
    memberships_.assign(labels_.size(), {});
    for (EdgeId e = 0; e < edges_.size(); ++e)
      for (NodeId u : edges_[e]) memberships_[u].push_back(e);
  }

  std::size_t num_nodes() const noexcept { return labels_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  std::span<const NodeId> edge(EdgeId e) const noexcept { return edges_[e]; }
  std::size_t edge_size(EdgeId e) const noexcept { return edges_[e].size(); }
  const std::vector<std::vector<NodeId>>& edges() const noexcept { return edges_; }

  std::span<const EdgeId> memberships(NodeId u) const noexcept { return memberships_[u]; }
  std::size_t degree(NodeId u) const noexcept { return memberships_[u].size(); }

  const Label& label(NodeId u) const noexcept { return labels_[u]; }
  const std::vector<Label>& labels() const noexcept { return labels_; }

  std::optional<NodeId> find_node(const Label& l) const {
    auto it = label_index_.find(l);
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Id of the hyperedge with exactly these (sorted) nodes, if present.
  std::optional<EdgeId> find_edge(std::span<const NodeId> sorted_nodes) const {
    auto it = lookup_.find(sorted_nodes);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<EdgeId> find_edge_by_labels(std::vector<Label> ls) const {
    std::vector<NodeId> ids;
    for (const auto& l : ls) {
      auto u = find_node(l);
      if (!u) return std::nullopt;
      ids.push_back(*u);
    }
    std::sort(ids.begin(), ids.end());
    return find_edge(ids);
  }

  std::vector<Label> edge_labels(EdgeId e) const {
    std::vector<Label> out;
    out.reserve(edges_[e].size());
    for (NodeId u : edges_[e]) out.push_back(labels_[u]);
    return out;
  }

  std::size_t max_edge_size() const noexcept {
    std::size_t r = 0;
    for (const auto& e : edges_) r = std::max(r, e.size());
    return r;
  }

  std::size_t max_degree() const noexcept {
    std::size_t r = 0;
    for (const auto& m : memberships_) r = std::max(r, m.size());
    return r;
  }

  /// Number of hyperedges of each size; index = size.
  std::vector<std::size_t> size_distribution() const {
    std::vector<std::size_t> d(max_edge_size() + 1, 0);
    for (const auto& e : edges_) ++d[e.size()];
    return d;
  }

  bool has_singletons() const noexcept {
    return std::any_of(edges_.begin(), edges_.end(), [](const auto& e) { return e.size() == 1; });
  }

  /// Rebuilds memberships from the hyperedge lists and compares. Also checks
  /// sortedness, uniqueness and that every node is used.
  bool check_invariants() const {
    std::vector<std::vector<EdgeId>> rebuilt(labels_.size());
    std::unordered_set<std::vector<NodeId>, NodeListHash> seen;
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      const auto& nodes = edges_[e];
      if (nodes.empty() || !std::is_sorted(nodes.begin(), nodes.end())) return false;
      if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) return false;
      if (!seen.insert(nodes).second) return false;
      for (NodeId u : nodes) {
        if (u >= labels_.size()) return false;
        rebuilt[u].push_back(e);
      }
    }
    for (const auto& m : rebuilt)
      if (m.empty()) return false;
    return rebuilt == memberships_;
  }

  friend bool operator==(const BasicHypergraph& a, const BasicHypergraph& b) {
    return a.labels_ == b.labels_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Label> labels_;
  std::unordered_map<Label, NodeId> label_index_;
  std::vector<std::vector<NodeId>> edges_;
  std::vector<std::vector<EdgeId>> memberships_;
  std::unordered_map<std::vector<NodeId>, EdgeId, NodeListHash, NodeListEqual> lookup_;
};

using Hypergraph = BasicHypergraph<std::int64_t>;
using NamedHypergraph = BasicHypergraph<std::string>;

/// Same node labels, only the hyperedges listed in `keep` (in that order).
template <class Label>
BasicHypergraph<Label> subhypergraph(const BasicHypergraph<Label>& h, std::span<const EdgeId> keep) {
  std::vector<std::vector<NodeId>> edges;
  edges.reserve(keep.size());
  for (EdgeId e : keep) {
    auto nodes = h.edge(e);
    edges.emplace_back(nodes.begin(), nodes.end());
  }
  return BasicHypergraph<Label>(h.labels(), std::move(edges));
}

/// Hyperedges with at most `max_size` nodes; nodes left isolated are dropped.
template <class Label>
BasicHypergraph<Label> filter_by_size(const BasicHypergraph<Label>& h, std::size_t max_size) {
  std::vector<EdgeId> keep;
  for (EdgeId e = 0; e < h.num_edges(); ++e)
    if (h.edge_size(e) <= max_size) keep.push_back(e);
  return subhypergraph(h, keep);
}

/// Connected-component id per node (components through shared hyperedges),
/// numbered in order of their smallest node id.
template <class Label>
std::vector<std::size_t> node_components(const BasicHypergraph<Label>& h) {
  std::vector<NodeId> parent(h.num_nodes());
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : h.edges())
    for (std::size_t i = 1; i < e.size(); ++i) {
      NodeId a = find(e[0]), b = find(e[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::size_t> comp(h.num_nodes());
  std::vector<std::size_t> root_to_comp(h.num_nodes(), SIZE_MAX);
  std::size_t next = 0;
  for (NodeId u = 0; u < h.num_nodes(); ++u) {
    NodeId r = find(u);
    if (root_to_comp[r] == SIZE_MAX) root_to_comp[r] = next++;
    comp[u] = root_to_comp[r];
  }
  return comp;
}

template <class Label>
bool is_connected(const BasicHypergraph<Label>& h) {
  auto comp = node_components(h);
  return std::all_of(comp.begin(), comp.end(), [](std::size_t c) { return c == 0; });
}

/// Sub-hypergraph on the component with the most nodes. Equal-size
/// components are resolved towards the one holding the smallest label;
/// since node ids follow label order, that is the lowest-numbered component.
template <class Label>
BasicHypergraph<Label> largest_connected_component(const BasicHypergraph<Label>& h) {
  if (h.empty()) return h;
  auto comp = node_components(h);
  std::size_t ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
  if (ncomp == 1) return h;
  std::vector<std::size_t> sizes(ncomp, 0);
  for (auto c : comp) ++sizes[c];
  std::size_t best = 0;
  for (std::size_t c = 1; c < ncomp; ++c)
    if (sizes[c] > sizes[best]) best = c;
  std::vector<EdgeId> keep;
  for (EdgeId e = 0; e < h.num_edges(); ++e)
    if (comp[h.edge(e)[0]] == best) keep.push_back(e);
  return subhypergraph(h, keep);
}

/// Fraction of node pairs that co-occur in at least one hyperedge.
template <class Label>
double projected_density(const BasicHypergraph<Label>& h) {
  const std::size_t n = h.num_nodes();
  if (n < 2) throw UndefinedInputError("projected density needs at least two nodes");
  std::vector<NodeId> stamp(n, static_cast<NodeId>(-1));
  std::uint64_t pairs = 0;
  for (NodeId u = 0; u < n; ++u) {
    for (EdgeId e : h.memberships(u))
      for (NodeId v : h.edge(e))
        if (v > u && stamp[v] != u) {
          stamp[v] = u;
          ++pairs;
        }
  }
  return static_cast<double>(pairs) / (static_cast<double>(n) * (n - 1) / 2.0);
}

/// Canonical preprocessing: (dedup happens at construction) size filter, then
/// optionally the largest connected component.
template <class Label>
BasicHypergraph<Label> preprocess(const BasicHypergraph<Label>& h, std::size_t max_size, bool lcc) {
  auto f = filter_by_size(h, max_size);
  return lcc ? largest_connected_component(f) : f;
}

}  // namespace hyperencap
