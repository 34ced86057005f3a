#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "hyperencap/hypergraph.hpp"

namespace hyperencap {

namespace detail {

inline std::string slurp(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

inline std::vector<std::int64_t> parse_integers(std::string_view text, std::string_view what) {
  std::vector<std::int64_t> out;
  const char* p = text.data();
  const char* end = p + text.size();
  while (true) {
    while (p != end && is_space(*p)) ++p;
    if (p == end) break;
    std::int64_t v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || (next != end && !is_space(*next)))
      throw FormatError(std::string(what) + ": expected an integer near '" +
                        std::string(p, std::min<std::size_t>(16, end - p)) + "'");
    out.push_back(v);
    p = next;
  }
  return out;
}

template <class Label>
Label parse_label(std::string_view tok) {
  if constexpr (std::is_integral_v<Label>) {
    Label v{};
    auto [next, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || next != tok.data() + tok.size())
      throw FormatError("expected an integer node label, got '" + std::string(tok) + "'");
    return v;
  } else {
    return Label(tok);
  }
}

inline std::ifstream open_input(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw FormatError("cannot open " + p.string());
  return in;
}

}  // namespace detail

// The two-file simplex format: `nverts` lists simplex sizes, `simplices`
// lists the member nodes of each simplex back to back. A third `times` file
// may exist alongside; it is not needed for the static hypergraph.
inline Hypergraph read_simplex(std::istream& nverts_in, std::istream& simplices_in) {
  const auto sizes = detail::parse_integers(detail::slurp(nverts_in), "nverts");
  const auto nodes = detail::parse_integers(detail::slurp(simplices_in), "simplices");
  std::uint64_t total = 0;
  for (auto s : sizes) {
    if (s <= 0) throw FormatError("nverts: simplex size must be positive");
    total += static_cast<std::uint64_t>(s);
  }
  if (total != nodes.size())
    throw FormatError("simplices: expected " + std::to_string(total) + " node ids, found " +
                      std::to_string(nodes.size()));

  std::vector<std::vector<std::int64_t>> raw;
  raw.reserve(sizes.size());
  std::size_t pos = 0;
  for (auto s : sizes) {
    raw.emplace_back(nodes.begin() + pos, nodes.begin() + pos + s);
    pos += s;
  }
  return Hypergraph::from_edges(raw);
}

inline Hypergraph read_simplex_files(const std::filesystem::path& nverts,
                                     const std::filesystem::path& simplices) {
  auto a = detail::open_input(nverts);
  auto b = detail::open_input(simplices);
  return read_simplex(a, b);
}

/// Resolves `<dir>/<name>-nverts.txt` and `<dir>/<name>-simplices.txt` for a
/// dataset directory laid out like the public distribution.
inline Hypergraph read_simplex_dataset(const std::filesystem::path& dir) {
  const std::string name = dir.filename().string();
  return read_simplex_files(dir / (name + "-nverts.txt"), dir / (name + "-simplices.txt"));
}

// Plain format: one hyperedge per line, whitespace-separated labels.
// Blank lines and lines starting with '#' are skipped.
template <class Label = std::int64_t>
BasicHypergraph<Label> read_plain(std::istream& in) {
  std::vector<std::vector<Label>> raw;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view sv(line);
    std::size_t i = 0;
    while (i < sv.size() && detail::is_space(sv[i])) ++i;
    if (i == sv.size() || sv[i] == '#') continue;
    std::vector<Label> edge;
    while (i < sv.size()) {
      std::size_t j = i;
      while (j < sv.size() && !detail::is_space(sv[j])) ++j;
      edge.push_back(detail::parse_label<Label>(sv.substr(i, j - i)));
      i = j;
      while (i < sv.size() && detail::is_space(sv[i])) ++i;
    }
    raw.push_back(std::move(edge));
  }
  return BasicHypergraph<Label>::from_edges(raw);
}

template <class Label = std::int64_t>
BasicHypergraph<Label> read_plain_file(const std::filesystem::path& p) {
  auto in = detail::open_input(p);
  return read_plain<Label>(in);
}

template <class Label>
BasicHypergraph<Label> read_plain_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_plain<Label>(in);
}

template <class Label>
void write_plain(std::ostream& out, const BasicHypergraph<Label>& h) {
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    bool first = true;
    for (NodeId u : h.edge(e)) {
      if (!first) out << ' ';
      out << h.label(u);
      first = false;
    }
    out << '\n';
  }
}

}  // namespace hyperencap
