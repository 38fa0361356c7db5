#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace boxmis {

/// Undirected simple graph whose vertex labels 0..n-1 are the arrival order.
/// Adjacency is stored as one bitmask per vertex, so n is capped at 63.
class OrderedGraph {
 public:
  static constexpr std::size_t max_vertices = 63;
  /// Largest n whose canonical edge mask fits in 64 bits.
  static constexpr std::size_t max_mask_vertices = 11;

  OrderedGraph() = default;
  explicit OrderedGraph(std::size_t n);
  /// Throws std::invalid_argument on asymmetry, self-loops or stray bits.
  OrderedGraph(std::size_t n, std::vector<std::uint64_t> adjacency);

  static OrderedGraph from_edge_mask(std::size_t n, std::uint64_t mask);
  std::uint64_t edge_mask() const;

  std::size_t size() const { return adj_.size(); }
  std::uint64_t adjacency(std::size_t v) const { return adj_[v]; }
  const std::vector<std::uint64_t>& adjacency() const { return adj_; }
  std::uint64_t all_vertices() const;
  bool has_edge(std::size_t i, std::size_t j) const;
  void add_edge(std::size_t i, std::size_t j);
  std::size_t degree(std::size_t v) const;
  std::size_t edge_count() const;
  std::vector<std::size_t> degree_sequence() const;

  bool operator==(const OrderedGraph&) const = default;

 private:
  std::vector<std::uint64_t> adj_;
};

/// Bit index of edge {i, j} in the canonical mask: pairs (0,1), (0,2), ..., (n-2,n-1).
std::size_t edge_bit(std::size_t n, std::size_t i, std::size_t j);
std::size_t edge_slot_count(std::size_t n);

bool is_independent(const OrderedGraph& g, std::uint64_t set);

/// Text form: `n=<n>` followed by one hex adjacency mask per line.
std::string write_graph(const OrderedGraph& g);
OrderedGraph read_graph(std::istream& in);
OrderedGraph read_graph_file(const std::string& path);

std::string to_hex(std::uint64_t value);

}  // namespace boxmis
