#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "boxmis/expectation.hpp"
#include "boxmis/geometry.hpp"
#include "boxmis/graph.hpp"
#include "boxmis/polynomial.hpp"
#include "boxmis/rational.hpp"

namespace boxmis::search {

inline constexpr std::size_t max_search_vertices = 8;

/// Every ordered graph on n vertices, in increasing canonical edge-mask order.
class OrderedGraphRange {
 public:
  explicit OrderedGraphRange(std::size_t n);

  class iterator {
   public:
    using value_type = OrderedGraph;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(std::size_t n, std::uint64_t mask) : n_(n), mask_(mask) {}
    OrderedGraph operator*() const { return OrderedGraph::from_edge_mask(n_, mask_); }
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++mask_;
      return copy;
    }
    bool operator==(const iterator& other) const { return mask_ == other.mask_; }
    std::uint64_t mask() const { return mask_; }

   private:
    std::size_t n_ = 0;
    std::uint64_t mask_ = 0;
  };

  iterator begin() const { return {n_, 0}; }
  iterator end() const { return {n_, count_}; }
  std::uint64_t size() const { return count_; }

 private:
  std::size_t n_;
  std::uint64_t count_;
};

/// Throws std::invalid_argument unless 1 <= n <= 8.
OrderedGraphRange enumerate_ordered_graphs(std::size_t n);

/// {0, step, 2 step, ..., 1}; step must divide 1.
std::vector<Rational> uniform_grid(const Rational& step);

struct SearchConfig {
  std::size_t n = 3;
  std::vector<Rational> p_grid = uniform_grid(Rational(1, 100));
  std::size_t workers = 1;
  std::uint64_t checkpoint_interval = std::uint64_t{1} << 16;
  std::optional<std::filesystem::path> checkpoint;
  /// Called after each completed batch with (graphs done, total graphs).
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

void validate_config(const SearchConfig& cfg);

struct Worst {
  std::uint64_t mask = 0;
  std::size_t opt = 0;
  Rational expectation;
  Rational ratio;
};

struct PerP {
  Rational p;
  /// Empty at p = 0, where every ratio is unbounded.
  std::optional<Worst> worst;
};

struct SearchResult {
  std::size_t n = 0;
  std::vector<PerP> per_p;
  /// Index into per_p of the grid point with the smallest worst ratio (ties: smaller p).
  std::optional<std::size_t> best_index;
  std::uint64_t graphs = 0;
  double seconds = 0;
  bool resumed = false;
};

/// Exhaustive minimax over all ordered graphs on cfg.n vertices.
/// Resumes from cfg.checkpoint when it exists; a corrupt or mismatched checkpoint
/// raises std::runtime_error.
SearchResult minimax_search(const SearchConfig& cfg);

/// CSV with header p,worst_ratio,worst_graph_hex,opt,expectation_num,expectation_den.
std::string to_csv(const SearchResult& result);

struct WorstGraphReport {
  Rational p;
  OrderedGraph graph;
  std::uint64_t mask = 0;
  ExpectationPolynomial polynomial;
  std::size_t opt = 0;
  Rational ratio_at_p;
  expectation::OptimizeResult refinement;
  /// The same graph is still the worst one when the scan is repeated at the refined p.
  bool confirmed = false;
  std::uint64_t worst_mask_at_refined = 0;
  std::vector<std::size_t> degrees;
};

/// Throws std::invalid_argument if p is not a grid point of `result` or is 0.
WorstGraphReport worst_graph_report(const SearchResult& result, const Rational& p, std::size_t workers = 1);

/// Fixture must realize the graph: same intersection graph and valid claimed classes.
/// Throws std::invalid_argument when the sizes differ.
bool realizability_check(const OrderedGraph& graph, const geometry::Arrangement& fixture);

}  // namespace boxmis::search
