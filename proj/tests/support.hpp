#pragma once

#include <cstdint>
#include <string>

#include "boxmis/arrangement_io.hpp"
#include "boxmis/graph.hpp"
#include "boxmis/random.hpp"
#include "boxmis/rational.hpp"

namespace testing {

inline std::string fixture(const std::string& name) { return std::string(BOXMIS_SOURCE_DIR) + "/fixtures/" + name; }
inline std::string golden_dir() { return std::string(BOXMIS_SOURCE_DIR) + "/golden"; }

inline boxmis::geometry::Arrangement load(const std::string& name) {
  return boxmis::geometry::read_arrangement_file(fixture(name));
}

/// Erdos-Renyi style ordered graph with edge probability num/den.
inline boxmis::OrderedGraph random_graph(boxmis::RandomSource& rng, std::size_t n, std::uint64_t num,
                                         std::uint64_t den) {
  boxmis::OrderedGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform_below(den) < num) g.add_edge(i, j);
  return g;
}

/// Largest independent set by scanning all 2^n subsets.
inline std::size_t brute_force_mis(const boxmis::OrderedGraph& g) {
  const std::size_t n = g.size();
  std::size_t best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v)
      if ((s >> v & 1) && (g.adjacency(v) & s)) ok = false;
    if (ok) best = std::max<std::size_t>(best, __builtin_popcountll(s));
  }
  return best;
}

/// E|SOL| of Greedy(p) by summing over all 2^n coin vectors.
inline boxmis::Rational brute_force_greedy(const boxmis::OrderedGraph& g, const boxmis::Rational& p) {
  const std::size_t n = g.size();
  boxmis::Rational total = 0;
  for (std::uint64_t coins = 0; coins < (std::uint64_t{1} << n); ++coins) {
    boxmis::Rational weight = 1;
    std::uint64_t taken = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const bool heads = coins >> v & 1;
      weight *= heads ? p : 1 - p;
      if (heads && !(g.adjacency(v) & taken)) taken |= std::uint64_t{1} << v;
    }
    total += weight * __builtin_popcountll(taken);
  }
  return total;
}

}  // namespace testing
