#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "boxmis/geometry.hpp"
#include "boxmis/graph.hpp"
#include "boxmis/polynomial.hpp"
#include "boxmis/rational.hpp"

namespace boxmis::expectation {

inline constexpr std::size_t max_polynomial_vertices = 20;

/// Exact E[|SOL|] of Greedy(p) on an ordered graph, as a polynomial in p.
/// Recursion over vertices in input order carrying the blocked set; memoized on
/// (index, blocked vertices that are still to come).
template <class Coeff = BigInt>
Polynomial<Coeff> greedy_p_polynomial(const OrderedGraph& g);

struct MisResult {
  std::size_t size = 0;
  std::uint64_t witness = 0;
};

/// Exact maximum independent set by branch and bound.
MisResult mis_size(const OrderedGraph& g);

/// Exact MIS cardinality of a box set of any size; solves each connected
/// component of the intersection graph separately (components must have at most 63 boxes).
std::size_t max_disjoint_boxes(std::span<const geometry::Box> boxes);

struct RatioPoint {
  Rational p;
  Rational expectation;
  std::size_t opt = 0;
  Rational ratio;
};

/// Throws std::domain_error when the expectation at p is zero.
RatioPoint ratio_at(const ExpectationPolynomial& poly, std::size_t opt, const Rational& p);

struct OptimizeResult {
  /// Exact maximizer when `exact` is set, otherwise a rational within 1e-12 of it.
  Rational p_star;
  bool exact = false;
  Rational max_expectation;
  Rational min_ratio;
};

/// Maximizes poly on [0, 1]. Ties between maximizers go to the smaller p.
/// Throws std::invalid_argument for the zero polynomial.
OptimizeResult optimize_p(const ExpectationPolynomial& poly, std::size_t opt);

/// Approximate real roots of f in [lo, hi], sorted, each within `width` of a true root
/// (exact whenever a simple rational candidate checks out). Roots of even multiplicity
/// are only reported if they land on a probe point.
std::vector<Rational> isolate_roots(const ExpectationPolynomial& f, const Rational& lo, const Rational& hi,
                                    const Rational& width);

/// Adaptive-block ratio of Greedy(p): one box followed by m disjoint boxes meeting it,
/// m = 2^d - 1 (NonDominated) or 2^d (Arbitrary).
Rational block_formula_ratio(std::size_t d, geometry::OrderClass order, const Rational& p);

struct BlockOptimum {
  Rational p;
  Rational ratio;
};
BlockOptimum block_formula_optimum(std::size_t d, geometry::OrderClass order);

/// Intersection pattern of one marking block with `levels` pairs: vertices 2j and 2j+1
/// form level j; bit j of `marks` picks which of them is marked. Each box meets exactly
/// the marked boxes of earlier levels.
OrderedGraph marking_block_graph(std::size_t levels, std::uint64_t marks);

/// Exact E[|SOL|] of Greedy(p) on one marking block, averaged over every marking outcome.
Rational marking_block_expectation(std::size_t levels, const Rational& p);

/// The nested upper bound 1 + q(1 + q(... (1 + q))) with `levels` factors of q.
Rational marking_block_bound(std::size_t levels, const Rational& q);

/// opt / expectation for one block; the ratio is the same for any number of disjoint copies.
Rational asymptotic_block_ratio(std::size_t opt_per_block, const Rational& expectation_per_block);

// ---------------------------------------------------------------------------

namespace detail {

template <class Coeff>
using Coeffs = std::vector<Coeff>;

template <class Coeff>
struct GreedyRecursion {
  const OrderedGraph& g;
  std::vector<std::unordered_map<std::uint64_t, Coeffs<Coeff>>> memo;

  explicit GreedyRecursion(const OrderedGraph& graph) : g(graph), memo(graph.size() + 1) {}

  // f(i, B) = f(i+1, B)                               if i in B
  //         = p (1 + f(i+1, B | adj i)) + (1-p) f(i+1, B)  otherwise
  Coeffs<Coeff> run(std::size_t i, std::uint64_t blocked) {
    const std::size_t n = g.size();
    while (i < n && (blocked >> i & 1)) ++i;
    if (i == n) return {};
    std::uint64_t future = blocked & ~((std::uint64_t{1} << i) - 1);
    auto& table = memo[i];
    if (auto it = table.find(future); it != table.end()) return it->second;
    Coeffs<Coeff> take = run(i + 1, future | g.adjacency(i));
    Coeffs<Coeff> skip = run(i + 1, future);
    // result = skip + p * (1 + take - skip)
    std::size_t len = std::max<std::size_t>(std::max(take.size(), skip.size()) + 1, 2);
    Coeffs<Coeff> out(len, Coeff(0));
    for (std::size_t t = 0; t < skip.size(); ++t) out[t] += skip[t];
    out[1] += Coeff(1);
    for (std::size_t t = 0; t < take.size(); ++t) out[t + 1] += take[t];
    for (std::size_t t = 0; t < skip.size(); ++t) out[t + 1] -= skip[t];
    while (!out.empty() && out.back() == Coeff(0)) out.pop_back();
    table.emplace(future, out);
    return out;
  }
};

}  // namespace detail

template <class Coeff>
Polynomial<Coeff> greedy_p_polynomial(const OrderedGraph& g) {
  if (g.size() > max_polynomial_vertices)
    throw std::invalid_argument("greedy_p_polynomial supports at most 20 vertices");
  detail::GreedyRecursion<Coeff> rec(g);
  return Polynomial<Coeff>(rec.run(0, 0));
}

}  // namespace boxmis::expectation
