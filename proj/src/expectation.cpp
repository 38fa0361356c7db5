#include "boxmis/expectation.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

namespace boxmis::expectation {

namespace {

struct MisSearch {
  const OrderedGraph& g;
  std::size_t best = 0;
  std::uint64_t best_set = 0;

  void solve(std::uint64_t cand, std::size_t size, std::uint64_t chosen) {
    if (size + static_cast<std::size_t>(std::popcount(cand)) <= best) return;
    if (cand == 0) {
      best = size;
      best_set = chosen;
      return;
    }
    // Every maximal independent set contains v or one of its neighbours; branch on
    // the vertex of minimum remaining degree to keep the fan-out small.
    std::size_t v = 0;
    int v_deg = 64;
    for (std::uint64_t rest = cand; rest; rest &= rest - 1) {
      auto u = static_cast<std::size_t>(std::countr_zero(rest));
      int deg = std::popcount(g.adjacency(u) & cand);
      if (deg < v_deg) {
        v_deg = deg;
        v = u;
      }
    }
    std::uint64_t closed = (g.adjacency(v) & cand) | (std::uint64_t{1} << v);
    for (std::uint64_t rest = closed; rest; rest &= rest - 1) {
      auto u = static_cast<std::size_t>(std::countr_zero(rest));
      std::uint64_t bit = std::uint64_t{1} << u;
      solve(cand & ~g.adjacency(u) & ~bit, size + 1, chosen | bit);
    }
  }
};

Rational bisect_root(const ExpectationPolynomial& f, Rational a, Rational b, const Rational& width) {
  const bool a_positive = f.evaluate(a) > 0;
  while (b - a > width) {
    Rational mid = (a + b) / 2;
    Rational fm = f.evaluate(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == a_positive) {
      a = mid;
    } else {
      b = mid;
    }
  }
  Rational simple = simplest_between(a, b);
  if (f.evaluate(simple) == 0) return simple;
  return (a + b) / 2;
}

}  // namespace

MisResult mis_size(const OrderedGraph& g) {
  MisSearch search{g};
  search.solve(g.all_vertices(), 0, 0);
  return {search.best, search.best_set};
}

std::size_t max_disjoint_boxes(std::span<const geometry::Box> boxes) {
  const std::size_t n = boxes.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (geometry::intersects(boxes[i], boxes[j])) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::vector<geometry::Box>> components;
  for (std::size_t i = 0; i < n; ++i) components[find(i)].push_back(boxes[i]);
  std::size_t total = 0;
  for (const auto& [root, members] : components) {
    if (members.size() > OrderedGraph::max_vertices)
      throw std::invalid_argument("a connected component has more than 63 boxes");
    total += members.size() == 1 ? 1 : mis_size(geometry::intersection_graph(members)).size;
  }
  return total;
}

RatioPoint ratio_at(const ExpectationPolynomial& poly, std::size_t opt, const Rational& p) {
  Rational e = poly.evaluate(p);
  if (e == 0) throw std::domain_error("expectation is zero at p = " + to_string(p));
  return {p, e, opt, Rational(opt) / e};
}

std::vector<Rational> isolate_roots(const ExpectationPolynomial& f, const Rational& lo, const Rational& hi,
                                    const Rational& width) {
  std::vector<Rational> roots;
  if (f.degree() <= 0) return roots;
  if (f.degree() == 1) {
    Rational r = Rational(-f.coefficient(0)) / Rational(f.coefficient(1));
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }
  // f is monotone between consecutive critical points, so each piece holds at most one sign change.
  std::vector<Rational> cuts{lo};
  for (auto& c : isolate_roots(f.derivative(), lo, hi, width)) {
    if (c > cuts.back() && c < hi) cuts.push_back(c);
  }
  cuts.push_back(hi);
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    Rational fa = f.evaluate(cuts[k]);
    if (fa == 0) {
      roots.push_back(cuts[k]);
      continue;
    }
    if (k + 1 == cuts.size()) break;
    Rational fb = f.evaluate(cuts[k + 1]);
    if (fb != 0 && (fa > 0) != (fb > 0)) roots.push_back(bisect_root(f, cuts[k], cuts[k + 1], width));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

OptimizeResult optimize_p(const ExpectationPolynomial& poly, std::size_t opt) {
  if (poly.is_zero()) throw std::invalid_argument("optimize_p: zero polynomial");
  const Rational width(1, BigInt("1000000000000"));
  ExpectationPolynomial slope = poly.derivative();
  std::vector<Rational> candidates{Rational(0)};
  for (auto& r : isolate_roots(slope, Rational(0), Rational(1), width)) candidates.push_back(r);
  candidates.push_back(Rational(1));
  std::sort(candidates.begin(), candidates.end());

  OptimizeResult best;
  bool have = false;
  for (const auto& c : candidates) {
    Rational value = poly.evaluate(c);
    if (!have || value > best.max_expectation) {
      best.p_star = c;
      best.max_expectation = value;
      have = true;
    }
  }
  best.exact = best.p_star == 0 || best.p_star == 1 || slope.evaluate(best.p_star) == 0;
  if (best.max_expectation <= 0) throw std::domain_error("optimize_p: expectation is never positive on [0,1]");
  best.min_ratio = Rational(opt) / best.max_expectation;
  return best;
}

namespace {

BigInt pack_size(std::size_t d, geometry::OrderClass order) {
  BigInt full = pow(BigInt(2), static_cast<unsigned>(d));
  switch (order) {
    case geometry::OrderClass::NonDominated: return full - 1;
    case geometry::OrderClass::Arbitrary: return full;
    case geometry::OrderClass::Dominating: break;
  }
  throw std::invalid_argument("block formula is defined for nondominated and arbitrary order only");
}

}  // namespace

Rational block_formula_ratio(std::size_t d, geometry::OrderClass order, const Rational& p) {
  if (d == 0) throw std::invalid_argument("dimension must be positive");
  if (p <= 0 || p > 1) throw std::domain_error("block_formula_ratio: p must lie in (0, 1]");
  Rational m(pack_size(d, order));
  // E = p + (1 - p) m p for one box followed by m disjoint boxes meeting it; OPT = m.
  return m / ((m + 1) * p - m * p * p);
}

BlockOptimum block_formula_optimum(std::size_t d, geometry::OrderClass order) {
  if (d == 0) throw std::invalid_argument("dimension must be positive");
  Rational m(pack_size(d, order));
  Rational p = (m + 1) / (2 * m);
  return {p, block_formula_ratio(d, order, p)};
}

OrderedGraph marking_block_graph(std::size_t levels, std::uint64_t marks) {
  if (levels == 0 || 2 * levels > OrderedGraph::max_vertices)
    throw std::invalid_argument("marking block needs between 1 and 31 levels");
  OrderedGraph g(2 * levels);
  for (std::size_t j = 1; j < levels; ++j) {
    for (std::size_t earlier = 0; earlier < j; ++earlier) {
      std::size_t marked = 2 * earlier + (marks >> earlier & 1);
      g.add_edge(2 * j, marked);
      g.add_edge(2 * j + 1, marked);
    }
  }
  return g;
}

Rational marking_block_expectation(std::size_t levels, const Rational& p) {
  if (levels == 0) throw std::invalid_argument("marking block needs at least one level");
  if (p < 0 || p > 1) throw std::domain_error("p must lie in [0, 1]");
  if (2 * levels > max_polynomial_vertices) throw std::invalid_argument("marking block too large for exact expectation");
  // The last level's mark never matters; enumerate the marks that shape the block.
  const std::uint64_t outcomes = std::uint64_t{1} << (levels - 1);
  Rational total = 0;
  for (std::uint64_t marks = 0; marks < outcomes; ++marks) {
    total += greedy_p_polynomial(marking_block_graph(levels, marks)).evaluate(p);
  }
  return total / Rational(outcomes);
}

Rational marking_block_bound(std::size_t levels, const Rational& q) {
  Rational acc = 1;
  for (std::size_t j = 0; j < levels; ++j) acc = 1 + q * acc;
  return acc;
}

Rational asymptotic_block_ratio(std::size_t opt_per_block, const Rational& expectation_per_block) {
  if (expectation_per_block == 0) throw std::domain_error("asymptotic_block_ratio: zero expectation");
  return Rational(opt_per_block) / expectation_per_block;
}

}  // namespace boxmis::expectation
