#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "boxmis/expectation.hpp"
#include "boxmis/geometry.hpp"
#include "support.hpp"

using namespace boxmis;
using namespace boxmis::expectation;

namespace {

OrderedGraph disjoint_union(const OrderedGraph& a, const OrderedGraph& b) {
  OrderedGraph g(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a.has_edge(i, j)) g.add_edge(i, j);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (b.has_edge(i, j)) g.add_edge(a.size() + i, a.size() + j);
  return g;
}

std::size_t naive_greedy_size(const OrderedGraph& g) {
  std::uint64_t taken = 0;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (!(g.adjacency(v) & taken)) taken |= std::uint64_t{1} << v;
  return __builtin_popcountll(taken);
}

}  // namespace

TEST_CASE("polynomial arithmetic and text form") {
  ExpectationPolynomial a{0, 3, -2};
  CHECK(a.degree() == 2);
  CHECK(a.to_string() == "0 3 -2");
  CHECK(parse_polynomial("0 3 -2") == a);
  CHECK(ExpectationPolynomial{}.to_string() == "0");
  CHECK(a.derivative() == ExpectationPolynomial{3, -4});
  CHECK((a - a).is_zero());
  CHECK(a.evaluate(Rational(3, 4)) == Rational(9, 8));
  CHECK_THROWS(parse_polynomial("1 x"));
}

TEST_CASE("small closed forms") {
  CHECK(greedy_p_polynomial(OrderedGraph(1)) == ExpectationPolynomial{0, 1});
  CHECK(greedy_p_polynomial(OrderedGraph::from_edge_mask(2, 1)) == ExpectationPolynomial{0, 2, -1});
  OrderedGraph star(3);
  star.add_edge(0, 1);
  star.add_edge(0, 2);
  CHECK(greedy_p_polynomial(star) == ExpectationPolynomial{0, 3, -2});
}

TEST_CASE("polynomial matches coin enumeration on random graphs") {
  RandomSource rng(21);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng.uniform_below(9);
    auto g = testing::random_graph(rng, n, 1 + rng.uniform_below(3), 4);
    auto poly = greedy_p_polynomial(g);
    for (Rational p : {Rational(1, 3), Rational(1, 2), Rational(7, 9)}) CHECK(poly.evaluate(p) == testing::brute_force_greedy(g, p));
  }
}

TEST_CASE("polynomial invariants") {
  RandomSource rng(22);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.uniform_below(14);
    auto g = testing::random_graph(rng, n, 1, 1 + rng.uniform_below(4));
    auto poly = greedy_p_polynomial(g);
    CHECK(poly.evaluate(Rational(0)) == 0);
    CHECK(poly.evaluate(Rational(1)) == naive_greedy_size(g));
    for (int s = 0; s <= 20; ++s) {
      const Rational p(s, 20);
      const Rational e = poly.evaluate(p);
      CHECK(e >= 0);
      CHECK(e <= static_cast<long long>(n));
    }
    auto h = testing::random_graph(rng, 1 + rng.uniform_below(5), 1, 2);
    CHECK(greedy_p_polynomial(disjoint_union(g, h)) == poly + greedy_p_polynomial(h));
  }
}

TEST_CASE("big-integer and machine-integer coefficients agree") {
  RandomSource rng(23);
  for (int t = 0; t < 40; ++t) {
    auto g = testing::random_graph(rng, 12, 1, 3);
    CHECK(greedy_p_polynomial<long long>(g).cast<BigInt>() == greedy_p_polynomial(g));
  }
}

TEST_CASE("MIS branch and bound equals subset scan up to n = 16") {
  RandomSource rng(24);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 1 + rng.uniform_below(16);
    auto g = testing::random_graph(rng, n, 1 + rng.uniform_below(5), 6);
    auto r = mis_size(g);
    CHECK(r.size == testing::brute_force_mis(g));
    CHECK(static_cast<std::size_t>(__builtin_popcountll(r.witness)) == r.size);
    CHECK(is_independent(g, r.witness));
  }
}

TEST_CASE("max_disjoint_boxes handles components independently") {
  std::vector<geometry::Box> boxes;
  for (int c = 0; c < 40; ++c) {
    const Rational x(10 * c);
    boxes.push_back(geometry::Box({x}, {x + 2}));
    boxes.push_back(geometry::Box({x + 1}, {x + 3}));
    boxes.push_back(geometry::Box({x + Rational(5, 2)}, {x + 4}));
  }
  CHECK(max_disjoint_boxes(boxes) == 80);
}

TEST_CASE("optimize_p agrees with a dense grid") {
  RandomSource rng(25);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng.uniform_below(7);
    auto g = testing::random_graph(rng, n, 1, 2);
    auto poly = greedy_p_polynomial(g);
    const std::size_t opt = mis_size(g).size;
    auto r = optimize_p(poly, opt);
    double grid_best = 0;
    for (int s = 0; s <= 100000; ++s) grid_best = std::max(grid_best, poly.evaluate(s / 100000.0));
    CHECK(to_double(r.max_expectation) >= grid_best - 1e-12);
    CHECK(to_double(r.max_expectation) <= grid_best + 1e-6);
    CHECK(std::abs(poly.evaluate(to_double(r.p_star)) - to_double(r.max_expectation)) < 1e-9);
    CHECK(r.min_ratio * r.max_expectation == static_cast<long long>(opt));
  }
}

TEST_CASE("optimize_p finds the rational optimum exactly") {
  auto r = optimize_p(ExpectationPolynomial{0, 3, -2}, 2);
  CHECK(r.exact);
  CHECK(r.p_star == Rational(3, 4));
  CHECK(r.min_ratio == Rational(16, 9));
  auto tie = optimize_p(ExpectationPolynomial{0, 1}, 1);
  CHECK(tie.p_star == 1);
}

TEST_CASE("root isolation brackets each root") {
  // (2p - 1)(3p - 1)(5p - 4) = 30p^3 - 49p^2 + 25p - 4
  ExpectationPolynomial f{-4, 25, -49, 30};
  auto roots = isolate_roots(f, 0, 1, Rational(1, 1000000));
  REQUIRE(roots.size() == 3);
  CHECK(std::abs(to_double(roots[0]) - 1.0 / 3) < 1e-6);
  CHECK(std::abs(to_double(roots[1]) - 0.5) < 1e-6);
  CHECK(std::abs(to_double(roots[2]) - 0.8) < 1e-6);
}

TEST_CASE("block formulas") {
  using geometry::OrderClass;
  auto nd = block_formula_optimum(2, OrderClass::NonDominated);
  CHECK(nd.p == Rational(2, 3));
  CHECK(nd.ratio == Rational(9, 4));
  auto ar = block_formula_optimum(2, OrderClass::Arbitrary);
  CHECK(ar.p == Rational(5, 8));
  CHECK(ar.ratio == Rational(64, 25));
  CHECK(std::abs(to_double(block_formula_optimum(30, OrderClass::Arbitrary).ratio) - 4) < 1e-6);
  CHECK(std::abs(to_double(block_formula_optimum(30, OrderClass::NonDominated).ratio) - 4) < 1e-6);
  CHECK_THROWS(block_formula_ratio(2, OrderClass::NonDominated, 0));
  // Grid oracle for the minimiser.
  double best = 1e9, arg = 0;
  for (int s = 1; s <= 10000; ++s) {
    double r = to_double(block_formula_ratio(3, OrderClass::Arbitrary, Rational(s, 10000)));
    if (r < best) best = r, arg = s / 10000.0;
  }
  CHECK(std::abs(arg - to_double(block_formula_optimum(3, OrderClass::Arbitrary).p)) < 1e-3);
}

TEST_CASE("marking block expectation is the average of the block polynomial") {
  for (std::size_t L = 1; L <= 5; ++L) {
    for (Rational p : {Rational(1, 2), Rational(2, 3), Rational(1)}) {
      Rational sum = 0;
      for (std::uint64_t marks = 0; marks < (std::uint64_t{1} << (L - 1)); ++marks)
        sum += testing::brute_force_greedy(marking_block_graph(L, marks), p);
      CHECK(marking_block_expectation(L, p) == sum / Rational(static_cast<long long>(1) << (L - 1)));
    }
  }
  // One level is two disjoint boxes.
  CHECK(marking_block_expectation(1, Rational(1, 2)) == 1);
  CHECK(marking_block_bound(3, Rational(1, 2)) == Rational(15, 8));
  CHECK(asymptotic_block_ratio(4, Rational(15, 8)) == Rational(32, 15));
}

TEST_CASE("marking block graph: unmarked vertices are independent") {
  for (std::size_t L = 1; L <= 6; ++L) {
    for (std::uint64_t marks = 0; marks < (std::uint64_t{1} << (L - 1)); ++marks) {
      auto g = marking_block_graph(L, marks);
      CHECK(mis_size(g).size == L + 1);
    }
  }
}
