#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "boxmis/expectation.hpp"
#include "boxmis/geometry.hpp"
#include "boxmis/policies.hpp"
#include "support.hpp"

using namespace boxmis;
using namespace boxmis::policies;
using geometry::Box;

namespace {

std::vector<Box> random_cubes(RandomSource& rng, std::size_t n, std::size_t d) {
  std::vector<Box> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> lo;
    for (std::size_t a = 0; a < d; ++a) lo.emplace_back(Rational(static_cast<long long>(rng.uniform_below(40)), 4));
    out.push_back(Box::cube(lo, Rational(4 + static_cast<long long>(rng.uniform_below(9)), 4)));
  }
  return out;
}

std::vector<Box> random_boxes(RandomSource& rng, std::size_t n, std::size_t d) {
  std::vector<Box> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> lo, hi;
    for (std::size_t a = 0; a < d; ++a) {
      const long long l = static_cast<long long>(rng.uniform_below(40));
      lo.emplace_back(Rational(l, 4));
      hi.emplace_back(Rational(l + 1 + static_cast<long long>(rng.uniform_below(12)), 4));
    }
    out.emplace_back(lo, hi);
  }
  return out;
}

}  // namespace

TEST_CASE("policy tags round-trip") {
  for (const char* tag : {"greedy", "greedyp:1/2", "greedyp:3/4", "classified:5/2:2"}) CHECK(policy_tag(parse_policy(tag)) == tag);
  CHECK_NOTHROW(parse_policy("greedyp:0"));
  CHECK_THROWS(parse_policy("greedyp:-1/2"));
  CHECK_THROWS(parse_policy("greedyp:3/2"));
  CHECK_THROWS(parse_policy("classified:1/2:1"));
  CHECK(is_deterministic(parse_policy("greedyp:1")));
  CHECK_FALSE(is_deterministic(parse_policy("greedyp:1/2")));
}

TEST_CASE("coin acceptance frequency over a fixed stream") {
  // Thresholds are exact multiples of 2^-53, so the count over a fixed stream is reproducible.
  RandomSource rng(31);
  Coin coin(Rational(1, 3));
  int heads = 0;
  const int trials = 300000;
  for (int t = 0; t < trials; ++t) heads += coin.flip(rng);
  CHECK(std::abs(heads / double(trials) - 1.0 / 3) < 4 * std::sqrt(2.0 / 9 / trials));
  RandomSource always(1);
  Coin one(Rational(1));
  for (int t = 0; t < 1000; ++t) CHECK(one.flip(always));
}

TEST_CASE("naive greedy accepts every box disjoint from the accepted set") {
  RandomSource rng(32);
  for (int t = 0; t < 100; ++t) {
    auto boxes = random_boxes(rng, 1 + rng.uniform_below(30), 2);
    auto trace = run_policy(NaiveGreedy{}, boxes, rng);
    std::vector<std::size_t> accepted;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      bool free = true;
      for (auto j : accepted) free = free && !geometry::intersects(boxes[i], boxes[j]);
      if (free) accepted.push_back(i);
    }
    CHECK(trace.accepted_indices() == accepted);
    CHECK(trace.decisions.size() == boxes.size());
  }
}

TEST_CASE("scaled and rational engines make identical decisions") {
  RandomSource gen(33);
  for (int t = 0; t < 60; ++t) {
    auto boxes = random_cubes(gen, 2 + gen.uniform_below(40), 1 + gen.uniform_below(3));
    auto scaled = scale_to_integers(boxes);
    REQUIRE(scaled);
    for (const auto& spec : {parse_policy("greedyp:1/2"), parse_policy("classified:3:2"), parse_policy("greedy")}) {
      RandomSource a(1000 + t), b(1000 + t);
      auto ta = run_policy(spec, boxes, a);
      auto tb = run_policy(spec, *scaled, b);
      CHECK(ta.accepted_indices() == tb.accepted_indices());
      CHECK(a.position() == b.position());
    }
  }
}

TEST_CASE("exact greedy distribution matches the polynomial") {
  RandomSource rng(34);
  for (int t = 0; t < 40; ++t) {
    auto boxes = random_boxes(rng, 1 + rng.uniform_below(10), 2);
    auto poly = expectation::greedy_p_polynomial(geometry::intersection_graph(boxes));
    for (Rational p : {Rational(1, 2), Rational(3, 5)}) CHECK(exact_greedy_p_distribution(boxes, p) == poly.evaluate(p));
  }
}

TEST_CASE("class intervals cover [1, sigma] without gaps") {
  for (auto [sigma, k] : {std::pair<Rational, unsigned>{4, 2}, {Rational(5, 2), 3}, {100, 4}}) {
    auto classes = class_bounds(sigma, k);
    REQUIRE(!classes.empty());
    for (int s = 0; s <= 400; ++s) {
      Rational side = 1 + (sigma - 1) * Rational(s, 400);
      int hits = 0;
      for (const auto& c : classes) hits += c.contains(side);
      CHECK(hits >= 1);
    }
  }
  auto four = class_bounds(4, 2);
  REQUIRE(four.size() == 2);
  CHECK(four[0].exact_upper() == Rational(2));
}

TEST_CASE("classified greedy only accepts boxes of its drawn class") {
  std::vector<Box> boxes;
  for (int i = 0; i < 8; ++i) {
    const Rational x(10 * i);
    const Rational side = i % 2 ? Rational(3) : Rational(1);
    boxes.push_back(Box::cube({x, 0}, side));
  }
  for (std::uint64_t seed = 0; seed < 32; ++seed) {
    RandomSource rng(seed);
    auto trace = run_policy(ClassifiedGreedy{4, 2}, boxes, rng);
    auto acc = trace.accepted_indices();
    REQUIRE(acc.size() == 4);
    for (auto i : acc) CHECK(i % 2 == acc[0] % 2);
  }
}

TEST_CASE("the online interface reveals boxes one at a time") {
  std::vector<Box> boxes{Box::cube({0, 0}, 1), Box::cube({Rational(1, 2), 0}, 1), Box::cube({2, 0}, 1)};
  RandomSource rng(1);
  OnlinePolicy online(NaiveGreedy{}, rng, boxes);
  CHECK(online.offer_next());
  CHECK_FALSE(online.offer_next());
  CHECK(online.offer_next());
  CHECK(online.trace().solution_size == 2);
  CHECK_THROWS(online.offer_next());
}
