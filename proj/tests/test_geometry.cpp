#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "boxmis/adversaries.hpp"
#include "boxmis/geometry.hpp"
#include "support.hpp"

using namespace boxmis;
using namespace boxmis::geometry;

namespace {

Box rect(Rational x0, Rational x1, Rational y0, Rational y1) { return Box({x0, y0}, {x1, y1}); }

Box random_integer_box(RandomSource& rng, std::size_t d, std::uint64_t span) {
  std::vector<Rational> lo, hi;
  for (std::size_t a = 0; a < d; ++a) {
    auto l = rng.uniform_below(span);
    auto w = rng.uniform_below(span - l);
    lo.emplace_back(static_cast<long long>(l));
    hi.emplace_back(static_cast<long long>(l + w));
  }
  return Box(lo, hi);
}

// Integer-cornered closed boxes meet iff they share a lattice point.
bool lattice_oracle(const Box& a, const Box& b, std::uint64_t span) {
  const std::size_t d = a.dim();
  std::vector<long long> pt(d, 0);
  while (true) {
    bool inside = true;
    for (std::size_t k = 0; k < d && inside; ++k) {
      Rational x(pt[k]);
      inside = a.lower(k) <= x && x <= a.upper(k) && b.lower(k) <= x && x <= b.upper(k);
    }
    if (inside) return true;
    std::size_t k = 0;
    while (k < d && ++pt[k] >= static_cast<long long>(span)) pt[k++] = 0;
    if (k == d) return false;
  }
}

}  // namespace

TEST_CASE("box construction rejects inverted or mismatched corners") {
  CHECK_THROWS_AS(Box({1}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(Box({0, 0}, {1}), std::invalid_argument);
  CHECK_NOTHROW(Box({0}, {0}));
  auto c = Box::cube({1, 2}, Rational(3, 2));
  CHECK(c.is_cube());
  CHECK(c.volume() == Rational(9, 4));
}

TEST_CASE("closed boxes touching on a face intersect") {
  CHECK(intersects(rect(0, 1, 0, 1), rect(1, 2, 0, 1)));
  CHECK(intersects(rect(0, 1, 0, 1), rect(1, 2, 1, 2)));
  CHECK_FALSE(intersects(rect(0, 1, 0, 1), rect(Rational(11, 10), 2, 0, 1)));
}

TEST_CASE("intersects agrees with the lattice oracle") {
  RandomSource rng(11);
  for (int t = 0; t < 3000; ++t) {
    const std::size_t d = 1 + rng.uniform_below(3);
    auto a = random_integer_box(rng, d, 6);
    auto b = random_integer_box(rng, d, 6);
    CHECK(intersects(a, b) == lattice_oracle(a, b, 6));
  }
}

TEST_CASE("predicate symmetry, reflexivity and translation invariance") {
  RandomSource rng(12);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t d = 1 + rng.uniform_below(3);
    auto a = random_integer_box(rng, d, 8);
    auto b = random_integer_box(rng, d, 8);
    std::vector<Rational> shift;
    for (std::size_t k = 0; k < d; ++k)
      shift.push_back(Rational(static_cast<long long>(rng.uniform_below(41)) - 20) / Rational(static_cast<long long>(1 + rng.uniform_below(7))));
    CHECK(intersects(a, a));
    CHECK(dominates(a, a));
    CHECK(intersects(a, b) == intersects(b, a));
    CHECK(intersects(a, b) == intersects(a.translated(shift), b.translated(shift)));
    CHECK(dominates(a, b) == dominates(a.translated(shift), b.translated(shift)));
  }
}

TEST_CASE("dominance compares upper vertices") {
  CHECK(dominates(rect(0, 2, 0, 2), rect(0, 1, 0, 1)));
  CHECK_FALSE(dominates(rect(0, 1, 0, 1), rect(0, 2, 0, 2)));
  CHECK_FALSE(dominates(rect(0, 2, 0, 1), rect(0, 1, 0, 2)));
}

TEST_CASE("shape classes") {
  const Box unit = rect(0, 1, 5, 6);
  const Box tall = rect(0, Rational(1, 2), 0, 2);
  const Box big = Box::cube({0, 0}, 3);
  CHECK(in_shape(unit, UnitCube{}));
  CHECK_FALSE(in_shape(tall, UnitCube{}));
  CHECK(in_shape(tall, UnitVolume{}));
  CHECK(in_shape(big, SigmaBoundedCube{3}));
  CHECK_FALSE(in_shape(big, SigmaBoundedCube{Rational(5, 2)}));
  CHECK(in_shape(big, ArbitraryCube{}));
  CHECK_FALSE(in_shape(rect(0, 0, 0, 0), ArbitraryCube{}));
  CHECK(in_shape(tall, ArbitraryRect{}));
  CHECK(shape_tag(parse_shape("sigma:5/2")) == "sigma:5/2");
  CHECK_THROWS(parse_shape("sigma:1/2"));
  CHECK_THROWS(parse_shape("circle"));
}

TEST_CASE("order validation reports the first offending pair") {
  std::vector<Box> boxes{rect(0, 2, 0, 2), rect(1, 3, 1, 3), rect(0, 1, 0, 1)};
  CHECK_FALSE(validate_order(boxes, OrderClass::NonDominated).ok);
  auto rep = validate_order(boxes, OrderClass::NonDominated);
  REQUIRE(rep.first_violation);
  CHECK(rep.first_violation->first == 0);
  CHECK(rep.first_violation->second == 2);
  std::vector<Box> chain{rect(0, 1, 0, 1), rect(1, 2, 1, 2), rect(1, 3, 0, 3)};
  CHECK(validate_order(chain, OrderClass::Dominating).ok);
  CHECK(validate_order(chain, OrderClass::NonDominated).ok);
  // Equal upper vertices dominate each other.
  std::vector<Box> twins{rect(0, 1, 0, 1), rect(Rational(1, 2), 1, 0, 1)};
  CHECK(validate_order(twins, OrderClass::Dominating).ok);
  CHECK_FALSE(validate_order(twins, OrderClass::NonDominated).ok);
  CHECK(validate_order(boxes, OrderClass::Arbitrary).ok);
}

TEST_CASE("arrangement text format round-trips") {
  Arrangement a{2, SigmaBoundedCube{Rational(5, 2)}, OrderClass::NonDominated,
                {Box::cube({0, 0}, 2), Box::cube({Rational(1, 3), 5}, 1)}};
  std::istringstream in(write_arrangement(a));
  auto b = read_arrangement(in);
  CHECK(b.dim == 2);
  CHECK(b.shape == a.shape);
  CHECK(b.order == a.order);
  CHECK(b.boxes == a.boxes);
  std::istringstream bad("dim=2 shape=unit order=arbitrary n=2\n0 1 0 1\n");
  CHECK_THROWS(read_arrangement(bad));
}

TEST_CASE("every fixture satisfies its declared class") {
  for (const char* name : {"unit_squares_n3.arr", "unit_squares_n4.arr", "unit_squares_n5.arr", "unit_squares_n6.arr",
                           "unit_area_n6.arr", "squares_n6.arr", "marking_unit_nondominated.arr",
                           "marking_unit_arbitrary.arr", "adaptive_unit_area.arr", "adaptive_cubes.arr",
                           "marking_unit_area.arr", "marking_cubes.arr"}) {
    CAPTURE(name);
    auto a = testing::load(name);
    CHECK(validate_shape(a).ok);
    CHECK(validate_order(a).ok);
  }
}

TEST_CASE("the six-box unit fixture needs arbitrary order") {
  auto a = testing::load("unit_squares_n6.arr");
  CHECK_FALSE(validate_order(a.boxes, OrderClass::NonDominated).ok);
}

TEST_CASE("marking fixtures show the threaded pattern") {
  // Level pairs (0,1), (2,3), (4,5); marked boxes 0 and 3.
  for (const char* name : {"marking_unit_area.arr", "marking_cubes.arr"}) {
    CAPTURE(name);
    auto g = intersection_graph(testing::load(name).boxes);
    OrderedGraph expected(6);
    expected.add_edge(0, 2);
    expected.add_edge(0, 3);
    expected.add_edge(0, 4);
    expected.add_edge(0, 5);
    expected.add_edge(3, 4);
    expected.add_edge(3, 5);
    CHECK(g == expected);
  }
}

TEST_CASE("adaptive fixtures: every later box crosses the first and no other") {
  for (const char* name : {"adaptive_unit_area.arr", "adaptive_cubes.arr"}) {
    CAPTURE(name);
    auto g = intersection_graph(testing::load(name).boxes);
    CHECK(g.degree(0) == 4);
    CHECK(g.edge_count() == 4);
  }
}

TEST_CASE("corner packing around a unit target") {
  using namespace boxmis::adversaries;
  const Box target({0}, {1});
  auto two = pack_intersecting_boxes(target, 2, Corners{});
  REQUIRE(two.size() == 2);
  CHECK(two[0] == Box({Rational(-9, 10)}, {Rational(1, 10)}));
  CHECK(two[1] == Box({Rational(9, 10)}, {Rational(19, 10)}));

  const Box square = Box::cube({0, 0}, 1);
  auto three = pack_intersecting_boxes(square, 3, Corners{true});
  REQUIRE(three.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(intersects(three[i], square));
    CHECK_FALSE(dominates(square, three[i]));
    for (std::size_t j = i + 1; j < 3; ++j) CHECK_FALSE(intersects(three[i], three[j]));
  }
  CHECK_THROWS(pack_intersecting_boxes(square, 5, Corners{}));
  CHECK_THROWS(pack_intersecting_boxes(square, 4, Corners{true}));
}

TEST_CASE("unit-grid packing reaches its capacity") {
  using namespace boxmis::adversaries;
  for (auto [d, sigma] : {std::pair<std::size_t, Rational>{1, 2}, {2, Rational(5, 2)}}) {
    for (bool nd : {false, true}) {
      UnitGrid variant{sigma, nd};
      auto cap = pack_capacity(variant, d);
      REQUIRE(cap);
      std::vector<Rational> lo(d, 0);
      auto target = Box::cube(lo, sigma);
      auto boxes = pack_intersecting_boxes(target, *cap, variant);
      CHECK(boxes.size() == *cap);
      for (std::size_t i = 0; i < boxes.size(); ++i) {
        CHECK(intersects(boxes[i], target));
        CHECK(in_shape(boxes[i], UnitCube{}));
        if (nd) CHECK_FALSE(dominates(target, boxes[i]));
        for (std::size_t j = i + 1; j < boxes.size(); ++j) CHECK_FALSE(intersects(boxes[i], boxes[j]));
      }
    }
  }
}
