#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "boxmis/adversaries.hpp"
#include "boxmis/expectation.hpp"
#include "support.hpp"

using namespace boxmis;
using namespace boxmis::adversaries;
using geometry::OrderClass;

namespace {

Rational ratio_of(const PlayResult& r) {
  return Rational(static_cast<long long>(r.opt_size)) / Rational(static_cast<long long>(r.trace.solution_size));
}

}  // namespace

TEST_CASE("adaptive packing against naive greedy, unit cubes") {
  RandomSource rng(41);
  auto arbitrary = adaptive_pack_play(AdaptivePackSpec::standard(geometry::UnitCube{}, OrderClass::Arbitrary, 2, 50),
                                      policies::NaiveGreedy{}, rng);
  CHECK(ratio_of(arbitrary) == 4);
  auto nondom = adaptive_pack_play(AdaptivePackSpec::standard(geometry::UnitCube{}, OrderClass::NonDominated, 2, 50),
                                   policies::NaiveGreedy{}, rng);
  CHECK(ratio_of(nondom) == 3);
  auto line = adaptive_pack_play(AdaptivePackSpec::standard(geometry::UnitCube{}, OrderClass::NonDominated, 1, 50),
                                 policies::NaiveGreedy{}, rng);
  CHECK(ratio_of(line) == 1);
}

TEST_CASE("emitted instances are valid and opt is the exact MIS") {
  RandomSource rng(42);
  for (auto order : {OrderClass::Arbitrary, OrderClass::NonDominated}) {
    for (std::size_t d = 1; d <= 3; ++d) {
      auto r = adaptive_pack_play(AdaptivePackSpec::standard(geometry::UnitCube{}, order, d, 3), policies::NaiveGreedy{}, rng);
      const auto& arr = r.instance.arrangement;
      CHECK(geometry::validate_shape(arr).ok);
      CHECK(geometry::validate_order(arr).ok);
      CHECK(r.opt_size == expectation::mis_size(geometry::intersection_graph(arr.boxes)).size);
    }
  }
}

TEST_CASE("n - 1 packs for unit-volume boxes and cubes") {
  RandomSource rng(43);
  for (geometry::ShapeClass shape : {geometry::ShapeClass{geometry::UnitVolume{}}, geometry::ShapeClass{geometry::ArbitraryCube{}},
                                     geometry::ShapeClass{geometry::ArbitraryRect{}}}) {
    auto r = adaptive_pack_play(AdaptivePackSpec::standard(shape, OrderClass::NonDominated, 2, 4, 10), policies::NaiveGreedy{}, rng);
    CHECK(ratio_of(r) == 9);
  }
}

TEST_CASE("randomized policies are refused by the adaptive adversary") {
  RandomSource rng(44);
  CHECK_THROWS(adaptive_pack_play(AdaptivePackSpec::standard(geometry::UnitCube{}, OrderClass::Arbitrary, 2, 2),
                                  policies::GreedyP{Rational(1, 2)}, rng));
}

TEST_CASE("marking instances follow the threaded pattern") {
  RandomSource rng(45);
  struct Case {
    geometry::ShapeClass shape;
    OrderClass order;
    std::size_t levels;
  };
  for (const auto& c : {Case{geometry::UnitCube{}, OrderClass::NonDominated, 2}, Case{geometry::UnitCube{}, OrderClass::Arbitrary, 3},
                        Case{geometry::SigmaBoundedCube{8}, OrderClass::Arbitrary, 3},
                        Case{geometry::UnitVolume{}, OrderClass::NonDominated, 6},
                        Case{geometry::ArbitraryCube{}, OrderClass::NonDominated, 5}}) {
    MarkingSpec spec;
    spec.shape = c.shape;
    spec.order = c.order;
    spec.levels = c.levels;
    spec.blocks = 3;
    for (int rep = 0; rep < 4; ++rep) {
      auto inst = marking_generate(spec, rng);
      CHECK(inst.arrangement.boxes.size() == 2 * c.levels * 3);
      CHECK(inst.opt_size == (c.levels + 1) * 3);
      CHECK(inst.opt_size == expectation::mis_size(geometry::intersection_graph(inst.arrangement.boxes)).size);
      CHECK_NOTHROW(verify_marking_instance(spec, inst));
    }
  }
}

TEST_CASE("unsupported marking depths are rejected") {
  MarkingSpec spec;
  spec.shape = geometry::UnitCube{};
  spec.order = OrderClass::NonDominated;
  spec.levels = 3;
  CHECK_THROWS(check_marking_supported(spec));
  spec.order = OrderClass::Arbitrary;
  spec.levels = 4;
  CHECK_THROWS(check_marking_supported(spec));
}

TEST_CASE("sampler draws the same instance as the generator") {
  MarkingSpec spec;
  spec.order = OrderClass::Arbitrary;
  spec.levels = 3;
  spec.blocks = 5;
  spec.trailing_decoys = 2;
  MarkingSampler sampler(spec);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomSource a(seed), b(seed);
    auto inst = marking_generate(spec, a);
    auto scaled = sampler.sample(b);
    auto direct = policies::scale_to_integers(inst.arrangement.boxes);
    REQUIRE(direct);
    CHECK(scaled.size() == inst.arrangement.boxes.size());
    CHECK(sampler.opt_size() == inst.opt_size);
    RandomSource c(99), d(99);
    CHECK(policies::run_policy(policies::GreedyP{Rational(1, 2)}, scaled, c).accepted_indices() ==
          policies::run_policy(policies::GreedyP{Rational(1, 2)}, inst.arrangement.boxes, d).accepted_indices());
  }
}

TEST_CASE("dominating chains") {
  for (std::size_t d = 1; d <= 3; ++d) {
    auto disjoint = dominating_chain(7, d, ChainStyle::Disjoint);
    CHECK(geometry::validate_order(disjoint).ok);
    CHECK(expectation::mis_size(geometry::intersection_graph(disjoint.boxes)).size == 7);
    auto overlapping = dominating_chain(7, d, ChainStyle::Overlapping);
    CHECK(geometry::validate_order(overlapping).ok);
  }
  RandomSource rng(46);
  for (int t = 0; t < 50; ++t) {
    auto a = random_dominating_arrangement(1 + rng.uniform_below(12), 1 + rng.uniform_below(3), rng);
    CHECK(geometry::validate_order(a).ok);
    CHECK(geometry::validate_shape(a).ok);
  }
}
