#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "boxmis/expectation.hpp"
#include "boxmis/search.hpp"
#include "support.hpp"

using namespace boxmis;
using namespace boxmis::search;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("boxmis_" + name + "_" + std::to_string(::getpid()));
}

// Minimax over the grid with the generic rational pipeline.
std::pair<Rational, Rational> reference_minimax(std::size_t n, const std::vector<Rational>& grid) {
  std::vector<std::pair<ExpectationPolynomial, std::size_t>> graphs;
  for (auto it = enumerate_ordered_graphs(n).begin(); it != enumerate_ordered_graphs(n).end(); ++it) {
    auto g = *it;
    graphs.emplace_back(expectation::greedy_p_polynomial(g), testing::brute_force_mis(g));
  }
  Rational best_p = -1, best_ratio = -1;
  for (const auto& p : grid) {
    if (p == 0) continue;
    Rational worst = 0;
    for (const auto& [poly, opt] : graphs) worst = std::max(worst, Rational(static_cast<long long>(opt)) / poly.evaluate(p));
    if (best_ratio < 0 || worst < best_ratio) best_ratio = worst, best_p = p;
  }
  return {best_p, best_ratio};
}

}  // namespace

TEST_CASE("enumeration covers 2^(n(n-1)/2) graphs") {
  CHECK(enumerate_ordered_graphs(1).size() == 1);
  CHECK(enumerate_ordered_graphs(4).size() == 64);
  CHECK(enumerate_ordered_graphs(6).size() == (std::uint64_t{1} << 15));
  CHECK_THROWS(enumerate_ordered_graphs(9));
  for (std::uint64_t m = 0; m < 64; ++m) CHECK(OrderedGraph::from_edge_mask(4, m).edge_mask() == m);
}

TEST_CASE("search agrees with the rational reference on a coarse grid") {
  const auto grid = uniform_grid(Rational(1, 20));
  for (std::size_t n = 1; n <= 5; ++n) {
    SearchConfig cfg;
    cfg.n = n;
    cfg.p_grid = grid;
    auto r = minimax_search(cfg);
    REQUIRE(r.best_index);
    auto [p, ratio] = reference_minimax(n, grid);
    CHECK(r.per_p[*r.best_index].p == p);
    CHECK(r.per_p[*r.best_index].worst->ratio == ratio);
  }
}

TEST_CASE("results are identical across worker counts") {
  SearchConfig cfg;
  cfg.n = 6;
  cfg.p_grid = uniform_grid(Rational(1, 10));
  std::string reference;
  for (std::size_t w : {1, 4, 8}) {
    cfg.workers = w;
    cfg.checkpoint_interval = 1000;
    auto csv = to_csv(minimax_search(cfg));
    if (reference.empty()) reference = csv;
    CHECK(csv == reference);
  }
}

TEST_CASE("checkpoints resume to the same answer and reject corruption") {
  const auto path = temp_path("ckpt");
  std::filesystem::remove(path);
  SearchConfig cfg;
  cfg.n = 6;
  cfg.p_grid = {Rational(1, 2), Rational(3, 5)};
  cfg.checkpoint_interval = 4096;
  const auto fresh = to_csv(minimax_search(cfg));

  cfg.checkpoint = path;
  int calls = 0;
  cfg.progress = [&](std::uint64_t done, std::uint64_t) {
    if (++calls == 3) throw std::runtime_error("interrupted at " + std::to_string(done));
  };
  CHECK_THROWS_AS(minimax_search(cfg), std::runtime_error);
  REQUIRE(std::filesystem::exists(path));

  cfg.progress = nullptr;
  auto resumed = minimax_search(cfg);
  CHECK(resumed.resumed);
  CHECK(to_csv(resumed) == fresh);

  {
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    auto pos = text.find("p 1/2 ");
    REQUIRE(pos != std::string::npos);
    text[pos + 6] = text[pos + 6] == '1' ? '2' : '1';
    std::ofstream out(path);
    out << text;
  }
  CHECK_THROWS(minimax_search(cfg));
  std::filesystem::remove(path);
}

TEST_CASE("config validation") {
  SearchConfig cfg;
  cfg.n = 0;
  CHECK_THROWS(validate_config(cfg));
  cfg.n = 3;
  cfg.p_grid = {Rational(3, 2)};
  CHECK_THROWS(validate_config(cfg));
  cfg.p_grid = {Rational(1, 2), Rational(1, 4)};
  CHECK_THROWS(validate_config(cfg));
  cfg.p_grid = {Rational(1, 2)};
  cfg.workers = 0;
  CHECK_THROWS(validate_config(cfg));
}

TEST_CASE("p = 0 has no finite worst case") {
  SearchConfig cfg;
  cfg.n = 2;
  cfg.p_grid = {Rational(0), Rational(1)};
  auto r = minimax_search(cfg);
  CHECK_FALSE(r.per_p[0].worst);
  CHECK(*r.best_index == 1);
  CHECK(to_csv(r).find("inf") != std::string::npos);
}

TEST_CASE("worst graph report at n = 3") {
  SearchConfig cfg;
  cfg.n = 3;
  auto r = minimax_search(cfg);
  auto rep = worst_graph_report(r, Rational(3, 4));
  CHECK(rep.polynomial == ExpectationPolynomial{0, 3, -2});
  CHECK(rep.refinement.p_star == Rational(3, 4));
  CHECK(rep.confirmed);
}

TEST_CASE("realizability check compares intersection graphs") {
  auto fixture = testing::load("unit_squares_n3.arr");
  auto g = geometry::intersection_graph(fixture.boxes);
  CHECK(realizability_check(g, fixture));
  CHECK_FALSE(realizability_check(OrderedGraph(3), fixture));
  CHECK_THROWS(realizability_check(OrderedGraph(4), fixture));
}
