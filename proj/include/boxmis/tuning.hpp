#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boxmis/geometry.hpp"
#include "boxmis/rational.hpp"

namespace boxmis::tuning {

enum class Adversary { Adaptive, Oblivious };

std::string adversary_tag(Adversary adversary);
Adversary parse_adversary(const std::string& tag);

struct BoundQuery {
  geometry::ShapeKind shape = geometry::ShapeKind::UnitCube;
  geometry::OrderClass order = geometry::OrderClass::NonDominated;
  Adversary adversary = Adversary::Adaptive;
  std::size_t d = 2;
  std::optional<std::size_t> n;
  std::optional<Rational> sigma;
};

struct BoundEntry {
  Rational lower;
  Rational upper;
  bool tight = false;
  std::string lower_formula;
  std::string upper_formula;
};

/// Best known competitive-ratio interval for the query.
/// Throws std::invalid_argument for inconsistent queries (sigma on a non-sigma shape,
/// missing n for the n - 1 classes, sigma <= 1 with an oblivious adversary, ...).
BoundEntry bounds_table(const BoundQuery& query);

/// Ratio guarantee of the random-classification policy with k classes:
/// (ceil(b)+1)^d k for arbitrary order, ((ceil(b)+1)^d - ceil(b)^d) k for nondominated,
/// where b = sigma^(1/k) and ceil(b) is found by exact integer powers.
BigInt sigma_upper_bound(std::size_t d, const Rational& sigma, unsigned k, geometry::OrderClass order);

/// Principal branch of the Lambert W function. Throws std::domain_error for x < -1/e.
double lambert_w0(double x);

/// 1 / (W0(2 e^(-1/d) / d) + 1/d): the continuous optimum of k divided by ln sigma.
double k_star_multiplier(std::size_t d);

/// Continuous minimizer of (sigma^(1/k) + 2)^d k. Throws std::domain_error for sigma <= 1.
double k_star(std::size_t d, const Rational& sigma);

/// d/dk of (sigma^(1/k) + 2)^d k.
double dk_derivative(std::size_t d, const Rational& sigma, double k);

struct KTuning {
  std::size_t d = 0;
  Rational sigma;
  double k_star = 0;
  unsigned k_chosen = 1;
  BigInt bound_at_k;
  /// Every evaluated (k, bound) pair, ascending in k.
  std::vector<std::pair<unsigned, BigInt>> candidates;
};

/// Evaluates the bound at k = 1..ceil(log2 sigma), floor(k*) and ceil(k*); ties go to the smaller k.
KTuning choose_k(std::size_t d, const Rational& sigma,
                 geometry::OrderClass order = geometry::OrderClass::Arbitrary);

/// (ceil(log2 sigma) + 1) / 2.
Rational sigma_lower_bound(const Rational& sigma);

}  // namespace boxmis::tuning
