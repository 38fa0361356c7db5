#include "boxmis/tuning.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace boxmis::tuning {

using geometry::OrderClass;
using geometry::ShapeKind;

std::string adversary_tag(Adversary adversary) {
  return adversary == Adversary::Adaptive ? "adaptive" : "oblivious";
}

Adversary parse_adversary(const std::string& tag) {
  if (tag == "adaptive") return Adversary::Adaptive;
  if (tag == "oblivious") return Adversary::Oblivious;
  throw std::invalid_argument("unknown adversary '" + tag + "'");
}

namespace {

BigInt ipow(const BigInt& base, std::size_t exp) { return pow(base, static_cast<unsigned>(exp)); }

BoundEntry entry(Rational lower, Rational upper, std::string lower_formula, std::string upper_formula) {
  if (lower > upper) throw std::logic_error("bound interval is empty");
  BoundEntry e{std::move(lower), std::move(upper), false, std::move(lower_formula), std::move(upper_formula)};
  e.tight = e.lower == e.upper;
  return e;
}

BoundEntry exact(const Rational& value, const std::string& formula) { return entry(value, value, formula, formula); }

}  // namespace

BoundEntry bounds_table(const BoundQuery& q) {
  if (q.d == 0) throw std::invalid_argument("dimension must be positive");
  const bool sigma_shape = q.shape == ShapeKind::SigmaBoundedCube;
  if (sigma_shape != q.sigma.has_value())
    throw std::invalid_argument(sigma_shape ? "sigma-bounded cubes need sigma" : "sigma only applies to sigma-bounded cubes");
  if (q.sigma && *q.sigma < 1) throw std::invalid_argument("sigma must be at least 1");

  if (q.order == OrderClass::Dominating) return exact(1, "1");

  const bool nd = q.order == OrderClass::NonDominated;
  const bool adaptive = q.adversary == Adversary::Adaptive;
  const BigInt two_d = ipow(BigInt(2), q.d);
  switch (q.shape) {
    case ShapeKind::UnitCube: {
      const Rational upper(nd ? two_d - 1 : two_d);
      const std::string upper_f = nd ? "2^d - 1" : "2^d";
      if (adaptive) return exact(upper, upper_f);
      // The marking lower bounds need a second axis; on the line only the trivial bound holds.
      if (q.d == 1) return entry(1, upper, "1", upper_f);
      return entry(nd ? Rational(12, 7) : Rational(32, 15), upper, nd ? "12/7" : "32/15", upper_f);
    }
    case ShapeKind::SigmaBoundedCube: {
      const BigInt c = ceil(*q.sigma);
      if (adaptive) {
        const BigInt full = ipow(c + 1, q.d);
        return nd ? exact(Rational(full - ipow(c, q.d)), "(ceil(sigma)+1)^d - ceil(sigma)^d")
                  : exact(Rational(full), "(ceil(sigma)+1)^d");
      }
      if (*q.sigma <= 1) throw std::invalid_argument("the oblivious sigma-bounded row needs sigma > 1");
      const BigInt l = ceil_log2(*q.sigma);
      const BigInt three = ipow(BigInt(3), q.d) * l;
      return nd ? entry(sigma_lower_bound(*q.sigma), Rational(three - two_d * l), "(ceil(log2 sigma)+1)/2",
                        "3^d ceil(log2 sigma) - 2^d ceil(log2 sigma)")
                : entry(sigma_lower_bound(*q.sigma), Rational(three), "(ceil(log2 sigma)+1)/2",
                        "3^d ceil(log2 sigma)");
    }
    case ShapeKind::UnitVolume:
    case ShapeKind::ArbitraryCube:
    case ShapeKind::ArbitraryRect: {
      if (!q.n || *q.n < 2) throw std::invalid_argument("this shape class needs an instance size n >= 2");
      const Rational upper(*q.n - 1);
      if (adaptive) return exact(upper, "n - 1");
      return entry(Rational(*q.n / 2) / 2 + Rational(1, 2), upper, "floor(n/2)/2 + 1/2", "n - 1");
    }
  }
  throw std::logic_error("unknown shape");
}

BigInt sigma_upper_bound(std::size_t d, const Rational& sigma, unsigned k, OrderClass order) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (sigma < 1) throw std::invalid_argument("sigma must be at least 1");
  const BigInt c = ceil_kth_root(sigma, k);
  switch (order) {
    case OrderClass::Arbitrary: return ipow(c + 1, d) * k;
    case OrderClass::NonDominated: return (ipow(c + 1, d) - ipow(c, d)) * k;
    case OrderClass::Dominating: break;
  }
  throw std::invalid_argument("the classification bound is stated for nondominated and arbitrary order");
}

double lambert_w0(double x) {
  const double branch = -std::exp(-1.0);
  if (std::isnan(x) || x < branch) throw std::domain_error("lambert_w0 is defined for x >= -1/e");
  if (x == 0) return 0;
  double w;
  if (x >= 0) {
    w = std::log1p(x);
  } else {
    // Series about the branch point in p = sqrt(2 (e x + 1)).
    const double p = std::sqrt(std::max(0.0, 2 * (std::exp(1.0) * x + 1)));
    if (p == 0) return -1;
    w = -1 + p - p * p / 3 + 11.0 / 72.0 * p * p * p;
  }
  for (int iter = 0; iter < 100; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double denom = ew * (w + 1) - (w + 2) * f / (2 * w + 2);
    if (denom == 0 || !std::isfinite(denom)) break;
    const double next = w - f / denom;
    if (std::abs(next - w) <= 1e-16 * (1 + std::abs(next))) return next;
    w = next;
  }
  return w;
}

double k_star_multiplier(std::size_t d) {
  if (d == 0) throw std::invalid_argument("dimension must be positive");
  const double dd = static_cast<double>(d);
  return 1.0 / (lambert_w0(2 * std::exp(-1.0 / dd) / dd) + 1.0 / dd);
}

double k_star(std::size_t d, const Rational& sigma) {
  if (sigma <= 1) throw std::domain_error("k_star needs sigma > 1");
  return std::log(to_double(sigma)) * k_star_multiplier(d);
}

double dk_derivative(std::size_t d, const Rational& sigma, double k) {
  if (k <= 0) throw std::domain_error("dk_derivative needs k > 0");
  const double ls = std::log(to_double(sigma));
  const double b = std::exp(ls / k);
  const double dd = static_cast<double>(d);
  return std::pow(b + 2, dd - 1) * (2 + b * (1 - dd * ls / k));
}

KTuning choose_k(std::size_t d, const Rational& sigma, OrderClass order) {
  if (sigma <= 1) throw std::domain_error("choose_k needs sigma > 1");
  KTuning out;
  out.d = d;
  out.sigma = sigma;
  out.k_star = k_star(d, sigma);
  std::map<unsigned, BigInt> table;
  const unsigned log_top = ceil_log2(sigma);
  for (unsigned k = 1; k <= log_top; ++k) table.emplace(k, sigma_upper_bound(d, sigma, k, order));
  for (double kk : {std::floor(out.k_star), std::ceil(out.k_star)}) {
    const auto k = static_cast<unsigned>(std::max(1.0, kk));
    table.emplace(k, sigma_upper_bound(d, sigma, k, order));
  }
  bool first = true;
  for (const auto& [k, bound] : table) {
    out.candidates.emplace_back(k, bound);
    if (first || bound < out.bound_at_k) {
      out.k_chosen = k;
      out.bound_at_k = bound;
      first = false;
    }
  }
  return out;
}

Rational sigma_lower_bound(const Rational& sigma) {
  if (sigma < 1) throw std::invalid_argument("sigma must be at least 1");
  return Rational(ceil_log2(sigma) + 1, 2);
}

}  // namespace boxmis::tuning
