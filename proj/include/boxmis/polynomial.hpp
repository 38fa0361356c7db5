#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "boxmis/rational.hpp"

namespace boxmis {

/// Dense univariate polynomial, coefficients in ascending degree.
/// The zero polynomial has no coefficients; trailing zeros are always trimmed.
template <class Coeff = BigInt>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Coeff> coeffs) : coeffs_(coeffs) { trim(); }
  explicit Polynomial(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial constant(Coeff c) { return Polynomial(std::vector<Coeff>{std::move(c)}); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Coeff>& coefficients() const { return coeffs_; }
  Coeff coefficient(std::size_t t) const { return t < coeffs_.size() ? coeffs_[t] : Coeff(0); }

  Rational evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(BigInt(*it));
    return acc;
  }

  double evaluate(double x) const {
    double acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + static_cast<double>(*it);
    return acc;
  }

  Polynomial derivative() const {
    std::vector<Coeff> out;
    for (std::size_t t = 1; t < coeffs_.size(); ++t) out.push_back(coeffs_[t] * Coeff(static_cast<long long>(t)));
    return Polynomial(std::move(out));
  }

  Polynomial& operator+=(const Polynomial& other) {
    if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Coeff(0));
    for (std::size_t t = 0; t < other.coeffs_.size(); ++t) coeffs_[t] += other.coeffs_[t];
    trim();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& other) {
    if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Coeff(0));
    for (std::size_t t = 0; t < other.coeffs_.size(); ++t) coeffs_[t] -= other.coeffs_[t];
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> out(a.coeffs_.size() + b.coeffs_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
  }

  bool operator==(const Polynomial&) const = default;

  template <class Other>
  Polynomial<Other> cast() const {
    std::vector<Other> out;
    for (const auto& c : coeffs_) out.push_back(Other(c));
    return Polynomial<Other>(std::move(out));
  }

  /// Space-separated coefficients `c0 c1 ...`; the zero polynomial prints as `0`.
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      if (t) out += ' ';
      out += BigInt(coeffs_[t]).str();
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == Coeff(0)) coeffs_.pop_back();
  }

  std::vector<Coeff> coeffs_;
};

using ExpectationPolynomial = Polynomial<BigInt>;

/// Parses `c0 c1 ...` (integers, whitespace separated).
ExpectationPolynomial parse_polynomial(const std::string& text);

}  // namespace boxmis
