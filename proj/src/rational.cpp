#include "boxmis/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace boxmis {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw std::invalid_argument("empty number in '" + std::string(whole) + "'");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("bad number '" + std::string(whole) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("bad number '" + std::string(whole) + "'");
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return BigInt(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part[0] == '-';
    if (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+')) int_part.remove_prefix(1);
    if (int_part.empty() && frac_part.empty())
      throw std::invalid_argument("bad number '" + std::string(text) + "'");
    for (char c : frac_part) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad number '" + std::string(text) + "'");
    }
    BigInt whole = int_part.empty() ? BigInt(0) : parse_integer(int_part, text);
    BigInt scale = pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
    BigInt frac = frac_part.empty() ? BigInt(0) : BigInt(std::string(frac_part));
    Rational value(whole * scale + frac, scale);
    return negative ? Rational(-value) : value;
  }
  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& value) {
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_string(const BigInt& value) { return value.str(); }

std::string to_decimal(const Rational& value, int digits) {
  BigInt scale = pow(BigInt(10), static_cast<unsigned>(digits));
  Rational scaled = abs(value) * scale;
  BigInt rounded = floor(scaled + Rational(1, 2));
  std::string body = rounded.str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits))
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  bool negative = value < 0 && rounded != 0;
  return negative ? "-" + body : body;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational pow(const Rational& base, unsigned exponent) {
  return Rational(pow(boost::multiprecision::numerator(base), exponent),
                  pow(boost::multiprecision::denominator(base), exponent));
}

BigInt pow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

BigInt floor(const Rational& value) {
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  BigInt q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r < 0) q -= 1;
  return q;
}

BigInt ceil(const Rational& value) { return -floor(Rational(-value)); }

std::optional<Rational> exact_root(const Rational& value, unsigned k) {
  if (k == 0) throw std::invalid_argument("exact_root: k must be positive");
  if (value < 0) return std::nullopt;
  auto root_of = [k](const BigInt& x) -> std::optional<BigInt> {
    mpz_t r;
    mpz_init(r);
    int exact = mpz_root(r, x.backend().data(), k);
    BigInt out(r);
    mpz_clear(r);
    if (!exact) return std::nullopt;
    return out;
  };
  auto num = root_of(boost::multiprecision::numerator(value));
  auto den = root_of(boost::multiprecision::denominator(value));
  if (!num || !den) return std::nullopt;
  return Rational(*num, *den);
}

BigInt ceil_kth_root(const Rational& value, unsigned k) {
  if (k == 0) throw std::invalid_argument("ceil_kth_root: k must be positive");
  // Start from floor(ceil(value)^(1/k)) and walk up; the walk is at most a step or two.
  BigInt target = ceil(value);
  if (target < 1) return BigInt(1);
  mpz_t r;
  mpz_init(r);
  mpz_root(r, target.backend().data(), k);
  BigInt c(r);
  mpz_clear(r);
  if (c < 1) c = 1;
  while (Rational(pow(c, k)) < value) c += 1;
  while (c > 1 && Rational(pow(BigInt(c - 1), k)) >= value) c -= 1;
  return c;
}

unsigned ceil_log2(const Rational& value) {
  unsigned t = 0;
  BigInt power = 1;
  while (Rational(power) < value) {
    power *= 2;
    ++t;
  }
  return t;
}

Rational simplest_between(const Rational& lo_in, const Rational& hi_in) {
  if (hi_in < lo_in) return simplest_between(hi_in, lo_in);
  if (lo_in <= 0 && hi_in >= 0) return Rational(0);
  if (hi_in < 0) return -simplest_between(Rational(-hi_in), Rational(-lo_in));
  // Continued-fraction descent for 0 < lo <= hi.
  Rational lo = lo_in, hi = hi_in;
  BigInt fl = floor(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  Rational rest = simplest_between(Rational(1) / (hi - fl), Rational(1) / (lo - fl));
  return Rational(fl) + Rational(1) / rest;
}

}  // namespace boxmis
