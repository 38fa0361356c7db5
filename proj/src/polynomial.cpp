#include "boxmis/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace boxmis {

ExpectationPolynomial parse_polynomial(const std::string& text) {
  std::istringstream in(text);
  std::vector<BigInt> coeffs;
  for (std::string token; in >> token;) {
    const std::size_t start = token[0] == '-' || token[0] == '+' ? 1 : 0;
    if (start == token.size() || token.find_first_not_of("0123456789", start) != std::string::npos)
      throw std::invalid_argument("bad polynomial coefficient '" + token + "'");
    coeffs.emplace_back(token[0] == '+' ? token.substr(1) : token);
  }
  if (coeffs.empty()) throw std::invalid_argument("empty polynomial");
  return ExpectationPolynomial(std::move(coeffs));
}

}  // namespace boxmis
