#include "boxmis/arrangement_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace boxmis::geometry {

namespace {

std::string strip_comment(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  return line;
}

}  // namespace

Arrangement read_arrangement(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(strip_comment(line));
    std::string token;
    while (fields >> token) {
      auto eq = token.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key=value header, got '" +
                                    token + "'");
      header[token.substr(0, eq)] = token.substr(eq + 1);
    }
  }
  for (const char* key : {"dim", "shape", "order", "n"}) {
    if (!header.count(key)) throw std::invalid_argument(std::string("arrangement header is missing '") + key + "'");
  }
  Arrangement out;
  out.dim = std::stoul(header["dim"]);
  if (out.dim == 0) throw std::invalid_argument("dim must be positive");
  out.shape = parse_shape(header["shape"]);
  out.order = parse_order(header["order"]);
  std::size_t n = std::stoul(header["n"]);

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(strip_comment(line));
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() != 2 * out.dim)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " + std::to_string(2 * out.dim) +
                                  " coordinates, got " + std::to_string(tokens.size()));
    std::vector<Rational> lo, hi;
    for (std::size_t a = 0; a < out.dim; ++a) {
      lo.push_back(parse_rational(tokens[2 * a]));
      hi.push_back(parse_rational(tokens[2 * a + 1]));
    }
    try {
      out.boxes.emplace_back(std::move(lo), std::move(hi));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (out.boxes.size() != n)
    throw std::invalid_argument("header says n=" + std::to_string(n) + " but " + std::to_string(out.boxes.size()) +
                                " boxes were read");
  return out;
}

Arrangement read_arrangement_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open arrangement file " + path);
  return read_arrangement(in);
}

std::string write_arrangement(const Arrangement& arrangement) {
  std::ostringstream out;
  out << "dim=" << arrangement.dim << " shape=" << shape_tag(arrangement.shape)
      << " order=" << order_tag(arrangement.order) << " n=" << arrangement.boxes.size() << "\n";
  for (const auto& box : arrangement.boxes) {
    for (std::size_t a = 0; a < box.dim(); ++a) {
      if (a) out << ' ';
      out << to_string(box.lower(a)) << ' ' << to_string(box.upper(a));
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace boxmis::geometry
