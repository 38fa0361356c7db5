#include "boxmis/graph.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace boxmis {

namespace {

void check_size(std::size_t n) {
  if (n > OrderedGraph::max_vertices)
    throw std::invalid_argument("graph has " + std::to_string(n) + " vertices; at most 63 supported");
}

}  // namespace

OrderedGraph::OrderedGraph(std::size_t n) : adj_((check_size(n), n), 0) {}

OrderedGraph::OrderedGraph(std::size_t n, std::vector<std::uint64_t> adjacency)
    : adj_(std::move(adjacency)) {
  check_size(n);
  if (adj_.size() != n) throw std::invalid_argument("adjacency list length does not match n");
  std::uint64_t all = all_vertices();
  for (std::size_t i = 0; i < n; ++i) {
    if (adj_[i] & ~all) throw std::invalid_argument("adjacency mask references a missing vertex");
    if (adj_[i] >> i & 1) throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if ((adj_[i] >> j & 1) != (adj_[j] >> i & 1))
        throw std::invalid_argument("adjacency is not symmetric");
    }
  }
}

std::size_t edge_slot_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

std::size_t edge_bit(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  if (i == j || j >= n) throw std::out_of_range("edge_bit: bad vertex pair");
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

OrderedGraph OrderedGraph::from_edge_mask(std::size_t n, std::uint64_t mask) {
  if (n > max_mask_vertices) throw std::invalid_argument("edge masks support at most 11 vertices");
  std::size_t slots = edge_slot_count(n);
  if (slots < 64 && (mask >> slots) != 0) throw std::invalid_argument("edge mask has bits beyond the slot count");
  OrderedGraph g(n);
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++bit) {
      if (mask >> bit & 1) g.add_edge(i, j);
    }
  }
  return g;
}

std::uint64_t OrderedGraph::edge_mask() const {
  std::size_t n = size();
  if (n > max_mask_vertices) throw std::logic_error("edge_mask: graph too large for a 64-bit mask");
  std::uint64_t mask = 0;
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++bit) {
      if (adj_[i] >> j & 1) mask |= std::uint64_t{1} << bit;
    }
  }
  return mask;
}

std::uint64_t OrderedGraph::all_vertices() const {
  return size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
}

bool OrderedGraph::has_edge(std::size_t i, std::size_t j) const { return adj_.at(i) >> j & 1; }

void OrderedGraph::add_edge(std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
  if (i >= size() || j >= size()) throw std::out_of_range("add_edge: vertex out of range");
  adj_[i] |= std::uint64_t{1} << j;
  adj_[j] |= std::uint64_t{1} << i;
}

std::size_t OrderedGraph::degree(std::size_t v) const { return std::popcount(adj_.at(v)); }

std::size_t OrderedGraph::edge_count() const {
  std::size_t twice = 0;
  for (auto a : adj_) twice += std::popcount(a);
  return twice / 2;
}

std::vector<std::size_t> OrderedGraph::degree_sequence() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size(); ++v) out.push_back(degree(v));
  return out;
}

bool is_independent(const OrderedGraph& g, std::uint64_t set) {
  for (std::size_t v = 0; v < g.size(); ++v) {
    if ((set >> v & 1) && (g.adjacency(v) & set)) return false;
  }
  return true;
}

std::string to_hex(std::uint64_t value) {
  std::ostringstream out;
  out << "0x" << std::hex << value;
  return out.str();
}

std::string write_graph(const OrderedGraph& g) {
  std::ostringstream out;
  out << "n=" << g.size() << "\n";
  for (auto a : g.adjacency()) out << to_hex(a) << "\n";
  return out.str();
}

OrderedGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<std::uint64_t> adj;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    if (!have_header) {
      if (token.rfind("n=", 0) != 0) throw std::invalid_argument("graph file must start with n=<n>");
      n = std::stoul(token.substr(2));
      have_header = true;
      continue;
    }
    adj.push_back(std::stoull(token, nullptr, 16));
  }
  if (!have_header) throw std::invalid_argument("graph file is empty");
  return OrderedGraph(n, std::move(adj));
}

OrderedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  return read_graph(in);
}

}  // namespace boxmis
