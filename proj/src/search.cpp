#include "boxmis/search.hpp"

#include <array>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "boxmis/digest.hpp"

namespace boxmis::search {

OrderedGraphRange::OrderedGraphRange(std::size_t n) : n_(n), count_(std::uint64_t{1} << edge_slot_count(n)) {}

OrderedGraphRange enumerate_ordered_graphs(std::size_t n) {
  if (n < 1 || n > max_search_vertices) throw std::invalid_argument("graph enumeration supports 1 <= n <= 8");
  return OrderedGraphRange(n);
}

std::vector<Rational> uniform_grid(const Rational& step) {
  if (step <= 0 || step > 1) throw std::invalid_argument("grid step must lie in (0, 1]");
  Rational count = Rational(1) / step;
  if (boost::multiprecision::denominator(count) != 1) throw std::invalid_argument("grid step must divide 1");
  std::vector<Rational> out;
  const auto k = boost::multiprecision::numerator(count).convert_to<std::size_t>();
  for (std::size_t i = 0; i <= k; ++i) out.push_back(Rational(i) * step);
  return out;
}

void validate_config(const SearchConfig& cfg) {
  if (cfg.n < 1 || cfg.n > max_search_vertices) throw std::invalid_argument("search supports 1 <= n <= 8");
  if (cfg.p_grid.empty()) throw std::invalid_argument("p grid is empty");
  for (std::size_t i = 0; i < cfg.p_grid.size(); ++i) {
    if (cfg.p_grid[i] < 0 || cfg.p_grid[i] > 1) throw std::invalid_argument("grid values must lie in [0, 1]");
    if (i > 0 && !(cfg.p_grid[i - 1] < cfg.p_grid[i]))
      throw std::invalid_argument("grid values must be distinct and sorted");
  }
  if (cfg.workers < 1) throw std::invalid_argument("worker count must be positive");
  if (cfg.checkpoint_interval < 1) throw std::invalid_argument("checkpoint interval must be positive");
}

namespace {

constexpr std::size_t kMaxCoeffs = max_search_vertices + 1;
using FastPoly = std::array<std::int64_t, kMaxCoeffs>;
using Wide = __int128;

struct Decoder {
  std::size_t n;
  std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs;

  explicit Decoder(std::size_t vertices) : n(vertices) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  void decode(std::uint64_t mask, std::uint64_t* adj) const {
    for (std::size_t v = 0; v < n; ++v) adj[v] = 0;
    for (std::size_t b = 0; mask; ++b, mask >>= 1) {
      if (mask & 1) {
        adj[pairs[b].first] |= std::uint64_t{1} << pairs[b].second;
        adj[pairs[b].second] |= std::uint64_t{1} << pairs[b].first;
      }
    }
  }
};

// Same recursion as expectation::greedy_p_polynomial, specialised to int64 arrays.
void fast_poly(const std::uint64_t* adj, std::size_t n, std::size_t i, std::uint64_t blocked, FastPoly& out) {
  while (i < n && (blocked >> i & 1)) ++i;
  out.fill(0);
  if (i == n) return;
  FastPoly take, skip;
  fast_poly(adj, n, i + 1, blocked | adj[i], take);
  fast_poly(adj, n, i + 1, blocked, skip);
  out[0] = skip[0];
  for (std::size_t t = 0; t + 1 < kMaxCoeffs; ++t) out[t + 1] = skip[t + 1] + take[t] - skip[t];
  out[1] += 1;
}

std::size_t fast_mis(const std::uint64_t* adj, std::uint64_t cand) {
  if (!cand) return 0;
  const auto v = static_cast<std::size_t>(std::countr_zero(cand));
  const std::uint64_t bit = std::uint64_t{1} << v;
  if (!(adj[v] & cand)) return 1 + fast_mis(adj, cand & ~bit);
  return std::max(fast_mis(adj, cand & ~bit), 1 + fast_mis(adj, cand & ~bit & ~adj[v]));
}

/// Per grid point: weights w_t = num^t den^(n-t), so E(p) den^n = sum c_t w_t.
struct GridPoint {
  Rational p;
  bool zero = false;
  bool fast = false;
  std::array<Wide, kMaxCoeffs> w{};
  std::vector<BigInt> w_big;
};

struct Slot {
  bool has = false;
  std::uint64_t mask = 0;
  std::size_t opt = 0;
  Wide e = 0;
  BigInt e_big;
};

std::vector<GridPoint> prepare_grid(const SearchConfig& cfg) {
  std::vector<GridPoint> out;
  const unsigned n = static_cast<unsigned>(cfg.n);
  const BigInt limit = BigInt(1) << 120;
  const BigInt coeff_bound = (pow(BigInt(3), n) + 1) * BigInt(n + 1);
  for (const auto& p : cfg.p_grid) {
    GridPoint g;
    g.p = p;
    g.zero = p == 0;
    BigInt num = boost::multiprecision::numerator(p);
    BigInt den = boost::multiprecision::denominator(p);
    for (unsigned t = 0; t <= n; ++t) g.w_big.push_back(pow(num, t) * pow(den, n - t));
    g.fast = pow(den, n) * coeff_bound < limit;
    if (g.fast) {
      for (unsigned t = 0; t <= n; ++t) {
        // Split into two 60-bit halves; the value is known to fit in 120 bits.
        BigInt hi = g.w_big[t] >> 60;
        BigInt lo = g.w_big[t] - (hi << 60);
        g.w[t] = (static_cast<Wide>(hi.convert_to<std::int64_t>()) << 60) + lo.convert_to<std::int64_t>();
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

/// True iff (opt_a, e_a) has a strictly larger ratio opt/e than (opt_b, e_b).
template <class E>
bool ratio_greater(std::size_t opt_a, const E& e_a, std::size_t opt_b, const E& e_b) {
  return E(static_cast<long long>(opt_a)) * e_b > E(static_cast<long long>(opt_b)) * e_a;
}

template <class E>
bool ratio_equal(std::size_t opt_a, const E& e_a, std::size_t opt_b, const E& e_b) {
  return E(static_cast<long long>(opt_a)) * e_b == E(static_cast<long long>(opt_b)) * e_a;
}

bool better(const GridPoint& g, const Slot& cand, const Slot& cur) {
  if (!cand.has) return false;
  if (!cur.has) return true;
  if (g.fast) {
    if (ratio_greater(cand.opt, cand.e, cur.opt, cur.e)) return true;
    return ratio_equal(cand.opt, cand.e, cur.opt, cur.e) && cand.mask < cur.mask;
  }
  if (ratio_greater(cand.opt, cand.e_big, cur.opt, cur.e_big)) return true;
  return ratio_equal(cand.opt, cand.e_big, cur.opt, cur.e_big) && cand.mask < cur.mask;
}

void score(const GridPoint& g, const FastPoly& poly, std::size_t n, Slot& slot) {
  if (g.fast) {
    Wide e = 0;
    for (std::size_t t = 0; t <= n; ++t) e += static_cast<Wide>(poly[t]) * g.w[t];
    slot.e = e;
  } else {
    BigInt e = 0;
    for (std::size_t t = 0; t <= n; ++t) e += BigInt(poly[t]) * g.w_big[t];
    slot.e_big = e;
  }
}

void scan_range(std::size_t n, const std::vector<GridPoint>& grid, std::uint64_t lo, std::uint64_t hi,
                std::vector<Slot>& best) {
  Decoder dec(n);
  std::array<std::uint64_t, max_search_vertices> adj{};
  FastPoly poly;
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  Slot cand;
  cand.has = true;
  for (std::uint64_t mask = lo; mask < hi; ++mask) {
    dec.decode(mask, adj.data());
    fast_poly(adj.data(), n, 0, 0, poly);
    cand.mask = mask;
    cand.opt = fast_mis(adj.data(), all);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (grid[k].zero) continue;
      score(grid[k], poly, n, cand);
      if (better(grid[k], cand, best[k])) best[k] = cand;
    }
  }
}

void rescore(std::size_t n, const GridPoint& g, Slot& slot) {
  Decoder dec(n);
  std::array<std::uint64_t, max_search_vertices> adj{};
  FastPoly poly;
  dec.decode(slot.mask, adj.data());
  fast_poly(adj.data(), n, 0, 0, poly);
  const std::size_t opt = fast_mis(adj.data(), (std::uint64_t{1} << n) - 1);
  if (opt != slot.opt) throw std::runtime_error("checkpoint entry disagrees with its graph");
  score(g, poly, n, slot);
}

std::string grid_digest(const std::vector<Rational>& grid) {
  std::string text;
  for (const auto& p : grid) text += to_string(p) + ",";
  return sha256_hex(text);
}

constexpr const char* kCheckpointHeader = "boxmis-checkpoint v1";

void write_checkpoint(const std::filesystem::path& path, const SearchConfig& cfg, std::uint64_t next,
                      const std::vector<Slot>& best) {
  std::ostringstream body;
  body << kCheckpointHeader << "\n";
  body << "n " << cfg.n << "\n";
  body << "grid " << grid_digest(cfg.p_grid) << "\n";
  body << "next " << next << "\n";
  for (std::size_t k = 0; k < best.size(); ++k) {
    body << "p " << to_string(cfg.p_grid[k]);
    if (best[k].has) {
      body << " " << best[k].mask << " " << best[k].opt << "\n";
    } else {
      body << " none\n";
    }
  }
  std::string text = body.str();
  text += "checksum " + sha256_hex(text) + "\n";
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::uint64_t read_checkpoint(const std::filesystem::path& path, const SearchConfig& cfg,
                              const std::vector<GridPoint>& grid, std::vector<Slot>& best) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  auto corrupt = [&](const std::string& why) {
    return std::runtime_error("corrupt checkpoint " + path.string() + ": " + why);
  };
  if (lines.size() < 5 || lines[0] != kCheckpointHeader) throw corrupt("bad header");
  std::string body;
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) body += lines[i] + "\n";
  if (lines.back() != "checksum " + sha256_hex(body)) throw corrupt("checksum mismatch");
  if (lines[1] != "n " + std::to_string(cfg.n)) throw corrupt("written for a different n");
  if (lines[2] != "grid " + grid_digest(cfg.p_grid)) throw corrupt("written for a different p grid");
  std::uint64_t next = 0;
  {
    std::istringstream f(lines[3]);
    std::string key;
    if (!(f >> key >> next) || key != "next") throw corrupt("missing next mask");
  }
  const std::uint64_t total = std::uint64_t{1} << edge_slot_count(cfg.n);
  if (next > total) throw corrupt("next mask out of range");
  if (lines.size() != 5 + cfg.p_grid.size()) throw corrupt("wrong number of grid entries");
  for (std::size_t k = 0; k < cfg.p_grid.size(); ++k) {
    std::istringstream f(lines[4 + k]);
    std::string key, p, first;
    if (!(f >> key >> p >> first) || key != "p" || p != to_string(cfg.p_grid[k])) throw corrupt("bad grid entry");
    Slot s;
    if (first != "none") {
      s.has = true;
      s.mask = std::stoull(first);
      if (!(f >> s.opt) || s.mask >= total) throw corrupt("bad grid entry");
      rescore(cfg.n, grid[k], s);
    }
    best[k] = s;
  }
  return next;
}

}  // namespace

SearchResult minimax_search(const SearchConfig& cfg) {
  validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  const auto grid = prepare_grid(cfg);
  const std::uint64_t total = std::uint64_t{1} << edge_slot_count(cfg.n);
  std::vector<Slot> best(grid.size());
  std::uint64_t next = 0;
  SearchResult result;
  result.n = cfg.n;
  if (cfg.checkpoint && std::filesystem::exists(*cfg.checkpoint)) {
    next = read_checkpoint(*cfg.checkpoint, cfg, grid, best);
    result.resumed = true;
  }

  while (next < total) {
    const std::uint64_t batch_end = std::min(total, next + cfg.checkpoint_interval);
    const std::uint64_t span = batch_end - next;
    const std::size_t workers = static_cast<std::size_t>(std::min<std::uint64_t>(cfg.workers, span));
    std::vector<std::vector<Slot>> local(workers, std::vector<Slot>(grid.size()));
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::uint64_t lo = next + span * w / workers;
        const std::uint64_t hi = next + span * (w + 1) / workers;
        pool.emplace_back([&, w, lo, hi] { scan_range(cfg.n, grid, lo, hi, local[w]); });
      }
    }
    // Merge in range order; the tie-break on mask makes the result independent of the split.
    for (const auto& part : local) {
      for (std::size_t k = 0; k < grid.size(); ++k) {
        if (better(grid[k], part[k], best[k])) best[k] = part[k];
      }
    }
    next = batch_end;
    if (cfg.checkpoint) write_checkpoint(*cfg.checkpoint, cfg, next, best);
    if (cfg.progress) cfg.progress(next, total);
  }

  ExpectationPolynomial poly;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    PerP entry{grid[k].p, std::nullopt};
    if (best[k].has) {
      OrderedGraph g = OrderedGraph::from_edge_mask(cfg.n, best[k].mask);
      Rational e = expectation::greedy_p_polynomial(g).evaluate(grid[k].p);
      entry.worst = Worst{best[k].mask, best[k].opt, e, Rational(best[k].opt) / e};
    }
    result.per_p.push_back(std::move(entry));
  }
  for (std::size_t k = 0; k < result.per_p.size(); ++k) {
    const auto& w = result.per_p[k].worst;
    if (!w) continue;
    if (!result.best_index || w->ratio < result.per_p[*result.best_index].worst->ratio) result.best_index = k;
  }
  result.graphs = total;
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string to_csv(const SearchResult& result) {
  std::ostringstream out;
  out << "p,worst_ratio,worst_graph_hex,opt,expectation_num,expectation_den\n";
  for (const auto& row : result.per_p) {
    out << to_decimal(row.p, 2) << ",";
    if (!row.worst) {
      out << "inf,,,,\n";
      continue;
    }
    const auto& w = *row.worst;
    out << to_decimal(w.ratio, 9) << "," << to_hex(w.mask) << "," << w.opt << ","
        << boost::multiprecision::numerator(w.expectation) << ","
        << boost::multiprecision::denominator(w.expectation) << "\n";
  }
  return out.str();
}

WorstGraphReport worst_graph_report(const SearchResult& result, const Rational& p, std::size_t workers) {
  const PerP* row = nullptr;
  for (const auto& r : result.per_p) {
    if (r.p == p) row = &r;
  }
  if (!row) throw std::invalid_argument("p = " + to_string(p) + " is not on the search grid");
  if (!row->worst) throw std::invalid_argument("no finite worst ratio at p = 0");
  WorstGraphReport report;
  report.p = p;
  report.mask = row->worst->mask;
  report.graph = OrderedGraph::from_edge_mask(result.n, report.mask);
  report.polynomial = expectation::greedy_p_polynomial(report.graph);
  report.opt = row->worst->opt;
  report.ratio_at_p = row->worst->ratio;
  report.refinement = expectation::optimize_p(report.polynomial, report.opt);
  report.degrees = report.graph.degree_sequence();

  SearchConfig again;
  again.n = result.n;
  again.p_grid = {report.refinement.p_star};
  again.workers = workers;
  again.checkpoint_interval = std::uint64_t{1} << 20;
  SearchResult rescan = minimax_search(again);
  if (rescan.per_p[0].worst) {
    report.worst_mask_at_refined = rescan.per_p[0].worst->mask;
    const Rational worst_ratio = rescan.per_p[0].worst->ratio;
    // Confirmed when this graph attains the maximum ratio at the refined p.
    report.confirmed = worst_ratio == report.refinement.min_ratio;
  }
  return report;
}

bool realizability_check(const OrderedGraph& graph, const geometry::Arrangement& fixture) {
  if (graph.size() != fixture.boxes.size())
    throw std::invalid_argument("fixture has " + std::to_string(fixture.boxes.size()) + " boxes but the graph has " +
                                std::to_string(graph.size()) + " vertices");
  for (const auto& b : fixture.boxes) {
    if (b.dim() != fixture.dim) return false;
  }
  return geometry::validate_shape(fixture).ok && geometry::validate_order(fixture).ok &&
         geometry::arrangement_matches(fixture.boxes, graph);
}

}  // namespace boxmis::search
