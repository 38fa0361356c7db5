#include "boxmis/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "boxmis/arrangement_io.hpp"
#include "boxmis/digest.hpp"
#include "boxmis/expectation.hpp"
#include "boxmis/search.hpp"
#include "boxmis/tuning.hpp"

namespace boxmis::harness {

McEstimate summarize(const std::vector<std::uint64_t>& samples, std::uint64_t seed) {
  McEstimate est;
  est.seed = seed;
  est.trials = samples.size();
  if (samples.empty()) return est;
  unsigned __int128 sum = 0, sum_sq = 0;
  for (auto x : samples) {
    sum += x;
    sum_sq += static_cast<unsigned __int128>(x) * x;
  }
  const auto n = static_cast<long double>(samples.size());
  const long double mean = static_cast<long double>(sum) / n;
  long double var = 0;
  if (samples.size() > 1) {
    // N * sum_sq - sum^2 is exact in 128 bits for the sample sizes used here.
    const long double num = static_cast<long double>(static_cast<unsigned __int128>(samples.size()) * sum_sq - sum * sum);
    var = num / (n * (n - 1));
  }
  est.mean = static_cast<double>(mean);
  est.stderr_ = static_cast<double>(std::sqrt(var / n));
  est.ci_low = est.mean - 1.96 * est.stderr_;
  est.ci_high = est.mean + 1.96 * est.stderr_;
  return est;
}

namespace {

template <class Fn>
std::vector<std::uint64_t> run_trials(std::uint64_t trials, std::size_t workers, Fn&& one_trial) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (workers == 0) throw std::invalid_argument("worker count must be positive");
  std::vector<std::uint64_t> out(trials);
  const std::size_t w = static_cast<std::size_t>(std::min<std::uint64_t>(workers, trials));
  std::vector<std::exception_ptr> errors(w);
  {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < w; ++k) {
      pool.emplace_back([&, k] {
        try {
          for (std::uint64_t t = trials * k / w; t < trials * (k + 1) / w; ++t) out[t] = one_trial(t);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

McRatio mc_ratio(const policies::PolicySpec& policy, const adversaries::MarkingSpec& spec, std::uint64_t trials,
                 std::uint64_t seed, std::size_t workers) {
  policies::validate_policy(policy);
  const adversaries::MarkingSampler sampler(spec);
  auto samples = run_trials(trials, workers, [&](std::uint64_t t) {
    RandomSource rng = RandomSource::for_trial(seed, t);
    const auto instance = sampler.sample(rng);
    return static_cast<std::uint64_t>(policies::run_policy(policy, instance, rng).solution_size);
  });
  McRatio out;
  out.opt = sampler.opt_size();
  out.estimate = summarize(samples, seed);
  out.ratio_point = out.estimate.mean > 0 ? static_cast<double>(out.opt) / out.estimate.mean
                                          : std::numeric_limits<double>::infinity();
  return out;
}

std::vector<std::uint64_t> simulate(const policies::PolicySpec& policy, const geometry::Arrangement& arrangement,
                                    std::uint64_t trials, std::uint64_t seed, std::size_t workers) {
  policies::validate_policy(policy);
  const auto scaled = policies::scale_to_integers(arrangement.boxes);
  return run_trials(trials, workers, [&](std::uint64_t t) {
    RandomSource rng = RandomSource::for_trial(seed, t);
    const auto trace = scaled ? policies::run_policy(policy, *scaled, rng)
                              : policies::run_policy(policy, arrangement.boxes, rng);
    return static_cast<std::uint64_t>(trace.solution_size);
  });
}

GameOutcome adaptive_game(const policies::PolicySpec& policy, const adversaries::AdaptivePackSpec& spec,
                          std::uint64_t seed) {
  RandomSource rng(seed);
  const auto played = adversaries::adaptive_pack_play(spec, policy, rng);
  GameOutcome out;
  out.opt = played.opt_size;
  out.sol = played.trace.solution_size;
  out.boxes = played.instance.arrangement.boxes.size();
  if (out.sol > 0) out.ratio = Rational(out.opt) / Rational(out.sol);
  return out;
}

SweepReport dominating_optimality_sweep(std::size_t trials, std::size_t n_max, std::uint64_t seed) {
  if (n_max < 1 || n_max > OrderedGraph::max_vertices) throw std::invalid_argument("n_max must lie in 1..63");
  SweepReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    RandomSource rng = RandomSource::for_trial(seed, t);
    const std::size_t n = 1 + rng.uniform_below(n_max);
    const std::size_t d = 1 + rng.uniform_below(3);
    const auto arrangement = adversaries::random_dominating_arrangement(n, d, rng);
    const auto greedy = policies::run_policy(policies::NaiveGreedy{}, arrangement.boxes, rng);
    const auto best = expectation::mis_size(geometry::intersection_graph(arrangement.boxes)).size;
    ++report.instances;
    if (greedy.solution_size == best) {
      ++report.passed;
    } else if (!report.counterexample) {
      report.counterexample = geometry::write_arrangement(arrangement);
    }
  }
  return report;
}

TableId parse_table(const std::string& text) {
  if (text == "1" || text == "T1") return TableId::T1;
  if (text == "2" || text == "T2") return TableId::T2;
  if (text == "4" || text == "T4") return TableId::T4;
  if (text == "5" || text == "T5") return TableId::T5;
  if (text == "6" || text == "T6") return TableId::T6;
  throw std::invalid_argument("unknown table '" + text + "' (expected 1, 2, 4, 5 or 6)");
}

std::string table_name(TableId id) {
  switch (id) {
    case TableId::T1: return "table1";
    case TableId::T2: return "table2";
    case TableId::T4: return "table4";
    case TableId::T5: return "table5";
    case TableId::T6: return "table6";
  }
  return "table";
}

std::string TableArtifact::csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

std::string TableArtifact::markdown() const {
  std::ostringstream out;
  out << "|";
  for (const auto& h : header) out << " " << h << " |";
  out << "\n|";
  for (std::size_t i = 0; i < header.size(); ++i) out << " --- |";
  out << "\n";
  for (const auto& row : rows) {
    out << "|";
    for (const auto& cell : row) out << " " << cell << " |";
    out << "\n";
  }
  return out.str();
}

std::vector<CellCheck> TableArtifact::mismatches() const {
  std::vector<CellCheck> out;
  for (const auto& c : checks) {
    if (!c.ok) out.push_back(c);
  }
  return out;
}

namespace {

/// Full-precision value behind a displayed cell.
struct Value {
  std::optional<Rational> exact;
  double approx = 0;
};

class TableBuilder {
 public:
  explicit TableBuilder(TableArtifact& t) : table_(t) {}

  void add_row(std::vector<std::string> cells, std::vector<std::pair<std::string, Value>> values) {
    const std::string key = cells.at(0);
    for (auto& [column, v] : values) values_[{key, column}] = v;
    table_.rows.push_back(std::move(cells));
  }

  void compare(const std::string& golden_path) {
    std::ifstream in(golden_path);
    if (!in) return;
    table_.compared = true;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> f;
      std::stringstream ss(line);
      for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
      if (f.size() != 6) throw std::runtime_error("malformed golden line: " + line);
      CellCheck check{f[0], f[1], f[2], "", true};
      auto it = values_.find({f[0], f[1]});
      if (it == values_.end()) {
        if (f[5] == "yes") {
          check.actual = "(missing)";
          check.ok = false;
          table_.checks.push_back(check);
        }
        continue;
      }
      const Value& v = it->second;
      const double tol = std::stod(f[3]);
      const Rational expected = parse_rational(f[2]);
      if (v.exact) {
        check.actual = to_decimal(*v.exact, 9);
        const Rational diff = abs(*v.exact - expected);
        if (tol == 0) {
          check.ok = diff == 0;
        } else {
          const double scale = f[4] == "rel" ? std::abs(to_double(expected)) : 1.0;
          check.ok = to_double(diff) <= tol * scale;
        }
      } else {
        std::ostringstream s;
        s.precision(12);
        s << v.approx;
        check.actual = s.str();
        const double diff = std::abs(v.approx - to_double(expected));
        const double scale = f[4] == "rel" ? std::abs(to_double(expected)) : 1.0;
        check.ok = diff <= tol * scale;
      }
      table_.checks.push_back(check);
    }
  }

 private:
  TableArtifact& table_;
  std::map<std::pair<std::string, std::string>, Value> values_;
};

Value exact_value(const Rational& r) { return {r, to_double(r)}; }

std::string fixed(double x, int digits) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << x;
  return s.str();
}

std::string significant(double x, int digits) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

void bound_table(TableArtifact& t, TableBuilder& b, geometry::OrderClass order, const TableOptions& o) {
  using geometry::ShapeKind;
  t.header = {"shape", "adaptive", "oblivious_lower", "oblivious_upper"};
  const std::vector<std::pair<std::string, ShapeKind>> shapes = {
      {"unit", ShapeKind::UnitCube},           {"sigma", ShapeKind::SigmaBoundedCube},
      {"unitvolume", ShapeKind::UnitVolume},   {"cube", ShapeKind::ArbitraryCube},
      {"rect", ShapeKind::ArbitraryRect}};
  for (const auto& [name, kind] : shapes) {
    tuning::BoundQuery q;
    q.shape = kind;
    q.order = order;
    q.d = o.d;
    if (kind == ShapeKind::SigmaBoundedCube) q.sigma = o.sigma;
    if (kind == ShapeKind::UnitVolume || kind == ShapeKind::ArbitraryCube || kind == ShapeKind::ArbitraryRect) q.n = o.n;
    q.adversary = tuning::Adversary::Adaptive;
    const auto adaptive = tuning::bounds_table(q);
    q.adversary = tuning::Adversary::Oblivious;
    const auto oblivious = tuning::bounds_table(q);
    b.add_row({name, to_string(adaptive.upper), to_string(oblivious.lower), to_string(oblivious.upper)},
              {{"adaptive", exact_value(adaptive.upper)},
               {"oblivious_lower", exact_value(oblivious.lower)},
               {"oblivious_upper", exact_value(oblivious.upper)}});
  }
}

}  // namespace

TableArtifact reproduce(TableId id, const TableOptions& options, const std::string& golden_dir) {
  TableArtifact t;
  t.id = id;
  TableBuilder b(t);
  const TableOptions defaults;
  bool default_params = true;
  switch (id) {
    case TableId::T1:
    case TableId::T2:
      bound_table(t, b, id == TableId::T1 ? geometry::OrderClass::NonDominated : geometry::OrderClass::Arbitrary,
                  options);
      default_params = options.d == defaults.d && options.sigma == defaults.sigma && options.n == defaults.n;
      break;
    case TableId::T4:
      t.header = {"n", "p", "ratio"};
      for (std::size_t n = 1; n <= 5; ++n) {
        search::SearchConfig cfg;
        cfg.n = n;
        cfg.workers = options.workers;
        const auto r = search::minimax_search(cfg);
        const auto& row = r.per_p.at(*r.best_index);
        b.add_row({std::to_string(n), to_decimal(row.p, 2), to_decimal(row.worst->ratio, 6)},
                  {{"p", exact_value(row.p)}, {"ratio", exact_value(row.worst->ratio)}});
        t.notes.push_back("n=" + std::to_string(n) + " searched " + std::to_string(r.graphs) + " graphs in " +
                          fixed(r.seconds, 3) + "s");
      }
      break;
    case TableId::T5:
      t.header = {"d", "multiplier"};
      for (std::size_t d : {1, 2, 3, 4, 10, 100, 1000}) {
        const double m = tuning::k_star_multiplier(d);
        b.add_row({std::to_string(d), significant(m, 6)}, {{"multiplier", Value{std::nullopt, m}}});
      }
      break;
    case TableId::T6: {
      t.header = {"n", "p", "ratio"};
      std::vector<std::size_t> sizes{6};
      if (options.extended) sizes.push_back(7);
      for (std::size_t n : sizes) {
        search::SearchConfig cfg;
        cfg.n = n;
        cfg.p_grid = {Rational(1, 2)};
        cfg.workers = options.workers;
        cfg.checkpoint_interval = std::uint64_t{1} << 18;
        const auto r = search::minimax_search(cfg);
        const auto& row = r.per_p.at(0);
        b.add_row({std::to_string(n), to_decimal(row.p, 2), to_decimal(row.worst->ratio, 6)},
                  {{"ratio", exact_value(row.worst->ratio)}});
        t.notes.push_back("n=" + std::to_string(n) + " searched " + std::to_string(r.graphs) + " graphs in " +
                          fixed(r.seconds, 3) + "s");
      }
      break;
    }
  }
  if (default_params && !golden_dir.empty()) b.compare(golden_dir + "/" + table_name(id) + ".csv");
  return t;
}

ExperimentRecord make_record(const std::string& canonical_config, const std::string& inputs,
                             const std::string& outputs, double wall_seconds) {
  ExperimentRecord r;
  r.config_digest = sha256_hex(canonical_config);
  r.inputs_digest = sha256_hex(inputs);
  r.outputs = outputs;
  r.wall_seconds = wall_seconds;
  return r;
}

}  // namespace boxmis::harness
