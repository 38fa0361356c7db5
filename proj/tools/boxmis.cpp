#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "boxmis/adversaries.hpp"
#include "boxmis/arrangement_io.hpp"
#include "boxmis/expectation.hpp"
#include "boxmis/harness.hpp"
#include "boxmis/search.hpp"
#include "boxmis/tuning.hpp"

using namespace boxmis;

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void print(const std::string& format) const {
    harness::TableArtifact t;
    t.header = header;
    t.rows = rows;
    std::cout << (format == "md" ? t.markdown() : t.csv());
  }
};

std::size_t default_workers() {
  if (const char* env = std::getenv("BOXMIS_WORKERS")) {
    try {
      return std::max<std::size_t>(1, std::stoul(env));
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed BOXMIS_WORKERS='" << env << "'\n";
    }
  }
  return 1;
}

std::string fixed(double x, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

geometry::ShapeClass shape_arg(const std::string& tag, const std::string& sigma) {
  if (tag == "sigma") return geometry::SigmaBoundedCube{parse_rational(sigma)};
  return geometry::parse_shape(tag);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online independent sets of boxes: policies, adversaries and exhaustive search"};
  app.set_version_flag("--version", harness::tool_version);
  app.set_config("--config", "", "key=value file with default option values");
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  std::size_t workers = default_workers();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "md"}));
  app.add_option("--workers", workers, "Worker threads (default: BOXMIS_WORKERS or 1)")->check(CLI::PositiveNumber);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run a policy on an arrangement file many times");
  std::string sim_policy = "greedyp:1/2", sim_input;
  std::uint64_t sim_trials = 100000, sim_seed = 1;
  sim->add_option("--policy", sim_policy, "greedy | greedyp:<p> | classified:<sigma>:<k>");
  sim->add_option("input", sim_input, "Arrangement file")->required()->check(CLI::ExistingFile);
  sim->add_option("--trials", sim_trials)->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed);

  // search
  auto* srch = app.add_subcommand("search", "Exhaustive minimax search over ordered graphs");
  std::size_t srch_n = 3;
  std::string srch_step = "1/100", srch_checkpoint;
  std::vector<std::string> srch_p;
  bool srch_report = false;
  srch->add_option("-n", srch_n, "Vertices (1..8)")->required();
  srch->add_option("--step", srch_step, "Uniform grid step over [0,1]");
  srch->add_option("--p", srch_p, "Explicit grid values (overrides --step)");
  srch->add_option("--checkpoint", srch_checkpoint, "Checkpoint file for resumable runs");
  srch->add_flag("--report", srch_report, "Refine p for the winning graph and print its report");

  // optimize-p
  auto* opt = app.add_subcommand("optimize-p", "Maximise E|SOL| of Greedy(p) for one instance");
  std::string opt_poly, opt_input;
  std::size_t opt_size = 0;
  opt->add_option("--poly", opt_poly, "Coefficients 'c0 c1 ...'");
  opt->add_option("--opt", opt_size, "MIS size used with --poly");
  opt->add_option("--input", opt_input, "Arrangement file")->check(CLI::ExistingFile);

  // tune-k
  auto* tk = app.add_subcommand("tune-k", "Choose the class count for classified greedy");
  std::size_t tk_d = 2;
  std::string tk_sigma, tk_order = "arbitrary";
  tk->add_option("-d", tk_d)->required();
  tk->add_option("--sigma", tk_sigma)->required();
  tk->add_option("--order", tk_order)->check(CLI::IsMember({"nondominated", "arbitrary"}));

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Competitive-ratio bounds for one configuration");
  std::string bnd_shape = "unit", bnd_order = "nondominated", bnd_adv = "adaptive", bnd_sigma;
  std::size_t bnd_d = 2;
  std::optional<std::size_t> bnd_n;
  bnd->add_option("--shape", bnd_shape)->check(CLI::IsMember({"unit", "sigma", "unitvolume", "cube", "rect"}));
  bnd->add_option("--order", bnd_order)->check(CLI::IsMember({"dominating", "nondominated", "arbitrary"}));
  bnd->add_option("--adversary", bnd_adv)->check(CLI::IsMember({"adaptive", "oblivious"}));
  bnd->add_option("-d", bnd_d);
  bnd->add_option("--sigma", bnd_sigma);
  bnd->add_option("-n", bnd_n);

  // adversary
  auto* adv = app.add_subcommand("adversary", "Generate or play adversary constructions");
  adv->require_subcommand(1);
  std::string adv_shape = "unit", adv_order = "arbitrary", adv_sigma = "2", adv_policy = "greedy";
  std::size_t adv_d = 2, adv_levels = 3, adv_blocks = 1, adv_decoys = 0;
  std::optional<std::size_t> adv_n;
  std::uint64_t adv_seed = 1, adv_trials = 100000;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--shape", adv_shape)->check(CLI::IsMember({"unit", "sigma", "unitvolume", "cube", "rect"}));
    sub->add_option("--sigma", adv_sigma);
    sub->add_option("--order", adv_order)->check(CLI::IsMember({"nondominated", "arbitrary"}));
    sub->add_option("-d", adv_d);
    sub->add_option("--blocks", adv_blocks)->check(CLI::PositiveNumber);
    sub->add_option("--seed", adv_seed);
  };
  auto* gen = adv->add_subcommand("generate", "Emit one marking instance as an arrangement file");
  common(gen);
  gen->add_option("--levels", adv_levels)->check(CLI::PositiveNumber);
  gen->add_option("--decoys", adv_decoys, "Trailing disjoint boxes");
  auto* play = adv->add_subcommand("play", "Adaptive packing game against a deterministic policy");
  common(play);
  play->add_option("--policy", adv_policy);
  play->add_option("-n", adv_n, "Instance size for the n-1 constructions");
  auto* mc = adv->add_subcommand("mc", "Monte Carlo ratio against the marking adversary");
  common(mc);
  mc->add_option("--levels", adv_levels)->check(CLI::PositiveNumber);
  mc->add_option("--policy", adv_policy);
  mc->add_option("--trials", adv_trials)->check(CLI::PositiveNumber);

  // verify-arrangement
  auto* ver = app.add_subcommand("verify-arrangement", "Validate an arrangement file against its header");
  std::string ver_input;
  ver->add_option("input", ver_input)->required()->check(CLI::ExistingFile);

  // reproduce-table
  auto* rep = app.add_subcommand("reproduce-table", "Rebuild a results table and diff it against golden files");
  std::string rep_id, rep_golden = "golden", rep_sigma = "5/2";
  harness::TableOptions rep_opts;
  rep->add_option("table", rep_id, "1, 2, 4, 5 or 6")->required();
  rep->add_option("--golden", rep_golden, "Directory with golden CSV files");
  rep->add_option("-d", rep_opts.d, "Dimension for tables 1 and 2");
  rep->add_option("--sigma", rep_sigma, "Side bound for tables 1 and 2");
  rep->add_option("-n", rep_opts.n, "Instance size for tables 1 and 2");
  rep->add_flag("--extended", rep_opts.extended, "Include n = 7 in table 6");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      const auto arrangement = geometry::read_arrangement_file(sim_input);
      geometry::require_valid(arrangement);
      const auto policy = policies::parse_policy(sim_policy);
      const auto start = std::chrono::steady_clock::now();
      const auto samples = harness::simulate(policy, arrangement, sim_trials, sim_seed, workers);
      const auto est = harness::summarize(samples, sim_seed);
      const std::size_t best = expectation::max_disjoint_boxes(arrangement.boxes);
      Table t{{"policy", "trials", "seed", "mean", "stderr", "ci_low", "ci_high", "opt", "ratio"}, {}};
      t.rows.push_back({policies::policy_tag(policy), std::to_string(est.trials), std::to_string(sim_seed),
                        fixed(est.mean, 6), fixed(est.stderr_, 6), fixed(est.ci_low, 6), fixed(est.ci_high, 6),
                        std::to_string(best), est.mean > 0 ? fixed(best / est.mean, 6) : "inf"});
      t.print(format);
      std::ostringstream config;
      config << "simulate policy=" << sim_policy << " trials=" << sim_trials << " seed=" << sim_seed;
      const auto record = harness::make_record(config.str(), geometry::write_arrangement(arrangement), "",
                                               std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      std::cerr << "config " << record.config_digest << " inputs " << record.inputs_digest << " (" << record.version << ")\n";
    } else if (*srch) {
      search::SearchConfig cfg;
      cfg.n = srch_n;
      cfg.workers = workers;
      if (!srch_p.empty()) {
        cfg.p_grid.clear();
        for (const auto& p : srch_p) cfg.p_grid.push_back(parse_rational(p));
      } else {
        cfg.p_grid = search::uniform_grid(parse_rational(srch_step));
      }
      if (!srch_checkpoint.empty()) cfg.checkpoint = srch_checkpoint;
      const auto result = search::minimax_search(cfg);
      std::cout << search::to_csv(result);
      std::cerr << result.graphs << " graphs in " << fixed(result.seconds, 2) << "s" << (result.resumed ? " (resumed)" : "") << "\n";
      if (srch_report && result.best_index) {
        const auto report = search::worst_graph_report(result, result.per_p[*result.best_index].p, workers);
        std::cout << "# worst graph " << to_hex(report.mask) << " opt=" << report.opt << " E(p)=[" << report.polynomial.to_string()
                  << "] refined p*=" << to_string(report.refinement.p_star) << " ratio=" << to_string(report.refinement.min_ratio)
                  << " confirmed=" << (report.confirmed ? "yes" : "no") << "\n";
        std::cout << write_graph(report.graph);
      }
    } else if (*opt) {
      ExpectationPolynomial poly;
      std::size_t best = opt_size;
      if (!opt_input.empty()) {
        const auto arrangement = geometry::read_arrangement_file(opt_input);
        const auto g = geometry::intersection_graph(arrangement.boxes);
        poly = expectation::greedy_p_polynomial(g);
        best = expectation::mis_size(g).size;
      } else if (!opt_poly.empty() && opt_size > 0) {
        poly = parse_polynomial(opt_poly);
      } else {
        throw std::invalid_argument("give --input, or --poly together with --opt");
      }
      const auto r = expectation::optimize_p(poly, best);
      Table t{{"polynomial", "opt", "p_star", "p_star_decimal", "exact", "max_expectation", "min_ratio", "min_ratio_decimal"}, {}};
      t.rows.push_back({poly.to_string(), std::to_string(best), to_string(r.p_star), to_decimal(r.p_star, 12),
                        r.exact ? "yes" : "no", to_string(r.max_expectation), to_string(r.min_ratio), to_decimal(r.min_ratio, 9)});
      t.print(format);
    } else if (*tk) {
      const auto r = tuning::choose_k(tk_d, parse_rational(tk_sigma), geometry::parse_order(tk_order));
      Table t{{"k", "bound", "chosen"}, {}};
      for (const auto& [k, bound] : r.candidates)
        t.rows.push_back({std::to_string(k), to_string(bound), k == r.k_chosen ? "yes" : ""});
      std::cout << "# k_star=" << fixed(r.k_star, 6) << " k_chosen=" << r.k_chosen << "\n";
      t.print(format);
    } else if (*bnd) {
      tuning::BoundQuery q;
      q.shape = geometry::kind_of(shape_arg(bnd_shape, bnd_sigma.empty() ? "2" : bnd_sigma));
      q.order = geometry::parse_order(bnd_order);
      q.adversary = tuning::parse_adversary(bnd_adv);
      q.d = bnd_d;
      q.n = bnd_n;
      if (!bnd_sigma.empty()) q.sigma = parse_rational(bnd_sigma);
      const auto e = tuning::bounds_table(q);
      Table t{{"lower", "upper", "tight", "lower_formula", "upper_formula"}, {}};
      t.rows.push_back({to_string(e.lower), to_string(e.upper), e.tight ? "yes" : "no", e.lower_formula, e.upper_formula});
      t.print(format);
    } else if (*adv) {
      const auto shape = shape_arg(adv_shape, adv_sigma);
      const auto order = geometry::parse_order(adv_order);
      if (*gen) {
        adversaries::MarkingSpec spec{adv_d, shape, order, adv_levels, adv_blocks, adv_decoys};
        RandomSource rng(adv_seed);
        const auto inst = adversaries::marking_generate(spec, rng);
        std::cout << "# opt=" << inst.opt_size << "\n" << geometry::write_arrangement(inst.arrangement);
      } else if (*play) {
        const auto spec = adversaries::AdaptivePackSpec::standard(shape, order, adv_d, adv_blocks, adv_n);
        const auto g = harness::adaptive_game(policies::parse_policy(adv_policy), spec, adv_seed);
        Table t{{"policy", "boxes", "opt", "sol", "ratio"}, {}};
        t.rows.push_back({adv_policy, std::to_string(g.boxes), std::to_string(g.opt), std::to_string(g.sol),
                          g.ratio ? to_string(*g.ratio) : "inf"});
        t.print(format);
      } else if (*mc) {
        adversaries::MarkingSpec spec{adv_d, shape, order, adv_levels, adv_blocks};
        const auto r = harness::mc_ratio(policies::parse_policy(adv_policy), spec, adv_trials, adv_seed, workers);
        Table t{{"policy", "trials", "seed", "opt", "mean", "stderr", "ci_low", "ci_high", "ratio"}, {}};
        t.rows.push_back({adv_policy, std::to_string(r.estimate.trials), std::to_string(adv_seed), std::to_string(r.opt),
                          fixed(r.estimate.mean, 6), fixed(r.estimate.stderr_, 6), fixed(r.estimate.ci_low, 6),
                          fixed(r.estimate.ci_high, 6), fixed(r.ratio_point, 6)});
        t.print(format);
      }
    } else if (*ver) {
      const auto a = geometry::read_arrangement_file(ver_input);
      const auto shape = geometry::validate_shape(a);
      const auto order = geometry::validate_order(a);
      const auto g = geometry::intersection_graph(a.boxes);
      std::cout << "boxes " << a.boxes.size() << "\n";
      std::cout << "shape " << geometry::shape_tag(a.shape) << " "
                << (shape.ok ? "ok" : "violated at box " + std::to_string(*shape.first_violation)) << "\n";
      std::cout << "order " << geometry::order_tag(a.order) << " "
                << (order.ok ? "ok"
                             : "violated by boxes " + std::to_string(order.first_violation->first) + " and " +
                                   std::to_string(order.first_violation->second))
                << "\n";
      std::cout << "mis " << expectation::mis_size(g).size << "\n";
      std::cout << write_graph(g);
      return shape.ok && order.ok ? 0 : 1;
    } else if (*rep) {
      rep_opts.sigma = parse_rational(rep_sigma);
      rep_opts.workers = workers;
      const auto id = harness::parse_table(rep_id);
      const auto t = reproduce(id, rep_opts, rep_golden);
      std::cout << (format == "md" ? t.markdown() : t.csv());
      for (const auto& note : t.notes) std::cerr << note << "\n";
      if (!t.compared) {
        std::cerr << "no golden comparison for " << harness::table_name(id) << "\n";
        return 0;
      }
      const auto bad = t.mismatches();
      for (const auto& m : bad)
        std::cerr << "mismatch " << m.row << "/" << m.column << ": expected " << m.expected << ", got " << m.actual << "\n";
      std::cerr << t.checks.size() - bad.size() << "/" << t.checks.size() << " golden cells match\n";
      return bad.empty() ? 0 : 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
