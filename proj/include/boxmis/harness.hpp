#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boxmis/adversaries.hpp"
#include "boxmis/geometry.hpp"
#include "boxmis/policies.hpp"
#include "boxmis/rational.hpp"

namespace boxmis::harness {

inline constexpr const char* tool_version = "boxmis 1.0.0";

struct McEstimate {
  std::uint64_t trials = 0;
  double mean = 0;
  double stderr_ = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t seed = 0;
};

/// Mean, standard error (sample sd / sqrt(trials)) and normal 95% interval of integer samples.
/// The sums are exact, so the result does not depend on how trials were split across workers.
McEstimate summarize(const std::vector<std::uint64_t>& samples, std::uint64_t seed);

struct McRatio {
  std::size_t opt = 0;
  McEstimate estimate;
  double ratio_point = 0;
};

/// Runs the policy on a fresh marking instance per trial. Trial t uses the stream
/// RandomSource::for_trial(seed, t): adversary marks first, then the policy's coins.
McRatio mc_ratio(const policies::PolicySpec& policy, const adversaries::MarkingSpec& spec, std::uint64_t trials,
                 std::uint64_t seed, std::size_t workers = 1);

/// Per-trial solution sizes of the policy on one fixed arrangement.
std::vector<std::uint64_t> simulate(const policies::PolicySpec& policy, const geometry::Arrangement& arrangement,
                                    std::uint64_t trials, std::uint64_t seed, std::size_t workers = 1);

struct GameOutcome {
  std::size_t opt = 0;
  std::size_t sol = 0;
  /// Empty when the policy accepted nothing (unbounded ratio).
  std::optional<Rational> ratio;
  std::size_t boxes = 0;
};

GameOutcome adaptive_game(const policies::PolicySpec& policy, const adversaries::AdaptivePackSpec& spec,
                          std::uint64_t seed);

struct SweepReport {
  std::size_t instances = 0;
  std::size_t passed = 0;
  /// Serialized arrangement of the first failing instance.
  std::optional<std::string> counterexample;
  bool ok() const { return instances == passed; }
};

/// Random dominating-order arrangements with n <= n_max in d = 1..3; checks that the
/// naive greedy solution has the size of an exact maximum independent set.
SweepReport dominating_optimality_sweep(std::size_t trials, std::size_t n_max, std::uint64_t seed);

enum class TableId { T1, T2, T4, T5, T6 };
TableId parse_table(const std::string& text);
std::string table_name(TableId id);

struct TableOptions {
  /// Parameters at which the symbolic bound tables are evaluated.
  std::size_t d = 2;
  Rational sigma = Rational(5, 2);
  std::size_t n = 10;
  /// Adds the n = 7 row to the fixed-p table (about 2 million graphs).
  bool extended = false;
  std::size_t workers = 1;
};

struct CellCheck {
  std::string row;
  std::string column;
  std::string expected;
  std::string actual;
  bool ok = true;
};

struct TableArtifact {
  TableId id = TableId::T4;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<CellCheck> checks;
  bool compared = false;
  /// Timing lines kept out of the table so its CSV stays reproducible.
  std::vector<std::string> notes;

  std::string csv() const;
  std::string markdown() const;
  std::vector<CellCheck> mismatches() const;
};

/// Computes the table and, when golden_dir holds a matching file and the parameters
/// are the defaults, compares each golden cell within its stored tolerance.
TableArtifact reproduce(TableId id, const TableOptions& options, const std::string& golden_dir);

struct ExperimentRecord {
  std::string config_digest;
  std::string inputs_digest;
  std::string outputs;
  double wall_seconds = 0;
  std::string version = tool_version;
};

ExperimentRecord make_record(const std::string& canonical_config, const std::string& inputs,
                             const std::string& outputs, double wall_seconds);

}  // namespace boxmis::harness
