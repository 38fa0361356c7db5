#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "boxmis/geometry.hpp"
#include "boxmis/random.hpp"
#include "boxmis/rational.hpp"

namespace boxmis::policies {

struct NaiveGreedy {
  bool operator==(const NaiveGreedy&) const = default;
};
struct GreedyP {
  Rational p;
  bool operator==(const GreedyP&) const = default;
};
/// Draws one size class up front and runs greedy on the boxes of that class only.
struct ClassifiedGreedy {
  Rational sigma;
  unsigned k = 1;
  bool operator==(const ClassifiedGreedy&) const = default;
};

using PolicySpec = std::variant<NaiveGreedy, GreedyP, ClassifiedGreedy>;

/// `greedy`, `greedyp:<p>` or `classified:<sigma>:<k>`.
PolicySpec parse_policy(const std::string& text);
std::string policy_tag(const PolicySpec& spec);
/// Throws std::invalid_argument / std::domain_error on out-of-range parameters.
void validate_policy(const PolicySpec& spec);
bool is_deterministic(const PolicySpec& spec);

struct Decision {
  std::size_t index;  ///< position of the offered box in the input
  bool accepted;
};

struct Trace {
  std::vector<Decision> decisions;
  std::size_t solution_size = 0;

  std::vector<std::size_t> accepted_indices() const;
};

/// Class i of the random-classification policy: side lengths s with sigma^i <= s^k <= sigma^(i+1).
struct ClassInterval {
  unsigned index;
  Rational sigma;
  unsigned k;
  double lower_approx;
  double upper_approx;

  bool contains(const Rational& side) const;
  /// b^i and b^(i+1) when they are rational.
  std::optional<Rational> exact_lower() const;
  std::optional<Rational> exact_upper() const;
};

std::vector<ClassInterval> class_bounds(const Rational& sigma, unsigned k);

/// Boxes rescaled by a common denominator so every coordinate is an exact int64.
struct ScaledInstance {
  std::size_t dim = 0;
  BigInt scale = 1;
  /// Box i, axis a: lower at coords[2*(i*dim+a)], upper right after it.
  std::vector<std::int64_t> coords;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / (2 * dim); }
  std::int64_t lower(std::size_t i, std::size_t a) const { return coords[2 * (i * dim + a)]; }
  std::int64_t upper(std::size_t i, std::size_t a) const { return coords[2 * (i * dim + a) + 1]; }
  bool intersects(std::size_t i, std::size_t j) const;
  Rational side(std::size_t i, std::size_t a) const;
};

/// Empty when some scaled coordinate would leave the +-2^61 range.
std::optional<ScaledInstance> scale_to_integers(std::span<const geometry::Box> boxes);

/// Online decision maker. Each offer must be the next box in arrival order;
/// `boxes` is read through the reference, so callers may append between offers.
class OnlinePolicy {
 public:
  OnlinePolicy(const PolicySpec& spec, RandomSource& rng, const std::vector<geometry::Box>& boxes);
  ~OnlinePolicy();
  OnlinePolicy(const OnlinePolicy&) = delete;
  OnlinePolicy& operator=(const OnlinePolicy&) = delete;

  /// Decides on boxes[trace().decisions.size()].
  bool offer_next();
  const Trace& trace() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Trace run_policy(const PolicySpec& spec, std::span<const geometry::Box> boxes, RandomSource& rng);
/// Same decisions as the Rational overload on the unscaled boxes.
Trace run_policy(const PolicySpec& spec, const ScaledInstance& boxes, RandomSource& rng);

inline constexpr std::size_t max_exact_boxes = 20;

/// Exact E[solution size] of Greedy(p) by recursion over offers, memoized on
/// (offer index, blocked boxes still to come).
Rational exact_greedy_p_distribution(std::span<const geometry::Box> boxes, const Rational& p);

}  // namespace boxmis::policies
