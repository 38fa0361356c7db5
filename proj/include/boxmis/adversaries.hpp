#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "boxmis/geometry.hpp"
#include "boxmis/policies.hpp"
#include "boxmis/random.hpp"
#include "boxmis/rational.hpp"

namespace boxmis::adversaries {

using geometry::Arrangement;
using geometry::Box;
using geometry::OrderClass;
using geometry::ShapeClass;

/// Unit boxes at the 2^d corners of a unit target. `exclude_dominated` drops the
/// all-low corner, the only one whose upper vertex the target dominates.
struct Corners {
  bool exclude_dominated = false;
};
/// Grid of (ceil(sigma)+1)^d unit cubes meeting a target of side sigma.
/// `exclude_dominated` keeps only cubes with some axis at the top index.
struct UnitGrid {
  Rational sigma;
  bool exclude_dominated = false;
};
/// m thin boxes stacked along axis 1 against the target's upper axis-0 face, each
/// dominating the previous one. Unit-volume slabs for unit-volume and rectangle
/// targets, small cubes otherwise. Requires d >= 2.
struct Stack {
  bool cubes = false;
};

using PackVariant = std::variant<Corners, UnitGrid, Stack>;

/// Largest m the variant supports for a target in dimension d (nullopt: unbounded).
std::optional<std::size_t> pack_capacity(const PackVariant& variant, std::size_t d);

/// m pairwise disjoint boxes, each meeting `target`; verified before return.
/// Throws std::invalid_argument if m exceeds the capacity or the target has the wrong shape.
std::vector<Box> pack_intersecting_boxes(const Box& target, std::size_t m, const PackVariant& variant,
                                         const Rational& slack = Rational(1, 10));

struct AdaptivePackSpec {
  ShapeClass shape = geometry::UnitCube{};
  OrderClass order = OrderClass::Arbitrary;
  std::size_t dim = 2;
  std::size_t pack_count = 4;
  std::size_t blocks = 1;
  Rational slack = Rational(1, 10);
  /// Decoys offered per block before the adversary gives up on a block.
  std::size_t max_decoys_per_block = 64;

  /// The tight configuration for (shape, order, d): m = 2^d, 2^d - 1, (ceil(sigma)+1)^d,
  /// (ceil(sigma)+1)^d - ceil(sigma)^d, 1 for dominating order, or n - 1 for the
  /// unit-volume / cube / rectangle classes (n required there).
  static AdaptivePackSpec standard(const ShapeClass& shape, OrderClass order, std::size_t dim,
                                   std::size_t blocks, std::optional<std::size_t> n = std::nullopt);
};

struct VerifiedInstance {
  Arrangement arrangement;
  std::optional<std::vector<std::size_t>> marks;
  std::size_t opt_size = 0;
};

struct PlayResult {
  policies::Trace trace;
  std::size_t opt_size = 0;
  VerifiedInstance instance;
};

/// Plays the adaptive packing game: per block, disjoint decoys until the policy
/// accepts one, then pack_count boxes that meet the accepted box. Every emitted box
/// is validated against the claimed classes before it is offered.
/// Randomized policies are rejected: the construction relies on seeing the decisions.
PlayResult adaptive_pack_play(const AdaptivePackSpec& spec, const policies::PolicySpec& policy, RandomSource& rng);

struct MarkingSpec {
  std::size_t dim = 2;
  ShapeClass shape = geometry::UnitCube{};
  OrderClass order = OrderClass::Arbitrary;
  std::size_t levels = 2;
  std::size_t blocks = 1;
  /// Disjoint boxes appended after the last full block.
  std::size_t trailing_decoys = 0;
  Rational slack = Rational(1, 10);
};

/// Throws std::invalid_argument when (shape, order, d, levels) has no construction.
void check_marking_supported(const MarkingSpec& spec);

/// One block with its own marks (bit j marks the second box of level j), anchored at the origin.
std::vector<Box> marking_block(const MarkingSpec& spec, std::uint64_t marks);

/// Random marking instance. Blocks are translated copies placed along the diagonal;
/// each block's marks come from rng, one fair draw per level except the last.
VerifiedInstance marking_generate(const MarkingSpec& spec, RandomSource& rng);

/// Checks shape, order, the per-block marking pattern and cross-block separation.
/// Throws std::logic_error describing the first failure.
void verify_marking_instance(const MarkingSpec& spec, const VerifiedInstance& instance);

/// Fast sampler producing the same instances as marking_generate (same rng draws),
/// already scaled to integers. Block templates are verified once at construction.
class MarkingSampler {
 public:
  explicit MarkingSampler(const MarkingSpec& spec);
  policies::ScaledInstance sample(RandomSource& rng) const;
  std::size_t opt_size() const { return opt_size_; }
  std::size_t size() const;

 private:
  MarkingSpec spec_;
  std::size_t dim_ = 0;
  std::vector<std::vector<std::int64_t>> templates_;  // scaled coords per marks pattern
  std::vector<std::int64_t> decoys_;
  std::int64_t stride_ = 0;
  BigInt scale_ = 1;
  std::size_t opt_size_ = 0;
};

enum class ChainStyle { Disjoint, Overlapping };

/// n unit cubes along the main diagonal in dominating order. Disjoint chains step by
/// 1 + slack; overlapping chains step by 1 - slack so consecutive cubes meet.
Arrangement dominating_chain(std::size_t n, std::size_t dim, ChainStyle style,
                             const Rational& slack = Rational(1, 10));

/// Random dominating-order arrangement: upper vertices non-decreasing per axis,
/// integer side lengths, arbitrary overlaps.
Arrangement random_dominating_arrangement(std::size_t n, std::size_t dim, RandomSource& rng);

}  // namespace boxmis::adversaries
