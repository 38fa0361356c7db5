#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "boxmis/graph.hpp"
#include "boxmis/rational.hpp"

namespace boxmis::geometry {

/// Closed axis-parallel box with exact rational corners.
class Box {
 public:
  /// Throws std::invalid_argument if dimensions differ, are zero, or lower > upper on an axis.
  Box(std::vector<Rational> lower, std::vector<Rational> upper);

  static Box cube(std::vector<Rational> lower, const Rational& side);

  std::size_t dim() const { return lower_.size(); }
  const std::vector<Rational>& lower() const { return lower_; }
  const std::vector<Rational>& upper() const { return upper_; }
  const Rational& lower(std::size_t axis) const { return lower_[axis]; }
  const Rational& upper(std::size_t axis) const { return upper_[axis]; }
  Rational side(std::size_t axis) const { return upper_[axis] - lower_[axis]; }
  Rational volume() const;
  bool is_cube() const;

  Box translated(std::span<const Rational> shift) const;

  bool operator==(const Box&) const = default;

 private:
  std::vector<Rational> lower_;
  std::vector<Rational> upper_;
};

struct UnitCube {
  bool operator==(const UnitCube&) const = default;
};
/// Cubes with side in [1, sigma].
struct SigmaBoundedCube {
  Rational sigma;
  bool operator==(const SigmaBoundedCube&) const = default;
};
struct UnitVolume {
  bool operator==(const UnitVolume&) const = default;
};
struct ArbitraryCube {
  bool operator==(const ArbitraryCube&) const = default;
};
struct ArbitraryRect {
  bool operator==(const ArbitraryRect&) const = default;
};

using ShapeClass = std::variant<UnitCube, SigmaBoundedCube, UnitVolume, ArbitraryCube, ArbitraryRect>;

enum class ShapeKind { UnitCube, SigmaBoundedCube, UnitVolume, ArbitraryCube, ArbitraryRect };

/// Dominating: every later box dominates every earlier one.
/// NonDominated: no later box is dominated by an earlier one.
enum class OrderClass { Dominating, NonDominated, Arbitrary };

ShapeKind kind_of(const ShapeClass& shape);
std::string shape_tag(const ShapeClass& shape);
ShapeClass parse_shape(const std::string& tag);
std::string order_tag(OrderClass order);
OrderClass parse_order(const std::string& tag);

/// An arrangement together with the classes it claims to belong to.
/// Claims are checked by validate_shape / validate_order, never assumed.
struct Arrangement {
  std::size_t dim = 0;
  ShapeClass shape = ArbitraryRect{};
  OrderClass order = OrderClass::Arbitrary;
  std::vector<Box> boxes;
};

/// Closed boxes: touching faces count as intersecting.
bool intersects(const Box& a, const Box& b);

/// True iff b's upper vertex is coordinate-wise >= a's upper vertex (non-strict).
bool dominates(const Box& b, const Box& a);

bool in_shape(const Box& box, const ShapeClass& shape);

struct ShapeReport {
  bool ok = true;
  std::optional<std::size_t> first_violation;
};

struct OrderReport {
  bool ok = true;
  /// (earlier, later) indices of the first offending pair.
  std::optional<std::pair<std::size_t, std::size_t>> first_violation;
};

ShapeReport validate_shape(std::span<const Box> boxes, const ShapeClass& shape);
ShapeReport validate_shape(const Arrangement& arrangement);
OrderReport validate_order(std::span<const Box> boxes, OrderClass order);
OrderReport validate_order(const Arrangement& arrangement);

/// Checks only the pairs (i, new box) for i < new; used by incremental generators.
bool order_ok_with_prefix(std::span<const Box> prefix, const Box& next, OrderClass order);

/// Throws std::invalid_argument if the arrangement's claims or dimensions do not hold.
void require_valid(const Arrangement& arrangement);

OrderedGraph intersection_graph(std::span<const Box> boxes);

/// True iff the intersection graph equals `graph` under the identity labelling.
bool arrangement_matches(std::span<const Box> boxes, const OrderedGraph& graph);

}  // namespace boxmis::geometry
