#include "boxmis/geometry.hpp"

#include <stdexcept>

namespace boxmis::geometry {

Box::Box(std::vector<Rational> lower, std::vector<Rational> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw std::invalid_argument("box must have at least one axis");
  if (lower_.size() != upper_.size()) throw std::invalid_argument("box corners have different dimensions");
  for (std::size_t a = 0; a < lower_.size(); ++a) {
    if (lower_[a] > upper_[a])
      throw std::invalid_argument("box has lower > upper on axis " + std::to_string(a));
  }
}

Box Box::cube(std::vector<Rational> lower, const Rational& side) {
  std::vector<Rational> upper;
  upper.reserve(lower.size());
  for (const auto& l : lower) upper.push_back(l + side);
  return Box(std::move(lower), std::move(upper));
}

Rational Box::volume() const {
  Rational v = 1;
  for (std::size_t a = 0; a < dim(); ++a) v *= side(a);
  return v;
}

bool Box::is_cube() const {
  Rational s = side(0);
  for (std::size_t a = 1; a < dim(); ++a) {
    if (side(a) != s) return false;
  }
  return true;
}

Box Box::translated(std::span<const Rational> shift) const {
  if (shift.size() != dim()) throw std::invalid_argument("translation has wrong dimension");
  std::vector<Rational> lo(lower_), hi(upper_);
  for (std::size_t a = 0; a < dim(); ++a) {
    lo[a] += shift[a];
    hi[a] += shift[a];
  }
  return Box(std::move(lo), std::move(hi));
}

ShapeKind kind_of(const ShapeClass& shape) { return static_cast<ShapeKind>(shape.index()); }

std::string shape_tag(const ShapeClass& shape) {
  switch (kind_of(shape)) {
    case ShapeKind::UnitCube: return "unit";
    case ShapeKind::SigmaBoundedCube: return "sigma:" + to_string(std::get<SigmaBoundedCube>(shape).sigma);
    case ShapeKind::UnitVolume: return "unitvolume";
    case ShapeKind::ArbitraryCube: return "cube";
    case ShapeKind::ArbitraryRect: return "rect";
  }
  throw std::logic_error("unknown shape");
}

ShapeClass parse_shape(const std::string& tag) {
  if (tag == "unit") return UnitCube{};
  if (tag == "unitvolume") return UnitVolume{};
  if (tag == "cube") return ArbitraryCube{};
  if (tag == "rect") return ArbitraryRect{};
  if (tag.rfind("sigma:", 0) == 0) {
    Rational sigma = parse_rational(tag.substr(6));
    if (sigma < 1) throw std::invalid_argument("sigma must be at least 1");
    return SigmaBoundedCube{sigma};
  }
  throw std::invalid_argument("unknown shape tag '" + tag + "'");
}

std::string order_tag(OrderClass order) {
  switch (order) {
    case OrderClass::Dominating: return "dominating";
    case OrderClass::NonDominated: return "nondominated";
    case OrderClass::Arbitrary: return "arbitrary";
  }
  throw std::logic_error("unknown order");
}

OrderClass parse_order(const std::string& tag) {
  if (tag == "dominating") return OrderClass::Dominating;
  if (tag == "nondominated") return OrderClass::NonDominated;
  if (tag == "arbitrary") return OrderClass::Arbitrary;
  throw std::invalid_argument("unknown order tag '" + tag + "'");
}

bool intersects(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("intersects: dimension mismatch");
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (a.upper(k) < b.lower(k) || b.upper(k) < a.lower(k)) return false;
  }
  return true;
}

bool dominates(const Box& b, const Box& a) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dominates: dimension mismatch");
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (b.upper(k) < a.upper(k)) return false;
  }
  return true;
}

bool in_shape(const Box& box, const ShapeClass& shape) {
  switch (kind_of(shape)) {
    case ShapeKind::UnitCube:
      return box.is_cube() && box.side(0) == 1;
    case ShapeKind::SigmaBoundedCube: {
      const Rational& sigma = std::get<SigmaBoundedCube>(shape).sigma;
      Rational s = box.side(0);
      return box.is_cube() && s >= 1 && s <= sigma;
    }
    case ShapeKind::UnitVolume:
      return box.volume() == 1;
    case ShapeKind::ArbitraryCube:
      return box.is_cube() && box.side(0) > 0;
    case ShapeKind::ArbitraryRect:
      for (std::size_t a = 0; a < box.dim(); ++a) {
        if (box.side(a) <= 0) return false;
      }
      return true;
  }
  return false;
}

ShapeReport validate_shape(std::span<const Box> boxes, const ShapeClass& shape) {
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (!in_shape(boxes[i], shape)) return {false, i};
  }
  return {};
}

ShapeReport validate_shape(const Arrangement& arrangement) {
  return validate_shape(arrangement.boxes, arrangement.shape);
}

namespace {

bool pair_ok(const Box& earlier, const Box& later, OrderClass order) {
  switch (order) {
    case OrderClass::Dominating: return dominates(later, earlier);
    case OrderClass::NonDominated: return !dominates(earlier, later);
    case OrderClass::Arbitrary: return true;
  }
  return false;
}

}  // namespace

OrderReport validate_order(std::span<const Box> boxes, OrderClass order) {
  if (order == OrderClass::Arbitrary) return {};
  for (std::size_t j = 1; j < boxes.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (!pair_ok(boxes[i], boxes[j], order)) return {false, std::pair{i, j}};
    }
  }
  return {};
}

OrderReport validate_order(const Arrangement& arrangement) {
  return validate_order(arrangement.boxes, arrangement.order);
}

bool order_ok_with_prefix(std::span<const Box> prefix, const Box& next, OrderClass order) {
  if (order == OrderClass::Arbitrary) return true;
  for (const auto& b : prefix) {
    if (!pair_ok(b, next, order)) return false;
  }
  return true;
}

void require_valid(const Arrangement& arrangement) {
  for (std::size_t i = 0; i < arrangement.boxes.size(); ++i) {
    if (arrangement.boxes[i].dim() != arrangement.dim)
      throw std::invalid_argument("box " + std::to_string(i) + " has dimension " +
                                  std::to_string(arrangement.boxes[i].dim()) + ", expected " +
                                  std::to_string(arrangement.dim));
  }
  if (auto r = validate_shape(arrangement); !r.ok)
    throw std::invalid_argument("box " + std::to_string(*r.first_violation) + " is not in shape class " +
                                shape_tag(arrangement.shape));
  if (auto r = validate_order(arrangement); !r.ok)
    throw std::invalid_argument("boxes " + std::to_string(r.first_violation->first) + " and " +
                                std::to_string(r.first_violation->second) + " violate order class " +
                                order_tag(arrangement.order));
}

OrderedGraph intersection_graph(std::span<const Box> boxes) {
  OrderedGraph g(boxes.size());
  for (std::size_t j = 1; j < boxes.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (intersects(boxes[i], boxes[j])) g.add_edge(i, j);
    }
  }
  return g;
}

bool arrangement_matches(std::span<const Box> boxes, const OrderedGraph& graph) {
  if (boxes.size() != graph.size()) return false;
  return intersection_graph(boxes) == graph;
}

}  // namespace boxmis::geometry
