#include "boxmis/adversaries.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "boxmis/expectation.hpp"

namespace boxmis::adversaries {

using geometry::ShapeKind;

namespace {

std::vector<Rational> filled(std::size_t d, const Rational& value) { return std::vector<Rational>(d, value); }

void check_slack(const Rational& slack) {
  if (slack <= 0 || slack >= Rational(1, 2)) throw std::invalid_argument("slack must lie in (0, 1/2)");
}

Rational max_upper(const Box& b) { return *std::max_element(b.upper().begin(), b.upper().end()); }
Rational min_lower(const Box& b) { return *std::min_element(b.lower().begin(), b.lower().end()); }

std::size_t index_sum(const std::vector<std::size_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); }

/// All index vectors in {0..base-1}^d, ordered by coordinate sum, then lexicographically.
std::vector<std::vector<std::size_t>> grid_indices(std::size_t base, std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(d, 0);
  for (;;) {
    out.push_back(cur);
    std::size_t a = 0;
    while (a < d && ++cur[a] == base) cur[a++] = 0;
    if (a == d) break;
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    std::size_t sx = index_sum(x), sy = index_sum(y);
    if (sx != sy) return sx < sy;
    return x < y;
  });
  return out;
}

std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > (std::size_t{1} << 40) / std::max<std::size_t>(base, 1)) throw std::overflow_error("pack capacity overflow");
    out *= base;
  }
  return out;
}

/// Unit-sided side length of the decoys used for a shape class.
Rational decoy_side(const ShapeClass& shape) {
  if (auto* s = std::get_if<geometry::SigmaBoundedCube>(&shape)) return s->sigma;
  return 1;
}

struct Shifted {};
using AnyPack = std::variant<Corners, UnitGrid, Stack, Shifted>;

std::vector<Box> build_pack(const Box& target, std::size_t m, const AnyPack& variant, const Rational& slack) {
  const std::size_t d = target.dim();
  std::vector<Box> out;
  if (std::holds_alternative<Shifted>(variant)) {
    if (m > 1) throw std::invalid_argument("dominating order admits one box per block");
    if (m == 1) {
      std::vector<Rational> shift;
      for (std::size_t a = 0; a < d; ++a) shift.push_back(slack * target.side(a));
      out.push_back(target.translated(shift));
    }
    return out;
  }
  if (auto* c = std::get_if<Corners>(&variant)) {
    if (!(target.is_cube() && target.side(0) == 1)) throw std::invalid_argument("corner packs need a unit target");
    const Rational o = 1 - slack;
    for (const auto& s : grid_indices(2, d)) {
      if (c->exclude_dominated && index_sum(s) == 0) continue;
      if (out.size() == m) break;
      std::vector<Rational> lo;
      for (std::size_t a = 0; a < d; ++a) lo.push_back(target.lower(a) - o + 2 * o * s[a]);
      out.push_back(Box::cube(std::move(lo), 1));
    }
  } else if (auto* g = std::get_if<UnitGrid>(&variant)) {
    if (!(target.is_cube() && target.side(0) == g->sigma)) throw std::invalid_argument("grid packs need a target of side sigma");
    const BigInt top_big = ceil(g->sigma);
    const auto top = top_big.convert_to<std::size_t>();
    const Rational mu = g->sigma - Rational(top_big) + 1;
    const Rational delta = mu * slack;
    const Rational eps = mu * slack / Rational(top_big);
    for (const auto& idx : grid_indices(top + 1, d)) {
      if (g->exclude_dominated && std::find(idx.begin(), idx.end(), top) == idx.end()) continue;
      if (out.size() == m) break;
      std::vector<Rational> lo;
      for (std::size_t a = 0; a < d; ++a) lo.push_back(target.lower(a) - 1 + delta + Rational(idx[a]) * (1 + eps));
      out.push_back(Box::cube(std::move(lo), 1));
    }
  } else {
    const auto& st = std::get<Stack>(variant);
    if (d < 2) throw std::invalid_argument("stacked packs need at least two dimensions");
    const Rational h = target.side(1) / Rational(2 * m);
    for (std::size_t k = 0; k < m; ++k) {
      const Rational y = target.lower(1) + (Rational(2 * k) + Rational(1, 2)) * h;
      std::vector<Rational> lo(d), hi(d);
      lo[1] = y;
      hi[1] = y + h;
      lo[0] = target.upper(0);
      hi[0] = target.upper(0) + (st.cubes ? h : Rational(1) / h);
      for (std::size_t a = 2; a < d; ++a) {
        lo[a] = target.lower(a);
        hi[a] = target.lower(a) + (st.cubes ? h : Rational(1));
      }
      out.emplace_back(std::move(lo), std::move(hi));
    }
  }
  if (out.size() < m) throw std::invalid_argument("pack of " + std::to_string(m) + " boxes exceeds the variant's capacity");
  return out;
}

void verify_pack(const Box& target, const std::vector<Box>& pack, const AnyPack& variant) {
  for (std::size_t i = 0; i < pack.size(); ++i) {
    if (!geometry::intersects(pack[i], target)) throw std::logic_error("pack box misses the target");
    for (std::size_t j = 0; j < i; ++j) {
      if (geometry::intersects(pack[i], pack[j])) throw std::logic_error("pack boxes overlap");
    }
  }
  bool non_dominated = false;
  if (auto* c = std::get_if<Corners>(&variant)) non_dominated = c->exclude_dominated;
  if (auto* g = std::get_if<UnitGrid>(&variant)) non_dominated = g->exclude_dominated;
  if (std::holds_alternative<Stack>(variant)) non_dominated = true;
  if (non_dominated) {
    std::vector<Box> seq{target};
    seq.insert(seq.end(), pack.begin(), pack.end());
    if (!validate_order(seq, OrderClass::NonDominated).ok) throw std::logic_error("pack violates non-dominated order");
  }
  if (std::holds_alternative<Stack>(variant) && !validate_order(pack, OrderClass::Dominating).ok)
    throw std::logic_error("stacked pack is not a dominating chain");
  if (std::holds_alternative<Shifted>(variant)) {
    std::vector<Box> seq{target};
    seq.insert(seq.end(), pack.begin(), pack.end());
    if (!validate_order(seq, OrderClass::Dominating).ok) throw std::logic_error("shifted pack does not dominate");
  }
}

AnyPack pack_for(const ShapeClass& shape, OrderClass order) {
  if (order == OrderClass::Dominating) return Shifted{};
  const bool nd = order == OrderClass::NonDominated;
  switch (geometry::kind_of(shape)) {
    case ShapeKind::UnitCube: return Corners{nd};
    case ShapeKind::SigmaBoundedCube: return UnitGrid{std::get<geometry::SigmaBoundedCube>(shape).sigma, nd};
    case ShapeKind::ArbitraryCube: return Stack{true};
    case ShapeKind::UnitVolume:
    case ShapeKind::ArbitraryRect: return Stack{false};
  }
  throw std::logic_error("unknown shape");
}

}  // namespace

std::optional<std::size_t> pack_capacity(const PackVariant& variant, std::size_t d) {
  if (auto* c = std::get_if<Corners>(&variant)) return checked_pow(2, d) - (c->exclude_dominated ? 1 : 0);
  if (auto* g = std::get_if<UnitGrid>(&variant)) {
    auto top = ceil(g->sigma).convert_to<std::size_t>();
    return checked_pow(top + 1, d) - (g->exclude_dominated ? checked_pow(top, d) : 0);
  }
  return std::nullopt;
}

std::vector<Box> pack_intersecting_boxes(const Box& target, std::size_t m, const PackVariant& variant,
                                         const Rational& slack) {
  check_slack(slack);
  if (auto cap = pack_capacity(variant, target.dim()); cap && m > *cap)
    throw std::invalid_argument("requested " + std::to_string(m) + " boxes but at most " + std::to_string(*cap) +
                                " disjoint boxes of this kind meet the target");
  AnyPack any = std::visit([](const auto& v) -> AnyPack { return v; }, variant);
  auto pack = build_pack(target, m, any, slack);
  verify_pack(target, pack, any);
  return pack;
}

AdaptivePackSpec AdaptivePackSpec::standard(const ShapeClass& shape, OrderClass order, std::size_t dim,
                                            std::size_t blocks, std::optional<std::size_t> n) {
  AdaptivePackSpec spec;
  spec.shape = shape;
  spec.order = order;
  spec.dim = dim;
  spec.blocks = blocks;
  AnyPack variant = pack_for(shape, order);
  if (std::holds_alternative<Shifted>(variant)) {
    spec.pack_count = 1;
  } else if (auto* c = std::get_if<Corners>(&variant)) {
    spec.pack_count = *pack_capacity(*c, dim);
  } else if (auto* g = std::get_if<UnitGrid>(&variant)) {
    spec.pack_count = *pack_capacity(*g, dim);
  } else {
    if (!n || *n < 2) throw std::invalid_argument("the n - 1 configuration needs an instance size n >= 2");
    spec.pack_count = *n - 1;
  }
  return spec;
}

PlayResult adaptive_pack_play(const AdaptivePackSpec& spec, const policies::PolicySpec& policy, RandomSource& rng) {
  check_slack(spec.slack);
  if (spec.dim == 0) throw std::invalid_argument("dimension must be positive");
  if (!policies::is_deterministic(policy))
    throw std::invalid_argument("adaptive packing is only played against deterministic policies");
  const AnyPack variant = pack_for(spec.shape, spec.order);
  if (std::holds_alternative<Stack>(variant) && spec.dim < 2)
    throw std::invalid_argument("the n - 1 configuration needs d >= 2");
  if (auto* c = std::get_if<Corners>(&variant); c && spec.pack_count > *pack_capacity(*c, spec.dim))
    throw std::invalid_argument("pack_count exceeds the corner capacity");
  if (auto* g = std::get_if<UnitGrid>(&variant); g && spec.pack_count > *pack_capacity(*g, spec.dim))
    throw std::invalid_argument("pack_count exceeds the grid capacity");

  PlayResult result;
  auto& arrangement = result.instance.arrangement;
  arrangement.dim = spec.dim;
  arrangement.shape = spec.shape;
  arrangement.order = spec.order;
  std::vector<Box>& boxes = arrangement.boxes;
  policies::OnlinePolicy online(policy, rng, boxes);
  Rational cursor = 0;

  auto emit = [&](Box box) {
    if (box.dim() != spec.dim) throw std::logic_error("adversary produced a box of the wrong dimension");
    if (!geometry::in_shape(box, spec.shape)) throw std::logic_error("adversary produced a box outside the shape class");
    if (!geometry::order_ok_with_prefix(boxes, box, spec.order))
      throw std::logic_error("adversary produced a box violating the order class");
    cursor = std::max(cursor, max_upper(box));
    boxes.push_back(std::move(box));
    return online.offer_next();
  };

  const Rational side = decoy_side(spec.shape);
  for (std::size_t block = 0; block < spec.blocks; ++block) {
    std::optional<std::size_t> accepted;
    for (std::size_t t = 0; t < spec.max_decoys_per_block && !accepted; ++t) {
      if (emit(Box::cube(filled(spec.dim, cursor + 1), side))) accepted = boxes.size() - 1;
    }
    if (!accepted) continue;
    Box target = boxes[*accepted];
    auto pack = build_pack(target, spec.pack_count, variant, spec.slack);
    verify_pack(target, pack, variant);
    for (auto& b : pack) emit(std::move(b));
  }

  geometry::require_valid(arrangement);
  result.trace = online.trace();
  result.instance.opt_size = expectation::max_disjoint_boxes(boxes);
  result.opt_size = result.instance.opt_size;
  return result;
}

// ---------------------------------------------------------------------------
// Marking constructions

void check_marking_supported(const MarkingSpec& spec) {
  check_slack(spec.slack);
  if (spec.dim == 0) throw std::invalid_argument("dimension must be positive");
  if (spec.levels == 0 || 2 * spec.levels > OrderedGraph::max_vertices - 1)
    throw std::invalid_argument("marking blocks need between 1 and 31 levels");
  if (spec.order == OrderClass::Dominating)
    throw std::invalid_argument("marking adversaries are defined for nondominated and arbitrary order");
  const bool nd = spec.order == OrderClass::NonDominated;
  switch (geometry::kind_of(spec.shape)) {
    case ShapeKind::UnitCube:
      if (spec.dim < 2) throw std::invalid_argument("unit-cube marking needs d >= 2");
      if (nd && spec.levels > 2) throw std::invalid_argument("unit-cube marking in nondominated order supports L <= 2");
      if (spec.levels > 3) throw std::invalid_argument("unit-cube marking supports L <= 3");
      return;
    case ShapeKind::SigmaBoundedCube: {
      const Rational& sigma = std::get<geometry::SigmaBoundedCube>(spec.shape).sigma;
      if (spec.levels > 1 && spec.levels > ceil_log2(sigma))
        throw std::invalid_argument("sigma-bounded marking supports L <= ceil(log2 sigma)");
      if (nd && spec.dim < 2) throw std::invalid_argument("nondominated marking needs d >= 2");
      return;
    }
    case ShapeKind::UnitVolume:
      if (spec.dim < 2) throw std::invalid_argument("unit-volume marking needs d >= 2");
      return;
    case ShapeKind::ArbitraryCube:
    case ShapeKind::ArbitraryRect:
      if (nd && spec.dim < 2) throw std::invalid_argument("nondominated marking needs d >= 2");
      return;
  }
}

namespace {

Box unit_box_2d(std::size_t d, const Rational& x, const Rational& y) {
  std::vector<Rational> lo(d, Rational(0));
  lo[0] = x;
  lo[1] = y;
  return Box::cube(std::move(lo), 1);
}

std::vector<Box> unit_block(const MarkingSpec& spec, std::uint64_t marks) {
  const std::size_t d = spec.dim;
  const Rational& o = spec.slack;
  std::vector<Box> out{unit_box_2d(d, 0, 0), unit_box_2d(d, 2, 0)};
  const Box m1 = out[marks & 1];
  const Rational mx = m1.lower(0), my = m1.lower(1);
  if (spec.order == OrderClass::NonDominated) {
    if (spec.levels >= 2) {
      out.push_back(unit_box_2d(d, mx - 1 + o, 1 - o));
      out.push_back(unit_box_2d(d, mx + 1 - o, 1 - o));
    }
    return out;
  }
  if (spec.levels >= 2) {
    out.push_back(unit_box_2d(d, mx - o, my - 1 + o));
    out.push_back(unit_box_2d(d, mx - o, my + 1 - o));
  }
  if (spec.levels >= 3) {
    const bool up = (marks >> 1 & 1) != 0;
    const Rational y = up ? my + 1 - o / 2 : my - 1 + o / 2;
    out.push_back(unit_box_2d(d, mx - 1 + o / 2, y));
    out.push_back(unit_box_2d(d, mx + 1 - 3 * o / 2, y));
  }
  return out;
}

/// Children nest on axis 0 inside the marked parent; every box spans a common
/// hyperplane on axis 1, and tops on axis 1 rise with the level.
std::vector<Box> nested_block(const MarkingSpec& spec, std::uint64_t marks) {
  const std::size_t d = spec.dim;
  const std::size_t L = spec.levels;
  const ShapeKind kind = geometry::kind_of(spec.shape);
  const bool cubes = kind == ShapeKind::ArbitraryCube || kind == ShapeKind::SigmaBoundedCube;

  Rational w1 = 1;
  Rational eta = spec.slack;
  if (kind == ShapeKind::SigmaBoundedCube) {
    const Rational& sigma = std::get<geometry::SigmaBoundedCube>(spec.shape).sigma;
    w1 = sigma;
    if (L > 1) {
      // (2 / (1 - eta))^(L-1) <= sigma keeps the smallest level at side >= 1.
      Rational room = (1 - Rational(pow(BigInt(2), static_cast<unsigned>(L - 1))) / sigma) / Rational(L - 1);
      eta = std::min(eta, room / 2);
    }
  }
  const Rational r = (1 - eta) / 2;
  std::vector<Rational> w(L), h(L);
  w[0] = w1;
  for (std::size_t j = 1; j < L; ++j) w[j] = w[j - 1] * r;
  for (std::size_t j = 0; j < L; ++j) h[j] = cubes ? w[j] : Rational(1) / w[j];
  Rational smallest = w[0];
  Rational tallest = h[0];
  for (std::size_t j = 0; j < L; ++j) {
    smallest = std::min({smallest, w[j], h[j]});
    tallest = std::max(tallest, h[j]);
  }
  const Rational tau = smallest / Rational(2 * L);

  auto make = [&](std::size_t level, const Rational& x0) {
    std::vector<Rational> lo(d), hi(d);
    lo[0] = x0;
    hi[0] = x0 + w[level];
    if (d >= 2) {
      hi[1] = tallest + Rational(level) * tau;
      lo[1] = hi[1] - h[level];
    }
    for (std::size_t a = 2; a < d; ++a) {
      lo[a] = 0;
      hi[a] = cubes ? w[level] : Rational(1);
    }
    return Box(std::move(lo), std::move(hi));
  };

  std::vector<Box> out{make(0, 0), make(0, w1 + w1 / 2)};
  for (std::size_t j = 1; j < L; ++j) {
    const Box& parent = out[2 * (j - 1) + (marks >> (j - 1) & 1)];
    const Rational p = parent.lower(0);
    const Rational gap = w[j - 1] * eta / 4;
    Box left = make(j, p + gap);
    Box right = make(j, p + w[j - 1] - gap - w[j]);
    out.push_back(std::move(left));
    out.push_back(std::move(right));
  }
  return out;
}

struct Layout {
  Rational stride;
  Rational origin;
};

/// Blocks are placed at multiples of a stride that clears the union of all block variants.
Layout block_layout(const MarkingSpec& spec) {
  Rational hi, lo;
  bool first = true;
  const std::uint64_t outcomes = std::uint64_t{1} << (spec.levels - 1);
  for (std::uint64_t marks = 0; marks < outcomes; ++marks) {
    for (const auto& b : marking_block(spec, marks)) {
      if (first || max_upper(b) > hi) hi = max_upper(b);
      if (first || min_lower(b) < lo) lo = min_lower(b);
      first = false;
    }
  }
  return {hi - lo + 1, lo};
}

std::vector<Box> trailing_decoys(const MarkingSpec& spec, const Layout& layout) {
  std::vector<Box> out;
  const Rational side = decoy_side(spec.shape);
  Rational at = layout.origin + Rational(spec.blocks) * layout.stride;
  for (std::size_t k = 0; k < spec.trailing_decoys; ++k) {
    out.push_back(Box::cube(filled(spec.dim, at), side));
    at += side + 1;
  }
  return out;
}

std::uint64_t draw_marks(const MarkingSpec& spec, RandomSource& rng) {
  std::uint64_t marks = 0;
  for (std::size_t j = 0; j + 1 < spec.levels; ++j) marks |= rng.uniform_below(2) << j;
  return marks;
}

}  // namespace

std::vector<Box> marking_block(const MarkingSpec& spec, std::uint64_t marks) {
  check_marking_supported(spec);
  if (geometry::kind_of(spec.shape) == ShapeKind::UnitCube) return unit_block(spec, marks);
  return nested_block(spec, marks);
}

VerifiedInstance marking_generate(const MarkingSpec& spec, RandomSource& rng) {
  check_marking_supported(spec);
  const Layout layout = block_layout(spec);
  VerifiedInstance inst;
  inst.arrangement.dim = spec.dim;
  inst.arrangement.shape = spec.shape;
  inst.arrangement.order = spec.order;
  std::vector<std::size_t> marked;
  for (std::size_t b = 0; b < spec.blocks; ++b) {
    const std::uint64_t marks = draw_marks(spec, rng);
    const auto shift = filled(spec.dim, Rational(b) * layout.stride);
    const std::size_t base = inst.arrangement.boxes.size();
    for (const auto& box : marking_block(spec, marks)) inst.arrangement.boxes.push_back(box.translated(shift));
    for (std::size_t j = 0; j + 1 < spec.levels; ++j) marked.push_back(base + 2 * j + (marks >> j & 1));
  }
  for (auto& decoy : trailing_decoys(spec, layout)) inst.arrangement.boxes.push_back(std::move(decoy));
  inst.marks = std::move(marked);
  inst.opt_size = expectation::max_disjoint_boxes(inst.arrangement.boxes);
  verify_marking_instance(spec, inst);
  return inst;
}

void verify_marking_instance(const MarkingSpec& spec, const VerifiedInstance& instance) {
  const auto& boxes = instance.arrangement.boxes;
  const std::size_t per_block = 2 * spec.levels;
  if (boxes.size() != per_block * spec.blocks + spec.trailing_decoys)
    throw std::logic_error("marking instance has the wrong number of boxes");
  try {
    geometry::require_valid(instance.arrangement);
  } catch (const std::invalid_argument& e) {
    throw std::logic_error(std::string("marking instance failed validation: ") + e.what());
  }
  if (!instance.marks) throw std::logic_error("marking instance carries no marks");
  std::vector<bool> is_marked(boxes.size(), false);
  for (auto i : *instance.marks) is_marked.at(i) = true;
  for (std::size_t b = 0; b < spec.blocks; ++b) {
    std::uint64_t marks = 0;
    for (std::size_t j = 0; j + 1 < spec.levels; ++j) {
      const std::size_t first = b * per_block + 2 * j;
      if (is_marked[first] == is_marked[first + 1]) throw std::logic_error("level without exactly one mark");
      if (is_marked[first + 1]) marks |= std::uint64_t{1} << j;
    }
    std::span<const Box> block(boxes.data() + b * per_block, per_block);
    if (!geometry::arrangement_matches(block, expectation::marking_block_graph(spec.levels, marks)))
      throw std::logic_error("block " + std::to_string(b) + " does not follow the marking pattern");
  }
  const std::size_t blocked = per_block * spec.blocks;
  for (std::size_t j = 0; j < boxes.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const bool same_block = j < blocked && i / per_block == j / per_block;
      if (!same_block && geometry::intersects(boxes[i], boxes[j]))
        throw std::logic_error("boxes " + std::to_string(i) + " and " + std::to_string(j) + " from different blocks meet");
    }
  }
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!is_marked[i] && !is_marked[j] && geometry::intersects(boxes[i], boxes[j]))
        throw std::logic_error("unmarked boxes overlap");
    }
  }
}

MarkingSampler::MarkingSampler(const MarkingSpec& spec) : spec_(spec), dim_(spec.dim) {
  check_marking_supported(spec);
  const Layout layout = block_layout(spec);
  const std::uint64_t outcomes = std::uint64_t{1} << (spec.levels - 1);
  std::vector<std::vector<Box>> blocks;
  for (std::uint64_t marks = 0; marks < outcomes; ++marks) {
    // A single block plus the trailing decoys is a complete instance; verify each variant.
    MarkingSpec one = spec;
    one.blocks = 1;
    one.trailing_decoys = 0;
    VerifiedInstance inst;
    inst.arrangement = {spec.dim, spec.shape, spec.order, marking_block(spec, marks)};
    std::vector<std::size_t> marked;
    for (std::size_t j = 0; j + 1 < spec.levels; ++j) marked.push_back(2 * j + (marks >> j & 1));
    inst.marks = marked;
    verify_marking_instance(one, inst);
    blocks.push_back(inst.arrangement.boxes);
  }
  // Blocks are separated by the stride on every axis, so cross-block pairs are disjoint
  // and later blocks are never dominated by earlier ones.
  std::vector<Box> all;
  for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
  const auto decoys = trailing_decoys(spec, layout);
  all.insert(all.end(), decoys.begin(), decoys.end());
  all.push_back(Box::cube(filled(spec.dim, Rational(0)), layout.stride));
  auto scaled = policies::scale_to_integers(all);
  if (!scaled) throw std::overflow_error("marking coordinates do not fit the integer fast path");
  scale_ = scaled->scale;
  const std::size_t per_block = 2 * spec.levels;
  const std::size_t stride_coords = per_block * dim_ * 2;
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    templates_.emplace_back(scaled->coords.begin() + static_cast<std::ptrdiff_t>(t * stride_coords),
                            scaled->coords.begin() + static_cast<std::ptrdiff_t>((t + 1) * stride_coords));
  }
  decoys_.assign(scaled->coords.begin() + static_cast<std::ptrdiff_t>(blocks.size() * stride_coords),
                 scaled->coords.end() - static_cast<std::ptrdiff_t>(2 * dim_));
  stride_ = scaled->upper(scaled->size() - 1, 0);
  const BigInt reach = BigInt(stride_) * BigInt(spec.blocks + 1);
  if (reach > (BigInt(1) << 61)) throw std::overflow_error("marking instance too large for the integer fast path");
  opt_size_ = spec.blocks * (spec.levels + 1) + spec.trailing_decoys;
  // The per-block optimum is computed, not assumed; blocks add up because they are disjoint.
  const std::size_t block_opt = expectation::mis_size(expectation::marking_block_graph(spec.levels, 0)).size;
  opt_size_ = spec.blocks * block_opt + spec.trailing_decoys;
}

std::size_t MarkingSampler::size() const { return 2 * spec_.levels * spec_.blocks + spec_.trailing_decoys; }

policies::ScaledInstance MarkingSampler::sample(RandomSource& rng) const {
  policies::ScaledInstance out;
  out.dim = dim_;
  out.scale = scale_;
  out.coords.reserve(size() * dim_ * 2);
  for (std::size_t b = 0; b < spec_.blocks; ++b) {
    const auto& tpl = templates_[draw_marks(spec_, rng)];
    const std::int64_t shift = stride_ * static_cast<std::int64_t>(b);
    for (auto c : tpl) out.coords.push_back(c + shift);
  }
  for (auto c : decoys_) out.coords.push_back(c);
  return out;
}

Arrangement dominating_chain(std::size_t n, std::size_t dim, ChainStyle style, const Rational& slack) {
  check_slack(slack);
  if (n == 0 || dim == 0) throw std::invalid_argument("dominating_chain needs n >= 1 and d >= 1");
  const Rational step = style == ChainStyle::Disjoint ? 1 + slack : 1 - slack;
  Arrangement out{dim, geometry::UnitCube{}, OrderClass::Dominating, {}};
  for (std::size_t k = 0; k < n; ++k) out.boxes.push_back(Box::cube(filled(dim, Rational(k) * step), 1));
  geometry::require_valid(out);
  return out;
}

Arrangement random_dominating_arrangement(std::size_t n, std::size_t dim, RandomSource& rng) {
  Arrangement out{dim, geometry::ArbitraryRect{}, OrderClass::Dominating, {}};
  std::vector<Rational> upper(dim);
  for (auto& u : upper) u = Rational(rng.uniform_below(4));
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      for (auto& u : upper) u += Rational(rng.uniform_below(3));
    }
    std::vector<Rational> lower;
    for (const auto& u : upper) lower.push_back(u - Rational(1 + rng.uniform_below(4)));
    out.boxes.emplace_back(std::move(lower), upper);
  }
  geometry::require_valid(out);
  return out;
}

}  // namespace boxmis::adversaries
