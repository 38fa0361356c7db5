#include "boxmis/policies.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace boxmis::policies {

using geometry::Box;

PolicySpec parse_policy(const std::string& text) {
  if (text == "greedy") return NaiveGreedy{};
  if (text.rfind("greedyp:", 0) == 0) {
    GreedyP spec{parse_rational(text.substr(8))};
    validate_policy(spec);
    return spec;
  }
  if (text.rfind("classified:", 0) == 0) {
    std::string rest = text.substr(11);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("expected classified:<sigma>:<k>");
    long k = std::stol(rest.substr(colon + 1));
    if (k < 1) throw std::invalid_argument("classified policy needs k >= 1");
    ClassifiedGreedy spec{parse_rational(rest.substr(0, colon)), static_cast<unsigned>(k)};
    validate_policy(spec);
    return spec;
  }
  throw std::invalid_argument("unknown policy '" + text + "'");
}

std::string policy_tag(const PolicySpec& spec) {
  if (std::holds_alternative<NaiveGreedy>(spec)) return "greedy";
  if (auto* g = std::get_if<GreedyP>(&spec)) return "greedyp:" + to_string(g->p);
  const auto& c = std::get<ClassifiedGreedy>(spec);
  return "classified:" + to_string(c.sigma) + ":" + std::to_string(c.k);
}

void validate_policy(const PolicySpec& spec) {
  if (auto* g = std::get_if<GreedyP>(&spec)) {
    if (g->p < 0 || g->p > 1) throw std::domain_error("Greedy(p) needs p in [0, 1], got " + to_string(g->p));
  }
  if (auto* c = std::get_if<ClassifiedGreedy>(&spec)) {
    if (c->sigma < 1) throw std::domain_error("classified policy needs sigma >= 1");
    if (c->k < 1) throw std::domain_error("classified policy needs k >= 1");
  }
}

bool is_deterministic(const PolicySpec& spec) {
  if (std::holds_alternative<NaiveGreedy>(spec)) return true;
  if (auto* g = std::get_if<GreedyP>(&spec)) return g->p == 1;
  return std::get<ClassifiedGreedy>(spec).k == 1;
}

std::vector<std::size_t> Trace::accepted_indices() const {
  std::vector<std::size_t> out;
  for (const auto& d : decisions) {
    if (d.accepted) out.push_back(d.index);
  }
  return out;
}

bool ClassInterval::contains(const Rational& side) const {
  Rational s = pow(side, k);
  return pow(sigma, index) <= s && s <= pow(sigma, index + 1);
}

std::optional<Rational> ClassInterval::exact_lower() const { return exact_root(pow(sigma, index), k); }
std::optional<Rational> ClassInterval::exact_upper() const { return exact_root(pow(sigma, index + 1), k); }

std::vector<ClassInterval> class_bounds(const Rational& sigma, unsigned k) {
  if (sigma < 1) throw std::domain_error("class_bounds: sigma must be at least 1");
  if (k < 1) throw std::domain_error("class_bounds: k must be at least 1");
  const double b = std::pow(to_double(sigma), 1.0 / k);
  std::vector<ClassInterval> out;
  for (unsigned i = 0; i < k; ++i) out.push_back({i, sigma, k, std::pow(b, i), std::pow(b, i + 1)});
  return out;
}

bool ScaledInstance::intersects(std::size_t i, std::size_t j) const {
  for (std::size_t a = 0; a < dim; ++a) {
    if (upper(i, a) < lower(j, a) || upper(j, a) < lower(i, a)) return false;
  }
  return true;
}

Rational ScaledInstance::side(std::size_t i, std::size_t a) const {
  return Rational(BigInt(upper(i, a) - lower(i, a)), scale);
}

std::optional<ScaledInstance> scale_to_integers(std::span<const Box> boxes) {
  ScaledInstance out;
  if (boxes.empty()) return out;
  out.dim = boxes[0].dim();
  BigInt scale = 1;
  for (const auto& box : boxes) {
    if (box.dim() != out.dim) throw std::invalid_argument("boxes have different dimensions");
    for (std::size_t a = 0; a < out.dim; ++a) {
      scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(box.lower(a)));
      scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(box.upper(a)));
    }
  }
  const BigInt limit = BigInt(1) << 61;
  out.scale = scale;
  out.coords.reserve(boxes.size() * out.dim * 2);
  for (const auto& box : boxes) {
    for (std::size_t a = 0; a < out.dim; ++a) {
      for (const Rational* v : {&box.lower(a), &box.upper(a)}) {
        BigInt scaled = boost::multiprecision::numerator(*v) * (scale / boost::multiprecision::denominator(*v));
        if (abs(scaled) > limit) return std::nullopt;
        out.coords.push_back(scaled.convert_to<std::int64_t>());
      }
    }
  }
  return out;
}

namespace {

/// Accepted boxes keyed by their axis-0 extent. A query only visits entries whose
/// lower end lies within one maximal width of the query, which keeps well-separated
/// instances close to logarithmic per offer.
template <class Scalar>
class AxisIndex {
 public:
  template <class FullCheck>
  bool any_overlap(const Scalar& lo, const Scalar& hi, FullCheck&& full_check) const {
    if (entries_.empty()) return false;
    const Scalar from = lo - max_width_;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), from,
                               [](const Entry& e, const Scalar& key) { return e.lo < key; });
    for (; it != entries_.end() && !(hi < it->lo); ++it) {
      if (!(it->hi < lo) && full_check(it->id)) return true;
    }
    return false;
  }

  void insert(const Scalar& lo, const Scalar& hi, std::size_t id) {
    auto it = std::upper_bound(entries_.begin(), entries_.end(), lo,
                               [](const Scalar& key, const Entry& e) { return key < e.lo; });
    entries_.insert(it, Entry{lo, hi, id});
    Scalar width = hi - lo;
    if (entries_.size() == 1 || max_width_ < width) max_width_ = width;
  }

 private:
  struct Entry {
    Scalar lo;
    Scalar hi;
    std::size_t id;
  };
  std::vector<Entry> entries_;
  Scalar max_width_{};
};

struct RationalBoxes {
  using Scalar = Rational;
  const Box* data;

  const Rational& lo0(std::size_t i) const { return data[i].lower(0); }
  const Rational& hi0(std::size_t i) const { return data[i].upper(0); }
  bool intersects(std::size_t i, std::size_t j) const { return geometry::intersects(data[i], data[j]); }
  bool is_cube(std::size_t i) const { return data[i].is_cube(); }
  Rational side(std::size_t i) const { return data[i].side(0); }
};

struct ScaledBoxes {
  using Scalar = std::int64_t;
  const ScaledInstance* inst;

  std::int64_t lo0(std::size_t i) const { return inst->lower(i, 0); }
  std::int64_t hi0(std::size_t i) const { return inst->upper(i, 0); }
  bool intersects(std::size_t i, std::size_t j) const { return inst->intersects(i, j); }
  bool is_cube(std::size_t i) const {
    std::int64_t s = inst->upper(i, 0) - inst->lower(i, 0);
    for (std::size_t a = 1; a < inst->dim; ++a) {
      if (inst->upper(i, a) - inst->lower(i, a) != s) return false;
    }
    return true;
  }
  Rational side(std::size_t i) const { return inst->side(i, 0); }
};

template <class Boxes>
class Engine {
 public:
  Engine(const PolicySpec& spec, RandomSource& rng) : rng_(rng) {
    validate_policy(spec);
    if (auto* g = std::get_if<GreedyP>(&spec)) coin_.emplace(g->p);
    if (auto* c = std::get_if<ClassifiedGreedy>(&spec)) {
      classified_ = true;
      sigma_ = c->sigma;
      k_ = c->k;
      auto i = static_cast<unsigned>(rng_.uniform_below(c->k));
      class_low_ = pow(c->sigma, i);
      class_high_ = pow(c->sigma, i + 1);
    }
  }

  bool offer(const Boxes& boxes, std::size_t i) {
    bool eligible = true;
    if (classified_) {
      Rational s = boxes.side(i);
      if (!boxes.is_cube(i) || s < 1 || s > sigma_)
        throw std::invalid_argument("classified policy offered box " + std::to_string(i) +
                                    " that is not a cube with side in [1, sigma]");
      Rational sk = pow(s, k_);
      eligible = class_low_ <= sk && sk <= class_high_;
    }
    bool accept = false;
    if (eligible &&
        !index_.any_overlap(boxes.lo0(i), boxes.hi0(i), [&](std::size_t id) { return boxes.intersects(id, i); })) {
      accept = coin_ ? coin_->flip(rng_) : true;
    }
    if (accept) {
      index_.insert(boxes.lo0(i), boxes.hi0(i), i);
      ++trace_.solution_size;
    }
    trace_.decisions.push_back({i, accept});
    return accept;
  }

  const Trace& trace() const { return trace_; }
  Trace take_trace() { return std::move(trace_); }

 private:
  RandomSource& rng_;
  std::optional<Coin> coin_;
  bool classified_ = false;
  Rational sigma_;
  unsigned k_ = 1;
  Rational class_low_, class_high_;
  AxisIndex<typename Boxes::Scalar> index_;
  Trace trace_;
};

void check_same_dim(std::span<const Box> boxes) {
  for (const auto& b : boxes) {
    if (b.dim() != boxes[0].dim()) throw std::invalid_argument("boxes have different dimensions");
  }
}

}  // namespace

struct OnlinePolicy::Impl {
  Impl(const PolicySpec& spec, RandomSource& rng, const std::vector<Box>& b) : engine(spec, rng), boxes(b) {}
  Engine<RationalBoxes> engine;
  const std::vector<Box>& boxes;
};

OnlinePolicy::OnlinePolicy(const PolicySpec& spec, RandomSource& rng, const std::vector<Box>& boxes)
    : impl_(std::make_unique<Impl>(spec, rng, boxes)) {}

OnlinePolicy::~OnlinePolicy() = default;

bool OnlinePolicy::offer_next() {
  std::size_t i = impl_->engine.trace().decisions.size();
  if (i >= impl_->boxes.size()) throw std::out_of_range("offer_next: no box waiting");
  if (i > 0 && impl_->boxes[i].dim() != impl_->boxes[0].dim())
    throw std::invalid_argument("offered box has a different dimension");
  return impl_->engine.offer(RationalBoxes{impl_->boxes.data()}, i);
}

const Trace& OnlinePolicy::trace() const { return impl_->engine.trace(); }

Trace run_policy(const PolicySpec& spec, std::span<const Box> boxes, RandomSource& rng) {
  check_same_dim(boxes);
  Engine<RationalBoxes> engine(spec, rng);
  RationalBoxes view{boxes.data()};
  for (std::size_t i = 0; i < boxes.size(); ++i) engine.offer(view, i);
  return engine.take_trace();
}

Trace run_policy(const PolicySpec& spec, const ScaledInstance& boxes, RandomSource& rng) {
  Engine<ScaledBoxes> engine(spec, rng);
  ScaledBoxes view{&boxes};
  for (std::size_t i = 0; i < boxes.size(); ++i) engine.offer(view, i);
  return engine.take_trace();
}

Rational exact_greedy_p_distribution(std::span<const Box> boxes, const Rational& p) {
  if (boxes.size() > max_exact_boxes) throw std::invalid_argument("exact distribution supports at most 20 boxes");
  if (p < 0 || p > 1) throw std::domain_error("p must lie in [0, 1]");
  check_same_dim(boxes);
  const std::size_t n = boxes.size();
  std::vector<std::uint64_t> conflicts(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && geometry::intersects(boxes[i], boxes[j])) conflicts[i] |= std::uint64_t{1} << j;
    }
  }
  std::vector<std::unordered_map<std::uint64_t, Rational>> memo(n + 1);
  const Rational q = 1 - p;
  // value(i, blocked): expected accepts among offers i.. given the boxes blocked so far.
  auto value = [&](auto&& self, std::size_t i, std::uint64_t blocked) -> Rational {
    while (i < n && (blocked >> i & 1)) ++i;
    if (i == n) return 0;
    std::uint64_t future = blocked & ~((std::uint64_t{1} << i) - 1);
    if (auto it = memo[i].find(future); it != memo[i].end()) return it->second;
    Rational accept = p == 0 ? Rational(0) : p * (1 + self(self, i + 1, future | conflicts[i]));
    Rational reject = q == 0 ? Rational(0) : q * self(self, i + 1, future);
    Rational out = accept + reject;
    memo[i].emplace(future, out);
    return out;
  };
  return value(value, 0, 0);
}

}  // namespace boxmis::policies
