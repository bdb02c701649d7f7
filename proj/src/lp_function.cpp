#include "jlab/lp_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jlab {

namespace {

void require_same_space(const LpFunction& f, const LpFunction& g) {
  if (!(f.carrier() == g.carrier())) throw std::invalid_argument("carrier mismatch");
  if (f.p() != g.p()) throw std::invalid_argument("exponent p mismatch");
}

void require_valid_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must be in [1, inf)");
}

}  // namespace

LpFunction::LpFunction() : LpFunction(GroupCarrier::integer_line(), 2.0, 0, {}) {}

LpFunction::LpFunction(GroupCarrier c, double p, Index offset, std::vector<double> values)
    : carrier_(c), p_(p), offset_(offset), values_(std::move(values)) {}

LpFunction LpFunction::zero(const GroupCarrier& c, double p) {
  require_valid_p(p);
  if (c.is_cyclic()) return LpFunction(c, p, 0, std::vector<double>(c.order(), 0.0));
  return LpFunction(c, p, 0, {});
}

LpFunction LpFunction::indicator(const GroupCarrier& c, double p, const CompactWindow& k_set) {
  LpFunction f = zero(c, p);
  if (k_set.empty()) return f;
  if (c.is_cyclic()) {
    k_set.for_each_index([&](Index k) {
      if (k < 0 || k >= c.order())
        throw std::invalid_argument("indicator: window outside 0..order-1");
      f.values_[static_cast<std::size_t>(k)] = 1.0;
    });
    return f;
  }
  f.offset_ = k_set.lo();
  f.values_.assign(static_cast<std::size_t>(k_set.hi() - k_set.lo() + 1), 0.0);
  k_set.for_each_index(
      [&](Index k) { f.values_[static_cast<std::size_t>(k - f.offset_)] = 1.0; });
  return f;
}

LpFunction LpFunction::from_values(const GroupCarrier& c, double p, Index offset,
                                   std::vector<double> values) {
  require_valid_p(p);
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("from_values: non-finite value");
  if (c.is_cyclic()) {
    std::vector<double> wrapped(static_cast<std::size_t>(c.order()), 0.0);
    for (std::size_t i = 0; i < values.size(); ++i)
      wrapped[static_cast<std::size_t>(c.canonical(offset + static_cast<Index>(i)))] +=
          values[i];
    return LpFunction(c, p, 0, std::move(wrapped));
  }
  return LpFunction(c, p, offset, std::move(values));
}

double LpFunction::at(Index k) const {
  k = carrier_.canonical(k);
  const Index i = k - offset_;
  if (i < 0 || i >= static_cast<Index>(values_.size())) return 0.0;
  return values_[static_cast<std::size_t>(i)];
}

double LpFunction::p_norm() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = std::abs(values_[i]);
    if (v == 0.0) continue;
    acc += carrier_.cell_mass(offset_ + static_cast<Index>(i)) * std::pow(v, p_);
  }
  return std::pow(acc, 1.0 / p_);
}

double LpFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double LpFunction::ess_sup_on(const CompactWindow& e) const {
  if (e.empty()) throw std::invalid_argument("empty window");
  double m = 0.0;
  e.for_each_index([&](Index k) { m = std::max(m, std::abs(at(k))); });
  return m;
}

CompactWindow LpFunction::support() const {
  std::vector<Index> ks;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] != 0.0) ks.push_back(offset_ + static_cast<Index>(i));
  return window_from_sorted_indices(ks);
}

LpFunction LpFunction::restricted_to(const CompactWindow& e) const {
  LpFunction f = *this;
  for (std::size_t i = 0; i < f.values_.size(); ++i)
    if (!e.contains(offset_ + static_cast<Index>(i))) f.values_[i] = 0.0;
  return f;
}

LpFunction LpFunction::scaled(double c) const {
  LpFunction f = *this;
  for (double& v : f.values_) v *= c;
  return f;
}

bool LpFunction::is_zero() const {
  for (double v : values_)
    if (v != 0.0) return false;
  return true;
}

LpFunction add(const LpFunction& f, const LpFunction& g) {
  require_same_space(f, g);
  const GroupCarrier& c = f.carrier();
  if (c.is_cyclic()) {
    std::vector<double> vals(static_cast<std::size_t>(c.order()));
    for (Index k = 0; k < c.order(); ++k)
      vals[static_cast<std::size_t>(k)] = f.at(k) + g.at(k);
    return LpFunction::from_values(c, f.p(), 0, std::move(vals));
  }
  if (f.values().empty()) return g;
  if (g.values().empty()) return f;
  const Index lo = std::min(f.offset(), g.offset());
  const Index hi = std::max(f.offset() + static_cast<Index>(f.values().size()),
                            g.offset() + static_cast<Index>(g.values().size())) -
                   1;
  std::vector<double> vals(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (Index k = lo; k <= hi; ++k)
    vals[static_cast<std::size_t>(k - lo)] = f.at(k) + g.at(k);
  return LpFunction::from_values(c, f.p(), lo, std::move(vals));
}

double distance_p(const LpFunction& f, const LpFunction& g) {
  return add(f, g.scaled(-1.0)).p_norm();
}

}  // namespace jlab
