#include "jlab/group_carrier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jlab {

GroupCarrier GroupCarrier::finite_cyclic(Index order) {
  if (order < 1) throw std::invalid_argument("finite_cyclic: order must be >= 1");
  return GroupCarrier(CarrierKind::FiniteCyclic, order, 1.0);
}

GroupCarrier GroupCarrier::integer_line() {
  return GroupCarrier(CarrierKind::IntegerLine, 0, 1.0);
}

GroupCarrier GroupCarrier::real_line_grid(double step) {
  if (!(step > 0.0)) throw std::invalid_argument("real_line_grid: step must be > 0");
  return GroupCarrier(CarrierKind::RealLineGrid, 0, step);
}

GroupCarrier GroupCarrier::positive_reals_log_grid(double log_step) {
  if (!(log_step > 0.0))
    throw std::invalid_argument("positive_reals_log_grid: log_step must be > 0");
  return GroupCarrier(CarrierKind::PositiveRealsLogGrid, 0, log_step);
}

Index GroupCarrier::canonical(Index k) const {
  if (!is_cyclic()) return k;
  Index r = k % order_;
  return r < 0 ? r + order_ : r;
}

double GroupCarrier::cell_mass(Index) const {
  switch (kind_) {
    case CarrierKind::FiniteCyclic:
    case CarrierKind::IntegerLine:
      return 1.0;
    case CarrierKind::RealLineGrid:
    case CarrierKind::PositiveRealsLogGrid:
      return step_;
  }
  return 1.0;
}

double GroupCarrier::native(Index k) const {
  switch (kind_) {
    case CarrierKind::FiniteCyclic:
      return static_cast<double>(canonical(k));
    case CarrierKind::IntegerLine:
      return static_cast<double>(k);
    case CarrierKind::RealLineGrid:
      return static_cast<double>(k) * step_;
    case CarrierKind::PositiveRealsLogGrid:
      return std::exp(static_cast<double>(k) * step_);
  }
  return 0.0;
}

Index GroupCarrier::translate(Index k, GroupElement a, Index m) const {
  return canonical(k + m * a.index);
}

CompactWindow CompactWindow::interval(Index lo, Index hi) {
  if (lo > hi) throw std::invalid_argument("CompactWindow: lo > hi");
  CompactWindow w;
  w.parts_.push_back({lo, hi});
  return w;
}

CompactWindow CompactWindow::from_intervals(std::vector<IndexInterval> parts) {
  for (const auto& iv : parts)
    if (iv.lo > iv.hi) throw std::invalid_argument("CompactWindow: lo > hi");
  std::sort(parts.begin(), parts.end(),
            [](const IndexInterval& a, const IndexInterval& b) { return a.lo < b.lo; });
  CompactWindow w;
  for (const auto& iv : parts) {
    if (!w.parts_.empty() && iv.lo <= w.parts_.back().hi + 1)
      w.parts_.back().hi = std::max(w.parts_.back().hi, iv.hi);
    else
      w.parts_.push_back(iv);
  }
  return w;
}

Index CompactWindow::cell_count() const {
  Index n = 0;
  for (const auto& iv : parts_) n += iv.hi - iv.lo + 1;
  return n;
}

double CompactWindow::mass(const GroupCarrier& c) const {
  double m = 0.0;
  for (const auto& iv : parts_)
    m += static_cast<double>(iv.hi - iv.lo + 1) * c.cell_mass(iv.lo);
  return m;
}

bool CompactWindow::contains(Index k) const {
  for (const auto& iv : parts_)
    if (k >= iv.lo && k <= iv.hi) return true;
  return false;
}

bool CompactWindow::intersects(const CompactWindow& other) const {
  auto it = parts_.begin();
  auto jt = other.parts_.begin();
  while (it != parts_.end() && jt != other.parts_.end()) {
    if (it->hi < jt->lo)
      ++it;
    else if (jt->hi < it->lo)
      ++jt;
    else
      return true;
  }
  return false;
}

CompactWindow CompactWindow::translated(Index shift) const {
  CompactWindow w;
  w.parts_ = parts_;
  for (auto& iv : w.parts_) {
    iv.lo += shift;
    iv.hi += shift;
  }
  return w;
}

std::vector<Index> CompactWindow::indices() const {
  std::vector<Index> ks;
  ks.reserve(static_cast<std::size_t>(cell_count()));
  for_each_index([&](Index k) { ks.push_back(k); });
  return ks;
}

CompactWindow CompactWindow::union_of(const CompactWindow& a, const CompactWindow& b) {
  std::vector<IndexInterval> parts = a.parts_;
  parts.insert(parts.end(), b.parts_.begin(), b.parts_.end());
  return from_intervals(std::move(parts));
}

CompactWindow window_from_sorted_indices(const std::vector<Index>& ks) {
  CompactWindow w;
  std::vector<IndexInterval> parts;
  for (Index k : ks) {
    if (!parts.empty() && k <= parts.back().hi + 1)
      parts.back().hi = std::max(parts.back().hi, k);
    else
      parts.push_back({k, k});
  }
  return CompactWindow::from_intervals(std::move(parts));
}

std::optional<Index> separation_bound(const GroupCarrier& c, const CompactWindow& k_set,
                                      GroupElement a) {
  if (c.is_cyclic()) return std::nullopt;  // torsion elements never pass through compacts
  if (a.index == 0) return std::nullopt;   // not compact-passing
  if (k_set.empty()) return 1;
  const Index diameter = k_set.hi() - k_set.lo();
  const Index step = a.index < 0 ? -a.index : a.index;
  return diameter / step + 1;
}

std::optional<Index> torsion_order(const GroupCarrier& c, GroupElement a) {
  if (c.is_cyclic()) {
    const Index g = std::gcd(c.order(), c.canonical(a.index));
    return c.order() / g;
  }
  if (a.index == 0) return 1;
  return std::nullopt;  // line carriers are torsion-free
}

bool compact_passing(const GroupCarrier& c, GroupElement a) {
  return c.is_line() && a.index != 0;
}

}  // namespace jlab
