#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace jlab {

using Index = std::int64_t;

enum class CarrierKind { FiniteCyclic, IntegerLine, RealLineGrid, PositiveRealsLogGrid };

struct GroupElement {
  Index index = 0;
};

/// Discretized model of a locally compact group with right Haar measure.
/// Group elements, translations and windows live entirely in integer index
/// space; the native coordinate (k, k*h, exp(k*h)) is used only by weight
/// evaluation and reporting.
///
/// Haar cell masses: counting measure (1) for FiniteCyclic and IntegerLine,
/// h for RealLineGrid, and h for PositiveRealsLogGrid (dx/x is uniform in
/// log coordinates).
class GroupCarrier {
public:
  static GroupCarrier finite_cyclic(Index order);
  static GroupCarrier integer_line();
  static GroupCarrier real_line_grid(double step);
  static GroupCarrier positive_reals_log_grid(double log_step);

  CarrierKind kind() const { return kind_; }
  Index order() const { return order_; }  // FiniteCyclic only
  double step() const { return step_; }   // grid carriers only
  bool is_cyclic() const { return kind_ == CarrierKind::FiniteCyclic; }
  bool is_line() const { return !is_cyclic(); }

  /// Reduces k mod order on FiniteCyclic; identity on line carriers.
  Index canonical(Index k) const;

  double cell_mass(Index k) const;
  double native(Index k) const;

  /// Index of x * a^m for x at index k.
  Index translate(Index k, GroupElement a, Index m) const;

  bool operator==(const GroupCarrier&) const = default;

private:
  GroupCarrier(CarrierKind kind, Index order, double step)
      : kind_(kind), order_(order), step_(step) {}

  CarrierKind kind_;
  Index order_;
  double step_;
};

struct IndexInterval {
  Index lo = 0;
  Index hi = 0;
  bool operator==(const IndexInterval&) const = default;
};

/// Finite union of disjoint index ranges, standing in for the compact
/// subsets of the theorems. All set arithmetic is exact integer arithmetic.
class CompactWindow {
public:
  CompactWindow() = default;
  static CompactWindow interval(Index lo, Index hi);
  /// Sorts and merges; overlapping or touching ranges are coalesced.
  static CompactWindow from_intervals(std::vector<IndexInterval> parts);

  bool empty() const { return parts_.empty(); }
  Index lo() const { return parts_.front().lo; }
  Index hi() const { return parts_.back().hi; }
  Index cell_count() const;
  double mass(const GroupCarrier& c) const;
  bool contains(Index k) const;
  bool intersects(const CompactWindow& other) const;
  CompactWindow translated(Index shift) const;
  const std::vector<IndexInterval>& intervals() const { return parts_; }

  template <class F>
  void for_each_index(F&& f) const {
    for (const auto& iv : parts_)
      for (Index k = iv.lo; k <= iv.hi; ++k) f(k);
  }

  std::vector<Index> indices() const;

  static CompactWindow union_of(const CompactWindow& a, const CompactWindow& b);

  bool operator==(const CompactWindow&) const = default;

private:
  std::vector<IndexInterval> parts_;  // sorted, disjoint
};

/// Builds a window from an ascending list of indices (duplicates allowed).
CompactWindow window_from_sorted_indices(const std::vector<Index>& ks);

/// Smallest N with K ∩ Ka^{±m} = ∅ for every m ≥ N, by exact integer
/// arithmetic: N = floor(diameter(K)/|a|) + 1 on line carriers. Empty on
/// FiniteCyclic (torsion elements never separate a window from itself) and
/// for a.index == 0 on a line carrier.
std::optional<Index> separation_bound(const GroupCarrier& c, const CompactWindow& k_set,
                                      GroupElement a);

/// Order of a as a group element: order/gcd(order, a) on FiniteCyclic;
/// 1 for the identity on a line carrier, empty otherwise (torsion-free).
std::optional<Index> torsion_order(const GroupCarrier& c, GroupElement a);

/// True when translates of a eventually separate every compact window
/// (line carrier with a.index != 0).
bool compact_passing(const GroupCarrier& c, GroupElement a);

}  // namespace jlab
