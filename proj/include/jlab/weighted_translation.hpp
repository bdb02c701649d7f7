#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jlab/lp_function.hpp"
#include "jlab/weight.hpp"

namespace jlab {

/// Thrown when exponentiating a log-domain product would overflow; names
/// the offending grid index instead of silently producing +inf cells.
class IterateRangeError : public std::runtime_error {
public:
  IterateRangeError(Index index, const std::string& what)
      : std::runtime_error(what), index_(index) {}
  Index index() const { return index_; }

private:
  Index index_;
};

/// The operator (Tf)(x) = w(x) f(x a^{-1}), its closed-form iterates
/// T^m f(x) = w~_m(x)^{-1} f(x a^{-m}), the inverse step
/// (Sh)(x) = h(xa)/w(xa), and the log-domain weight products
///   log w~_m(x) = -sum_{i=0}^{m-1} log w(x a^{-i}),
///   log w_m(x)  =  sum_{i=1}^{m}   log w(x a^{i}).
/// All products are accumulated in log space and exponentiated last.
class WeightedTranslation {
public:
  WeightedTranslation(GroupCarrier carrier, GroupElement a, Weight weight, double p);

  const GroupCarrier& carrier() const { return carrier_; }
  GroupElement a() const { return a_; }
  const Weight& weight() const { return weight_; }
  double p() const { return p_; }

  double log_weight(Index k) const { return weight_.log_at(carrier_, k); }
  double log_omega_tilde(Index k, Index m) const;
  double log_omega(Index k, Index m) const;

  LpFunction apply(const LpFunction& f) const;

  /// Closed-form T^m f via the log-domain product, not m repeated applies.
  /// m = 0 returns f. Throws IterateRangeError if a cell would overflow.
  LpFunction iterate(const LpFunction& f, Index m) const;

  LpFunction inverse_step(const LpFunction& h) const;

  /// (m, ||T^m f||_p) for m = 0..n; overflow shows up as +inf markers.
  std::vector<std::pair<Index, double>> orbit_norms(const LpFunction& f, Index n) const;

private:
  void require_same_carrier(const LpFunction& f) const;

  GroupCarrier carrier_;
  GroupElement a_;
  Weight weight_;
  double p_;
};

}  // namespace jlab
