#pragma once

#include <vector>

#include "jlab/group_carrier.hpp"

namespace jlab {

/// Finitely supported grid function with the discretized p-norm
/// ||f||_p = (sum_k mass(k) |f(k)|^p)^(1/p). Values outside the stored
/// slice are zero; on FiniteCyclic the slice covers exactly 0..order-1.
/// Essential suprema are exact maxima: every cell has positive mass, so
/// null sets are empty.
class LpFunction {
public:
  LpFunction();  // zero function on IntegerLine, p = 2
  static LpFunction zero(const GroupCarrier& c, double p);
  static LpFunction indicator(const GroupCarrier& c, double p, const CompactWindow& k_set);
  static LpFunction from_values(const GroupCarrier& c, double p, Index offset,
                                std::vector<double> values);

  const GroupCarrier& carrier() const { return carrier_; }
  double p() const { return p_; }
  Index offset() const { return offset_; }
  const std::vector<double>& values() const { return values_; }

  double at(Index k) const;
  double p_norm() const;
  double sup_norm() const;  // max_k |f(k)| over the grid
  double ess_sup_on(const CompactWindow& e) const;
  CompactWindow support() const;
  LpFunction restricted_to(const CompactWindow& e) const;
  LpFunction scaled(double c) const;
  bool is_zero() const;

private:
  LpFunction(GroupCarrier c, double p, Index offset, std::vector<double> values);

  GroupCarrier carrier_;
  double p_;
  Index offset_;
  std::vector<double> values_;
};

LpFunction add(const LpFunction& f, const LpFunction& g);

/// ||f - g||_p for functions on the same carrier.
double distance_p(const LpFunction& f, const LpFunction& g);

}  // namespace jlab
