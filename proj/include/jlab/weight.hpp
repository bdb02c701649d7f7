#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "jlab/group_carrier.hpp"

namespace jlab {

struct ConstantWeight {
  double value = 1.0;
};

/// One affine piece on a half-open/closed native-coordinate interval.
/// Endpoints may be +-infinity; inclusivity is taken verbatim from the
/// declaring case table.
struct WeightSegment {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_inclusive = false;
  bool hi_inclusive = true;
  double slope = 0.0;
  double intercept = 0.0;
};

struct PiecewiseLinearWeight {
  std::vector<WeightSegment> segments;
  // For x > period_start the weight repeats: w(x) = w(x - period).
  std::optional<double> period_start;
  std::optional<double> period;
};

struct ExponentialWeight {
  double rate = 0.0;  // w(x) = exp(rate * x_native)
};

struct LogTableWeight {
  std::vector<double> log_values;  // FiniteCyclic only, indexed 0..order-1
};

/// Strictly positive weight function evaluated at native coordinates of
/// grid points. Evaluation is exposed in the log domain; the exponential
/// variant never leaves it.
class Weight {
public:
  Weight() : v_(ConstantWeight{1.0}) {}

  static Weight constant(double value);
  static Weight exponential(double rate);
  static Weight piecewise(PiecewiseLinearWeight w);
  static Weight log_table(std::vector<double> log_values);

  /// log w at grid point k. Throws if the weight is undefined or
  /// non-positive there.
  double log_at(const GroupCarrier& c, Index k) const;

  /// w(x) at a native coordinate; not available for LogTable.
  double value_at_native(double x) const;

  bool is_log_table() const { return std::holds_alternative<LogTableWeight>(v_); }
  const PiecewiseLinearWeight* piecewise_spec() const {
    return std::get_if<PiecewiseLinearWeight>(&v_);
  }

  /// Checks positivity/finiteness of log w on the index range [lo, hi].
  void validate_on(const GroupCarrier& c, Index lo, Index hi) const;

  /// Native coordinates of declared segment boundaries where the left
  /// limit and the value disagree (jump discontinuities).
  std::vector<double> discontinuities() const;

private:
  explicit Weight(std::variant<ConstantWeight, PiecewiseLinearWeight, ExponentialWeight,
                               LogTableWeight>
                      v)
      : v_(std::move(v)) {}

  std::variant<ConstantWeight, PiecewiseLinearWeight, ExponentialWeight, LogTableWeight> v_;
};

}  // namespace jlab
