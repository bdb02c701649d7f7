#include "jlab/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace jlab {

namespace {

double piecewise_eval(const PiecewiseLinearWeight& w, double x) {
  if (w.period && w.period_start && x > *w.period_start) {
    const double n = std::ceil((x - *w.period_start) / *w.period);
    x -= n * (*w.period);
  }
  for (const auto& s : w.segments) {
    const bool lo_ok = s.lo_inclusive ? x >= s.lo : x > s.lo;
    const bool hi_ok = s.hi_inclusive ? x <= s.hi : x < s.hi;
    if (lo_ok && hi_ok) return s.slope * x + s.intercept;
  }
  throw std::domain_error("piecewise weight undefined at x = " + std::to_string(x));
}

}  // namespace

Weight Weight::constant(double value) {
  if (!(value > 0.0)) throw std::invalid_argument("constant weight must be > 0");
  return Weight(ConstantWeight{value});
}

Weight Weight::exponential(double rate) { return Weight(ExponentialWeight{rate}); }

Weight Weight::piecewise(PiecewiseLinearWeight w) {
  if (w.segments.empty()) throw std::invalid_argument("piecewise weight needs segments");
  if (w.period.has_value() != w.period_start.has_value())
    throw std::invalid_argument("period and period_start must be given together");
  if (w.period && !(*w.period > 0.0))
    throw std::invalid_argument("period must be > 0");
  return Weight(std::move(w));
}

Weight Weight::log_table(std::vector<double> log_values) {
  if (log_values.empty()) throw std::invalid_argument("log table must be nonempty");
  for (double v : log_values)
    if (!std::isfinite(v)) throw std::invalid_argument("log table entries must be finite");
  return Weight(LogTableWeight{std::move(log_values)});
}

double Weight::value_at_native(double x) const {
  if (const auto* c = std::get_if<ConstantWeight>(&v_)) return c->value;
  if (const auto* e = std::get_if<ExponentialWeight>(&v_)) return std::exp(e->rate * x);
  if (const auto* p = std::get_if<PiecewiseLinearWeight>(&v_)) return piecewise_eval(*p, x);
  throw std::logic_error("value_at_native: log-table weight has no native form");
}

double Weight::log_at(const GroupCarrier& c, Index k) const {
  if (const auto* t = std::get_if<LogTableWeight>(&v_)) {
    if (!c.is_cyclic()) throw std::invalid_argument("log-table weight requires FiniteCyclic");
    if (static_cast<Index>(t->log_values.size()) != c.order())
      throw std::invalid_argument("log table size must equal group order");
    return t->log_values[static_cast<std::size_t>(c.canonical(k))];
  }
  if (const auto* e = std::get_if<ExponentialWeight>(&v_)) {
    // Stays in the log domain; the linear value may be astronomically large.
    return e->rate * c.native(k);
  }
  const double v = value_at_native(c.native(k));
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::domain_error("weight must be strictly positive at index " + std::to_string(k));
  return std::log(v);
}

void Weight::validate_on(const GroupCarrier& c, Index lo, Index hi) const {
  for (Index k = lo; k <= hi; ++k) {
    const double lw = log_at(c, k);
    if (std::holds_alternative<ExponentialWeight>(v_)) continue;
    if (!std::isfinite(lw))
      throw std::domain_error("weight has non-finite log at index " + std::to_string(k));
  }
}

std::vector<double> Weight::discontinuities() const {
  const auto* p = std::get_if<PiecewiseLinearWeight>(&v_);
  if (!p) return {};
  std::set<double> breaks;
  for (const auto& s : p->segments) {
    if (std::isfinite(s.lo)) breaks.insert(s.lo);
    if (std::isfinite(s.hi)) breaks.insert(s.hi);
  }
  std::vector<double> jumps;
  for (double b : breaks) {
    double value, left, right;
    try {
      value = piecewise_eval(*p, b);
    } catch (const std::domain_error&) {
      continue;  // boundary not covered at all; validation reports it elsewhere
    }
    left = right = value;
    for (const auto& s : p->segments) {
      if (s.hi == b && !s.hi_inclusive) left = s.slope * b + s.intercept;
      if (s.hi == b && s.hi_inclusive) left = value;
      if (s.lo == b && !s.lo_inclusive) right = s.slope * b + s.intercept;
    }
    const double tol = 1e-9 * (1.0 + std::abs(value));
    if (std::abs(left - value) > tol || std::abs(right - value) > tol) jumps.push_back(b);
  }
  if (p->period) {
    // Periodic seam: the right limit at period_start comes from the segment
    // starting at period_start - period.
    const double ps = *p->period_start;
    try {
      const double value = piecewise_eval(*p, ps);
      double right = value;
      for (const auto& s : p->segments)
        if (s.lo == ps - *p->period && !s.lo_inclusive) right = s.slope * s.lo + s.intercept;
      if (std::abs(right - value) > 1e-9 * (1.0 + std::abs(value)) &&
          std::find(jumps.begin(), jumps.end(), ps) == jumps.end())
        jumps.push_back(ps);
    } catch (const std::domain_error&) {
    }
  }
  return jumps;
}

}  // namespace jlab
