#include "jlab/weighted_translation.hpp"

#include <cmath>
#include <limits>

namespace jlab {

namespace {
constexpr double kLogOverflow = 709.0;  // log(DBL_MAX) rounded down
}

WeightedTranslation::WeightedTranslation(GroupCarrier carrier, GroupElement a, Weight weight,
                                         double p)
    : carrier_(carrier), a_(a), weight_(std::move(weight)), p_(p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must be in [1, inf)");
  if (carrier_.is_cyclic()) a_.index = carrier_.canonical(a_.index);
}

void WeightedTranslation::require_same_carrier(const LpFunction& f) const {
  if (!(f.carrier() == carrier_)) throw std::invalid_argument("carrier mismatch");
}

double WeightedTranslation::log_omega_tilde(Index k, Index m) const {
  double s = 0.0;
  for (Index i = 0; i < m; ++i) s += log_weight(carrier_.translate(k, a_, -i));
  return -s;
}

double WeightedTranslation::log_omega(Index k, Index m) const {
  double s = 0.0;
  for (Index i = 1; i <= m; ++i) s += log_weight(carrier_.translate(k, a_, i));
  return s;
}

LpFunction WeightedTranslation::apply(const LpFunction& f) const {
  require_same_carrier(f);
  if (carrier_.is_cyclic()) {
    std::vector<double> vals(static_cast<std::size_t>(carrier_.order()), 0.0);
    for (Index k = 0; k < carrier_.order(); ++k) {
      const double fv = f.at(carrier_.translate(k, a_, -1));
      if (fv != 0.0) vals[static_cast<std::size_t>(k)] = std::exp(log_weight(k)) * fv;
    }
    return LpFunction::from_values(carrier_, p_, 0, std::move(vals));
  }
  const Index n = static_cast<Index>(f.values().size());
  std::vector<double> vals(f.values().size(), 0.0);
  const Index offset = f.offset() + a_.index;
  for (Index i = 0; i < n; ++i) {
    const double fv = f.values()[static_cast<std::size_t>(i)];
    if (fv != 0.0) vals[static_cast<std::size_t>(i)] = std::exp(log_weight(offset + i)) * fv;
  }
  return LpFunction::from_values(carrier_, p_, offset, std::move(vals));
}

LpFunction WeightedTranslation::iterate(const LpFunction& f, Index m) const {
  require_same_carrier(f);
  if (m < 0) throw std::invalid_argument("iterate: m must be >= 0");
  if (m == 0) return f;
  const Index shift = m * a_.index;
  auto cell = [&](Index target, double fv) -> double {
    if (fv == 0.0) return 0.0;
    const double t = -log_omega_tilde(target, m) + std::log(std::abs(fv));
    if (t > kLogOverflow)
      throw IterateRangeError(target, "iterate: overflow at index " + std::to_string(target));
    return std::copysign(std::exp(t), fv);
  };
  if (carrier_.is_cyclic()) {
    std::vector<double> vals(static_cast<std::size_t>(carrier_.order()), 0.0);
    for (Index j = 0; j < carrier_.order(); ++j) {
      const Index k = carrier_.canonical(j + shift);
      vals[static_cast<std::size_t>(k)] = cell(k, f.at(j));
    }
    return LpFunction::from_values(carrier_, p_, 0, std::move(vals));
  }
  std::vector<double> vals(f.values().size(), 0.0);
  const Index offset = f.offset() + shift;
  for (Index i = 0; i < static_cast<Index>(f.values().size()); ++i)
    vals[static_cast<std::size_t>(i)] = cell(offset + i, f.values()[static_cast<std::size_t>(i)]);
  return LpFunction::from_values(carrier_, p_, offset, std::move(vals));
}

LpFunction WeightedTranslation::inverse_step(const LpFunction& h) const {
  require_same_carrier(h);
  if (carrier_.is_cyclic()) {
    std::vector<double> vals(static_cast<std::size_t>(carrier_.order()), 0.0);
    for (Index k = 0; k < carrier_.order(); ++k) {
      const Index j = carrier_.translate(k, a_, 1);
      const double hv = h.at(j);
      if (hv != 0.0) vals[static_cast<std::size_t>(k)] = hv * std::exp(-log_weight(j));
    }
    return LpFunction::from_values(carrier_, p_, 0, std::move(vals));
  }
  std::vector<double> vals(h.values().size(), 0.0);
  const Index offset = h.offset() - a_.index;
  for (Index i = 0; i < static_cast<Index>(h.values().size()); ++i) {
    const double hv = h.values()[static_cast<std::size_t>(i)];
    if (hv != 0.0)
      vals[static_cast<std::size_t>(i)] = hv * std::exp(-log_weight(h.offset() + i));
  }
  return LpFunction::from_values(carrier_, p_, offset, std::move(vals));
}

std::vector<std::pair<Index, double>> WeightedTranslation::orbit_norms(const LpFunction& f,
                                                                       Index n) const {
  require_same_carrier(f);
  if (n < 1) throw std::invalid_argument("orbit_norms: n must be >= 1");
  std::vector<std::pair<Index, double>> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (Index m = 0; m <= n; ++m) {
    try {
      out.emplace_back(m, iterate(f, m).p_norm());
    } catch (const IterateRangeError&) {
      out.emplace_back(m, std::numeric_limits<double>::infinity());
    }
  }
  return out;
}

}  // namespace jlab
