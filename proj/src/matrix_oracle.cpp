#include "jlab/matrix_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "jlab/criteria.hpp"

namespace jlab {

namespace {
constexpr double kPathAgreementRel = 1e-8;
constexpr double kUnderflowFloor = 1e-280;  // below this both paths count as agreeing
}

CyclicMatrix::CyclicMatrix(Index order)
    : order_(order), entries_(static_cast<std::size_t>(order * order), 0.0) {
  if (order < 1) throw std::invalid_argument("CyclicMatrix: order must be >= 1");
}

CyclicMatrix CyclicMatrix::from_operator(const WeightedTranslation& t) {
  if (!t.carrier().is_cyclic())
    throw std::invalid_argument("from_operator: needs a FiniteCyclic carrier");
  const GroupCarrier& c = t.carrier();
  CyclicMatrix m(c.order());
  for (Index k = 0; k < c.order(); ++k)
    m.set(k, c.translate(k, t.a(), -1), std::exp(t.log_weight(k)));
  return m;
}

std::vector<double> CyclicMatrix::apply(std::span<const double> x) const {
  if (static_cast<Index>(x.size()) != order_)
    throw std::invalid_argument("CyclicMatrix::apply: size mismatch");
  std::vector<double> y(static_cast<std::size_t>(order_), 0.0);
  for (Index i = 0; i < order_; ++i) {
    double s = 0.0;
    for (Index j = 0; j < order_; ++j) s += at(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

CyclicMatrix CyclicMatrix::multiplied_by(const CyclicMatrix& rhs) const {
  if (rhs.order_ != order_) throw std::invalid_argument("multiply: order mismatch");
  CyclicMatrix out(order_);
  for (Index i = 0; i < order_; ++i)
    for (Index k = 0; k < order_; ++k) {
      const double a = at(i, k);
      if (a == 0.0) continue;
      for (Index j = 0; j < order_; ++j) {
        const double b = rhs.at(k, j);
        if (b != 0.0) out.set(i, j, out.at(i, j) + a * b);
      }
    }
  return out;
}

CyclicMatrix CyclicMatrix::inverse() const {
  const Index n = order_;
  std::vector<double> a(entries_);
  CyclicMatrix inv(n);
  for (Index i = 0; i < n; ++i) inv.set(i, i, 1.0);
  auto at_ = [&](Index i, Index j) -> double& {
    return a[static_cast<std::size_t>(i * n + j)];
  };
  for (Index col = 0; col < n; ++col) {
    Index pivot = col;
    for (Index r = col; r < n; ++r)
      if (std::abs(at_(r, col)) > std::abs(at_(pivot, col))) pivot = r;
    if (at_(pivot, col) == 0.0) throw std::domain_error("inverse: singular matrix");
    if (pivot != col) {
      for (Index j = 0; j < n; ++j) {
        std::swap(at_(pivot, j), at_(col, j));
        const double tmp = inv.at(pivot, j);
        inv.set(pivot, j, inv.at(col, j));
        inv.set(col, j, tmp);
      }
    }
    const double d = at_(col, col);
    for (Index j = 0; j < n; ++j) {
      at_(col, j) /= d;
      inv.set(col, j, inv.at(col, j) / d);
    }
    for (Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = at_(r, col);
      if (factor == 0.0) continue;
      for (Index j = 0; j < n; ++j) {
        at_(r, j) -= factor * at_(col, j);
        inv.set(r, j, inv.at(r, j) - factor * inv.at(col, j));
      }
    }
  }
  return inv;
}

CyclicMatrix CyclicMatrix::transposed() const {
  CyclicMatrix out(order_);
  for (Index i = 0; i < order_; ++i)
    for (Index j = 0; j < order_; ++j) out.set(j, i, at(i, j));
  return out;
}

double CyclicMatrix::max_abs_entry() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

bool CyclicMatrix::is_weighted_permutation() const {
  for (Index i = 0; i < order_; ++i) {
    Index row_nz = 0, col_nz = 0;
    for (Index j = 0; j < order_; ++j) {
      if (at(i, j) != 0.0) ++row_nz;
      if (at(j, i) != 0.0) ++col_nz;
    }
    if (row_nz != 1 || col_nz != 1) return false;
  }
  return true;
}

InversePowerNorms inverse_power_norms(const CyclicMatrix& m, Index n_limit) {
  if (!m.is_weighted_permutation())
    throw std::invalid_argument("inverse_power_norms: not a weighted permutation");
  const Index gamma = m.order();

  // Extract the shift and per-row weights from the matrix structure.
  // Row k has its nonzero at column (k - a) mod gamma with value w(k).
  std::vector<Index> source(static_cast<std::size_t>(gamma));
  std::vector<double> weight(static_cast<std::size_t>(gamma));
  for (Index k = 0; k < gamma; ++k)
    for (Index j = 0; j < gamma; ++j)
      if (m.at(k, j) != 0.0) {
        source[static_cast<std::size_t>(k)] = j;
        weight[static_cast<std::size_t>(k)] = m.at(k, j);
      }

  InversePowerNorms out;
  out.norms.reserve(static_cast<std::size_t>(n_limit));

  // Path (b): closed form. The k-th row of M^{-n} has the single entry
  // prod_{i=1}^{n} 1/w(k a^i); the operator p-norm of a weighted
  // permutation is its largest absolute entry for every p.
  std::vector<double> running(static_cast<std::size_t>(gamma), 1.0);
  std::vector<Index> pos(static_cast<std::size_t>(gamma));
  for (Index k = 0; k < gamma; ++k) pos[static_cast<std::size_t>(k)] = k;

  // Path (a): dense repeated multiplies of the Gauss-Jordan inverse.
  CyclicMatrix minv = m.inverse();
  CyclicMatrix dense_power(gamma);
  for (Index i = 0; i < gamma; ++i) dense_power.set(i, i, 1.0);
  bool dense_alive = true;

  for (Index n = 1; n <= n_limit; ++n) {
    for (Index k = 0; k < gamma; ++k) {
      // M^{-1} maps: row k picks up row pos via 1/w. Applying M^{-1} once
      // more divides by the weight at the next source position.
      const Index src = pos[static_cast<std::size_t>(k)];
      Index next = 0;
      for (Index j = 0; j < gamma; ++j)
        if (source[static_cast<std::size_t>(j)] == src) next = j;
      running[static_cast<std::size_t>(k)] /= weight[static_cast<std::size_t>(next)];
      pos[static_cast<std::size_t>(k)] = next;
    }
    double norm_b = 0.0;
    for (double v : running) norm_b = std::max(norm_b, std::abs(v));
    out.norms.emplace_back(n, norm_b);

    if (dense_alive) {
      dense_power = dense_power.multiplied_by(minv);
      const double norm_a = dense_power.max_abs_entry();
      if (!std::isfinite(norm_a)) {
        dense_alive = false;
      } else {
        out.dense_checked_up_to = n;
        const bool both_tiny = norm_a < kUnderflowFloor && norm_b < kUnderflowFloor;
        if (!both_tiny &&
            std::abs(norm_a - norm_b) > kPathAgreementRel * std::max(norm_a, norm_b))
          out.paths_agree = false;
      }
    }
  }
  return out;
}

bool j_zero_full_space(const CyclicMatrix& m, Index n_limit, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("j_zero_full_space: eta must be > 0");
  const auto ipn = inverse_power_norms(m, n_limit);
  for (const auto& [n, v] : ipn.norms)
    if (v < eta) return true;
  return false;
}

WeightedTranslation random_torsion_operator(Index gamma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logw(-1.0, 1.0);
  std::vector<double> logs(static_cast<std::size_t>(gamma));
  for (auto& v : logs) v = logw(rng);
  return WeightedTranslation(GroupCarrier::finite_cyclic(gamma), GroupElement{1},
                             Weight::log_table(std::move(logs)), 2.0);
}

OracleSuiteResult run_equivalence_suite(Index gamma_lo, Index gamma_hi, Index trials,
                                        std::uint64_t seed, Index n_limit, double eta) {
  if (gamma_lo < 2 || gamma_hi < gamma_lo)
    throw std::invalid_argument("equivalence suite: need 2 <= gamma_lo <= gamma_hi");
  OracleSuiteResult result;
  std::mt19937_64 seeder(seed);
  std::uniform_int_distribution<Index> gamma_dist(gamma_lo, gamma_hi);

  while (static_cast<Index>(result.trials.size()) < trials) {
    const std::uint64_t trial_seed = seeder();
    std::mt19937_64 pick(trial_seed);
    const Index gamma = gamma_dist(pick);
    const WeightedTranslation t = random_torsion_operator(gamma, trial_seed);
    const CyclicMatrix m = CyclicMatrix::from_operator(t);

    const auto ipn = inverse_power_norms(m, n_limit);
    double min_norm = std::numeric_limits<double>::infinity();
    Index n_argmin = 0;
    for (const auto& [n, v] : ipn.norms)
      if (v < min_norm) {
        min_norm = v;
        n_argmin = n;
      }
    if (std::abs(min_norm - eta) < 0.1 * eta) continue;  // boundary band: resample

    OracleTrial trial;
    trial.seed = trial_seed;
    trial.gamma = gamma;
    trial.min_norm = min_norm;
    trial.n_argmin = n_argmin;
    trial.oracle_holds = min_norm < eta;
    trial.checker_holds =
        check_torsion_condition(t, CompactWindow::interval(0, gamma - 1), eta, 0.5, n_limit)
            .verdict == ConditionVerdict::Holds;
    if (trial.checker_holds == trial.oracle_holds) ++result.agreements;
    result.trials.push_back(trial);
  }
  return result;
}

}  // namespace jlab
