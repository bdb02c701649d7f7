#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jlab/weighted_translation.hpp"

namespace jlab {

/// Dense γ x γ realization of a weighted translation on L^p(Z_γ): exactly
/// one positive entry per row and per column, hence invertible. Kept
/// deliberately independent of the log-domain machinery so the equivalence
/// tests compare genuinely different computation paths.
class CyclicMatrix {
public:
  explicit CyclicMatrix(Index order);
  static CyclicMatrix from_operator(const WeightedTranslation& t);

  Index order() const { return order_; }
  double at(Index row, Index col) const {
    return entries_[static_cast<std::size_t>(row * order_ + col)];
  }
  void set(Index row, Index col, double v) {
    entries_[static_cast<std::size_t>(row * order_ + col)] = v;
  }

  std::vector<double> apply(std::span<const double> x) const;
  CyclicMatrix multiplied_by(const CyclicMatrix& rhs) const;
  /// Dense Gauss-Jordan inverse (no structural shortcuts).
  CyclicMatrix inverse() const;
  CyclicMatrix transposed() const;
  double max_abs_entry() const;
  /// Weighted-permutation structure check: one nonzero per row and column.
  bool is_weighted_permutation() const;

private:
  Index order_;
  std::vector<double> entries_;  // row-major
};

struct InversePowerNorms {
  // (n, ||M^{-n}||) for n = 1..N; the values come from the single-entry
  // closed form (linear-domain running products).
  std::vector<std::pair<Index, double>> norms;
  // Largest n for which the dense repeated-multiply path was cross-checked
  // (smaller than N when the dense path overflowed and was skipped).
  Index dense_checked_up_to = 0;
  bool paths_agree = true;  // within 1e-8 relative wherever both ran
};

InversePowerNorms inverse_power_norms(const CyclicMatrix& m, Index n_limit);

/// min over n <= N of ||M^{-n}|| < eta certifies every target vector y
/// simultaneously: x_k = M^{-n_k} y gives x_k -> 0 with M^{n_k} x_k = y.
bool j_zero_full_space(const CyclicMatrix& m, Index n_limit, double eta);

struct OracleTrial {
  std::uint64_t seed = 0;
  Index gamma = 0;
  bool checker_holds = false;
  bool oracle_holds = false;
  double min_norm = 0.0;
  Index n_argmin = 0;
};

struct OracleSuiteResult {
  std::vector<OracleTrial> trials;
  Index agreements = 0;
};

/// Randomized Z_γ instances (log-weights uniform in [-1,1], a = generator)
/// comparing check_torsion_condition against j_zero_full_space. Instances
/// inside the boundary band |min_norm - eta| < 0.1 eta are resampled.
OracleSuiteResult run_equivalence_suite(Index gamma_lo, Index gamma_hi, Index trials,
                                        std::uint64_t seed, Index n_limit, double eta);

/// Random torsion instance used by the suite; exposed for reproducibility.
WeightedTranslation random_torsion_operator(Index gamma, std::uint64_t seed);

}  // namespace jlab
