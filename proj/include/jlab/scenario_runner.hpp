#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jlab/criteria.hpp"
#include "jlab/matrix_oracle.hpp"
#include "jlab/scenario.hpp"
#include "jlab/witness.hpp"

namespace jlab {

WeightedTranslation make_operator(const Scenario& s);

struct ProfileRow {
  Index index;
  double native_x;
  double omega;
  double log_omega;
};

struct DescribeReport {
  std::optional<Index> torsion;
  bool compact_passing = false;
  // Separation bound per probe window (line carriers with a != e only).
  std::vector<std::optional<Index>> separation_bounds;
  std::vector<ProfileRow> profile;
  std::vector<double> weight_discontinuities;  // native coordinates
};

DescribeReport describe_scenario(const Scenario& s);

struct ProductRow {
  std::size_t probe;        // probe window ordinal
  Index n;
  double max_tilde;         // max over the probe window of w~_n
  double residual_mass;     // mass of the probe window outside {w~_n < eps}
  double max_omega_on_k;    // max over K of w_n; NaN when no K window
};

/// Raw per-n scan data behind products.csv; recomputable from the library
/// API alone (log products + cell masses).
std::vector<ProductRow> product_scan(const WeightedTranslation& t, const CompactWindow& probe,
                                     const std::optional<CompactWindow>& k_window, double eps,
                                     std::size_t probe_ordinal, Index n_report);

struct CheckOutput {
  Verdict verdict;
  std::vector<ProductRow> products;
};

CheckOutput run_check(const Scenario& s);

WitnessCertificate run_witness(const Scenario& s, const TargetSpec& target, double eps);

struct ExampleOutput {
  DescribeReport describe;
  CheckOutput check;
  WitnessCertificate certificate;
  std::vector<std::pair<Index, double>> orbit;  // orbit norms of the target
};

ExampleOutput run_example(const Scenario& s, double witness_eps = 1e-2);

// ---- CSV emission (plot data, not plots) ----------------------------------

/// Values < 1e-4 in magnitude are printed in scientific notation; the
/// decimal separator is always '.'.
std::string csv_value(double v);

void write_weight_profile_csv(const std::string& path, const std::vector<ProfileRow>& rows);
void write_products_csv(const std::string& path, const std::vector<ProductRow>& rows);
void write_orbit_norms_csv(const std::string& path,
                           const std::vector<std::pair<Index, double>>& rows);
void write_witness_csv(const std::string& path, const WitnessCertificate& cert);
void write_oracle_trials_csv(const std::string& path, const OracleSuiteResult& suite);

}  // namespace jlab
