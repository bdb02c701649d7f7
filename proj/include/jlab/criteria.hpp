#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jlab/weighted_translation.hpp"

namespace jlab {

enum class ConditionId {
  NecessaryAperiodic,  // necessary weight-decay condition, compact-passing case
  SufficientPair,      // common subsequence for the (i)+(ii) pair
  TorsionCondition,    // inverse-product decay on FiniteCyclic
  ZeroJEquivalence,    // weight decay equivalent to J(0) = L^p(G)
  PowerBounded,        // ess sup of the full-cycle product <= 1
};

enum class ConditionVerdict { Holds, FailsUpToBound, NotApplicable };

struct ConditionWitness {
  Index n = 0;
  CompactWindow e;             // sublevel exceptional set E_n
  double achieved_ess_sup = 0;  // binding sup actually attained
  double residual_mass = 0;     // lambda(window \ E_n)
};

/// Outcome of one mechanical theorem-condition check. Holds certifies the
/// finite condition actually scanned (n <= search_bound); the asymptotic
/// claim is extrapolation, flagged separately via decreasing_trend.
struct ConditionReport {
  ConditionId id = ConditionId::ZeroJEquivalence;
  ConditionVerdict verdict = ConditionVerdict::NotApplicable;
  std::vector<ConditionWitness> witnesses;  // up to 5 successful n (or the best failure)
  Index search_bound = 0;
  double eps = 0;
  double delta = 0;
  bool decreasing_trend = false;  // achieved sups decreased over the last successes
};

/// Exists n <= n_max and E = {k in window : w~_n(k) < eps} with
/// lambda(window \ E) < delta. Serves both the necessary condition and the
/// zero-J equivalence; `id` records which theorem invoked it.
ConditionReport check_tilde_decay(const WeightedTranslation& t, const CompactWindow& window,
                                  double eps, double delta, Index n_max,
                                  ConditionId id = ConditionId::ZeroJEquivalence);

/// One common n <= n_max satisfying the tilde-decay condition on `window`
/// and max over k_set of w_n < eps simultaneously.
ConditionReport check_sufficient_pair(const WeightedTranslation& t, const CompactWindow& window,
                                      const CompactWindow& k_set, double eps, double delta,
                                      Index n_max);

/// FiniteCyclic only: exists n <= n_max and E = {k in window : w_n(k)^{-1} < eps}
/// with lambda(window \ E) < delta. NotApplicable on line carriers.
ConditionReport check_torsion_condition(const WeightedTranslation& t, const CompactWindow& window,
                                        double eps, double delta, Index n_max);

/// FiniteCyclic only: power bounded iff max_k w_gamma(k) <= 1, gamma the
/// order of a. The report carries the exact max in achieved_ess_sup.
ConditionReport check_power_bounded_torsion(const WeightedTranslation& t);

enum class Classification {
  JClassAtZero,
  JClassWithIndicatorVector,
  PowerBoundedNotJClass,
  Inconclusive,
};

struct Verdict {
  Classification classification = Classification::Inconclusive;
  std::optional<CompactWindow> j_vector_window;  // the K of JClassWithIndicatorVector
  std::vector<ConditionReport> supporting_reports;
};

/// Aggregates the theorem conditions over the probe windows. Inconclusive
/// is a legitimate outcome (search-bound truncation).
Verdict classify(const WeightedTranslation& t, const std::vector<CompactWindow>& probe_windows,
                 const std::optional<CompactWindow>& k_window, double eps, double delta,
                 Index n_max);

/// Same, with one delta per probe window.
Verdict classify(const WeightedTranslation& t, const std::vector<CompactWindow>& probe_windows,
                 const std::optional<CompactWindow>& k_window, double eps,
                 const std::vector<double>& deltas, Index n_max);

std::string to_string(ConditionId id);
std::string to_string(ConditionVerdict v);
std::string to_string(Classification c);

}  // namespace jlab
