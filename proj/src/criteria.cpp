#include "jlab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jlab {

namespace {

constexpr std::size_t kMaxWitnesses = 5;
constexpr std::size_t kTrendLength = 10;

// Shared sublevel scan. Membership in E_n is always acc_k > log(1/eps),
// where acc_k is the running log-product governing the condition:
//   tilde side:   acc_k = sum_{i=0}^{n-1} log w(k a^{-i}),  w~_n = exp(-acc)
//   torsion side: acc_k = sum_{i=1}^{n}   log w(k a^{i}),   w_n^{-1} = exp(-acc)
ConditionReport run_sublevel_scan(const WeightedTranslation& t, const CompactWindow& window,
                                  double eps, double delta, Index n_max, ConditionId id,
                                  bool tilde_side, const CompactWindow* pair_k) {
  if (window.empty()) throw std::invalid_argument("sublevel scan: empty window");
  if (!(eps > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("sublevel scan: eps and delta must be > 0");
  if (n_max < 1) throw std::invalid_argument("sublevel scan: n_max must be >= 1");

  ConditionReport report;
  report.id = id;
  report.search_bound = n_max;
  report.eps = eps;
  report.delta = delta;

  const std::vector<Index> ks = window.indices();
  std::vector<double> acc(ks.size(), 0.0);
  std::vector<Index> k2s;
  std::vector<double> acc2;
  if (pair_k) {
    if (pair_k->empty()) throw std::invalid_argument("sublevel scan: empty K window");
    k2s = pair_k->indices();
    acc2.assign(k2s.size(), 0.0);
  }

  const double threshold = -std::log(eps);
  const GroupElement a = t.a();
  const GroupCarrier& c = t.carrier();

  std::vector<double> success_sups;
  double best_residual = std::numeric_limits<double>::infinity();
  double best_sup = std::numeric_limits<double>::infinity();
  ConditionWitness best_failure;
  bool have_failure = false;

  for (Index n = 1; n <= n_max; ++n) {
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const Index point = tilde_side ? c.translate(ks[i], a, -(n - 1)) : c.translate(ks[i], a, n);
      acc[i] += t.log_weight(point);
    }
    bool pair_ok = true;
    double pair_sup = 0.0;
    if (pair_k) {
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < k2s.size(); ++j) {
        acc2[j] += t.log_weight(c.translate(k2s[j], a, n));
        m = std::max(m, acc2[j]);
      }
      pair_sup = std::exp(m);
      pair_ok = pair_sup < eps;
    }

    double residual = 0.0;
    double min_member_acc = std::numeric_limits<double>::infinity();
    double max_acc = -std::numeric_limits<double>::infinity();
    std::vector<Index> members;
    members.reserve(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
      max_acc = std::max(max_acc, acc[i]);
      if (acc[i] > threshold) {
        members.push_back(ks[i]);
        min_member_acc = std::min(min_member_acc, acc[i]);
      } else {
        residual += c.cell_mass(ks[i]);
      }
    }
    // With an empty sublevel set the diagnostic value is the best product
    // anywhere on the window (for w == 1 this reports 1, not infinity).
    const double member_sup =
        members.empty() ? std::exp(-max_acc) : std::exp(-min_member_acc);

    if (residual < delta && pair_ok) {
      const double achieved = pair_k ? std::max(member_sup, pair_sup) : member_sup;
      success_sups.push_back(achieved);
      if (report.witnesses.size() < kMaxWitnesses)
        report.witnesses.push_back(
            {n, window_from_sorted_indices(members), achieved, residual});
      if (success_sups.size() >= kTrendLength) break;
    } else if (report.witnesses.empty()) {
      // Track the best near-miss for diagnostics.
      const double sup_for_rank = pair_k ? std::max(member_sup, pair_sup) : member_sup;
      if (residual < best_residual ||
          (residual == best_residual && sup_for_rank < best_sup)) {
        best_residual = residual;
        best_sup = sup_for_rank;
        best_failure = {n, window_from_sorted_indices(members), sup_for_rank, residual};
        have_failure = true;
      }
    }
  }

  if (!success_sups.empty()) {
    report.verdict = ConditionVerdict::Holds;
    report.decreasing_trend = success_sups.size() >= 2 &&
                              std::is_sorted(success_sups.rbegin(), success_sups.rend()) &&
                              std::adjacent_find(success_sups.begin(), success_sups.end()) ==
                                  success_sups.end();
  } else {
    report.verdict = ConditionVerdict::FailsUpToBound;
    if (have_failure) report.witnesses.push_back(best_failure);
  }
  return report;
}

}  // namespace

ConditionReport check_tilde_decay(const WeightedTranslation& t, const CompactWindow& window,
                                  double eps, double delta, Index n_max, ConditionId id) {
  return run_sublevel_scan(t, window, eps, delta, n_max, id, /*tilde_side=*/true, nullptr);
}

ConditionReport check_sufficient_pair(const WeightedTranslation& t, const CompactWindow& window,
                                      const CompactWindow& k_set, double eps, double delta,
                                      Index n_max) {
  return run_sublevel_scan(t, window, eps, delta, n_max, ConditionId::SufficientPair,
                           /*tilde_side=*/true, &k_set);
}

ConditionReport check_torsion_condition(const WeightedTranslation& t, const CompactWindow& window,
                                        double eps, double delta, Index n_max) {
  if (!t.carrier().is_cyclic()) {
    ConditionReport report;
    report.id = ConditionId::TorsionCondition;
    report.verdict = ConditionVerdict::NotApplicable;
    report.search_bound = n_max;
    report.eps = eps;
    report.delta = delta;
    return report;
  }
  return run_sublevel_scan(t, window, eps, delta, n_max, ConditionId::TorsionCondition,
                           /*tilde_side=*/false, nullptr);
}

ConditionReport check_power_bounded_torsion(const WeightedTranslation& t) {
  ConditionReport report;
  report.id = ConditionId::PowerBounded;
  report.search_bound = 1;
  if (!t.carrier().is_cyclic()) {
    report.verdict = ConditionVerdict::NotApplicable;
    return report;
  }
  const GroupCarrier& c = t.carrier();
  const Index gamma = *torsion_order(c, t.a());
  double max_log = -std::numeric_limits<double>::infinity();
  for (Index k = 0; k < c.order(); ++k) {
    double s = 0.0;
    for (Index i = 0; i < gamma; ++i) s += t.log_weight(c.translate(k, t.a(), i));
    max_log = std::max(max_log, s);
  }
  // Tolerance absorbs rounding when weights were normalized so max = 1.
  report.verdict =
      max_log <= 1e-9 ? ConditionVerdict::Holds : ConditionVerdict::FailsUpToBound;
  report.witnesses.push_back({gamma, CompactWindow::interval(0, c.order() - 1),
                              std::exp(max_log), 0.0});
  return report;
}

Verdict classify(const WeightedTranslation& t, const std::vector<CompactWindow>& probe_windows,
                 const std::optional<CompactWindow>& k_window, double eps, double delta,
                 Index n_max) {
  return classify(t, probe_windows, k_window, eps,
                  std::vector<double>(probe_windows.size(), delta), n_max);
}

Verdict classify(const WeightedTranslation& t, const std::vector<CompactWindow>& probe_windows,
                 const std::optional<CompactWindow>& k_window, double eps,
                 const std::vector<double>& deltas, Index n_max) {
  if (probe_windows.empty()) throw std::invalid_argument("classify: no probe windows");
  if (deltas.size() != probe_windows.size())
    throw std::invalid_argument("classify: one delta per probe window required");
  Verdict verdict;
  const GroupCarrier& c = t.carrier();

  if (c.is_cyclic()) {
    bool all_hold = true;
    for (std::size_t i = 0; i < probe_windows.size(); ++i) {
      auto r = check_torsion_condition(t, probe_windows[i], eps, deltas[i], n_max);
      all_hold = all_hold && r.verdict == ConditionVerdict::Holds;
      verdict.supporting_reports.push_back(std::move(r));
    }
    auto pb = check_power_bounded_torsion(t);
    const bool power_bounded = pb.verdict == ConditionVerdict::Holds;
    verdict.supporting_reports.push_back(std::move(pb));
    if (all_hold)
      verdict.classification = Classification::JClassAtZero;
    else if (power_bounded)
      verdict.classification = Classification::PowerBoundedNotJClass;
    else
      verdict.classification = Classification::Inconclusive;
    return verdict;
  }

  if (!compact_passing(c, t.a())) {
    verdict.classification = Classification::Inconclusive;
    return verdict;
  }

  bool all_tilde = true;
  for (std::size_t i = 0; i < probe_windows.size(); ++i) {
    auto r = check_tilde_decay(t, probe_windows[i], eps, deltas[i], n_max,
                               ConditionId::ZeroJEquivalence);
    all_tilde = all_tilde && r.verdict == ConditionVerdict::Holds;
    verdict.supporting_reports.push_back(std::move(r));
  }
  bool all_pair = k_window.has_value();
  if (k_window) {
    for (std::size_t i = 0; i < probe_windows.size(); ++i) {
      auto r = check_sufficient_pair(t, probe_windows[i], *k_window, eps, deltas[i], n_max);
      all_pair = all_pair && r.verdict == ConditionVerdict::Holds;
      verdict.supporting_reports.push_back(std::move(r));
    }
  }
  if (all_pair) {
    verdict.classification = Classification::JClassWithIndicatorVector;
    verdict.j_vector_window = k_window;
  } else if (all_tilde) {
    verdict.classification = Classification::JClassAtZero;
  } else {
    verdict.classification = Classification::Inconclusive;
  }
  return verdict;
}

std::string to_string(ConditionId id) {
  switch (id) {
    case ConditionId::NecessaryAperiodic: return "necessary_aperiodic";
    case ConditionId::SufficientPair: return "sufficient_pair";
    case ConditionId::TorsionCondition: return "torsion_condition";
    case ConditionId::ZeroJEquivalence: return "zero_j_equivalence";
    case ConditionId::PowerBounded: return "power_bounded";
  }
  return "?";
}

std::string to_string(ConditionVerdict v) {
  switch (v) {
    case ConditionVerdict::Holds: return "holds";
    case ConditionVerdict::FailsUpToBound: return "fails_up_to_bound";
    case ConditionVerdict::NotApplicable: return "not_applicable";
  }
  return "?";
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::JClassAtZero: return "JClassAtZero";
    case Classification::JClassWithIndicatorVector: return "JClassWithIndicatorVector";
    case Classification::PowerBoundedNotJClass: return "PowerBoundedNotJClass";
    case Classification::Inconclusive: return "Inconclusive";
  }
  return "?";
}

}  // namespace jlab
