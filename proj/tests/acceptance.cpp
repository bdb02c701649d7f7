// Acceptance gate: each numbered criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <vector>

#include "jlab/criteria.hpp"
#include "jlab/matrix_oracle.hpp"
#include "jlab/scenario.hpp"
#include "jlab/scenario_runner.hpp"
#include "jlab/witness.hpp"

using namespace jlab;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, double seconds) {
  std::printf("[%s] criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", id, name, seconds);
  if (!ok) ++failures;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const auto start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

template <class F>
void timed(int id, const char* name, F&& body) {
  const double t0 = now_seconds();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "criterion %d threw: %s\n", id, e.what());
    ok = false;
  }
  report(id, name, ok, now_seconds() - t0);
}

// Dyadic rationals (multiples of 2^-20 with small integer numerators) make
// every partial sum exactly representable, so reordering cannot change it.
double dyadic(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-1000, 1000);
  return static_cast<double>(num(rng)) * 0x1p-20;
}

bool change_of_variable() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<Index> lo(-40, 40), as(-6, 6);
  std::uniform_int_distribution<int> len(0, 30);
  const GroupCarrier carriers[] = {
      GroupCarrier::finite_cyclic(11), GroupCarrier::integer_line(),
      GroupCarrier::real_line_grid(0x1p-6), GroupCarrier::positive_reals_log_grid(0x1p-6)};
  for (int trial = 0; trial < 500; ++trial) {
    const GroupCarrier& c = carriers[trial % 4];
    Index a = as(rng);
    if (a == 0) a = 1;
    const Index f_lo = c.is_cyclic() ? 0 : lo(rng);
    std::vector<double> vs(static_cast<std::size_t>(len(rng)) + 1);
    for (auto& v : vs) v = dyadic(rng);
    const auto f = LpFunction::from_values(c, 2.0, f_lo, vs);
    const Index w_lo = c.is_cyclic() ? 0 : lo(rng);
    const Index w_hi = w_lo + len(rng) % (c.is_cyclic() ? c.order() : 31);
    const CompactWindow window = CompactWindow::interval(w_lo, w_hi);

    // (f * delta_a)(k) = f(k a^-1); the right side reindexes k -> k a^-1.
    double lhs = 0.0, rhs = 0.0;
    window.for_each_index([&](Index k) {
      lhs += f.at(c.translate(c.canonical(k), GroupElement{a}, -1)) * c.cell_mass(k);
    });
    window.for_each_index([&](Index k) {
      const Index j = c.translate(c.canonical(k), GroupElement{a}, -1);
      rhs += f.at(j) * c.cell_mass(j);
    });
    if (lhs != rhs) return false;  // bitwise
  }
  return true;
}

Weight random_bounded_weight(std::mt19937_64& rng, const GroupCarrier& c) {
  std::uniform_real_distribution<double> logs(-0.15, 0.15);
  if (c.is_cyclic()) {
    std::vector<double> lw(static_cast<std::size_t>(c.order()));
    for (auto& v : lw) v = logs(rng);
    return Weight::log_table(std::move(lw));
  }
  return Weight::constant(std::exp(logs(rng)));
}

bool iterate_consistency() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<Index> ms(1, 50), as(1, 4), off(-10, 10);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const GroupCarrier c = (trial % 2) ? GroupCarrier::finite_cyclic(4 + trial % 9)
                                       : GroupCarrier::real_line_grid(0.125);
    const Index a = c.is_cyclic() ? 1 + as(rng) % (c.order() - 1) : as(rng);
    const WeightedTranslation t(c, GroupElement{a}, random_bounded_weight(rng, c), 2.0);
    std::vector<double> vs(static_cast<std::size_t>(3 + trial % 8));
    for (auto& v : vs) v = val(rng);
    const auto f = LpFunction::from_values(c, 2.0, c.is_cyclic() ? 0 : off(rng), vs);
    const Index m = ms(rng);
    const auto closed = t.iterate(f, m);
    LpFunction rep = f;
    for (Index i = 0; i < m; ++i) rep = t.apply(rep);
    if (distance_p(closed, rep) > 1e-9 * std::max(1.0, closed.p_norm())) return false;
  }
  return true;
}

bool inverse_round_trip() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> logs(-1.0, 1.0), val(-2.0, 2.0);
  std::uniform_int_distribution<Index> as(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const GroupCarrier c = (trial % 2) ? GroupCarrier::finite_cyclic(3 + trial % 7)
                                       : GroupCarrier::integer_line();
    Index a = c.is_cyclic() ? 1 + trial % (c.order() - 1) : as(rng);
    Weight w = c.is_cyclic() ? random_bounded_weight(rng, c)
                             : Weight::constant(std::exp(logs(rng)));
    const WeightedTranslation t(c, GroupElement{a}, std::move(w), 2.0);
    std::vector<double> vs(static_cast<std::size_t>(4 + trial % 6));
    for (auto& v : vs) v = val(rng);
    const auto f = LpFunction::from_values(c, 2.0, 0, vs);
    const auto r1 = t.inverse_step(t.apply(f));
    const auto r2 = t.apply(t.inverse_step(f));
    if (distance_p(r1, f) > 1e-12 * std::max(1.0, f.p_norm())) return false;
    if (distance_p(r2, f) > 1e-12 * std::max(1.0, f.p_norm())) return false;
  }

  // Cyclic composite: T^{gn} after S^{gn} is the identity up to rounding
  // (exact in exact arithmetic; every factor cancels pairwise).
  for (Index n = 1; n <= 20; ++n) {
    const GroupCarrier c = GroupCarrier::finite_cyclic(4);
    const WeightedTranslation t(c, GroupElement{1},
                                Weight::log_table({0.25, -0.5, 0.125, 0.0}), 2.0);
    std::vector<double> vs = {1.0, -0.5, 0.25, 2.0};
    const auto f = LpFunction::from_values(c, 2.0, 0, vs);
    LpFunction h = f;
    for (Index i = 0; i < 4 * n; ++i) h = t.inverse_step(h);
    h = t.iterate(h, 4 * n);
    if (distance_p(h, f) > 1e-12 * f.p_norm()) return false;
  }
  return true;
}

bool example_reproduction() {
  const auto v1 = run_check(builtin_example(1)).verdict;
  if (v1.classification != Classification::JClassAtZero) return false;
  const auto v2 = run_check(builtin_example(2)).verdict;
  if (v2.classification != Classification::JClassAtZero) return false;

  const Scenario s3 = builtin_example(3);
  const auto v3 = run_check(s3).verdict;
  if (v3.classification != Classification::JClassWithIndicatorVector) return false;
  if (!v3.j_vector_window || *v3.j_vector_window != *s3.k_window) return false;

  auto cert = run_witness(s3, *s3.target, 1e-2);
  return cert.found && cert.valid && cert.norm_base < 1e-2 && cert.norm_image < 1e-2;
}

bool witness_algebra() {
  std::mt19937_64 rng(111);
  std::uniform_int_distribution<Index> lo(-10, 10);
  std::uniform_int_distribution<int> len(0, 8);
  std::uniform_real_distribution<double> amp(0.2, 2.0);

  const double inf = std::numeric_limits<double>::infinity();
  PiecewiseLinearWeight pw;
  pw.segments.push_back({-inf, -1.0, false, true, 0.0, 3.0});
  pw.segments.push_back({-1.0, 1.0, false, false, -0.5, 1.0});
  pw.segments.push_back({1.0, inf, true, false, 0.0, 2.0});
  const WeightedTranslation t(GroupCarrier::real_line_grid(0.25), GroupElement{4},
                              Weight::piecewise(std::move(pw)), 2.0);

  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> vs(static_cast<std::size_t>(len(rng)) + 1);
    for (auto& v : vs) v = amp(rng);
    const auto f = LpFunction::from_values(t.carrier(), 2.0, lo(rng), vs);
    auto cert = build_witness_zero(t, f, 1e-2, 300);
    if (!cert.found) return false;
    const auto image = t.iterate(cert.g, cert.n);
    const auto expected = f.restricted_to(cert.e_set);
    if (distance_p(image, expected) > 1e-12 * std::max(1.0, expected.p_norm())) return false;
    const double residual = distance_p(f, expected);
    if (std::abs(cert.norm_image - residual) > 1e-10 * std::max(1.0, residual)) return false;
  }
  return true;
}

bool oracle_equivalence() {
  const auto suite = run_equivalence_suite(2, 8, 200, 424242, 500, 1e-3);
  return suite.trials.size() == 200 && suite.agreements == 200;
}

bool power_bounded_branch() {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> logs(-1.0, 1.0), val(-1.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const Index gamma = 2 + trial % 7;
    const GroupCarrier c = GroupCarrier::finite_cyclic(gamma);
    std::vector<double> lw(static_cast<std::size_t>(gamma));
    for (auto& v : lw) v = logs(rng);
    // Normalize so max_k w_gamma(k) = 1: the cycle sum is shared by every
    // starting point when a generates, so subtract its mean.
    double cycle = 0.0;
    for (double v : lw) cycle += v;
    for (auto& v : lw) v -= cycle / static_cast<double>(gamma);
    const WeightedTranslation t(c, GroupElement{1}, Weight::log_table(lw), 2.0);

    const auto pb = check_power_bounded_torsion(t);
    if (pb.verdict != ConditionVerdict::Holds) return false;

    // Analytic orbit bound: sup_x 1/w~_n(x) <= exp(max backward prefix sum
    // within one cycle), since every full cycle contributes exactly 0.
    double max_prefix = 0.0;
    for (Index k = 0; k < gamma; ++k) {
      double acc = 0.0;
      for (Index j = 0; j < gamma; ++j) {
        acc += lw[static_cast<std::size_t>(((k - j) % gamma + gamma) % gamma)];
        max_prefix = std::max(max_prefix, acc);
      }
    }
    const double bound = std::exp(max_prefix);

    std::vector<double> vs(static_cast<std::size_t>(gamma));
    for (auto& v : vs) v = val(rng);
    const auto f = LpFunction::from_values(c, 2.0, 0, vs);
    const auto norms = t.orbit_norms(f, 500);
    for (const auto& [m, v] : norms) {
      if (!std::isfinite(v)) return false;
      if (v > bound * f.p_norm() * (1.0 + 1e-9)) return false;
    }

    const auto verdict =
        classify(t, {CompactWindow::interval(0, gamma - 1)}, std::nullopt, 1e-3, 0.5, 500);
    if (verdict.classification != Classification::PowerBoundedNotJClass) return false;
  }
  return true;
}

bool criteria_monotonicity() {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> logs(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Index gamma = 2 + trial % 6;
    std::vector<double> lw(static_cast<std::size_t>(gamma));
    for (auto& v : lw) v = logs(rng);
    const WeightedTranslation t(GroupCarrier::finite_cyclic(gamma), GroupElement{1},
                                Weight::log_table(lw), 2.0);
    const CompactWindow full = CompactWindow::interval(0, gamma - 1);

    const auto tight = check_torsion_condition(t, full, 1e-4, 0.5, 250);
    const auto loose = check_torsion_condition(t, full, 1e-2, 0.5, 250);
    if (tight.verdict == ConditionVerdict::Holds &&
        loose.verdict != ConditionVerdict::Holds)
      return false;

    const auto shorter = check_torsion_condition(t, full, 1e-3, 0.5, 80);
    const auto longer = check_torsion_condition(t, full, 1e-3, 0.5, 400);
    if (shorter.verdict == ConditionVerdict::Holds &&
        longer.verdict != ConditionVerdict::Holds)
      return false;

    // Sublevel sets nest in eps at every scanned n.
    for (Index n = 1; n <= 30; ++n)
      for (Index k = 0; k < gamma; ++k) {
        const double inv = std::exp(-t.log_omega(k, n));
        if (inv < 1e-4 && !(inv < 1e-2)) return false;
      }
  }
  return true;
}

}  // namespace

int main() {
  timed(1, "change-of-variable identity (500 instances, bitwise)", change_of_variable);
  timed(2, "iterate vs repeated apply (200 instances, 1e-9)", iterate_consistency);
  timed(3, "inverse round-trips (200 instances + cyclic composites)", inverse_round_trip);
  timed(4, "built-in example reproduction", example_reproduction);
  timed(5, "witness telescoping algebra (40 certificates)", witness_algebra);
  timed(6, "oracle-checker equivalence (200 trials)", oracle_equivalence);
  timed(7, "power-bounded branch (50 normalized weights)", power_bounded_branch);
  timed(8, "criteria monotonicity (100 instances)", criteria_monotonicity);
  return failures == 0 ? 0 : 1;
}
