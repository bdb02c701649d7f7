#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "jlab/criteria.hpp"
#include "jlab/scenario.hpp"
#include "jlab/scenario_runner.hpp"

using namespace jlab;

namespace {

WeightedTranslation constant_line_op(double w) {
  return WeightedTranslation(GroupCarrier::integer_line(), GroupElement{1},
                             Weight::constant(w), 2.0);
}

WeightedTranslation cyclic_op(Index gamma, std::vector<double> log_weights, Index a = 1) {
  return WeightedTranslation(GroupCarrier::finite_cyclic(gamma), GroupElement{a},
                             Weight::log_table(std::move(log_weights)), 2.0);
}

}  // namespace

TEST_CASE("tilde decay on the piecewise ramp weight") {
  const Scenario s = builtin_example(1);
  const WeightedTranslation t = make_operator(s);
  const CompactWindow delta = s.probes.front();

  const auto r = check_tilde_decay(t, delta, 1e-6, 1e-4, 500);
  CHECK(r.verdict == ConditionVerdict::Holds);
  REQUIRE_FALSE(r.witnesses.empty());

  // At x = 0 the backward product is 1 * 3^{n-1}, so w~_n(0) = 3^{1-n} and
  // n = 14 is the first index below 1e-6 there.
  for (Index n = 1; n <= 20; ++n)
    CHECK(t.log_omega_tilde(0, n) == doctest::Approx(-(n - 1) * std::log(3.0)).epsilon(1e-12));
  CHECK(std::exp(t.log_omega_tilde(0, 14)) < 1e-6);
  CHECK(std::exp(t.log_omega_tilde(0, 13)) > 1e-6);

  // Brute-force oracle for the first qualifying n over the whole window.
  Index first = 0;
  for (Index n = 1; n <= 100 && first == 0; ++n) {
    double residual = 0.0;
    delta.for_each_index([&](Index k) {
      if (!(std::exp(t.log_omega_tilde(k, n)) < 1e-6)) residual += t.carrier().cell_mass(k);
    });
    if (residual < 1e-4) first = n;
  }
  REQUIRE(first > 0);
  CHECK(r.witnesses.front().n == first);
}

TEST_CASE("unit weight never decays") {
  const auto r = check_tilde_decay(constant_line_op(1.0), CompactWindow::interval(-5, 5), 1e-4,
                                   0.5, 200);
  CHECK(r.verdict == ConditionVerdict::FailsUpToBound);
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses.front().achieved_ess_sup == doctest::Approx(1.0));
}

TEST_CASE("doubly exponential decay on the multiplicative carrier") {
  const Scenario s = builtin_example(2);
  const WeightedTranslation t = make_operator(s);
  const auto r = check_tilde_decay(t, s.probes.front(), 1e-6, s.delta_for(s.probes.front()), 500);
  CHECK(r.verdict == ConditionVerdict::Holds);
  REQUIRE_FALSE(r.witnesses.empty());
  // w~_n(x) = exp(-x(2^n - 1)) <= exp(-31) on [1,2] from n = 5; the first
  // success is n = 4 already (exp(-15) < 1e-6).
  CHECK(r.witnesses.front().n <= 5);
  CHECK(std::exp(t.log_omega_tilde(0, 5)) == doctest::Approx(std::exp(-31.0)).epsilon(1e-9));
}

TEST_CASE("sufficient pair") {
  SUBCASE("sawtooth example holds") {
    const Scenario s = builtin_example(3);
    const WeightedTranslation t = make_operator(s);
    REQUIRE(s.k_window.has_value());
    const auto r = check_sufficient_pair(t, s.probes.front(), *s.k_window, 1e-4,
                                         s.delta_for(s.probes.front()), 500);
    CHECK(r.verdict == ConditionVerdict::Holds);
    CHECK(r.id == ConditionId::SufficientPair);
    REQUIRE_FALSE(r.witnesses.empty());
    CHECK(r.witnesses.front().achieved_ess_sup < 1e-4);
  }

  SUBCASE("growing weight fails the K side") {
    const auto r = check_sufficient_pair(constant_line_op(2.0), CompactWindow::interval(-5, 5),
                                         CompactWindow::interval(0, 2), 1e-3, 0.5, 100);
    CHECK(r.verdict == ConditionVerdict::FailsUpToBound);
  }

  SUBCASE("shrinking weight fails the tilde side") {
    const auto r = check_sufficient_pair(constant_line_op(0.5), CompactWindow::interval(-5, 5),
                                         CompactWindow::interval(0, 2), 1e-3, 0.5, 100);
    CHECK(r.verdict == ConditionVerdict::FailsUpToBound);
  }

  SUBCASE("pair success implies tilde success on the same window") {
    const Scenario s = builtin_example(3);
    const WeightedTranslation t = make_operator(s);
    const auto pair = check_sufficient_pair(t, s.probes.front(), *s.k_window, 1e-4, 0.005, 500);
    const auto tilde = check_tilde_decay(t, s.probes.front(), 1e-4, 0.005, 500);
    REQUIRE(pair.verdict == ConditionVerdict::Holds);
    CHECK(tilde.verdict == ConditionVerdict::Holds);
    CHECK(tilde.witnesses.front().n <= pair.witnesses.front().n);
  }
}

TEST_CASE("torsion condition on finite cyclic carriers") {
  SUBCASE("constant weight 2: first success at n = 10 for eps = 1e-3") {
    const auto t = cyclic_op(4, {std::log(2.0), std::log(2.0), std::log(2.0), std::log(2.0)});
    const auto r = check_torsion_condition(t, CompactWindow::interval(0, 3), 1e-3, 0.5, 500);
    CHECK(r.verdict == ConditionVerdict::Holds);
    REQUIRE_FALSE(r.witnesses.empty());
    CHECK(r.witnesses.front().n == 10);  // 2^-10 < 1e-3 <= 2^-9
    CHECK(r.witnesses.front().e == CompactWindow::interval(0, 3));
  }

  SUBCASE("unit weight fails") {
    const auto r = check_torsion_condition(cyclic_op(4, {0, 0, 0, 0}),
                                           CompactWindow::interval(0, 3), 1e-3, 0.5, 500);
    CHECK(r.verdict == ConditionVerdict::FailsUpToBound);
  }

  SUBCASE("mixed log-weights with positive cycle sum hold") {
    const auto t = cyclic_op(3, {0.7, -0.1, -0.2});
    const auto r = check_torsion_condition(t, CompactWindow::interval(0, 2), 1e-3, 0.5, 500);
    CHECK(r.verdict == ConditionVerdict::Holds);

    // Brute-force products over all k for n <= 100: the full cycle multiplies
    // by exp(0.4) regardless of the starting point.
    const double lw[3] = {0.7, -0.1, -0.2};
    for (Index k = 0; k < 3; ++k) {
      double acc = 0.0;
      for (Index n = 1; n <= 100; ++n) {
        acc += lw[(k + n) % 3];
        CHECK(t.log_omega(k, n) == doctest::Approx(acc).epsilon(1e-12));
        if (n % 3 == 0) CHECK(acc == doctest::Approx(0.4 * (n / 3)).epsilon(1e-9));
      }
    }
  }

  SUBCASE("not applicable on a line carrier") {
    const auto r = check_torsion_condition(constant_line_op(2.0),
                                           CompactWindow::interval(0, 3), 1e-3, 0.5, 100);
    CHECK(r.verdict == ConditionVerdict::NotApplicable);
  }

  SUBCASE("holds iff the min over n of max_k 1/w_n beats eps") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> logs(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
      const Index gamma = 2 + trial % 5;
      std::vector<double> lw(static_cast<std::size_t>(gamma));
      for (auto& v : lw) v = logs(rng);
      const auto t = cyclic_op(gamma, lw);
      const auto r =
          check_torsion_condition(t, CompactWindow::interval(0, gamma - 1), 1e-3, 0.5, 300);
      double best = 1e300;
      for (Index n = 1; n <= 300; ++n) {
        double worst = 0.0;
        for (Index k = 0; k < gamma; ++k)
          worst = std::max(worst, std::exp(-t.log_omega(k, n)));
        best = std::min(best, worst);
      }
      CHECK((r.verdict == ConditionVerdict::Holds) == (best < 1e-3));
    }
  }
}

TEST_CASE("power-bounded check") {
  CHECK(check_power_bounded_torsion(cyclic_op(3, {0, 0, 0})).verdict ==
        ConditionVerdict::Holds);

  const auto two = check_power_bounded_torsion(
      cyclic_op(4, {std::log(2.0), std::log(2.0), std::log(2.0), std::log(2.0)}));
  CHECK(two.verdict == ConditionVerdict::FailsUpToBound);
  CHECK(two.witnesses.front().achieved_ess_sup == doctest::Approx(16.0));

  const auto mixed = check_power_bounded_torsion(cyclic_op(3, {0.7, -0.1, -0.2}));
  CHECK(mixed.verdict == ConditionVerdict::FailsUpToBound);
  CHECK(mixed.witnesses.front().achieved_ess_sup == doctest::Approx(std::exp(0.4)));
  CHECK(mixed.witnesses.front().achieved_ess_sup == doctest::Approx(1.4918).epsilon(1e-4));
}

TEST_CASE("classification") {
  SUBCASE("ramp weight example classifies at zero") {
    const Scenario s = builtin_example(1);
    const auto v = classify(make_operator(s), s.probes, s.k_window, s.eps,
                            s.delta_for(s.probes.front()), s.n_max);
    CHECK(v.classification == Classification::JClassAtZero);
  }

  SUBCASE("sawtooth example carries an indicator J-vector") {
    const Scenario s = builtin_example(3);
    const auto v = classify(make_operator(s), s.probes, s.k_window, s.eps,
                            s.delta_for(s.probes.front()), s.n_max);
    CHECK(v.classification == Classification::JClassWithIndicatorVector);
    REQUIRE(v.j_vector_window.has_value());
    CHECK(*v.j_vector_window == *s.k_window);
  }

  SUBCASE("cyclic isometry is power bounded, not J-class") {
    const auto t = cyclic_op(4, {0, 0, 0, 0});
    const auto v = classify(t, {CompactWindow::interval(0, 3)}, std::nullopt, 1e-4, 0.5, 200);
    CHECK(v.classification == Classification::PowerBoundedNotJClass);
  }

  SUBCASE("cyclic growing weight classifies at zero") {
    const auto t = cyclic_op(4, {std::log(2.0), std::log(2.0), std::log(2.0), std::log(2.0)});
    const auto v = classify(t, {CompactWindow::interval(0, 3)}, std::nullopt, 1e-3, 0.5, 200);
    CHECK(v.classification == Classification::JClassAtZero);
  }

  SUBCASE("short search bound is inconclusive, not a failure") {
    const Scenario s = builtin_example(1);
    const auto v = classify(make_operator(s), s.probes, s.k_window, 1e-12,
                            s.delta_for(s.probes.front()), 2);
    CHECK(v.classification == Classification::Inconclusive);
  }
}

TEST_CASE("monotonicity in eps and in the search bound") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> logs(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Index gamma = 2 + trial % 6;
    std::vector<double> lw(static_cast<std::size_t>(gamma));
    for (auto& v : lw) v = logs(rng);
    const auto t = cyclic_op(gamma, lw);
    const CompactWindow full = CompactWindow::interval(0, gamma - 1);

    const auto tight = check_torsion_condition(t, full, 1e-4, 0.5, 200);
    const auto loose = check_torsion_condition(t, full, 1e-2, 0.5, 200);
    if (tight.verdict == ConditionVerdict::Holds)
      CHECK(loose.verdict == ConditionVerdict::Holds);

    const auto shorter = check_torsion_condition(t, full, 1e-3, 0.5, 60);
    const auto longer = check_torsion_condition(t, full, 1e-3, 0.5, 400);
    if (shorter.verdict == ConditionVerdict::Holds)
      CHECK(longer.verdict == ConditionVerdict::Holds);

    // Sublevel sets are nested in eps at every n.
    for (Index n = 1; n <= 40; ++n)
      for (Index k = 0; k < gamma; ++k)
        if (std::exp(-t.log_omega(k, n)) < 1e-4) CHECK(std::exp(-t.log_omega(k, n)) < 1e-2);
  }
}

TEST_CASE("holds verdicts carry consistent witnesses") {
  const Scenario s = builtin_example(1);
  const auto r = check_tilde_decay(make_operator(s), s.probes.front(), 1e-4, 0.002, 500);
  REQUIRE(r.verdict == ConditionVerdict::Holds);
  CHECK(r.witnesses.size() <= 5);
  for (const auto& w : r.witnesses) {
    CHECK(w.achieved_ess_sup < 1e-4);
    CHECK(w.residual_mass < 0.002);
  }
}
