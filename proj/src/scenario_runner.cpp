#include "jlab/scenario_runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace jlab {

WeightedTranslation make_operator(const Scenario& s) {
  return WeightedTranslation(s.carrier, s.a, s.weight, s.p);
}

DescribeReport describe_scenario(const Scenario& s) {
  DescribeReport report;
  report.torsion = torsion_order(s.carrier, s.a);
  report.compact_passing = compact_passing(s.carrier, s.a);
  for (const auto& probe : s.probes)
    report.separation_bounds.push_back(separation_bound(s.carrier, probe, s.a));
  report.weight_discontinuities = s.weight.discontinuities();

  Index lo = 0, hi = -1;
  if (s.carrier.is_cyclic()) {
    lo = 0;
    hi = s.carrier.order() - 1;
  } else {
    bool first = true;
    auto widen = [&](const CompactWindow& w) {
      if (w.empty()) return;
      lo = first ? w.lo() : std::min(lo, w.lo());
      hi = first ? w.hi() : std::max(hi, w.hi());
      first = false;
    };
    for (const auto& w : s.probes) widen(w);
    if (s.k_window) widen(*s.k_window);
    if (s.target)
      for (const auto& part : s.target->parts)
        widen(native_window(s.carrier, part.lo, part.hi));
  }
  const WeightedTranslation t = make_operator(s);
  for (Index k = lo; k <= hi; ++k) {
    const double lw = t.log_weight(k);
    report.profile.push_back({k, s.carrier.native(k), std::exp(lw), lw});
  }
  return report;
}

std::vector<ProductRow> product_scan(const WeightedTranslation& t, const CompactWindow& probe,
                                     const std::optional<CompactWindow>& k_window, double eps,
                                     std::size_t probe_ordinal, Index n_report) {
  const GroupCarrier& c = t.carrier();
  const std::vector<Index> ks = probe.indices();
  std::vector<double> acc(ks.size(), 0.0);
  std::vector<Index> kks;
  std::vector<double> acck;
  if (k_window) {
    kks = k_window->indices();
    acck.assign(kks.size(), 0.0);
  }
  const double cut = -std::log(eps);

  std::vector<ProductRow> rows;
  rows.reserve(static_cast<std::size_t>(n_report));
  for (Index n = 1; n <= n_report; ++n) {
    double min_acc = std::numeric_limits<double>::infinity();
    double residual = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      acc[i] += t.log_weight(c.translate(ks[i], t.a(), -(n - 1)));
      min_acc = std::min(min_acc, acc[i]);
      if (!(acc[i] > cut)) residual += c.cell_mass(ks[i]);
    }
    double max_omega_k = std::numeric_limits<double>::quiet_NaN();
    if (k_window) {
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < kks.size(); ++j) {
        acck[j] += t.log_weight(c.translate(kks[j], t.a(), n));
        m = std::max(m, acck[j]);
      }
      max_omega_k = std::exp(m);
    }
    rows.push_back({probe_ordinal, n, std::exp(-min_acc), residual, max_omega_k});
  }
  return rows;
}

CheckOutput run_check(const Scenario& s) {
  const WeightedTranslation t = make_operator(s);
  std::vector<double> deltas;
  deltas.reserve(s.probes.size());
  for (const auto& w : s.probes) deltas.push_back(s.delta_for(w));

  CheckOutput out;
  out.verdict = classify(t, s.probes, s.k_window, s.eps, deltas, s.n_max);
  const Index n_report = std::min<Index>(s.n_max, 100);
  for (std::size_t i = 0; i < s.probes.size(); ++i) {
    auto rows = product_scan(t, s.probes[i], s.k_window, s.eps, i, n_report);
    out.products.insert(out.products.end(), rows.begin(), rows.end());
  }
  return out;
}

WitnessCertificate run_witness(const Scenario& s, const TargetSpec& target, double eps) {
  const WeightedTranslation t = make_operator(s);
  const LpFunction f = make_target(s, target);
  WitnessCertificate cert;
  if (s.carrier.is_cyclic()) {
    const double delta = s.delta.value_or(0.5);
    cert = build_witness_torsion(t, f, eps, delta, s.n_max);
  } else if (s.k_window) {
    cert = build_witness_jvector(t, f, *s.k_window, eps, s.n_max);
  } else {
    cert = build_witness_zero(t, f, eps, s.n_max);
  }
  if (cert.found) verify(cert, t);
  return cert;
}

ExampleOutput run_example(const Scenario& s, double witness_eps) {
  if (!s.target) throw std::invalid_argument("example scenario has no target");
  ExampleOutput out;
  out.describe = describe_scenario(s);
  out.check = run_check(s);
  out.certificate = run_witness(s, *s.target, witness_eps);
  const WeightedTranslation t = make_operator(s);
  const LpFunction orbit_seed = s.k_window ? LpFunction::indicator(s.carrier, s.p, *s.k_window)
                                           : make_target(s, *s.target);
  out.orbit = t.orbit_norms(orbit_seed, 60);
  return out;
}

// ---- CSV ------------------------------------------------------------------

std::string csv_value(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  if (v != 0.0 && std::abs(v) < 1e-4)
    std::snprintf(buf, sizeof buf, "%.10e", v);
  else
    std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

namespace {

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

void write_weight_profile_csv(const std::string& path, const std::vector<ProfileRow>& rows) {
  auto out = open_csv(path);
  out << "index,native_x,omega,log_omega\n";
  for (const auto& r : rows)
    out << r.index << ',' << csv_value(r.native_x) << ',' << csv_value(r.omega) << ','
        << csv_value(r.log_omega) << '\n';
}

void write_products_csv(const std::string& path, const std::vector<ProductRow>& rows) {
  auto out = open_csv(path);
  out << "probe,n,max_tilde_on_delta,residual_mass_delta,max_omega_on_k\n";
  for (const auto& r : rows)
    out << r.probe << ',' << r.n << ',' << csv_value(r.max_tilde) << ','
        << csv_value(r.residual_mass) << ',' << csv_value(r.max_omega_on_k) << '\n';
}

void write_orbit_norms_csv(const std::string& path,
                           const std::vector<std::pair<Index, double>>& rows) {
  auto out = open_csv(path);
  out << "m,norm\n";
  for (const auto& [m, norm] : rows) out << m << ',' << csv_value(norm) << '\n';
}

void write_witness_csv(const std::string& path, const WitnessCertificate& cert) {
  auto out = open_csv(path);
  out << "builder,n,eps,norm_base,norm_image,valid\n";
  out << to_string(cert.builder) << ',' << cert.n << ',' << csv_value(cert.eps) << ','
      << csv_value(cert.found ? cert.norm_base : cert.best_norm_base) << ','
      << csv_value(cert.found ? cert.norm_image : cert.best_norm_image) << ','
      << (cert.valid ? 1 : 0) << '\n';
}

void write_oracle_trials_csv(const std::string& path, const OracleSuiteResult& suite) {
  auto out = open_csv(path);
  out << "seed,gamma,verdict_checker,verdict_oracle,min_norm,n_argmin\n";
  for (const auto& t : suite.trials)
    out << t.seed << ',' << t.gamma << ',' << (t.checker_holds ? 1 : 0) << ','
        << (t.oracle_holds ? 1 : 0) << ',' << csv_value(t.min_norm) << ',' << t.n_argmin
        << '\n';
}

}  // namespace jlab
