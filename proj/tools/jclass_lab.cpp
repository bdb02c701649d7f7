#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "jlab/scenario_runner.hpp"

namespace fs = std::filesystem;
using namespace jlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // witness or oracle failure
constexpr int kExitConfig = 2;   // config validation error

std::string resolve_out_dir(const std::string& cli_out, const std::string& scenario_out) {
  if (const char* env = std::getenv("JCLASS_OUT")) return env;
  if (!cli_out.empty()) return cli_out;
  return scenario_out;
}

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

void apply_overrides(Scenario& s, const std::optional<double>& eps,
                     const std::optional<double>& delta, const std::optional<Index>& nmax) {
  if (eps) s.eps = *eps;
  if (delta) s.delta = *delta;
  if (nmax) s.n_max = *nmax;
}

void print_describe(const Scenario& s, const DescribeReport& d) {
  std::cout << "scenario: " << s.name << "\n";
  switch (s.carrier.kind()) {
    case CarrierKind::FiniteCyclic:
      std::cout << "carrier: finite cyclic, order " << s.carrier.order() << "\n";
      break;
    case CarrierKind::IntegerLine:
      std::cout << "carrier: integer line\n";
      break;
    case CarrierKind::RealLineGrid:
      std::cout << "carrier: real line grid, step " << s.carrier.step() << "\n";
      break;
    case CarrierKind::PositiveRealsLogGrid:
      std::cout << "carrier: positive reals (multiplicative), log step " << s.carrier.step()
                << "\n";
      break;
  }
  std::cout << "element: a = " << s.a_native << " (index " << s.a.index << ")\n";
  std::cout << "torsion_order: ";
  if (d.torsion)
    std::cout << *d.torsion << "\n";
  else
    std::cout << "none\n";
  std::cout << "compact-passing: " << (d.compact_passing ? "yes" : "no") << "\n";
  for (std::size_t i = 0; i < d.separation_bounds.size(); ++i) {
    std::cout << "separation_bound[probe " << i << "]: ";
    if (d.separation_bounds[i])
      std::cout << *d.separation_bounds[i] << "\n";
    else
      std::cout << "none\n";
  }
  if (!d.weight_discontinuities.empty()) {
    std::cout << "weight discontinuities at:";
    for (double x : d.weight_discontinuities) std::cout << " " << x;
    std::cout << "  (the theory assumes a continuous weight; implemented as declared)\n";
  }
}

void print_report(const ConditionReport& r) {
  std::cout << "  " << to_string(r.id) << ": " << to_string(r.verdict)
            << " (eps=" << r.eps << ", delta=" << r.delta << ", n_max=" << r.search_bound
            << ")";
  if (!r.witnesses.empty()) {
    const auto& w = r.witnesses.front();
    std::cout << " n=" << w.n << " ess_sup=" << csv_value(w.achieved_ess_sup)
              << " residual=" << csv_value(w.residual_mass);
  }
  if (r.decreasing_trend) std::cout << " [decreasing trend]";
  std::cout << "\n";
}

void print_verdict(const Verdict& v) {
  std::cout << "verdict: " << to_string(v.classification);
  if (v.j_vector_window)
    std::cout << " (K indices [" << v.j_vector_window->lo() << ", " << v.j_vector_window->hi()
              << "])";
  std::cout << "\n";
  for (const auto& r : v.supporting_reports) print_report(r);
}

void print_certificate(const WitnessCertificate& cert) {
  std::cout << "witness builder: " << to_string(cert.builder) << "\n";
  if (cert.found) {
    std::cout << "certificate: n=" << cert.n << " norm_base=" << csv_value(cert.norm_base)
              << " norm_image=" << csv_value(cert.norm_image)
              << " eps=" << csv_value(cert.eps) << " -> "
              << (cert.valid ? "VALID" : "INVALID") << "\n";
    if (cert.closed_form_only)
      std::cout << "  (repeated-apply verification path skipped: overflow)\n";
    if (!cert.note.empty()) std::cout << "  note: " << cert.note << "\n";
  } else {
    std::cout << "certificate: no qualifying n within the search bound; best achieved "
              << "norm_base=" << csv_value(cert.best_norm_base)
              << " norm_image=" << csv_value(cert.best_norm_image) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for weighted translation operator dynamics"};
  app.require_subcommand(1);

  std::string config_path, out_dir, target_text;
  std::optional<double> eps_opt, delta_opt;
  std::optional<Index> nmax_opt;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config) cmd->add_option("--config", config_path, "scenario config file")->required();
    cmd->add_option("--eps", eps_opt, "epsilon override");
    cmd->add_option("--delta", delta_opt, "delta override");
    cmd->add_option("--nmax", nmax_opt, "search bound override");
    cmd->add_option("--out", out_dir, "output directory (env JCLASS_OUT wins)");
  };

  auto* describe_cmd = app.add_subcommand("describe", "summarize a scenario");
  add_common(describe_cmd, true);

  auto* check_cmd = app.add_subcommand("check", "run the theorem-condition checks");
  add_common(check_cmd, true);

  auto* witness_cmd = app.add_subcommand("witness", "build and verify a witness certificate");
  add_common(witness_cmd, true);
  witness_cmd->add_option("--target", target_text, "target spec lo,hi,amp[;lo,hi,amp...]");
  double witness_eps = 1e-2;
  witness_cmd->add_option("--weps", witness_eps, "certificate epsilon (default 1e-2)");

  auto* oracle_cmd = app.add_subcommand("oracle", "randomized matrix-oracle equivalence trials");
  Index gamma = 4, trials = 200, oracle_n = 500;
  std::uint64_t seed = 42;
  double eta = 1e-3;
  oracle_cmd->add_option("--gamma", gamma, "cyclic group order (2..16)");
  oracle_cmd->add_option("--trials", trials, "number of trials");
  oracle_cmd->add_option("--seed", seed, "master seed");
  oracle_cmd->add_option("--nmax", oracle_n, "power search bound");
  oracle_cmd->add_option("--eta", eta, "norm threshold");
  oracle_cmd->add_option("--out", out_dir, "output directory");

  auto* example_cmd = app.add_subcommand("example", "run a built-in scenario (1, 2 or 3)");
  int example_id = 1;
  double alpha = 2.0, beta = 3.0;
  example_cmd->add_option("id", example_id, "example id")->required();
  example_cmd->add_option("--alpha", alpha, "example 1 weight level for x >= 1");
  example_cmd->add_option("--beta", beta, "example 1 weight level for x <= -1");
  example_cmd->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (describe_cmd->parsed()) {
      Scenario s = load_scenario(config_path);
      apply_overrides(s, eps_opt, delta_opt, nmax_opt);
      const auto d = describe_scenario(s);
      print_describe(s, d);
      const std::string dir = resolve_out_dir(out_dir, s.out_dir);
      ensure_dir(dir);
      write_weight_profile_csv(dir + "/weight_profile.csv", d.profile);
      return kExitOk;
    }

    if (check_cmd->parsed()) {
      Scenario s = load_scenario(config_path);
      apply_overrides(s, eps_opt, delta_opt, nmax_opt);
      const auto out = run_check(s);
      print_verdict(out.verdict);
      const std::string dir = resolve_out_dir(out_dir, s.out_dir);
      ensure_dir(dir);
      write_products_csv(dir + "/products.csv", out.products);
      return kExitOk;
    }

    if (witness_cmd->parsed()) {
      Scenario s = load_scenario(config_path);
      apply_overrides(s, eps_opt, delta_opt, nmax_opt);
      TargetSpec target;
      if (!target_text.empty())
        target = parse_target_spec(target_text);
      else if (s.target)
        target = *s.target;
      else
        throw ConfigException(std::vector<ConfigError>{{"target", "no target in config and none on the command line"}});
      auto cert = run_witness(s, target, witness_eps);
      print_certificate(cert);
      const std::string dir = resolve_out_dir(out_dir, s.out_dir);
      ensure_dir(dir);
      write_witness_csv(dir + "/witness.csv", cert);
      return cert.valid ? kExitOk : kExitFailure;
    }

    if (oracle_cmd->parsed()) {
      if (gamma < 2 || gamma > 16) {
        std::cerr << "oracle: --gamma must be in 2..16 (the trivial group is rejected)\n";
        return kExitConfig;
      }
      const std::string dir = resolve_out_dir(out_dir, "out");
      ensure_dir(dir);
      if (trials == 0) {
        write_oracle_trials_csv(dir + "/oracle_trials.csv", OracleSuiteResult{});
        std::cout << "0 trials requested; empty report written\n";
        return kExitOk;
      }
      const auto suite = run_equivalence_suite(gamma, gamma, trials, seed, oracle_n, eta);
      write_oracle_trials_csv(dir + "/oracle_trials.csv", suite);
      std::cout << "agreement: " << suite.agreements << "/" << suite.trials.size() << "\n";
      if (suite.agreements != static_cast<Index>(suite.trials.size())) {
        for (const auto& t : suite.trials)
          if (t.checker_holds != t.oracle_holds)
            std::cerr << "disagreement at seed " << t.seed << " (gamma " << t.gamma << ")\n";
        return kExitFailure;
      }
      return kExitOk;
    }

    if (example_cmd->parsed()) {
      const Scenario s = builtin_example(example_id, alpha, beta);
      const auto out = run_example(s);
      print_describe(s, out.describe);
      print_verdict(out.check.verdict);
      print_certificate(out.certificate);
      if (example_id == 1 || example_id == 2)
        std::cout << "hypercyclic: no (known result for this weight family; cited, not "
                     "computed here)\n";
      const std::string dir = resolve_out_dir(out_dir, s.out_dir);
      ensure_dir(dir);
      write_weight_profile_csv(dir + "/weight_profile.csv", out.describe.profile);
      write_products_csv(dir + "/products.csv", out.check.products);
      write_orbit_norms_csv(dir + "/orbit_norms.csv", out.orbit);
      write_witness_csv(dir + "/witness.csv", out.certificate);
      return kExitOk;
    }
  } catch (const ConfigException& e) {
    for (const auto& err : e.errors())
      std::cerr << "config error [" << err.field << "]: " << err.message << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
