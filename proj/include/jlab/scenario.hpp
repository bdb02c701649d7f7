#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jlab/weighted_translation.hpp"

namespace jlab {

struct ConfigError {
  std::string field;
  std::string message;
};

class ConfigException : public std::runtime_error {
public:
  explicit ConfigException(std::vector<ConfigError> errors);
  const std::vector<ConfigError>& errors() const { return errors_; }

private:
  std::vector<ConfigError> errors_;
};

struct TargetSpec {
  struct Part {
    double lo = 0.0;
    double hi = 0.0;
    double amplitude = 1.0;
  };
  std::vector<Part> parts;  // native coordinates
};

/// Fully resolved run description. Windows are converted to index space at
/// load; the translation element must be exactly grid-aligned (the loader
/// rejects rather than rounds — rounding would silently change the
/// operator).
struct Scenario {
  std::string name;
  GroupCarrier carrier = GroupCarrier::integer_line();
  GroupElement a;
  double a_native = 0.0;
  Weight weight;
  double p = 2.0;
  std::vector<CompactWindow> probes;
  std::optional<CompactWindow> k_window;
  std::optional<TargetSpec> target;
  double eps = 1e-4;
  std::optional<double> delta;  // default: 1e-3 * mass(probe) per window
  Index n_max = 500;
  std::string out_dir = "out";

  double delta_for(const CompactWindow& w) const;
};

/// Converts a native-coordinate interval to the grid indices it covers.
CompactWindow native_window(const GroupCarrier& c, double lo, double hi);

/// Index of a native coordinate if it lies exactly on the grid.
std::optional<Index> aligned_index(const GroupCarrier& c, double native);

Scenario parse_scenario_text(const std::string& text, const std::string& source_name);
Scenario load_scenario(const std::string& path);

TargetSpec parse_target_spec(const std::string& text);
LpFunction make_target(const Scenario& s, const TargetSpec& spec);

/// The three built-in scenarios: piecewise weight on (R,+); exp weight on
/// (R+,x) via the log isomorphism; period-2 sawtooth weight with a = 2.
/// Example 1's free parameters must satisfy 1 < alpha < beta.
Scenario builtin_example(int id, double alpha = 2.0, double beta = 3.0);

}  // namespace jlab
