#include "jlab/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace jlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_real(const std::string& s) {
  const std::string t = lower(trim(s));
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  const double v = std::stod(t, &pos);
  if (pos != t.size()) throw std::invalid_argument("not a number: " + s);
  return v;
}

bool parse_inclusive(const std::string& s) {
  const std::string t = lower(trim(s));
  if (t == "closed" || t == "true" || t == "1") return true;
  if (t == "open" || t == "false" || t == "0") return false;
  throw std::invalid_argument("expected open/closed: " + s);
}

Index parse_int(const std::string& s) {
  std::size_t pos = 0;
  const long long v = std::stoll(trim(s), &pos);
  if (pos != trim(s).size()) throw std::invalid_argument("not an integer: " + s);
  return static_cast<Index>(v);
}

struct RawConfig {
  // (section, key) -> list of values, in declaration order
  std::vector<std::pair<std::string, std::string>> entries;  // "section.key" -> value

  std::optional<std::string> get(const std::string& key) const {
    std::optional<std::string> found;
    for (const auto& [k, v] : entries)
      if (k == key) found = v;
    return found;
  }
  std::vector<std::string> get_all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries)
      if (k == key) out.push_back(v);
    return out;
  }
};

RawConfig parse_raw(const std::string& text) {
  RawConfig raw;
  std::stringstream ss(text);
  std::string line, section;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = lower(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected key = value: " + line);
    raw.entries.emplace_back(section + "." + lower(trim(line.substr(0, eq))),
                             trim(line.substr(eq + 1)));
  }
  return raw;
}

constexpr double kAlignTol = 1e-9;

}  // namespace

ConfigException::ConfigException(std::vector<ConfigError> errors)
    : std::runtime_error([&errors] {
        std::string msg = "configuration invalid:";
        for (const auto& e : errors) msg += "\n  " + e.field + ": " + e.message;
        return msg;
      }()),
      errors_(std::move(errors)) {}

double Scenario::delta_for(const CompactWindow& w) const {
  return delta ? *delta : 1e-3 * w.mass(carrier);
}

std::optional<Index> aligned_index(const GroupCarrier& c, double native) {
  double ratio;
  switch (c.kind()) {
    case CarrierKind::FiniteCyclic:
    case CarrierKind::IntegerLine:
      ratio = native;
      break;
    case CarrierKind::RealLineGrid:
      ratio = native / c.step();
      break;
    case CarrierKind::PositiveRealsLogGrid:
      if (!(native > 0.0)) return std::nullopt;
      ratio = std::log(native) / c.step();
      break;
    default:
      return std::nullopt;
  }
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > kAlignTol * std::max(1.0, std::abs(ratio)))
    return std::nullopt;
  return static_cast<Index>(rounded);
}

CompactWindow native_window(const GroupCarrier& c, double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("window: lo > hi");
  Index ilo, ihi;
  switch (c.kind()) {
    case CarrierKind::FiniteCyclic:
    case CarrierKind::IntegerLine:
      ilo = static_cast<Index>(std::ceil(lo - kAlignTol));
      ihi = static_cast<Index>(std::floor(hi + kAlignTol));
      break;
    case CarrierKind::RealLineGrid:
      ilo = static_cast<Index>(std::ceil(lo / c.step() - kAlignTol));
      ihi = static_cast<Index>(std::floor(hi / c.step() + kAlignTol));
      break;
    case CarrierKind::PositiveRealsLogGrid:
      if (!(lo > 0.0)) throw std::invalid_argument("window on (R+,x) needs lo > 0");
      ilo = static_cast<Index>(std::ceil(std::log(lo) / c.step() - kAlignTol));
      ihi = static_cast<Index>(std::floor(std::log(hi) / c.step() + kAlignTol));
      break;
    default:
      throw std::logic_error("unknown carrier");
  }
  if (ilo > ihi) throw std::invalid_argument("window covers no grid point");
  return CompactWindow::interval(ilo, ihi);
}

TargetSpec parse_target_spec(const std::string& text) {
  TargetSpec spec;
  for (const std::string& part : split(text, ';')) {
    if (part.empty()) continue;
    const auto fields = split(part, ',');
    if (fields.size() != 3)
      throw std::invalid_argument("target part needs lo,hi,amplitude: " + part);
    spec.parts.push_back({parse_real(fields[0]), parse_real(fields[1]), parse_real(fields[2])});
  }
  if (spec.parts.empty()) throw std::invalid_argument("empty target spec");
  return spec;
}

LpFunction make_target(const Scenario& s, const TargetSpec& spec) {
  LpFunction f = LpFunction::zero(s.carrier, s.p);
  for (const auto& part : spec.parts) {
    const CompactWindow w = native_window(s.carrier, part.lo, part.hi);
    f = add(f, LpFunction::indicator(s.carrier, s.p, w).scaled(part.amplitude));
  }
  return f;
}

Scenario parse_scenario_text(const std::string& text, const std::string& source_name) {
  std::vector<ConfigError> errors;
  auto fail = [&](const std::string& field, const std::string& msg) {
    errors.push_back({field, msg});
  };

  RawConfig raw;
  try {
    raw = parse_raw(text);
  } catch (const std::exception& e) {
    throw ConfigException(std::vector<ConfigError>{{"(syntax)", e.what()}});
  }

  Scenario s;
  s.name = source_name;

  // Carrier
  const std::string variant = lower(raw.get("carrier.variant").value_or(""));
  try {
    if (variant == "finite_cyclic")
      s.carrier = GroupCarrier::finite_cyclic(parse_int(raw.get("carrier.order").value_or("")));
    else if (variant == "integer_line")
      s.carrier = GroupCarrier::integer_line();
    else if (variant == "real_line_grid")
      s.carrier = GroupCarrier::real_line_grid(parse_real(raw.get("carrier.step").value_or("")));
    else if (variant == "positive_reals_log_grid")
      s.carrier =
          GroupCarrier::positive_reals_log_grid(parse_real(raw.get("carrier.step").value_or("")));
    else
      fail("carrier.variant", "unknown variant '" + variant + "'");
  } catch (const std::exception& e) {
    fail("carrier", e.what());
  }

  // Element
  if (auto a_str = raw.get("element.a")) {
    try {
      s.a_native = parse_real(*a_str);
      if (auto idx = aligned_index(s.carrier, s.a_native))
        s.a = GroupElement{*idx};
      else
        fail("element.a", "not grid-aligned: a = " + *a_str +
                              " does not land on the index grid (refusing to round)");
    } catch (const std::exception& e) {
      fail("element.a", e.what());
    }
  } else {
    fail("element.a", "missing");
  }

  // Space
  try {
    s.p = parse_real(raw.get("space.p").value_or("2"));
    if (!(s.p >= 1.0)) fail("space.p", "p must be in [1, inf)");
  } catch (const std::exception& e) {
    fail("space.p", e.what());
  }

  // Weight
  const std::string wvariant = lower(raw.get("weight.variant").value_or(""));
  try {
    if (wvariant == "constant") {
      s.weight = Weight::constant(parse_real(raw.get("weight.value").value_or("")));
    } else if (wvariant == "exponential") {
      s.weight = Weight::exponential(parse_real(raw.get("weight.rate").value_or("")));
    } else if (wvariant == "log_table") {
      std::vector<double> logs;
      for (const auto& v : split(raw.get("weight.log_values").value_or(""), ','))
        logs.push_back(parse_real(v));
      s.weight = Weight::log_table(std::move(logs));
    } else if (wvariant == "piecewise_linear") {
      PiecewiseLinearWeight pw;
      for (const auto& row : raw.get_all("weight.segment")) {
        const auto f = split(row, ',');
        if (f.size() != 6)
          throw std::invalid_argument(
              "segment needs lo,hi,lo_inclusive,hi_inclusive,slope,intercept: " + row);
        pw.segments.push_back({parse_real(f[0]), parse_real(f[1]), parse_inclusive(f[2]),
                               parse_inclusive(f[3]), parse_real(f[4]), parse_real(f[5])});
      }
      if (auto ps = raw.get("weight.period_start")) pw.period_start = parse_real(*ps);
      if (auto pp = raw.get("weight.period")) pw.period = parse_real(*pp);
      s.weight = Weight::piecewise(std::move(pw));
    } else {
      fail("weight.variant", "unknown variant '" + wvariant + "'");
    }
  } catch (const std::exception& e) {
    fail("weight", e.what());
  }

  // Windows
  auto parse_window = [&](const std::string& field, const std::string& value)
      -> std::optional<CompactWindow> {
    try {
      const auto f = split(value, ',');
      if (f.size() != 2) throw std::invalid_argument("window needs lo,hi");
      const CompactWindow w = native_window(s.carrier, parse_real(f[0]), parse_real(f[1]));
      if (!(w.mass(s.carrier) > 0.0)) throw std::invalid_argument("window has zero mass");
      return w;
    } catch (const std::exception& e) {
      fail(field, e.what());
      return std::nullopt;
    }
  };
  for (const auto& probe : raw.get_all("windows.probe"))
    if (auto w = parse_window("windows.probe", probe)) s.probes.push_back(*w);
  if (auto k = raw.get("windows.k"))
    if (auto w = parse_window("windows.k", *k)) s.k_window = *w;
  if (s.probes.empty()) fail("windows.probe", "at least one probe window is required");

  // Target
  const auto target_rows = raw.get_all("target.part");
  if (!target_rows.empty()) {
    TargetSpec spec;
    for (const auto& row : target_rows) {
      try {
        const auto f = split(row, ',');
        if (f.size() != 3) throw std::invalid_argument("part needs lo,hi,amplitude");
        spec.parts.push_back(
            {parse_real(f[0]), parse_real(f[1]), parse_real(f[2])});
      } catch (const std::exception& e) {
        fail("target.part", e.what());
      }
    }
    if (!spec.parts.empty()) s.target = spec;
  }

  // Tolerances
  try {
    if (auto e = raw.get("tolerances.eps")) s.eps = parse_real(*e);
    if (auto d = raw.get("tolerances.delta")) s.delta = parse_real(*d);
    if (auto n = raw.get("tolerances.nmax")) s.n_max = parse_int(*n);
    if (!(s.eps > 0.0)) fail("tolerances.eps", "must be > 0");
    if (s.delta && !(*s.delta > 0.0)) fail("tolerances.delta", "must be > 0");
    if (s.n_max < 1) fail("tolerances.nmax", "must be >= 1");
  } catch (const std::exception& e) {
    fail("tolerances", e.what());
  }

  if (auto dir = raw.get("output.dir")) s.out_dir = *dir;

  // Weight positivity over the range the scans will touch.
  if (errors.empty()) {
    Index lo = 0, hi = 0;
    if (s.carrier.is_cyclic()) {
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
      const Index reach = s.n_max * std::abs(s.a.index);
      lo -= reach;
      hi += reach;
      if (hi - lo > 4'000'000) hi = lo + 4'000'000;  // validation cap
    }
    try {
      s.weight.validate_on(s.carrier, lo, hi);
    } catch (const std::exception& e) {
      fail("weight", e.what());
    }
  }

  if (!errors.empty()) throw ConfigException(std::move(errors));
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigException(std::vector<ConfigError>{{"(file)", "cannot open " + path}});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str(), path);
}

Scenario builtin_example(int id, double alpha, double beta) {
  const double inf = std::numeric_limits<double>::infinity();
  Scenario s;
  switch (id) {
    case 1: {
      if (!(1.0 < alpha && alpha < beta))
        throw ConfigException(std::vector<ConfigError>{{"alpha/beta", "need 1 < alpha < beta"}});
      s.name = "example1";
      s.carrier = GroupCarrier::real_line_grid(0.01);
      s.a_native = 1.0;
      s.a = GroupElement{100};
      PiecewiseLinearWeight pw;
      pw.segments.push_back({-inf, -1.0, false, true, 0.0, beta});
      pw.segments.push_back({-1.0, 1.0, false, false, -0.5, 1.0});
      pw.segments.push_back({1.0, inf, true, false, 0.0, alpha});
      s.weight = Weight::piecewise(std::move(pw));
      s.probes.push_back(native_window(s.carrier, -1.0, 1.0));
      s.target = TargetSpec{{{0.0, 1.0, 1.0}}};
      break;
    }
    case 2: {
      s.name = "example2";
      // (R+,x) through the log isomorphism. The step is log(2)/69 (~0.01)
      // so that a = 1/2 lands exactly on the grid at index -69.
      s.carrier = GroupCarrier::positive_reals_log_grid(std::log(2.0) / 69.0);
      s.a_native = 0.5;
      s.a = GroupElement{-69};
      s.weight = Weight::exponential(1.0);
      s.probes.push_back(native_window(s.carrier, 1.0, 2.0));
      s.target = TargetSpec{{{1.0, 2.0, 1.0}}};
      break;
    }
    case 3: {
      s.name = "example3";
      s.carrier = GroupCarrier::real_line_grid(0.05);
      s.a_native = 2.0;
      s.a = GroupElement{40};
      PiecewiseLinearWeight pw;
      pw.segments.push_back({-inf, -1.0, false, true, 0.0, 2.0});
      pw.segments.push_back({-1.0, 0.0, false, true, -1.75, 0.25});
      pw.segments.push_back({0.0, 1.0, false, true, 1.75, 0.25});
      pw.segments.push_back({1.0, 2.0, false, true, -1.75, 3.75});
      pw.period_start = 2.0;
      pw.period = 2.0;
      s.weight = Weight::piecewise(std::move(pw));
      s.probes.push_back(native_window(s.carrier, 3.0, 4.0));
      s.k_window = native_window(s.carrier, 0.0, 0.25);
      s.target = TargetSpec{{{3.0, 4.0, 1.0}}};
      break;
    }
    default:
      throw ConfigException(std::vector<ConfigError>{{"example", "unknown example id (expected 1, 2 or 3)"}});
  }
  return s;
}

}  // namespace jlab
