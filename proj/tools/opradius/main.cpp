// opradius: numerical ranges, radii, unitary distance and the extremal family.
//
// Exit codes: 0 all checks passed, 1 a numerical check failed (named on
// stderr), 2 usage error.

#include <cmath>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "opradius/bounds.hpp"
#include "opradius/experiments.hpp"
#include "opradius/extremal_family.hpp"
#include "opradius/linalg.hpp"
#include "opradius/matrix_io.hpp"
#include "opradius/output.hpp"
#include "opradius/radii.hpp"
#include "opradius/unitary_distance.hpp"

namespace {

using namespace opradius;
using nlohmann::ordered_json;

enum class Format { csv, json, text };

struct RunConfig {
  std::string subcommand;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-10;
  std::string out;
  std::optional<Format> format;
  std::string matrix;
  double rho = 2.0;
  int n = 12;
  int kmin = 1;
  int kmax = 10;
  std::size_t samples = 500;
  std::size_t dim_min = 2;
  std::size_t dim_max = 8;
  double r_min = 1.0;
  double r_max = 1.1;
  std::size_t steps = 101;
  bool json_flag = false;
};

struct Result {
  int code = 0;
  std::string artifact;
};

std::string num(double x) { return format_double(x); }

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

double num_json(const ordered_json& j) { return j.get<double>(); }

void fail(const std::string& check, const std::string& detail) {
  std::cerr << "check failed: " << check << " (" << detail << ")\n";
}

std::string key_values_text(const ordered_json& obj) {
  std::ostringstream out;
  for (const auto& [key, value] : obj.items()) {
    out << key << '=';
    if (value.is_number_float()) out << num(num_json(value));
    else out << value.dump();
    out << '\n';
  }
  return out.str();
}

std::string key_values_csv(const ordered_json& obj) {
  std::ostringstream head, row;
  bool first = true;
  for (const auto& [key, value] : obj.items()) {
    head << (first ? "" : ",") << key;
    row << (first ? "" : ",");
    if (value.is_number_float()) row << num(num_json(value));
    else row << value.dump();
    first = false;
  }
  return head.str() + "\n" + row.str() + "\n";
}

Result run_gap(const RunConfig& cfg) {
  const ComplexMatrix a = read_matrix_file(cfg.matrix);
  const UnitaryGap gap = distance_to_unitaries(a);
  const ComplexMatrix inv = inverse(a);
  double w = 0.0, w_inv = 0.0;
  if (cfg.rho == 2.0) {
    w = numerical_radius(a, cfg.tol).upper_bound;
    w_inv = numerical_radius(inv, cfg.tol).upper_bound;
  } else {
    RhoOptions opt;
    opt.seed = cfg.seed;
    w = rho_radius(a, cfg.rho, opt).value;
    w_inv = rho_radius(inv, cfg.rho, opt).value;
  }
  const double r = std::max({w, w_inv, 1.0});
  const double psi_bound = operative_psi_bound(cfg.rho, r);
  const double bound = psi_bound - 1.0;

  ordered_json j;
  j["distance"] = gap.distance;
  j["norm_excess"] = gap.norm_excess;
  j["inverse_excess"] = gap.inverse_excess;
  j["w"] = w;
  j["w_inv"] = w_inv;
  j["bound"] = bound;
  j["psi_bound"] = psi_bound;

  Result res;
  if (gap.distance > bound + 1e-8) {
    fail("distance_within_bound", num(gap.distance) + " > " + num(bound));
    res.code = 1;
  }
  const Format f = cfg.format.value_or(Format::json);
  res.artifact = f == Format::json ? dump(j) : f == Format::csv ? key_values_csv(j) : key_values_text(j);
  return res;
}

Result run_bounds(const RunConfig& cfg) {
  const BoundCurve curve = bound_curve(cfg.rho, cfg.r_min, cfg.r_max, cfg.steps);
  const Format f = cfg.format.value_or(Format::csv);
  Result res;
  if (f == Format::csv) {
    res.artifact = bound_curve_csv(curve);
    return res;
  }
  ordered_json rows = ordered_json::array();
  for (const auto& row : curve.rows) {
    ordered_json o;
    o["r"] = row.r;
    o["X"] = row.x_value;
    o["psi_upper"] = row.psi_upper;
    o["psi_lower"] = row.psi_lower;
    o["asymptotic"] = row.asymptotic;
    rows.push_back(std::move(o));
  }
  if (f == Format::json) {
    ordered_json j;
    j["rho"] = curve.rho;
    j["rows"] = std::move(rows);
    res.artifact = dump(j);
  } else {
    std::ostringstream out;
    out << "rho=" << num(curve.rho) << '\n';
    for (const auto& row : rows) {
      bool first = true;
      for (const auto& [key, value] : row.items()) {
        out << (first ? "" : "  ") << key << '=' << num(num_json(value));
        first = false;
      }
      out << '\n';
    }
    res.artifact = out.str();
  }
  return res;
}

Result run_verify(const RunConfig& cfg) {
  const ExtremalFamily fam = build_extremal_family(cfg.n);
  const CertificateReport rep = verify_extremal_family(fam);
  Result res;
  for (const auto& c : rep.checks) {
    if (!c.pass) {
      fail(c.name, "value " + num(c.value) + ", bound " + num(c.bound));
      res.code = 1;
    }
  }
  const Format f = cfg.json_flag ? Format::json : cfg.format.value_or(Format::text);
  if (f == Format::json) {
    nlohmann::json j = rep.to_json();
    j["n"] = cfg.n;
    res.artifact = j.dump(2) + "\n";
  } else if (f == Format::csv) {
    std::ostringstream out;
    out << "name,value,bound,allowance,pass,slack\n";
    for (const auto& c : rep.checks) {
      out << c.name << ',' << num(c.value) << ',' << num(c.bound) << ',' << num(c.allowance) << ','
          << (c.pass ? "true" : "false") << ',' << num(c.slack) << '\n';
    }
    res.artifact = out.str();
  } else {
    res.artifact = "n=" + std::to_string(cfg.n) + "\n" + rep.to_text();
  }
  return res;
}

Result run_scaling(const RunConfig& cfg) {
  const ScalingTable table = scaling_experiment(cfg.kmin, cfg.kmax, cfg.tol);
  Result res;
  for (const auto& row : table.rows) {
    const double target = 1.0 / std::cos(std::numbers::pi / row.n);
    if (row.w > target + 1e-8 || row.w_inv > target + 1e-8) {
      fail("radius_bound_n" + std::to_string(row.n),
           "w " + num(row.w) + ", w_inv " + num(row.w_inv) + ", bound " + num(target));
      res.code = 1;
    }
  }
  const Format f = cfg.format.value_or(Format::csv);
  if (f == Format::json) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : table.rows) {
      ordered_json o;
      o["n"] = r.n;
      o["eps"] = r.eps;
      o["delta"] = r.delta;
      o["w"] = r.w;
      o["w_inv"] = r.w_inv;
      rows.push_back(std::move(o));
    }
    ordered_json j;
    j["rows"] = std::move(rows);
    j["slope"] = table.slope;
    res.artifact = dump(j);
  } else {
    res.artifact = scaling_csv(table);
  }
  return res;
}

Result run_random(const RunConfig& cfg) {
  RandomTestConfig rc;
  rc.rho = cfg.rho;
  rc.samples = cfg.samples;
  rc.seed = cfg.seed;
  rc.dim_min = cfg.dim_min;
  rc.dim_max = cfg.dim_max;
  const RandomTestSummary s = random_test(rc);
  Result res;
  if (s.violations > 0) {
    fail("norm_within_psi_bound", std::to_string(s.violations) + " violations, max ratio " + num(s.max_ratio));
    res.code = 1;
  }
  if (s.distance_violations > 0) {
    fail("distance_within_bound", std::to_string(s.distance_violations) + " violations");
    res.code = 1;
  }
  const nlohmann::json j = s.to_json();
  const Format f = cfg.format.value_or(Format::json);
  if (f == Format::json) {
    res.artifact = j.dump(2) + "\n";
  } else {
    ordered_json flat;
    for (const char* key : {"rho", "samples", "seed", "dim_min", "dim_max", "violations",
                            "distance_violations", "skipped", "max_ratio", "pass"}) {
      flat[key] = j[key];
    }
    res.artifact = f == Format::csv ? key_values_csv(flat) : key_values_text(flat);
  }
  return res;
}

Result run_range(const RunConfig& cfg) {
  const ComplexMatrix a = read_matrix_file(cfg.matrix);
  const auto points = range_boundary(a, cfg.samples);
  const Format f = cfg.format.value_or(Format::csv);
  Result res;
  if (f == Format::json) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : points) {
      ordered_json o;
      o["theta"] = p.angle;
      o["support_value"] = p.support_value;
      o["re"] = p.boundary_point.real();
      o["im"] = p.boundary_point.imag();
      arr.push_back(std::move(o));
    }
    ordered_json j;
    j["points"] = std::move(arr);
    res.artifact = dump(j);
  } else if (f == Format::csv) {
    res.artifact = range_boundary_csv(points);
  } else {
    std::ostringstream out;
    for (const auto& p : points) {
      out << "theta=" << num(p.angle) << "  h=" << num(p.support_value)
          << "  z=" << num(p.boundary_point.real()) << (p.boundary_point.imag() < 0 ? "-" : "+")
          << num(std::abs(p.boundary_point.imag())) << "i\n";
    }
    res.artifact = out.str();
  }
  return res;
}

Result run(const RunConfig& cfg) {
  if (cfg.subcommand == "gap") return run_gap(cfg);
  if (cfg.subcommand == "bounds") return run_bounds(cfg);
  if (cfg.subcommand == "extremal-verify") return run_verify(cfg);
  if (cfg.subcommand == "extremal-scaling") return run_scaling(cfg);
  if (cfg.subcommand == "random-test") return run_random(cfg);
  if (cfg.subcommand == "range") return run_range(cfg);
  throw InvalidInput("unknown subcommand " + cfg.subcommand);
}

void add_common(CLI::App* app, RunConfig& cfg) {
  static const std::map<std::string, Format> formats{
      {"csv", Format::csv}, {"json", Format::json}, {"text", Format::text}};
  app->add_option("--format", cfg.format, "Output format: csv, json or text")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app->add_option("--out", cfg.out, "Write the artifact here instead of stdout");
  app->add_option("--tol", cfg.tol, "Numerical-radius tolerance")->check(CLI::Range(1e-12, 1e-2));
  app->add_option("--seed", cfg.seed, "Random seed");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Numerical ranges, operator radii and distances to the unitary group"};
  app.require_subcommand(1);

  auto* gap = app.add_subcommand("gap", "Distance to the unitaries and its radius bound");
  gap->add_option("--matrix", cfg.matrix, "Matrix JSON file")->required();
  gap->add_option("--rho", cfg.rho, "rho in [1, 2]")->check(CLI::Range(1.0, 2.0));
  add_common(gap, cfg);

  auto* bounds = app.add_subcommand("bounds", "Tabulate the norm envelopes");
  bounds->add_option("--rho", cfg.rho, "rho in [1, 2]")->check(CLI::Range(1.0, 2.0));
  bounds->add_option("--r-min", cfg.r_min, "Smallest r (>= 1)");
  bounds->add_option("--r-max", cfg.r_max, "Largest r");
  bounds->add_option("--steps", cfg.steps, "Number of r values")->check(CLI::PositiveNumber);
  add_common(bounds, cfg);

  auto* extremal = app.add_subcommand("extremal", "The extremal family A_n = D B D");
  extremal->require_subcommand(1);
  auto* verify = extremal->add_subcommand("verify", "Run every certificate for one n");
  verify->add_option("--n", cfg.n, "Dimension n = 8k + 4")->required();
  verify->add_flag("--json", cfg.json_flag, "Shorthand for --format json");
  add_common(verify, cfg);
  auto* scaling = extremal->add_subcommand("scaling", "Norm excess against radius excess");
  scaling->add_option("--kmin", cfg.kmin, "First k");
  scaling->add_option("--kmax", cfg.kmax, "Last k");
  add_common(scaling, cfg);

  auto* random = app.add_subcommand("random-test", "Randomized check of the norm bound");
  random->add_option("--rho", cfg.rho, "rho in [1, 2]")->check(CLI::Range(1.0, 2.0));
  random->add_option("--samples", cfg.samples, "Number of matrices")->check(CLI::PositiveNumber);
  random->add_option("--dim-min", cfg.dim_min, "Smallest dimension");
  random->add_option("--dim-max", cfg.dim_max, "Largest dimension");
  add_common(random, cfg);

  auto* range = app.add_subcommand("range", "Sample the boundary of the numerical range");
  range->add_option("--matrix", cfg.matrix, "Matrix JSON file")->required();
  range->add_option("--samples", cfg.samples, "Number of directions")->check(CLI::Range(8, 1 << 20));
  add_common(range, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (gap->parsed()) cfg.subcommand = "gap";
  else if (bounds->parsed()) cfg.subcommand = "bounds";
  else if (verify->parsed()) cfg.subcommand = "extremal-verify";
  else if (scaling->parsed()) cfg.subcommand = "extremal-scaling";
  else if (random->parsed()) cfg.subcommand = "random-test";
  else if (range->parsed()) {
    cfg.subcommand = "range";
    if (range->count("--samples") == 0) cfg.samples = 360;
  }

  try {
    const Result res = run(cfg);
    if (cfg.out.empty()) std::cout << res.artifact;
    else write_file_atomically(cfg.out, res.artifact);
    return res.code;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return 1;
  }
}
