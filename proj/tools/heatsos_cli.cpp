// heatsos: command line front end.
//
// Exit codes: 0 success / SOS, 1 NOT_SOS or OBSTRUCTED, 2 bad input,
// 3 inconclusive or numerical trouble, 4 certificate validation failed.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "heatsos/atom_flow.hpp"
#include "heatsos/burgers.hpp"
#include "heatsos/catalog.hpp"
#include "heatsos/heat_flow.hpp"
#include "heatsos/poly_json.hpp"
#include "heatsos/regression.hpp"
#include "heatsos/serialize.hpp"
#include "heatsos/sos.hpp"
#include "heatsos/threshold.hpp"

namespace {

using namespace heatsos;
using nlohmann::json;

enum Exit { kOk = 0, kNegative = 1, kBadInput = 2, kInconclusive = 3, kInvalidCertificate = 4 };

struct InputOptions {
  std::string path;
  std::string example;
  std::string output;
};

void add_input(CLI::App* cmd, InputOptions& in, bool allow_example = true) {
  cmd->add_option("input", in.path, "Input JSON file ('-' for stdin)");
  if (allow_example) {
    cmd->add_option("--example", in.example, "Built-in polynomial instead of an input file")
        ->check(CLI::IsMember(example_names()));
  }
  cmd->add_option("-o,--output", in.output, "Output file (default stdout)");
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream file(path);
  if (!file) throw StructuralError("cannot read " + path);
  std::ostringstream s;
  s << file.rdbuf();
  return s.str();
}

json read_json(const std::string& path) { return parse_json_text(read_text(path)); }

Polynomial read_polynomial(const InputOptions& in) {
  if (!in.example.empty()) return *example_polynomial(in.example);
  if (in.path.empty()) throw StructuralError("no input: give a JSON file or --example");
  return polynomial_from_json(read_json(in.path));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(path);
  if (!file) throw StructuralError("cannot write " + path);
  file << text;
}

std::vector<Rational> parse_rationals(const std::vector<std::string>& texts) {
  std::vector<Rational> out;
  for (const auto& t : texts) out.push_back(parse_rational(t));
  return out;
}

// ---- evolve ---------------------------------------------------------------

struct EvolveConfig {
  InputOptions in;
  std::string at;
  std::vector<std::string> nu;
};

int run_evolve(const EvolveConfig& c) {
  const Polynomial f = read_polynomial(c.in);
  const auto nu = parse_rationals(c.nu);
  if (c.at.empty()) {
    write_text(c.in.output, dump(to_json(evolve(f, nu))));
  } else {
    write_text(c.in.output, dump(to_json(evolve_at(f, parse_rational(c.at), nu))));
  }
  return kOk;
}

// ---- sos ------------------------------------------------------------------

struct SosConfig {
  InputOptions in;
  std::string at;
  double tolerance = 1e-9;
  bool newton = false;
  bool validate = false;
  bool any_t = false;
  bool parallel = false;
  long max_denominator = 1'000'000;
  std::string certificate;
};

SosOptions sos_options(double tolerance, bool newton, bool validate, bool parallel, long max_denominator) {
  SosOptions o;
  o.tolerance = tolerance;
  o.use_newton_filter = newton;
  o.validate = validate;
  o.parallel = parallel;
  o.max_denominator = max_denominator;
  return o;
}

int run_sos(const SosConfig& c) {
  Polynomial p = read_polynomial(c.in);
  if (!c.at.empty()) p = evolve_at(p, parse_rational(c.at));

  if (!c.certificate.empty()) {
    GramCertificate cert = certificate_from_json(read_json(c.certificate));
    const bool valid = certificate_validate(p, cert, c.max_denominator);
    write_text(c.in.output, dump({{"valid", valid}, {"certificate", to_json(cert)}}));
    return valid ? kOk : kInvalidCertificate;
  }

  const SosOptions options = sos_options(c.tolerance, c.newton, c.validate, c.parallel, c.max_denominator);
  if (c.any_t && highest_degree_obstruction(p, options)) {
    SosVerdict v;
    v.status = SosStatus::kObstructed;
    v.diagnostic = "top-degree part is not a sum of squares, so no evolution time is";
    write_text(c.in.output, dump(to_json(v)));
    return kNegative;
  }
  const SosVerdict v = sos_feasibility(p, options);
  write_text(c.in.output, dump(to_json(v)));
  switch (v.status) {
    case SosStatus::kSos:
      return c.validate && !(v.certificate && v.certificate->validated) ? kInvalidCertificate : kOk;
    case SosStatus::kNotSos:
    case SosStatus::kObstructed:
      return kNegative;
    case SosStatus::kInconclusive:
      return kInconclusive;
  }
  return kInconclusive;
}

// ---- threshold ------------------------------------------------------------

struct ThresholdConfig {
  InputOptions in;
  std::string width = "1/100000";
  std::string t_max = "1";
  double tolerance = 1e-9;
  bool newton = false;
  bool parallel = false;
};

int run_threshold(const ThresholdConfig& c) {
  const Polynomial f = read_polynomial(c.in);
  ThresholdOptions options;
  options.sos = sos_options(c.tolerance, c.newton, false, c.parallel, 1'000'000);
  try {
    const auto r = find_sos_threshold(f, parse_rational(c.width), parse_rational(c.t_max), options);
    write_text(c.in.output, dump(to_json(r)));
    return r.status == ThresholdStatus::kObstructed ? kNegative : kOk;
  } catch (const ThresholdAborted& e) {
    json out = to_json(e.partial());
    out["status"] = "ABORTED";
    out["diagnostic"] = e.what();
    write_text(c.in.output, dump(out));
    return kInconclusive;
  }
}

// ---- atoms ----------------------------------------------------------------

struct AtomsConfig {
  InputOptions in;
  double t_end = 1.0;
  double step = 1e-3;
  std::vector<double> snapshots;
  unsigned moment_degree = 2;
  double rank_tolerance = 1e-8;
  std::string moments_output;
  bool serial = false;
};

int run_atoms(const AtomsConfig& c) {
  if (c.in.path.empty()) throw StructuralError("atoms needs an input JSON file");
  const json input = read_json(c.in.path);
  if (!input.contains("atoms") || !input.contains("g")) {
    throw StructuralError("atoms input needs \"atoms\" and \"g\"");
  }
  const AtomicMeasure mu0 = atomic_measure_from_json(input.at("atoms"));
  std::vector<Polynomial> g;
  for (const auto& gi : input.at("g")) g.push_back(polynomial_from_json(gi));
  if (g.empty()) throw StructuralError("\"g\" needs one polynomial per coordinate");
  const Polynomial h = input.contains("h") ? polynomial_from_json(input.at("h")) : Polynomial(g.front().variables());
  const bool bounded = input.value("bounded", false);
  const VectorFieldSpec spec = VectorFieldSpec::from_polynomials(g, h, bounded);
  if (spec.dimension != mu0.dimension) throw StructuralError("atom dimension does not match the field");

  const auto paths = c.serial ? evolve_atoms_serial(spec, mu0, c.t_end, c.step)
                              : evolve_atoms_parallel(spec, mu0, c.t_end, c.step);

  std::ostringstream csv;
  csv << "t,atom";
  for (std::size_t i = 0; i < mu0.dimension; ++i) csv << ",x" << (i + 1);
  csv << ",weight\n";
  std::size_t rows = paths.front().trajectory.times.size();
  for (const auto& p : paths) rows = std::min(rows, p.trajectory.times.size());
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t a = 0; a < paths.size(); ++a) {
      const auto& tr = paths[a].trajectory;
      csv << format_double(tr.times[k]) << "," << a;
      for (double v : tr.points[k]) csv << "," << format_double(v);
      csv << "," << format_double(paths[a].weights[k]) << "\n";
    }
  }
  for (std::size_t a = 0; a < paths.size(); ++a) {
    if (const auto& b = paths[a].trajectory.blow_up_time) csv << "BLOW_UP," << a << "," << format_double(*b) << "\n";
  }
  write_text(c.in.output, csv.str());

  if (!c.moments_output.empty()) {
    const auto& grid = paths.front().trajectory;
    const double h = grid.times.size() > 1 ? grid.times[1] - grid.times[0] : 0.0;
    json snapshots = json::array();
    for (double t : c.snapshots) {
      if (t < 0.0 || t > c.t_end * (1 + 1e-12)) throw DomainError("snapshot time outside [0, tEnd]");
      const std::size_t k = h > 0.0 ? std::size_t(std::llround(t / h)) : 0;
      try {
        const AtomicMeasure mu = measure_at(paths, mu0.dimension, k);
        const double at = h * double(k);
        json entry = to_json(moments_of_measure(mu, c.moment_degree, at));
        entry["rank"] = moment_matrix_rank(moments_of_measure(mu, c.moment_degree, at), c.rank_tolerance);
        snapshots.push_back(std::move(entry));
      } catch (const BlowUpError& e) {
        snapshots.push_back({{"time", format_double(t)}, {"status", "BLOW_UP"}, {"atom", e.atom()}});
      }
    }
    write_text(c.moments_output, dump(snapshots));
  }
  return kOk;
}

// ---- burgers --------------------------------------------------------------

struct BurgersConfig {
  std::string table;
  std::string output;
  int max_k = 2;
  int max_p = 1;
  std::vector<std::string> moments;
  bool witness = false;
  bool dump_table = false;
};

int run_burgers(const BurgersConfig& c) {
  const BurgersMomentTable table =
      c.table.empty() ? one_tooth_initial_moments(c.max_k, c.max_p) : burgers_table_from_json(read_json(c.table));
  json out = json::object();
  if (c.dump_table) out["table"] = to_json(table);
  if (!c.moments.empty()) {
    json moments = json::object();
    for (const auto& key : c.moments) {
      const BurgersMomentTable one = burgers_table_from_json(json{{key, "0"}});
      const auto [k, p] = one.initial.begin()->first;
      const Polynomial s = burgers_moment(table, k, p);
      moments[key] = {{"text", to_string(s)}, {"polynomial", to_json(s)}};
    }
    out["moments"] = std::move(moments);
  }
  if (c.witness || c.moments.empty()) {
    const ViolationWitness w = nonneg_violation_witness(table);
    json witness{{"text", to_string(w.q)}, {"polynomial", to_json(w.q)}};
    if (w.t_star) {
      witness["tStar"] = format_double(*w.t_star);
      if (w.t_star_exact) {
        witness["tStarExact"] = to_string(*w.t_star_exact);
        if (auto sq = w.t_star_exact->rational_square()) witness["tStarSquared"] = to_string(*sq);
      }
    } else {
      witness["tStar"] = nullptr;
    }
    out["witness"] = std::move(witness);
  }
  write_text(c.output, dump(out));
  return kOk;
}

// ---- reproduce-paper ------------------------------------------------------

int run_reproduce(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv("HEATSOS_THREADS")) threads = std::atoi(env);
  }
  const auto outcomes = run_regression(regression_checks(), threads);
  std::cout << format_regression_table(outcomes);
  for (const auto& o : outcomes) {
    if (!o.passed) return kNegative;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat flow of polynomials, sums-of-squares certificates and moment evolution"};
  app.set_config("--config", "", "TOML file with option values; command-line flags take precedence");
  app.require_subcommand(1);

  EvolveConfig evolve_cfg;
  auto* evolve_cmd = app.add_subcommand("evolve", "Heat evolution of a polynomial");
  add_input(evolve_cmd, evolve_cfg.in);
  evolve_cmd->add_option("--at", evolve_cfg.at, "Evaluate at this rational time instead of returning p(t, x)");
  evolve_cmd->add_option("--nu", evolve_cfg.nu, "Diffusivity: one rational, or one per variable");

  SosConfig sos_cfg;
  auto* sos_cmd = app.add_subcommand("sos", "Decide whether a polynomial is a sum of squares");
  add_input(sos_cmd, sos_cfg.in);
  sos_cmd->add_option("--at", sos_cfg.at, "Evolve to this rational time first");
  sos_cmd->add_option("--tolerance", sos_cfg.tolerance, "Margin tolerance")->check(CLI::PositiveNumber);
  sos_cmd->add_flag("--newton-filter", sos_cfg.newton, "Restrict the Gram basis to the half Newton polytope");
  sos_cmd->add_flag("--validate", sos_cfg.validate, "Certify SOS verdicts in exact arithmetic (exit 4 on failure)");
  sos_cmd->add_flag("--evolved-any-t", sos_cfg.any_t,
                    "First test the top-degree part; OBSTRUCTED means no evolution time is SOS");
  sos_cmd->add_flag("--parallel-kernels", sos_cfg.parallel, "Use the OpenMP Schur complement kernel");
  sos_cmd->add_option("--max-denominator", sos_cfg.max_denominator, "Rounding bound for exact validation")
      ->check(CLI::PositiveNumber);
  sos_cmd->add_option("--certificate", sos_cfg.certificate, "Validate this certificate JSON instead of solving");

  ThresholdConfig thr_cfg;
  auto* thr_cmd = app.add_subcommand("threshold", "Bisect the time at which the evolution becomes SOS");
  add_input(thr_cmd, thr_cfg.in);
  thr_cmd->add_option("--width", thr_cfg.width, "Bracket width (rational)");
  thr_cmd->add_option("--tmax", thr_cfg.t_max, "Largest time tried (rational)");
  thr_cmd->add_option("--tolerance", thr_cfg.tolerance, "Margin tolerance")->check(CLI::PositiveNumber);
  thr_cmd->add_flag("--newton-filter", thr_cfg.newton, "Restrict the Gram basis to the half Newton polytope");
  thr_cmd->add_flag("--parallel-kernels", thr_cfg.parallel, "Use the OpenMP Schur complement kernel");

  AtomsConfig atoms_cfg;
  auto* atoms_cmd = app.add_subcommand("atoms", "Transport an atomic measure; CSV trajectories and moments");
  add_input(atoms_cmd, atoms_cfg.in, false);
  atoms_cmd->add_option("--tend", atoms_cfg.t_end, "End time")->check(CLI::NonNegativeNumber);
  atoms_cmd->add_option("--step", atoms_cfg.step, "RK4 step")->check(CLI::PositiveNumber);
  atoms_cmd->add_option("--snapshot", atoms_cfg.snapshots, "Times at which to record moments");
  atoms_cmd->add_option("--moment-degree", atoms_cfg.moment_degree, "Truncation degree of recorded moments");
  atoms_cmd->add_option("--rank-tolerance", atoms_cfg.rank_tolerance, "Relative singular value cutoff")
      ->check(CLI::PositiveNumber);
  atoms_cmd->add_option("--moments", atoms_cfg.moments_output, "Write moment snapshots (JSON) here");
  atoms_cmd->add_flag("--serial", atoms_cfg.serial, "Evolve atoms one at a time (reference path)");

  BurgersConfig burgers_cfg;
  auto* burgers_cmd = app.add_subcommand("burgers", "Closed-form Burgers moments and the positivity witness");
  burgers_cmd->add_option("--table", burgers_cfg.table, "Initial moment table JSON (default: tent function)");
  burgers_cmd->add_option("--max-k", burgers_cfg.max_k, "Largest k of the generated table")
      ->check(CLI::NonNegativeNumber);
  burgers_cmd->add_option("--max-p", burgers_cfg.max_p, "Largest p of the generated table")
      ->check(CLI::NonNegativeNumber);
  burgers_cmd->add_option("--moment", burgers_cfg.moments, "Moment s_{k,p}(t) to print, as \"k,p\"");
  burgers_cmd->add_flag("--witness", burgers_cfg.witness, "Print the (x - t)^2 witness and its root");
  burgers_cmd->add_flag("--dump-table", burgers_cfg.dump_table, "Include the initial table in the output");
  burgers_cmd->add_option("-o,--output", burgers_cfg.output, "Output file (default stdout)");

  int threads = 0;
  auto* repro_cmd = app.add_subcommand("reproduce-paper", "Run the reference examples and print a pass/fail table");
  repro_cmd->add_option("--threads", threads, "Worker threads (default: HEATSOS_THREADS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*evolve_cmd) return run_evolve(evolve_cfg);
    if (*sos_cmd) return run_sos(sos_cfg);
    if (*thr_cmd) return run_threshold(thr_cfg);
    if (*atoms_cmd) return run_atoms(atoms_cfg);
    if (*burgers_cmd) return run_burgers(burgers_cfg);
    if (*repro_cmd) return run_reproduce(threads);
  } catch (const ParseError& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: unexpected JSON content: " << e.what() << "\n";
    return kBadInput;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInconclusive;
  }
  return kBadInput;
}
