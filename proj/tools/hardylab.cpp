// hardylab: sharp constants, sweeps, test-function quotients, property suites
// and Lorentz norms from the command line.
//
// Exit codes: 0 ok, 1 numerical failure or failed check, 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>


#include "hardylab/errors.hpp"
#include "hardylab/families.hpp"
#include "hardylab/parallel.hpp"
#include "hardylab/rearrangement.hpp"
#include "hardylab/spectral.hpp"
#include "hardylab/verifiers.hpp"

using json = nlohmann::ordered_json;
using namespace hardylab;

namespace {

// 12 significant digits everywhere output is written
std::string fmt12(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

json num(double x) {
  if (!std::isfinite(x)) return fmt12(x);
  return std::strtod(fmt12(x).c_str(), nullptr);
}

double parse_real(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "inf" || t == "+inf" || t == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(parse_real(item));
  }
  return out;
}

struct Options {
  std::string config;
  std::string output;
  std::string format;
  bool gnuplot = false;

  std::string geometry = "critical-disk";
  double a = std::nan("");  // unset: e for sharp, 1 for the families
  int dim = 0;  // 0: geometry/family default
  int k_max = 1;
  double q = 2.0;
  std::string T_list = "11,21,41";
  std::string h_list = "0.02,0.01,0.005";
  double tol = 1e-10;

  std::string a_grid;
  std::string family;
  std::string m, alpha, lambda, exponent;

  std::string suite = "all";
  long trials = 1000;
  std::uint64_t seed = 42;

  std::string input;
  double p = 2.0;
  std::string lorentz_q = "inf";
};

void write_output(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open output file '" + o.output + "'");
  f << text;
}

void write_gnuplot(const Options& o, const std::string& xcol, const std::string& ycol, int x, int y, bool logx) {
  if (!o.gnuplot) return;
  if (o.output.empty()) throw InvalidArgument("--emit-gnuplot needs --output");
  std::ofstream f(o.output + ".gp", std::ios::binary);
  if (!f) throw InvalidArgument("cannot write gnuplot script");
  f << "set datafile separator ','\n"
    << "set key off\n"
    << "set xlabel '" << xcol << "'\n"
    << "set ylabel '" << ycol << "'\n";
  if (logx) f << "set logscale x\n";
  f << "plot '" << o.output << "' skip 1 using " << x << ":" << y << " with linespoints\n";
}

RefinementPlan plan_from(const Options& o) {
  RefinementPlan plan;
  plan.T_list = parse_list(o.T_list);
  plan.h_list = parse_list(o.h_list);
  plan.k_max = o.k_max;
  plan.tol = o.tol;
  plan.validate();
  return plan;
}

ModeProblem problem_from(const Options& o, double a) {
  const Geometry g = parse_geometry(o.geometry);
  ModeProblem p;
  switch (g) {
    case Geometry::CriticalDisk:
      p = ModeProblem::critical_disk(a, 1, o.q);
      if (o.dim != 0) require(o.dim == 2, "critical-disk is two-dimensional");
      break;
    case Geometry::ClassicalBall:
      p = ModeProblem::classical_ball(o.dim == 0 ? 3 : o.dim);
      break;
    case Geometry::ClassicalWholeSpace:
      p = ModeProblem::whole_space(o.dim == 0 ? 3 : o.dim);
      break;
  }
  p.validate();
  return p;
}

json estimate_json(const SharpEstimate& e) {
  json j;
  j["geometry"] = geometry_name(e.problem.geometry);
  j["a"] = e.problem.geometry == Geometry::CriticalDisk ? num(e.problem.a) : json(nullptr);
  j["dim"] = e.problem.dim;
  j["mode"] = e.mode;
  j["value"] = num(e.value);
  json tr = json::array();
  for (const auto& t : e.trace) tr.push_back({{"T", num(t.T)}, {"h", num(t.h)}, {"value", num(t.value)}});
  j["trace"] = tr;
  json mv = json::array();
  for (double v : e.mode_values) mv.push_back(num(v));
  j["mode_values"] = mv;
  j["one_sided"] = e.one_sided;
  j["trace_monotone"] = e.trace_monotone;
  j["mode_monotone"] = e.mode_monotone;
  return j;
}

int cmd_sharp(const Options& o) {
  const auto est = sharp_constant(problem_from(o, std::isnan(o.a) ? std::exp(1.0) : o.a), plan_from(o));
  write_output(o, estimate_json(est).dump(2) + "\n");
  return est.one_sided && est.trace_monotone && est.mode_monotone ? 0 : 1;
}

// family sweeps and single quotients share the parameter plumbing
std::vector<FamilySpec> family_specs(const Options& o, bool single) {
  const auto kind = parse_family(o.family);
  const double a = std::isnan(o.a) ? 1.0 : o.a;
  auto values = [&](const std::string& s, const char* flag, double dflt) {
    std::vector<double> v = s.empty() ? std::vector<double>{dflt} : parse_list(s);
    if (v.empty()) throw InvalidArgument(std::string("empty list for --") + flag);
    if (single && v.size() != 1) throw InvalidArgument(std::string("--") + flag + " takes one value here");
    return v;
  };
  const int dim = o.dim == 0 ? (kind == FamilySpec::Kind::UAlpha || kind == FamilySpec::Kind::ULambda ? 2 : 3) : o.dim;
  std::vector<FamilySpec> specs;
  switch (kind) {
    case FamilySpec::Kind::UAlpha:
      for (double al : values(o.alpha, "alpha", 0.6)) specs.push_back(FamilySpec::u_alpha(al, a));
      break;
    case FamilySpec::Kind::VM:
      for (double m : values(o.m, "m", 100)) {
        require(m == std::floor(m) && m >= 1 && m < 1e9, "--m must be a positive integer");
        specs.push_back(FamilySpec::v_m(static_cast<int>(m), dim));
      }
      break;
    case FamilySpec::Kind::FABall:
      for (double e : values(o.exponent, "exponent", 1.0)) specs.push_back(FamilySpec::fa_ball(e, dim));
      break;
    case FamilySpec::Kind::FAWholeSpace:
      for (double e : values(o.exponent, "exponent", 1.0)) specs.push_back(FamilySpec::fa_whole_space(e, dim));
      break;
    case FamilySpec::Kind::ULambda: {
      const double al = values(o.alpha, "alpha", 1.0).front();
      for (double l : values(o.lambda, "lambda", 1.0)) specs.push_back(FamilySpec::u_lambda(l, a, al));
      break;
    }
  }
  for (auto& s : specs) s.q = o.q;
  if (kind != FamilySpec::Kind::UAlpha && kind != FamilySpec::Kind::ULambda) {
    require(o.q == 2.0, "--q other than 2 is only defined for the critical-weight families");
  }
  return specs;
}

double family_param(const FamilySpec& s) {
  switch (s.kind) {
    case FamilySpec::Kind::UAlpha: return s.alpha;
    case FamilySpec::Kind::VM: return s.m;
    case FamilySpec::Kind::FABall:
    case FamilySpec::Kind::FAWholeSpace: return s.exponent;
    case FamilySpec::Kind::ULambda: return s.lambda;
  }
  return 0.0;
}

bool has_a(const FamilySpec& s) { return s.kind == FamilySpec::Kind::UAlpha || s.kind == FamilySpec::Kind::ULambda; }

int cmd_sweep_family(const Options& o) {
  const auto specs = family_specs(o, false);
  std::vector<QuotientReport> out(specs.size());
  parallel_for(specs.size(), default_threads(), [&](std::size_t i) { out[i] = family_quotient(specs[i]); });
  const std::string fmt = o.format.empty() ? "csv" : o.format;
  if (fmt == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < specs.size(); ++i) {
      rows.push_back({{"family", family_name(specs[i].kind)},
                      {"param", num(family_param(specs[i]))},
                      {"a", has_a(specs[i]) ? num(specs[i].a) : json(nullptr)},
                      {"numerator", num(out[i].numerator)},
                      {"denominator", num(out[i].denominator)},
                      {"quotient", num(out[i].quotient)},
                      {"err", num(out[i].error)}});
    }
    write_output(o, rows.dump(2) + "\n");
  } else if (fmt == "csv") {
    std::string csv = "family,param,a,numerator,denominator,quotient,err\n";
    for (std::size_t i = 0; i < specs.size(); ++i) {
      csv += family_name(specs[i].kind) + "," + fmt12(family_param(specs[i])) + "," +
             (has_a(specs[i]) ? fmt12(specs[i].a) : std::string()) + "," + fmt12(out[i].numerator) + "," +
             fmt12(out[i].denominator) + "," + fmt12(out[i].quotient) + "," + fmt12(out[i].error) + "\n";
    }
    write_output(o, csv);
    write_gnuplot(o, "param", "quotient", 2, 6, true);
  } else {
    throw InvalidArgument("sweep output format must be csv or json");
  }
  return 0;
}

int cmd_sweep(const Options& o) {
  if (!o.family.empty()) return cmd_sweep_family(o);
  std::vector<double> grid = parse_list(o.a_grid);
  if (grid.empty()) throw InvalidArgument("empty sweep grid (--a-grid)");
  std::sort(grid.begin(), grid.end(), std::greater<>());
  require(std::adjacent_find(grid.begin(), grid.end()) == grid.end(), "sweep grid has duplicate points");
  const RefinementPlan plan = plan_from(o);
  std::vector<ModeProblem> problems;
  for (double a : grid) problems.push_back(problem_from(o, a));
  std::vector<SharpEstimate> est(grid.size());
  parallel_for(grid.size(), default_threads(), [&](std::size_t i) { est[i] = sharp_constant(problems[i], plan); });

  bool ok = true;
  for (std::size_t i = 0; i < est.size(); ++i) {
    ok = ok && est[i].one_sided && est[i].trace_monotone && est[i].mode_monotone;
    if (est[i].problem.geometry == Geometry::CriticalDisk) ok = ok && est[i].value > 0.25;
    if (i > 0) ok = ok && est[i].value < est[i - 1].value;
  }
  const std::string fmt = o.format.empty() ? "csv" : o.format;
  if (fmt == "json") {
    json rows = json::array();
    for (const auto& e : est) rows.push_back(estimate_json(e));
    write_output(o, rows.dump(2) + "\n");
  } else if (fmt == "csv") {
    std::string csv = "a,value,T,h,mode\n";
    for (const auto& e : est) {
      csv += fmt12(e.problem.a) + "," + fmt12(e.value) + "," + fmt12(e.trace.back().T) + "," + fmt12(e.trace.back().h) +
             "," + std::to_string(e.mode) + "\n";
    }
    write_output(o, csv);
    write_gnuplot(o, "a", "value", 1, 2, true);
  } else {
    throw InvalidArgument("sweep output format must be csv or json");
  }
  if (!ok) std::cerr << "hardylab: sweep values are not strictly decreasing above 1/4\n";
  return ok ? 0 : 1;
}

json report_json(const FamilySpec& s, const QuotientReport& r) {
  json j;
  j["family"] = family_name(s.kind);
  j["param"] = num(family_param(s));
  if (has_a(s)) j["a"] = num(s.a);
  j["dim"] = s.dim;
  j["q"] = num(r.q);
  j["numerator"] = num(r.numerator);
  j["denominator"] = num(r.denominator);
  j["quotient"] = num(r.quotient);
  j["error"] = num(r.error);
  j["exact"] = r.exact;
  return j;
}

int cmd_quotient(const Options& o) {
  if (o.family.empty()) throw InvalidArgument("quotient needs --family");
  const FamilySpec spec = family_specs(o, true).front();
  const QuotientReport rep = family_quotient(spec);
  json j = report_json(spec, rep);
  int code = 0;
  if (spec.kind == FamilySpec::Kind::FAWholeSpace) j["bound"] = num(whole_space_quotient_bound(spec.exponent, spec.dim));
  if (spec.kind == FamilySpec::Kind::ULambda) {
    FamilySpec base = spec;
    base.lambda = 1.0;
    const QuotientReport b = family_quotient(base);
    const double de = std::abs(rep.numerator - b.numerator) / std::abs(b.numerator);
    const double dn = std::abs(rep.denominator - b.denominator) / std::abs(b.denominator);
    j["lambda"] = num(spec.lambda);
    j["alpha"] = num(spec.alpha);
    j["energy"] = num(rep.numerator);
    j["base_energy"] = num(b.numerator);
    j["weighted_norm"] = num(rep.denominator);
    j["base_weighted_norm"] = num(b.denominator);
    j["energy_rel_diff"] = num(de);
    j["norm_rel_diff"] = num(dn);
    j["invariant"] = de <= 1e-8 && dn <= 1e-8;
    if (!(de <= 1e-8 && dn <= 1e-8)) code = 1;
  }
  write_output(o, j.dump(2) + "\n");
  return code;
}

int cmd_verify(const Options& o) {
  TrialConfig cfg;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.threads = default_threads();
  const auto reports = run_suite(o.suite, cfg);
  const std::string fmt = o.format.empty() ? "json" : o.format;
  if (fmt == "junit" || fmt == "xml") {
    write_output(o, to_junit_xml(reports));
  } else if (fmt == "json") {
    json arr = json::array();
    for (const auto& r : reports) {
      json m = json::object();
      for (const auto& [k, v] : r.metrics) m[k] = num(v);
      arr.push_back({{"suite", r.name},
                     {"trials", r.trials},
                     {"violations", r.violations},
                     {"skipped", r.skipped},
                     {"worst", num(r.worst)},
                     {"passed", r.passed()},
                     {"metrics", m},
                     {"messages", r.messages}});
    }
    write_output(o, json({{"seed", o.seed}, {"trials", o.trials}, {"suites", arr}}).dump(2) + "\n");
  } else {
    throw InvalidArgument("verify output format must be json or junit");
  }
  for (const auto& r : reports)
    if (!r.passed()) return 1;
  return 0;
}

int cmd_lorentz(const Options& o) {
  if (o.input.empty()) throw InvalidArgument("lorentz needs --input");
  const StepFunction u = load_step_csv(o.input, o.dim == 0 ? 3 : o.dim);
  const double v = lorentz_norm(u, {o.p, parse_real(o.lorentz_q)});
  write_output(o, fmt12(v) + "\n");
  return 0;
}

// --key value pairs from a JSON config; flags given later win
std::vector<std::string> config_args(const std::string& path, std::string& command) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config file: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config file must hold a JSON object");
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string key = it.key();
    if (key == "command") {
      if (command.empty()) command = it.value().get<std::string>();
      continue;
    }
    if (key == "config") continue;
    std::replace(key.begin(), key.end(), '_', '-');
    const json& v = it.value();
    auto scalar = [](const json& x) -> std::string {
      if (x.is_string()) return x.get<std::string>();
      if (x.is_number_integer()) return std::to_string(x.get<long long>());
      if (x.is_number()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", x.get<double>());
        return buf;
      }
      throw InvalidArgument("config file: unsupported value type");
    };
    if (v.is_boolean()) {
      if (v.get<bool>()) out.push_back("--" + key);
    } else if (v.is_array()) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : ",") + scalar(x);
      out.push_back("--" + key);
      out.push_back(s);
    } else {
      out.push_back("--" + key);
      out.push_back(scalar(v));
    }
  }
  return out;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string command;
  if (!args.empty() && args[0].rfind("-", 0) != 0) {
    command = args[0];
    args.erase(args.begin());
  }
  std::string config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
  }
  std::vector<std::string> merged;
  if (!config.empty()) merged = config_args(config, command);
  merged.insert(merged.end(), args.begin(), args.end());

  Options o;
  CLI::App app{"sharp Hardy constants, test-function quotients and rearrangement checks", "hardylab"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  auto common = [&](CLI::App* sc) {
    sc->add_option("--config", o.config, "JSON config file; flags override its entries");
    sc->add_option("--output,-o", o.output, "output file (default stdout)");
    sc->add_option("--format", o.format, "csv | json | junit");
  };
  auto geometry = [&](CLI::App* sc) {
    sc->add_option("--geometry", o.geometry, "critical-disk | classical-ball | classical-whole-space");
    sc->add_option("--a", o.a, "log offset of the critical weight (> 1)");
    sc->add_option("--dim", o.dim, "dimension (classical geometries, default 3)");
    sc->add_option("--k-max", o.k_max, "highest angular mode checked");
    sc->add_option("--q", o.q, "exponent of the weighted norm");
    sc->add_option("--T-list", o.T_list, "truncation lengths per refinement level");
    sc->add_option("--h-list", o.h_list, "mesh widths per refinement level");
    sc->add_option("--tol", o.tol, "eigen residual tolerance");
  };
  auto family = [&](CLI::App* sc) {
    sc->add_option("--family", o.family, "u_alpha | v_m | f_a_ball | f_a_whole | u_lambda");
    sc->add_option("--m", o.m, "v_m parameter(s)");
    sc->add_option("--alpha", o.alpha, "u_alpha exponent(s)");
    sc->add_option("--lambda", o.lambda, "u_lambda scaling(s)");
    sc->add_option("--exponent", o.exponent, "f_a exponent(s)");
  };

  auto* sharp = app.add_subcommand("sharp", "sharp constant of one geometry with its refinement trace");
  common(sharp);
  geometry(sharp);

  auto* sweep = app.add_subcommand("sweep", "sharp constants over an a-grid, or quotients over a family parameter list");
  common(sweep);
  geometry(sweep);
  family(sweep);
  sweep->add_option("--a-grid", o.a_grid, "comma-separated values of a");
  sweep->add_flag("--emit-gnuplot", o.gnuplot, "write <output>.gp next to the CSV");

  auto* quot = app.add_subcommand("quotient", "Rayleigh quotient of a test-function family member");
  common(quot);
  family(quot);
  quot->add_option("--a", o.a, "log offset (u_alpha, u_lambda)");
  quot->add_option("--dim", o.dim, "dimension");
  quot->add_option("--q", o.q, "exponent of the weighted norm");

  auto* verify = app.add_subcommand("verify", "seeded property suites");
  common(verify);
  verify->add_option("--suite", o.suite, "suite name or 'all'");
  verify->add_option("--trials", o.trials, "trials per suite");
  verify->add_option("--seed", o.seed, "root seed");

  auto* lor = app.add_subcommand("lorentz", "Lorentz norm of a step function read from CSV value,measure");
  common(lor);
  lor->add_option("--input", o.input, "step function CSV");
  lor->add_option("--p", o.p, "Lorentz p");
  lor->add_option("--q", o.lorentz_q, "Lorentz q (number or inf)");
  lor->add_option("--dim", o.dim, "ambient dimension (default 3)");

  std::vector<std::string> rev;
  rev.reserve(merged.size() + 1);
  for (auto it = merged.rbegin(); it != merged.rend(); ++it) rev.push_back(*it);
  if (!command.empty()) rev.push_back(command);
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*sharp) return cmd_sharp(o);
  if (*sweep) return cmd_sweep(o);
  if (*quot) return cmd_quotient(o);
  if (*verify) return cmd_verify(o);
  if (*lor) return cmd_lorentz(o);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InvalidArgument& e) {
    std::cerr << "hardylab: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "hardylab: numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "hardylab: " << e.what() << "\n";
    return 1;
  }
}
