#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lpot/analysis.hpp"
#include "lpot/errors.hpp"
#include "lpot/special_fn.hpp"

namespace lpot::cli {

namespace {

struct RunConfig {
  int n = 3;
  QuadratureSpec quad;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool with_timings = false;
  bool json = false;

  // layer selection
  std::string kind = "single";
  std::string k = "0";
  std::string data = "example-f";
  std::string data_file;
  std::string problem = "dirichlet";
  std::vector<std::string> points;
  int random_points = 0;

  // verify
  std::string suite = "all";
  double chi_min = 1e-3;

  // index
  std::string e_literal = "2";
  std::string a_literal;
  std::string b_literal;
  bool extended = true;
  int index_k = 0;

  // gegenbauer
  double lambda = 0.5;
  int m = 0;
  double t = 0.0;
  bool table = false;
};

std::string resolved_out_dir(const RunConfig& cfg) {
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("LPOT_OUT_DIR")) return env;
  return {};
}

void write_file(const std::string& dir, const std::string& name, const std::string& body) {
  std::filesystem::create_directories(dir);
  std::ofstream f(std::filesystem::path(dir) / name);
  if (!f) throw std::runtime_error("cannot write " + (std::filesystem::path(dir) / name).string());
  f << body;
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseError("not a number: '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw ParseError("not a number: '" + item + "'");
    v.push_back(d);
  }
  return v;
}

std::vector<HalfSpacePoint> collect_points(const RunConfig& cfg) {
  std::vector<HalfSpacePoint> pts;
  for (const auto& arg : cfg.points) {
    std::stringstream ss(arg);
    std::string one;
    while (std::getline(ss, one, ';')) {
      if (one.empty()) continue;
      auto v = parse_numbers(one);
      if (v.size() != static_cast<std::size_t>(cfg.n)) {
        throw ParseError("point '" + one + "' needs " + std::to_string(cfg.n) + " coordinates");
      }
      pts.push_back({v[0], std::vector<double>(v.begin() + 1, v.end())});
    }
  }
  if (cfg.random_points > 0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ux(0.05, 2.0);
    std::uniform_real_distribution<double> uy(-2.0, 2.0);
    for (int i = 0; i < cfg.random_points; ++i) {
      HalfSpacePoint z{ux(rng), std::vector<double>(cfg.n - 1)};
      for (double& c : z.y) c = uy(rng);
      pts.push_back(z);
    }
  }
  if (pts.empty()) throw ParseError("no evaluation points; use --points or --random");
  return pts;
}

BoundaryData load_data(const RunConfig& cfg) {
  if (!cfg.data_file.empty()) {
    std::ifstream in(cfg.data_file);
    if (!in) throw ParseError("cannot open data file " + cfg.data_file);
    return load_tabulated_data(in, std::filesystem::path(cfg.data_file).stem().string());
  }
  return make_named_data(cfg.data, cfg.n);
}

int resolve_k(const RunConfig& cfg, LayerKind kind, const BoundaryData& data) {
  if (cfg.k == "auto") {
    IndexSet e = data.index_set();
    return e.is_empty() ? 0 : k_min(kind, e);
  }
  try {
    std::size_t used = 0;
    int k = std::stoi(cfg.k, &used);
    if (used == cfg.k.size() && k >= 0) return k;
  } catch (const std::exception&) {
  }
  throw ParseError("--k must be a non-negative integer or 'auto'");
}

void emit_field(const RunConfig& cfg, const std::string& stem, const PotentialField& field,
                const std::vector<HalfSpacePoint>& pts, std::ostream& out, std::ostream& err) {
  std::vector<double> values = evaluate_points(field, pts);
  std::ostringstream csv;
  write_csv(csv, pts, values);
  out << csv.str();
  err << stem << ": " << to_string(field.spec.kind) << " layer, k = " << field.spec.k << ", data " << field.data.name()
      << "\n";
  std::string dir = resolved_out_dir(cfg);
  if (!dir.empty()) {
    write_file(dir, stem + ".csv", csv.str());
    nlohmann::json meta = field_metadata(field);
    meta["points"] = pts.size();
    meta["seed"] = cfg.seed;
    write_file(dir, stem + ".json", meta.dump(2) + "\n");
  }
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  LayerKind kind = parse_layer_kind(cfg.kind);
  BoundaryData data = load_data(cfg);
  KernelSpec spec;
  spec.n = cfg.n;
  spec.kind = kind;
  spec.k = resolve_k(cfg, kind, data);
  PotentialField field = make_field(spec, data, cfg.quad);
  emit_field(cfg, "eval", field, collect_points(cfg), out, err);
  return kOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  BoundaryData data = load_data(cfg);
  if (cfg.problem != "dirichlet" && cfg.problem != "neumann") throw ParseError("--problem must be dirichlet or neumann");
  PotentialField field = cfg.problem == "dirichlet" ? solve_dirichlet(data, cfg.quad) : solve_neumann(data, cfg.quad);
  err << "solution unique up to harmonic polynomials of degree <= " << field.ambiguity_degree << "\n";
  emit_field(cfg, "solve", field, collect_points(cfg), out, err);
  return kOk;
}

// Example data: f has logarithms at Z, g does not.
VerificationReport log_example_report(const RunConfig& cfg, const BoundaryData& data, bool expect_logs) {
  VerificationReport rep;
  rep.check_name = "log_condition_" + data.name();
  rep.params = {{"j_max", 7}, {"theta_points", 16}, {"k", 0}};
  for (LayerKind kind : {LayerKind::Single, LayerKind::Double}) {
    auto res = check_log_condition(kind, 0, data, 7, default_theta_grid(cfg.n), 1e-10, cfg.quad);
    std::string tag = std::string(" (") + to_string(kind) + ")";
    if (expect_logs) {
      for (const auto& term : res.terms) {
        if (term.j == cfg.n - 1) {
          rep.add("condition integral j=" + std::to_string(term.j) + tag, term.max_abs,
                  sphere_volume(cfg.n - 1), "volume of the sphere", 1e-8);
        }
      }
    } else {
      for (const auto& term : res.terms) {
        rep.add_bound("condition integral j=" + std::to_string(term.j) + tag, term.max_abs, 1e-10,
                      "vanishes by parity");
      }
    }
    rep.add("logs at Z" + tag, res.no_logs ? 0.0 : 1.0, expect_logs ? 1.0 : 0.0, "known result for the data", 0.0);
    rep.notes.push_back(std::string(to_string(kind)) + ": " + res.verdict);
  }
  return rep;
}

VerificationReport fit_example_report(const RunConfig& cfg) {
  VerificationReport rep;
  rep.check_name = "asymptotic_fit";
  QuadratureSpec quad = cfg.quad;
  quad.abs_tol = std::min(quad.abs_tol, 1e-22);
  std::vector<double> theta(cfg.n, 0.0);
  theta[0] = std::sqrt(0.5);
  theta[1] = std::sqrt(0.5);
  const std::vector<std::pair<double, double>> windows = {{50.0, 500.0}, {500.0, 5000.0}};
  rep.params = {{"theta", theta}, {"windows", {{50, 500}, {500, 5000}}}, {"samples", 24}};
  for (bool is_f : {true, false}) {
    BoundaryData data = is_f ? make_example_f(cfg.n) : make_example_g(cfg.n);
    for (LayerKind kind : {LayerKind::Single, LayerKind::Double}) {
      KernelSpec spec;
      spec.n = cfg.n;
      spec.kind = kind;
      PotentialField field = make_field(spec, data, quad);
      auto terms = fit_terms_from_family(field.index_family, 4);
      std::string tag = data.name() + " " + to_string(kind);
      for (const auto& [lo, hi] : windows) {
        AsymptoticFit fit = fit_asymptotics(field, theta, rho_window(lo, hi, 24), terms);
        std::ostringstream label;
        label << "logs detected, " << tag << ", |z| in [" << lo << "," << hi << "]";
        rep.add(label.str(), fit.logs_detected() ? 1.0 : 0.0, is_f ? 1.0 : 0.0, "known result for the data", 0.0);
      }
    }
  }
  return rep;
}

VerificationReport kernel_harmonicity_report(int n) {
  std::vector<double> yp(n - 1, 0.0);
  yp[0] = 1.5;
  if (n > 2) yp[1] = 0.5;
  std::vector<HalfSpacePoint> pts;
  for (const auto& p : std::vector<std::vector<double>>{{1.0, 0.0, 0.0}, {1.5, 0.5, -0.5}, {2.0, -1.0, 1.0}}) {
    HalfSpacePoint z{p[0], std::vector<double>(n - 1, 0.0)};
    for (int i = 1; i < std::min<int>(n, 3); ++i) z.y[i - 1] = p[i];
    pts.push_back(z);
  }
  VerificationReport all;
  all.check_name = "harmonicity_kernels";
  all.params = {{"h", 1e-3}, {"bound", "h^2"}, {"y_prime", yp}};
  auto merge = [&](const VerificationReport& r) {
    for (const auto& row : r.rows) {
      Measurement m = row;
      m.label = r.check_name + ": " + row.label;
      all.rows.push_back(m);
      all.pass = all.pass && m.pass;
    }
  };
  for (LayerKind kind : {LayerKind::Single, LayerKind::Double}) {
    for (int k : {0, 2}) {
      KernelSpec spec;
      spec.n = n;
      spec.kind = kind;
      spec.k = k;
      auto u = [&](const HalfSpacePoint& z) { return layer_kernel(spec, z, yp); };
      merge(check_harmonicity(std::string(to_string(kind)) + "_k" + std::to_string(k), u, pts, 1e-3, 1.0, 0.0, 0.0));
    }
  }
  std::vector<double> zp(n, 0.0);
  zp[1] = 1.0;
  auto multipole = [&](const HalfSpacePoint& z) {
    std::vector<double> full{z.x};
    full.insert(full.end(), z.y.begin(), z.y.end());
    return multipole_term(n, LayerKind::Single, 3, full, zp);
  };
  merge(check_harmonicity("multipole_m3", multipole, pts, 1e-3, 1.0, 0.0, 0.0));
  return all;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string& s = cfg.suite;
  static const std::vector<std::string> suites = {"all", "index", "jump", "normalization", "log", "harmonicity", "gegenbauer"};
  if (std::find(suites.begin(), suites.end(), s) == suites.end()) throw ParseError("unknown suite '" + s + "'");
  if (!(cfg.chi_min > 0.0 && cfg.chi_min < 0.2)) throw ParseError("--chi-min must lie in (0, 0.2)");
  auto want = [&](const char* name) { return s == name || (s == "all" && std::string(name) != "gegenbauer"); };

  std::vector<VerificationReport> reports;
  if (want("normalization")) reports.push_back(check_poisson_normalization(cfg.n, {1.0, 0.1, 0.01}, cfg.quad));
  if (want("jump")) {
    JumpOptions opt;
    opt.chi_final = cfg.chi_min;
    for (double chi = 0.2; chi >= cfg.chi_min * (1.0 - 1e-12); chi *= 0.5) opt.chis.push_back(chi);
    BoundaryData f = make_example_f(cfg.n);
    for (LayerKind kind : {LayerKind::Double, LayerKind::Single}) {
      reports.push_back(check_jump(kind, 0, f, default_patch(cfg.n), opt, cfg.quad));
    }
  }
  if (want("log")) {
    reports.push_back(log_example_report(cfg, make_example_f(cfg.n), true));
    reports.push_back(log_example_report(cfg, make_example_g(cfg.n), false));
    reports.push_back(fit_example_report(cfg));
  }
  if (want("harmonicity")) {
    KernelSpec spec;
    spec.n = cfg.n;
    spec.kind = LayerKind::Double;
    PotentialField field = make_field(spec, make_example_f(cfg.n), cfg.quad);
    std::vector<HalfSpacePoint> pts = {{1.0, std::vector<double>(cfg.n - 1, 0.0)},
                                       {1.0, std::vector<double>(cfg.n - 1, 0.5)},
                                       {2.0, std::vector<double>(cfg.n - 1, -1.0)}};
    reports.push_back(check_harmonicity(field, pts, 1e-2));
    reports.push_back(kernel_harmonicity_report(cfg.n));
  }
  if (want("index")) reports.push_back(check_index_fixtures());
  if (want("gegenbauer")) reports.push_back(check_gegenbauer_properties());

  nlohmann::json bundle;
  bundle["suite"] = s;
  bundle["n"] = cfg.n;
  bundle["checks"] = nlohmann::json::array();
  int passed = 0;
  for (const auto& r : reports) {
    bundle["checks"].push_back(r.to_json(cfg.with_timings));
    passed += r.pass ? 1 : 0;
  }
  bool ok = passed == static_cast<int>(reports.size());
  bundle["passed"] = passed;
  bundle["failed"] = static_cast<int>(reports.size()) - passed;
  bundle["pass"] = ok;
  std::string body = bundle.dump(2) + "\n";
  if (cfg.json) {
    out << body;
  } else {
    for (const auto& r : reports) out << r.to_text();
    out << (ok ? "PASS" : "FAIL") << " " << passed << "/" << reports.size() << " checks\n";
  }
  std::string dir = resolved_out_dir(cfg);
  if (!dir.empty()) write_file(dir, "verify_" + s + ".json", body);
  if (!ok) err << "verification failed\n";
  return ok ? kOk : kVerifyFailed;
}

int cmd_index(const std::string& op, const RunConfig& cfg, std::ostream& out) {
  nlohmann::json doc;
  if (op == "kmin") {
    LayerKind kind = parse_layer_kind(cfg.kind);
    IndexSet e = parse_index_set(cfg.e_literal);
    doc = {{"kind", to_string(kind)}, {"E", to_json(e)}, {"k_min", e.is_empty() ? 0 : k_min(kind, e)}};
    out << doc["k_min"].get<int>() << "\n";
    return kOk;
  }
  if (op == "alpha") {
    LayerKind kind = parse_layer_kind(cfg.kind);
    out << alpha(kind, cfg.index_k) << "\n";
    return kOk;
  }
  if (op == "family") {
    LayerKind kind = parse_layer_kind(cfg.kind);
    IndexSet e = parse_index_set(cfg.e_literal);
    IndexFamily fam = layer_potential_index_family(kind, cfg.index_k, cfg.n, e);
    doc = to_json(fam);
    doc["text"] = fam.to_string();
  } else if (op == "union") {
    IndexSet a = parse_index_set(cfg.a_literal);
    IndexSet b = parse_index_set(cfg.b_literal);
    IndexSet u = cfg.extended ? extended_union(a, b) : index_union(a, b);
    doc = to_json(u);
    doc["text"] = u.to_string();
  }
  out << doc.dump(2) << "\n";
  return kOk;
}

int cmd_gegenbauer(const RunConfig& cfg, std::ostream& out) {
  out << std::setprecision(17);
  if (cfg.table) {
    out << "m,value\n";
    for (int m = 0; m <= cfg.m; ++m) out << m << "," << gegenbauer(cfg.lambda, m, cfg.t) << "\n";
  } else {
    out << gegenbauer(cfg.lambda, cfg.m, cfg.t) << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Layer potentials on the half-space"};
  app.name("lpot");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--n", cfg.n, "Dimension of the half-space")->check(CLI::Range(3, 9));
  app.add_option("--rel-tol", cfg.quad.rel_tol, "Relative quadrature tolerance");
  app.add_option("--abs-tol", cfg.quad.abs_tol, "Absolute quadrature tolerance");
  app.add_option("--split-radius", cfg.quad.split_radius, "Near/far split radius");
  app.add_option("--far-radius", cfg.quad.far_radius, "Start of the tail substitution");
  app.add_option("--max-subdivisions", cfg.quad.max_subdivisions, "Bisection budget per initial panel");
  app.add_option("--angular-points", cfg.quad.angular_points, "Initial angular nodes");
  app.add_option("--out", cfg.out_dir, "Output directory (default: $LPOT_OUT_DIR)");
  app.add_option("--seed", cfg.seed, "Seed for random point sampling");
  app.add_flag("--with-timings", cfg.with_timings, "Include runtimes in JSON reports");

  auto add_data = [&](CLI::App* sub) {
    sub->add_option("--data", cfg.data, "example-f, example-g, zero or poly:<d>:<odd|even>");
    sub->add_option("--data-file", cfg.data_file, "Tabulated data CSV (n = 3)");
    sub->add_option("--points", cfg.points, "Evaluation points x,y1,...; repeat or separate by ';'");
    sub->add_option("--random", cfg.random_points, "Number of random evaluation points")->check(CLI::NonNegativeNumber);
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a layer potential");
  eval->add_option("--kind", cfg.kind, "single or double");
  eval->add_option("--k", cfg.k, "Modification order or 'auto'");
  add_data(eval);

  CLI::App* solve = app.add_subcommand("solve", "Solve the Dirichlet or Neumann problem");
  solve->add_option("--problem", cfg.problem, "dirichlet or neumann");
  add_data(solve);

  CLI::App* verify = app.add_subcommand("verify", "Run verification checks");
  verify->add_option("--suite", cfg.suite, "all, index, jump, normalization, log, harmonicity or gegenbauer");
  verify->add_option("--chi-min", cfg.chi_min, "Smallest boundary distance of the jump checks");
  verify->add_flag("--json", cfg.json, "Print the report bundle as JSON");

  CLI::App* index = app.add_subcommand("index", "Index set calculus");
  index->require_subcommand(1);
  std::string index_op;
  for (const char* op : {"kmin", "alpha", "family", "union"}) {
    CLI::App* sub = index->add_subcommand(op);
    sub->callback([&index_op, op] { index_op = op; });
    if (std::string(op) != "union") sub->add_option("--kind", cfg.kind, "single or double");
    if (std::string(op) == "kmin" || std::string(op) == "family") sub->add_option("--E", cfg.e_literal, "Index set literal");
    if (std::string(op) == "alpha" || std::string(op) == "family") sub->add_option("--k", cfg.index_k, "Modification order");
    if (std::string(op) == "union") {
      sub->add_option("--a", cfg.a_literal, "First index set")->required();
      sub->add_option("--b", cfg.b_literal, "Second index set")->required();
      sub->add_flag("!--plain", cfg.extended, "Plain instead of extended union");
    }
  }

  CLI::App* geg = app.add_subcommand("gegenbauer", "Print Gegenbauer polynomial values");
  geg->add_option("--lambda", cfg.lambda, "Order lambda > 0");
  geg->add_option("--m", cfg.m, "Degree");
  geg->add_option("--t", cfg.t, "Argument in [-1, 1]");
  geg->add_flag("--table", cfg.table, "Print all degrees up to m");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "lpot: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    cfg.quad.validate();
    if (eval->parsed()) return cmd_eval(cfg, out, err);
    if (solve->parsed()) return cmd_solve(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (index->parsed()) return cmd_index(index_op, cfg, out);
    if (geg->parsed()) return cmd_gegenbauer(cfg, out);
  } catch (const ToleranceNotMet& e) {
    err << "lpot: quadrature failure: " << e.what() << "\n";
    return kQuadratureFailure;
  } catch (const JumpFailure& e) {
    err << "lpot: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const NonIntegrable& e) {
    err << "lpot: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "lpot: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace lpot::cli
