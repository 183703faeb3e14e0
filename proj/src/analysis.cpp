#include "lpot/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "lpot/errors.hpp"
#include "lpot/special_fn.hpp"

namespace lpot {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string point_label(std::span<const double> y) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < y.size(); ++i) os << (i ? "," : "") << y[i];
  os << ")";
  return os.str();
}

double json_number(double v) { return std::isfinite(v) ? v : 0.0; }

}  // namespace

void VerificationReport::add(std::string label, double measured, double reference, std::string provenance,
                             double tolerance) {
  bool ok = std::abs(measured - reference) <= tolerance;
  rows.push_back({std::move(label), measured, reference, std::move(provenance), tolerance, ok});
  pass = pass && ok;
}

void VerificationReport::add_bound(std::string label, double measured, double bound, std::string provenance) {
  bool ok = std::abs(measured) <= bound;
  rows.push_back({std::move(label), measured, 0.0, std::move(provenance), bound, ok});
  pass = pass && ok;
}

nlohmann::json VerificationReport::to_json(bool with_timings) const {
  nlohmann::json doc;
  doc["check_name"] = check_name;
  doc["params"] = params;
  nlohmann::json labels = nlohmann::json::array();
  nlohmann::json measured = nlohmann::json::array();
  nlohmann::json reference = nlohmann::json::array();
  nlohmann::json provenance = nlohmann::json::array();
  nlohmann::json tol = nlohmann::json::array();
  nlohmann::json row_pass = nlohmann::json::array();
  for (const auto& r : rows) {
    labels.push_back(r.label);
    measured.push_back(json_number(r.measured));
    reference.push_back(json_number(r.reference));
    provenance.push_back(r.provenance);
    tol.push_back(r.tolerance);
    row_pass.push_back(r.pass);
  }
  doc["labels"] = labels;
  doc["measured"] = measured;
  doc["reference"] = reference;
  doc["provenance"] = provenance;
  doc["tol"] = tol;
  doc["row_pass"] = row_pass;
  doc["notes"] = notes;
  doc["pass"] = pass;
  if (with_timings) doc["runtime_seconds"] = runtime_seconds;
  return doc;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << (pass ? "PASS " : "FAIL ") << check_name << "\n";
  for (const auto& r : rows) {
    os << "  " << (r.pass ? "ok  " : "BAD ") << std::left << std::setw(44) << r.label << std::right
       << std::scientific << std::setprecision(6) << " measured " << std::setw(14) << r.measured << "  reference "
       << std::setw(14) << r.reference << "  tol " << std::setprecision(2) << r.tolerance << "  [" << r.provenance
       << "]\n";
  }
  for (const auto& note : notes) os << "  note: " << note << "\n";
  return os.str();
}

VerificationReport check_poisson_normalization(int n, const std::vector<double>& xs, const QuadratureSpec& quad,
                                               double tolerance) {
  auto t0 = Clock::now();
  VerificationReport rep;
  rep.check_name = "poisson_normalization";
  rep.params = {{"n", n}, {"x", xs}, {"tolerance", tolerance}};
  std::vector<double> y(n - 1, 0.0);
  for (double x : xs) {
    if (!(x > 0.0)) throw std::invalid_argument("normalization needs x > 0");
    HalfSpacePoint z{x, y};
    auto integrand = [&](std::span<const double> yp) { return double_layer(n, z, yp); };
    PlaneOptions opt;
    if (x < quad.split_radius) opt.peak_width = x;
    auto res = integrate_plane(n, integrand, y, n, quad, opt);
    std::ostringstream label;
    label << "integral of DL at x=" << x;
    rep.add(label.str(), res.value, 0.5, "exact constant 1/2", tolerance);
  }
  double identity = sphere_volume(n - 1) / sphere_volume(n) * std::sqrt(std::numbers::pi) * gamma_fn(0.5 * (n - 1)) /
                    (2.0 * gamma_fn(0.5 * n));
  rep.add("Gamma-function identity for the constant", identity, 0.5, "exact constant 1/2", 1e-12);
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

JumpOptions JumpOptions::defaults() {
  JumpOptions o;
  for (int i = 0; i <= 8; ++i) o.chis.push_back(0.2 * std::pow(2.0, -i));
  return o;
}

std::vector<std::vector<double>> default_patch(int n) {
  std::vector<std::vector<double>> pts;
  for (double a : {-0.7, 0.0, 0.7}) {
    for (double b : {-0.7, 0.0, 0.7}) {
      std::vector<double> y(n - 1, 0.0);
      y[0] = a;
      if (n > 2) y[1] = b;
      pts.push_back(y);
    }
  }
  return pts;
}

namespace {

struct RelationSeries {
  std::string name;
  std::string provenance;
  std::vector<double> defects;  // per chi in the ratio sequence
  double final_defect = 0.0;
  bool check_ratios = true;
};

// Ratio closest to failing among consecutive defects above the noise floor; 2 when none qualify.
double worst_ratio(const std::vector<double>& defects, double floor) {
  double worst = 2.0;
  for (std::size_t i = 0; i + 1 < defects.size(); ++i) {
    if (std::abs(defects[i + 1]) <= floor || std::abs(defects[i]) <= floor) continue;
    double r = defects[i] / defects[i + 1];
    if (std::abs(r - 2.0) > std::abs(worst - 2.0)) worst = r;
  }
  return worst;
}

}  // namespace

VerificationReport check_jump(LayerKind kind, int k, const BoundaryData& data,
                              const std::vector<std::vector<double>>& patch, const JumpOptions& options,
                              const QuadratureSpec& quad) {
  auto t0 = Clock::now();
  const int n = data.n();
  VerificationReport rep;
  rep.check_name = std::string("jump_") + to_string(kind) + "_" + data.name();
  rep.params = {{"kind", to_string(kind)}, {"k", k},          {"data", data.name()},
                {"chi", options.chis},     {"chi_final", options.chi_final}, {"patch_points", patch.size()},
                {"relative_bound", options.relative_bound}, {"ratio_interval", {options.ratio_min, options.ratio_max}}};

  KernelSpec spec;
  spec.n = n;
  spec.kind = kind;
  spec.k = k;
  PotentialField field = make_field(spec, data, quad);

  double fmax = 0.0;
  for (const auto& y : patch) fmax = std::max(fmax, std::abs(data(y)));
  const double bound = options.relative_bound * fmax + 1e-10;
  const double floor = std::max(1e-8 * fmax, 1e-12);
  const double ratio_center = 0.5 * (options.ratio_min + options.ratio_max);
  const double ratio_halfwidth = 0.5 * (options.ratio_max - options.ratio_min);

  std::vector<double> all_chis = options.chis;
  all_chis.push_back(options.chi_final);

  double worst_defect = -1.0;
  std::string worst_where;
  for (const auto& y : patch) {
    const double fy = data(y);
    std::vector<RelationSeries> rel;
    if (kind == LayerKind::Double) {
      rel.push_back({"DL f -> f/2", "half the boundary value", {}, 0.0, true});
    } else {
      rel.push_back({"SL f -> N f", "boundary operator value", {}, 0.0, true});
      rel.push_back({"d_nu SL f -> -f/2", "minus half the boundary value", {}, 0.0, true});
      rel.push_back({"(SL f - N f)/x -> f/2", "half the boundary value", {}, 0.0, false});
    }
    double nf = kind == LayerKind::Single ? apply_boundary(spec, data, y, quad) : 0.0;
    for (std::size_t c = 0; c < all_chis.size(); ++c) {
      const double chi = all_chis[c];
      HalfSpacePoint z{chi, y};
      std::vector<double> d;
      if (kind == LayerKind::Double) {
        d.push_back(apply_layer(field, z) - 0.5 * fy);
      } else {
        double s = apply_layer(field, z) - nf;
        d.push_back(s);
        d.push_back(apply_normal_derivative_single(field, z) + 0.5 * fy);
        d.push_back(s / chi - 0.5 * fy);
      }
      for (std::size_t r = 0; r < rel.size(); ++r) {
        if (c + 1 < all_chis.size()) {
          rel[r].defects.push_back(d[r]);
        } else {
          rel[r].final_defect = d[r];
        }
      }
    }
    for (const auto& r : rel) {
      std::string where = point_label(y);
      rep.add_bound(r.name + " defect at y=" + where, r.final_defect, bound, r.provenance);
      if (std::abs(r.final_defect) > worst_defect) {
        worst_defect = std::abs(r.final_defect);
        worst_where = r.name + " at y=" + where;
      }
      if (r.check_ratios) {
        rep.add(r.name + " defect ratio at y=" + where, worst_ratio(r.defects, floor), ratio_center,
                "first order convergence in x", ratio_halfwidth);
      }
    }
  }
  rep.notes.push_back("largest final defect " + std::to_string(worst_defect) + " for " + worst_where);
  rep.runtime_seconds = seconds_since(t0);
  if (options.throw_on_failure && !rep.pass) {
    throw JumpFailure("jump relation failed; worst defect " + std::to_string(worst_defect) + " for " + worst_where);
  }
  return rep;
}

std::vector<std::vector<double>> default_theta_grid(int n, int count) {
  std::vector<std::vector<double>> grid;
  const double lo = 0.05;
  const double hi = std::numbers::pi - 0.05;
  for (int i = 0; i < count; ++i) {
    double a = count == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (count - 1);
    std::vector<double> theta(n, 0.0);
    theta[0] = std::sin(a);
    theta[1] = std::cos(a);
    grid.push_back(theta);
  }
  return grid;
}

LogConditionResult check_log_condition(LayerKind kind, int k, const BoundaryData& data, int j_max,
                                       const std::vector<std::vector<double>>& thetas, double tolerance,
                                       const QuadratureSpec& quad) {
  auto t0 = Clock::now();
  const int n = data.n();
  const double lambda = kind == LayerKind::Single ? 0.5 * (n - 2) : 0.5 * n;
  LogConditionResult out;
  VerificationReport& rep = out.report;
  rep.check_name = std::string("log_condition_") + to_string(kind) + "_" + data.name();
  rep.params = {{"kind", to_string(kind)}, {"k", k}, {"data", data.name()}, {"j_max", j_max},
                {"theta_points", thetas.size()}, {"tolerance", tolerance}};

  int l = data.rapid_decay() ? j_max + 1 : data.leading_order();
  std::vector<std::tuple<int, int, std::string>> plan;
  for (int j = std::max(n - 1, l); j <= j_max; ++j) plan.emplace_back(j, j + 1 - n, "unmodified");
  if (k > 0) {
    for (int j = std::max(alpha(kind, k) + 1, l); j <= std::min(alpha(kind, k) + k, j_max); ++j) {
      plan.emplace_back(j, alpha(kind, 0) - j, "modification");
    }
  }

  for (const auto& [j, idx, family] : plan) {
    LogConditionResult::Term term{j, idx, family, 0.0, {}};
    for (const auto& theta : thetas) {
      if (theta.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("theta must lie in R^n");
      auto integrand = [&](std::span<const double> w) {
        double t = 0.0;
        for (int i = 0; i < n - 1; ++i) t += theta[i + 1] * w[i];
        return data.coefficient(j, w) * gegenbauer(lambda, idx, t);
      };
      double v = integrate_sphere(n - 1, integrand, quad).value;
      term.values.push_back(v);
      term.max_abs = std::max(term.max_abs, std::abs(v));
    }
    std::ostringstream label;
    label << "max |integral| j=" << j << " C_" << idx << " (" << family << ")";
    rep.add_bound(label.str(), term.max_abs, tolerance, "vanishing condition");
    out.terms.push_back(std::move(term));
  }
  out.no_logs = rep.pass;
  out.verdict = out.no_logs ? "integer index set at Z" : "logarithmic terms at Z";
  rep.notes.push_back("verdict: " + out.verdict);
  rep.runtime_seconds = seconds_since(t0);
  return out;
}

bool AsymptoticFit::logs_detected() const { return std::any_of(detected.begin(), detected.end(), [](bool b) { return b; }); }

AsymptoticFit fit_samples(const std::vector<double>& rhos, const std::vector<double>& values,
                          const std::vector<IndexPair>& terms, double tolerance) {
  if (rhos.size() != values.size() || rhos.size() < terms.size() || terms.empty()) {
    throw std::invalid_argument("fit needs at least as many samples as terms");
  }
  for (const auto& t : terms) {
    if (t.z.im() != 0.0) throw std::invalid_argument("fits support real exponents only");
  }
  const double rmax = *std::max_element(rhos.begin(), rhos.end());
  const double rmin = *std::min_element(rhos.begin(), rhos.end());
  double vmax = 0.0;
  for (double v : values) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0.0) vmax = 1.0;

  const Eigen::Index m = static_cast<Eigen::Index>(rhos.size());
  const Eigen::Index p = static_cast<Eigen::Index>(terms.size());
  Eigen::MatrixXd a(m, p);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double t = rhos[i] / rmax;
    double lt = std::log(t);
    for (Eigen::Index c = 0; c < p; ++c) a(i, c) = std::pow(t, terms[c].z.re()) * std::pow(lt, terms[c].p);
    b(i) = values[i] / vmax;
  }
  Eigen::VectorXd scale = a.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < p; ++c) {
    if (scale(c) == 0.0) scale(c) = 1.0;
    a.col(c) /= scale(c);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e12)) throw IllConditionedFit(cond);
  Eigen::VectorXd c = svd.solve(b);
  Eigen::VectorXd resid = a * c - b;
  double rms = std::sqrt(resid.squaredNorm() / static_cast<double>(m));
  // Row norms of the pseudo-inverse map a per-sample error to a coefficient uncertainty.
  Eigen::MatrixXd vs = svd.matrixV() * sv.cwiseInverse().asDiagonal();
  Eigen::VectorXd row_norm = vs.rowwise().norm();

  AsymptoticFit fit;
  fit.terms = terms;
  fit.residual = rms;
  fit.condition = cond;
  fit.rho_min = rmin;
  fit.rho_max = rmax;
  for (Eigen::Index i = 0; i < p; ++i) {
    bool is_log = terms[i].p >= 1;
    double threshold = 10.0 * (rms + tolerance) * row_norm(i);
    double sig = is_log ? std::abs(c(i)) / threshold : 0.0;
    fit.significance.push_back(sig);
    fit.detected.push_back(is_log && sig > 1.0);
  }

  // Back to coefficients of rho^z log^q rho: t^z log^p t = rmax^{-z} rho^z (log rho - L)^p.
  const double big_l = std::log(rmax);
  fit.coefficients.assign(terms.size(), 0.0);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    double ci = c(static_cast<Eigen::Index>(i)) / scale(static_cast<Eigen::Index>(i)) * vmax *
                std::pow(rmax, -terms[i].z.re());
    for (int q = 0; q <= terms[i].p; ++q) {
      double binom = 1.0;
      for (int s = 0; s < q; ++s) binom = binom * (terms[i].p - s) / (s + 1);
      double contrib = ci * binom * std::pow(-big_l, terms[i].p - q);
      for (std::size_t r = 0; r < terms.size(); ++r) {
        if (terms[r].z == terms[i].z && terms[r].p == q) fit.coefficients[r] += contrib;
      }
    }
  }
  return fit;
}

AsymptoticFit fit_asymptotics(const PotentialField& field, const std::vector<double>& theta,
                              const std::vector<double>& rhos, const std::vector<IndexPair>& terms) {
  const int n = field.spec.n;
  if (theta.size() != static_cast<std::size_t>(n) || !(theta[0] > 0.0)) {
    throw std::invalid_argument("theta must be a direction in the open upper half-sphere");
  }
  std::vector<double> values;
  for (double rho : rhos) {
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
    HalfSpacePoint z{theta[0] / rho, std::vector<double>(theta.begin() + 1, theta.end())};
    for (double& v : z.y) v /= rho;
    values.push_back(apply_layer(field, z));
  }
  AsymptoticFit fit = fit_samples(rhos, values, terms, field.quad.rel_tol);
  fit.theta = theta;
  return fit;
}

std::vector<IndexPair> fit_terms_from_family(const IndexFamily& family, int orders) {
  const IndexSet& z = family.at("Z");
  if (z.is_empty()) throw std::invalid_argument("the Z face index set is empty");
  double lead = z.real_part();
  std::vector<IndexPair> terms;
  for (const auto& m : z.members_up_to(lead + orders - 1 + 1e-9)) {
    for (int q = 0; q <= m.p; ++q) terms.push_back({m.z, q});
  }
  return terms;
}

std::vector<double> rho_window(double r_min, double r_max, int count) {
  if (!(r_min > 0.0 && r_max > r_min) || count < 2) throw std::invalid_argument("bad rho window");
  std::vector<double> rhos;
  for (int i = 0; i < count; ++i) {
    double r = r_min * std::pow(r_max / r_min, static_cast<double>(i) / (count - 1));
    rhos.push_back(1.0 / r);
  }
  return rhos;
}

VerificationReport check_harmonicity(const std::string& name, const PointFunction& u,
                                     const std::vector<HalfSpacePoint>& points, double h, double c_h, double c_q,
                                     double quad_rel) {
  auto t0 = Clock::now();
  VerificationReport rep;
  rep.check_name = "harmonicity_" + name;
  rep.params = {{"h", h},
                {"points", points.size()},
                {"bound", "c_h h^2 + c_q * 4 n quad_rel max|u| / h^2"},
                {"c_h", c_h},
                {"c_q", c_q},
                {"quad_rel", quad_rel}};
  for (const auto& z : points) {
    const int n = z.dimension();
    double u0 = u(z);
    double lap = 0.0;
    double umax = std::abs(u0);
    for (int i = 0; i < n; ++i) {
      HalfSpacePoint zp = z;
      HalfSpacePoint zm = z;
      if (i == 0) {
        zp.x += h;
        zm.x -= h;
      } else {
        zp.y[i - 1] += h;
        zm.y[i - 1] -= h;
      }
      double up = u(zp);
      double um = u(zm);
      umax = std::max({umax, std::abs(up), std::abs(um)});
      lap += (up - 2.0 * u0 + um) / (h * h);
    }
    double noise = 4.0 * n * quad_rel * umax / (h * h);
    std::ostringstream label;
    label << "FD Laplacian at x=" << z.x << " y=" << point_label(z.y);
    rep.add_bound(label.str(), lap, c_h * h * h + c_q * noise, "harmonic function");
  }
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

VerificationReport check_harmonicity(const PotentialField& field, const std::vector<HalfSpacePoint>& points,
                                     double h) {
  for (const auto& z : points) {
    if (z.x < 10.0 * h) throw std::invalid_argument("harmonicity points need clearance 10 h from the boundary");
  }
  auto u = [&](const HalfSpacePoint& z) { return apply_layer(field, z); };
  std::string name = std::string(to_string(field.spec.kind)) + "_k" + std::to_string(field.spec.k) + "_" + field.data.name();
  return check_harmonicity(name, u, points, h, 1.0, 10.0, field.quad.rel_tol);
}

VerificationReport check_index_fixtures() {
  auto t0 = Clock::now();
  VerificationReport rep;
  rep.check_name = "index_fixtures";
  const char* exact = "symbolic identity";
  auto flag = [](bool b) { return b ? 1.0 : 0.0; };

  rep.add("k_+(2)", k_min(LayerKind::Single, IndexSet::integer(2)), 0, "minimal modification order", 0);
  rep.add("k_-(2)", k_min(LayerKind::Double, IndexSet::integer(2)), 0, "minimal modification order", 0);
  rep.add("k_+(-1)", k_min(LayerKind::Single, IndexSet::integer(-1)), 3, "minimal modification order", 0);
  rep.add("k_-(-1)", k_min(LayerKind::Double, IndexSet::integer(-1)), 1, "minimal modification order", 0);
  rep.add("alpha(single,0)", alpha(LayerKind::Single, 0), 1, "definition", 0);
  rep.add("alpha(double,0)", alpha(LayerKind::Double, 0), -1, "definition", 0);

  IndexFamily g(lattice_half_space(), {IndexSet::integer(1), IndexSet::integer(-1)});
  IndexFamily pulled = pullback_family(exponent_matrix_pi_l(), g);
  std::vector<int> expected = {1, -1, 0, -1, 1};
  bool ok = true;
  for (std::size_t i = 0; i < expected.size(); ++i) ok = ok && same_members(pulled[i], IndexSet::integer(expected[i]));
  rep.add("pull-back of (1,-1) by pi_l is (1,-1,0,-1,1)", flag(ok), 1, exact, 0);

  const int n = 3;
  for (int e : {2, 3, 5}) {
    IndexSet es = IndexSet::integer(e);
    auto fam = layer_potential_index_family(LayerKind::Single, 0, n, es);
    bool row = same_members(fam.at("Z"), extended_union(index_shift(es, Exponent(-1)), IndexSet::integer(n - 2))) &&
               same_members(fam.at("Y"), IndexSet::integer(0));
    rep.add("SL family for E=" + std::to_string(e), flag(row), 1, exact, 0);
    fam = layer_potential_index_family(LayerKind::Double, 0, n, es);
    row = same_members(fam.at("Z"), extended_union(es, IndexSet::integer(n - 1)));
    rep.add("DL family for E=" + std::to_string(e), flag(row), 1, exact, 0);
  }
  for (int e : {-1, -3}) {
    IndexSet es = IndexSet::integer(e);
    int kp = k_min(LayerKind::Single, es);
    int km = k_min(LayerKind::Double, es);
    auto fam = layer_potential_index_family(LayerKind::Single, kp, n, es);
    bool row = same_members(fam.at("Z"), extended_union(index_shift(es, Exponent(-1)), IndexSet::integer(1 - kp)));
    rep.add("SL_k family for E=" + std::to_string(e), flag(row), 1, exact, 0);
    fam = layer_potential_index_family(LayerKind::Double, km, n, es);
    row = same_members(fam.at("Z"), extended_union(es, IndexSet::integer(-km)));
    rep.add("DL_k family for E=" + std::to_string(e), flag(row), 1, exact, 0);
  }
  bool raised = false;
  try {
    layer_potential_index_family(LayerKind::Single, 0, n, IndexSet::integer(0));
  } catch (const IntegrabilityViolation& ex) {
    raised = ex.face() == "rf";
  }
  rep.add("SL with E=0 violates integrability at rf", flag(raised), 1, exact, 0);
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

VerificationReport check_gegenbauer_properties() {
  auto t0 = Clock::now();
  VerificationReport rep;
  rep.check_name = "gegenbauer_properties";
  rep.params = {{"grid", "21 x 21, t in [-1,1], r in [0,0.5]"}, {"terms", 41}, {"lambda", {0.5, 1.5, 2.5}}};
  for (double lambda : {0.5, 1.5, 2.5}) {
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
      double t = -1.0 + 0.1 * i;
      for (int j = 0; j <= 20; ++j) {
        double r = 0.025 * j;
        double sum = 0.0;
        double rm = 1.0;
        for (int m = 0; m <= 40; ++m, rm *= r) sum += gegenbauer(lambda, m, t) * rm;
        worst = std::max(worst, std::abs(sum - std::pow(1.0 - 2.0 * t * r + r * r, -lambda)));
      }
    }
    rep.add_bound("generating function, lambda=" + std::to_string(lambda).substr(0, 3), worst, 1e-10,
                  "closed-form generating function");
  }
  double worst_d = 0.0;
  // Plain central differences cannot reach 1e-7 here: at lambda = 5/2, m = 12 the third
  // derivative is about 3e7. One Richardson step removes the h^2 term.
  const double hd = 1e-4;
  for (double lambda : {0.5, 1.5, 2.5}) {
    for (int m = 0; m <= 12; ++m) {
      for (int i = 0; i <= 20; ++i) {
        double t = -0.99 + 0.099 * i;
        auto central = [&](double s) { return (gegenbauer(lambda, m, t + s) - gegenbauer(lambda, m, t - s)) / (2.0 * s); };
        double fd = (4.0 * central(0.5 * hd) - central(hd)) / 3.0;
        worst_d = std::max(worst_d, std::abs(fd - gegenbauer_derivative(lambda, m, t)));
      }
    }
  }
  rep.add_bound("derivative identity vs central differences", worst_d, 1e-7, "finite differences");
  double worst_par = 0.0;
  for (double lambda : {0.5, 1.5, 2.5}) {
    for (int m = 0; m <= 40; ++m) {
      for (int i = 0; i <= 20; ++i) {
        double t = 0.05 * i;
        double sign = m % 2 == 0 ? 1.0 : -1.0;
        worst_par = std::max(worst_par, std::abs(gegenbauer(lambda, m, -t) - sign * gegenbauer(lambda, m, t)));
      }
    }
  }
  rep.add_bound("parity C(-t) = (-1)^m C(t)", worst_par, 1e-13, "parity of the polynomials");
  double worst_p = 0.0;
  for (int m = 0; m <= 20; ++m) {
    for (int i = 0; i <= 20; ++i) {
      double t = -1.0 + 0.1 * i;
      // Bonnet recurrence for Legendre polynomials.
      double p0 = 1.0;
      double p1 = t;
      double pm = m == 0 ? 1.0 : t;
      for (int j = 2; j <= m; ++j) {
        pm = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = pm;
      }
      worst_p = std::max(worst_p, std::abs(gegenbauer(0.5, m, t) - pm));
    }
  }
  rep.add_bound("lambda=1/2 against Legendre recurrence", worst_p, 1e-12, "Legendre polynomials");
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

}  // namespace lpot
