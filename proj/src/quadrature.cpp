#include "lpot/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <Eigen/Eigenvalues>

#include "lpot/errors.hpp"

namespace lpot {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw std::invalid_argument("quadrature tolerances must be positive");
  if (!(split_radius > 0.0) || !(split_radius < far_radius)) {
    throw std::invalid_argument("quadrature needs 0 < split_radius < far_radius");
  }
  if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be positive");
  if (angular_points < 8) throw std::invalid_argument("angular_points must be at least 8");
}

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
  if (m < 1) throw std::invalid_argument("gauss_legendre needs at least one node");
  static std::mutex mutex;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(m);
  if (it == cache.end()) {
    std::vector<double> x(m);
    std::vector<double> w(m);
    for (int i = 0; i < m; ++i) {
      double t = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = t;
        for (int j = 2; j <= m; ++j) {
          double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        double pm = m == 1 ? t : p1;
        double pm1 = m == 1 ? 1.0 : p0;
        dp = m * (t * pm - pm1) / (t * t - 1.0);
        double dt = pm / dp;
        t -= dt;
        if (std::abs(dt) < 1e-16) break;
      }
      x[i] = t;
      w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    it = cache.emplace(m, std::make_pair(std::move(x), std::move(w))).first;
  }
  nodes = it->second.first;
  weights = it->second.second;
}

namespace {

struct AngularResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  bool converged = false;
};

// Gauss rule for the weight (1 - t^2)^{(k - 1) / 2} on [-1, 1], by Golub-Welsch.
const std::pair<std::vector<double>, std::vector<double>>& gauss_gegenbauer(int m, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({m, k});
  if (it != cache.end()) return it->second;
  const double a = 0.5 * (k - 1);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  for (int j = 1; j < m; ++j) {
    double b = std::sqrt(j * (j + 2.0 * a) / ((2.0 * j + 2.0 * a + 1.0) * (2.0 * j + 2.0 * a - 1.0)));
    jac(j, j - 1) = b;
    jac(j - 1, j) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  const double mu0 = std::sqrt(std::numbers::pi) * std::tgamma(a + 1.0) / std::tgamma(a + 1.5);
  std::vector<double> x(m);
  std::vector<double> w(m);
  for (int i = 0; i < m; ++i) {
    x[i] = eig.eigenvalues()(i);
    double v = eig.eigenvectors()(0, i);
    w[i] = mu0 * v * v;
  }
  // Exact symmetry keeps odd integrands at zero.
  for (int i = 0; i < m / 2; ++i) {
    double xs = 0.5 * (x[m - 1 - i] - x[i]);
    double ws = 0.5 * (w[i] + w[m - 1 - i]);
    x[i] = -xs;
    x[m - 1 - i] = xs;
    w[i] = w[m - 1 - i] = ws;
  }
  if (m % 2 == 1) x[m / 2] = 0.0;
  return cache.emplace(std::make_pair(m, k), std::make_pair(std::move(x), std::move(w))).first->second;
}

// Adaptive integral over S^{d-1}; g receives unit vectors.
template <class G>
AngularResult sphere_adaptive(int d, const G& g, int points, double rel, double abs_tol) {
  AngularResult res;
  std::vector<double> omega(d, 0.0);
  if (d == 2) {
    int n = points;
    double sum = 0.0;
    double l1 = 0.0;
    double even = 0.0;
    for (int i = 0; i < n; ++i) {
      double phi = 2.0 * std::numbers::pi * i / n;
      omega[0] = std::cos(phi);
      omega[1] = std::sin(phi);
      double v = g(omega);
      sum += v;
      l1 += std::abs(v);
      // The coarse rule uses every second node of the first level.
      if (i % 2 == 0) even += v;
    }
    res.evaluations = n;
    double fine = 2.0 * std::numbers::pi * sum / n;
    double coarse = 4.0 * std::numbers::pi * even / n;
    double diff = std::abs(fine - coarse);
    const int cap = points * 128;
    while (diff > std::max(abs_tol, rel * 2.0 * std::numbers::pi * l1 / n) && n < cap) {
      double mid = 0.0;
      double mid_l1 = 0.0;
      for (int i = 0; i < n; ++i) {
        double phi = 2.0 * std::numbers::pi * (i + 0.5) / n;
        omega[0] = std::cos(phi);
        omega[1] = std::sin(phi);
        double v = g(omega);
        mid += v;
        mid_l1 += std::abs(v);
      }
      res.evaluations += n;
      sum += mid;
      l1 += mid_l1;
      n *= 2;
      double next = 2.0 * std::numbers::pi * sum / n;
      diff = std::abs(next - fine);
      fine = next;
    }
    res.value = fine;
    res.error = diff;
    res.converged = diff <= std::max(abs_tol, rel * 2.0 * std::numbers::pi * l1 / n);
    return res;
  }

  // Polar angles in t = cos(theta); the sin^k Jacobian becomes a Gegenbauer weight.
  auto level_rule = [&](int level, double& l1) {
    int m = std::max(4, points / 8) << level;
    int nphi = points << level;
    int polar = d - 2;
    std::vector<const std::pair<std::vector<double>, std::vector<double>>*> rules(polar);
    for (int i = 0; i < polar; ++i) rules[i] = &gauss_gegenbauer(m, d - 2 - i);
    std::vector<int> idx(polar, 0);
    double total = 0.0;
    l1 = 0.0;
    while (true) {
      double weight = 1.0;
      double s = 1.0;
      for (int i = 0; i < polar; ++i) {
        double t = rules[i]->first[idx[i]];
        weight *= rules[i]->second[idx[i]];
        omega[i] = s * t;
        s *= std::sqrt(std::max(0.0, 1.0 - t * t));
      }
      double inner = 0.0;
      double inner_l1 = 0.0;
      for (int j = 0; j < nphi; ++j) {
        double phi = 2.0 * std::numbers::pi * j / nphi;
        omega[d - 2] = s * std::cos(phi);
        omega[d - 1] = s * std::sin(phi);
        double v = g(omega);
        inner += v;
        inner_l1 += std::abs(v);
      }
      res.evaluations += nphi;
      total += weight * 2.0 * std::numbers::pi * inner / nphi;
      l1 += weight * 2.0 * std::numbers::pi * inner_l1 / nphi;
      int k = 0;
      while (k < polar && ++idx[k] == m) idx[k++] = 0;
      if (k == polar) break;
    }
    return total;
  };
  double l1 = 0.0;
  double prev = level_rule(0, l1);
  double cur = level_rule(1, l1);
  double diff = std::abs(cur - prev);
  // Levels whose tensor grid would exceed this many nodes are not attempted.
  constexpr double kMaxNodes = 4e7;
  auto nodes_at = [&](int level) {
    return std::pow(static_cast<double>(std::max(4, points / 8) << level), d - 2) * static_cast<double>(points << level);
  };
  for (int level = 2; level <= 3 && diff > std::max(abs_tol, rel * l1) && nodes_at(level) <= kMaxNodes; ++level) {
    prev = cur;
    cur = level_rule(level, l1);
    diff = std::abs(cur - prev);
  }
  res.value = cur;
  res.error = diff;
  res.converged = diff <= std::max(abs_tol, rel * l1);
  return res;
}

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

// Gauss-Kronrod 21/10 panel of a radial function returning (value, angular error).
template <class F>
Panel gk_panel(const F& fr, double a, double b, long& evals) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  double half = 0.5 * (b - a);
  double mid = 0.5 * (a + b);
  double kron = 0.0;
  double gauss = 0.0;
  double ang = 0.0;
  auto eval = [&](double t, double& angular_err) {
    ++evals;
    return fr(mid + half * t, angular_err);
  };
  double e0 = 0.0;
  double f0 = eval(0.0, e0);
  kron += wk[0] * f0;
  ang += wk[0] * e0;
  for (std::size_t i = 1; i < xk.size(); ++i) {
    double ep = 0.0;
    double em = 0.0;
    double fp = eval(xk[i], ep);
    double fm = eval(-xk[i], em);
    kron += wk[i] * (fp + fm);
    ang += wk[i] * (ep + em);
    // Gauss-10 nodes are the odd Kronrod indices.
    if (i % 2 == 1) gauss += wg[i / 2] * (fp + fm);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = half * kron;
  p.error = std::abs(half * (kron - gauss)) + std::abs(half) * ang;
  return p;
}

QuadratureResult plane_impl(int n, const PlaneIntegrand& f, std::span<const double> center, double decay_order,
                            double singular, const QuadratureSpec& spec, const PlaneOptions& options) {
  spec.validate();
  if (n < 2) throw std::invalid_argument("plane integration needs n >= 2");
  const int d = n - 1;
  if (center.size() != static_cast<std::size_t>(d)) throw std::invalid_argument("center must have n - 1 coordinates");
  if (!(decay_order > d)) {
    throw NonIntegrable("integrand decays like |y|^-" + std::to_string(decay_order) +
                        ", which is not integrable over R^" + std::to_string(d));
  }
  if (!(singular < d)) {
    throw NonIntegrable("point singularity of order " + std::to_string(singular) + " is not integrable in R^" +
                        std::to_string(d));
  }

  std::vector<double> breaks = {0.0, spec.split_radius};
  for (double r : options.radial_breaks) {
    if (r > 0.0 && std::isfinite(r)) breaks.push_back(r);
  }
  if (options.peak_width > 0.0) {
    for (double r = options.peak_width; r < spec.split_radius; r *= 4.0) breaks.push_back(r);
  }
  const double far = std::max(spec.far_radius, 2.0 * *std::max_element(breaks.begin(), breaks.end()));
  // Geometric breaks keep panels short relative to their radius out to the tail.
  for (double r = 4.0 * spec.split_radius; r < far; r *= 4.0) breaks.push_back(r);
  breaks.push_back(far);
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> uniq;
  for (double r : breaks) {
    if (uniq.empty() || r > uniq.back() * (1.0 + 1e-9) + 1e-300) uniq.push_back(r);
  }

  const double beta = std::min(1.0, decay_order - d);
  const double ang_rel = 1e-3 * spec.rel_tol;
  const double ang_abs = 1e-3 * spec.abs_tol;
  std::vector<double> point(d);
  long evals = 0;

  auto shell = [&](double r, double& angular_err) {
    auto g = [&](const std::vector<double>& omega) {
      for (int i = 0; i < d; ++i) point[i] = center[i] + r * omega[i];
      return f(point);
    };
    AngularResult a = sphere_adaptive(d, g, spec.angular_points, ang_rel, ang_abs);
    evals += a.evaluations;
    double jac = std::pow(r, d - 1);
    angular_err = jac * a.error;
    return jac * a.value;
  };
  // Tail segment in t in (0, 1] with r = far t^{-1/beta}.
  auto tail = [&](double t, double& angular_err) {
    double r = far * std::pow(t, -1.0 / beta);
    double jac = far / beta * std::pow(t, -1.0 / beta - 1.0);
    double e = 0.0;
    double v = shell(r, e);
    angular_err = jac * e;
    return jac * v;
  };

  struct Tagged {
    Panel panel;
    bool tail;
  };
  long panel_evals = 0;
  std::vector<Tagged> panels;
  for (std::size_t i = 0; i + 1 < uniq.size(); ++i) {
    panels.push_back({gk_panel(shell, uniq[i], uniq[i + 1], panel_evals), false});
  }
  panels.push_back({gk_panel(tail, 0.0, 1.0, panel_evals), true});

  const long budget = static_cast<long>(spec.max_subdivisions) * static_cast<long>(panels.size());
  auto totals = [&](double& value, double& error) {
    value = 0.0;
    error = 0.0;
    for (const auto& p : panels) {
      value += p.panel.value;
      error += p.panel.error;
    }
  };

  double value = 0.0;
  double error = 0.0;
  totals(value, error);
  long splits = 0;
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value)) && splits < budget) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i) {
      if (panels[i].panel.error > panels[worst].panel.error) worst = i;
    }
    Tagged w = panels[worst];
    double mid = 0.5 * (w.panel.a + w.panel.b);
    if (w.tail) {
      panels[worst] = {gk_panel(tail, w.panel.a, mid, panel_evals), true};
      panels.push_back({gk_panel(tail, mid, w.panel.b, panel_evals), true});
    } else {
      panels[worst] = {gk_panel(shell, w.panel.a, mid, panel_evals), false};
      panels.push_back({gk_panel(shell, mid, w.panel.b, panel_evals), false});
    }
    ++splits;
    totals(value, error);
  }
  double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
  if (error > target) throw ToleranceNotMet(value, error, target);
  QuadratureResult res;
  res.value = value;
  res.error = error;
  res.evaluations = evals;
  return res;
}

}  // namespace

QuadratureResult integrate_plane(int n, const PlaneIntegrand& f, std::span<const double> center, double decay_order,
                                 const QuadratureSpec& spec, const PlaneOptions& options) {
  return plane_impl(n, f, center, decay_order, 0.0, spec, options);
}

QuadratureResult integrate_plane_singular(int n, const PlaneIntegrand& f, std::span<const double> y0, double s,
                                          double decay_order, const QuadratureSpec& spec,
                                          const PlaneOptions& options) {
  return plane_impl(n, f, y0, decay_order, s, spec, options);
}

QuadratureResult integrate_sphere(int d, const SphereIntegrand& f, const QuadratureSpec& spec) {
  spec.validate();
  if (d < 2 || d > 8) throw std::invalid_argument("integrate_sphere supports d in [2, 8]");
  auto g = [&](const std::vector<double>& omega) { return f(omega); };
  AngularResult a = sphere_adaptive(d, g, spec.angular_points, spec.rel_tol, spec.abs_tol);
  if (!a.converged) {
    throw ToleranceNotMet(a.value, a.error, std::max(spec.abs_tol, spec.rel_tol * std::abs(a.value)));
  }
  QuadratureResult res;
  res.value = a.value;
  res.error = a.error;
  res.evaluations = a.evaluations;
  return res;
}

}  // namespace lpot
