#include "lpot/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "lpot/errors.hpp"
#include "lpot/special_fn.hpp"

namespace lpot {

namespace {

constexpr double kCoincidence = 1e-300;
// The tail series is summed directly when |z| <= kTailRatio |y'|.
constexpr double kTailRatio = 0.25;
constexpr int kTailTerms = 40;

double volume(int n) {
  static const std::array<double, 33> table = [] {
    std::array<double, 33> t{};
    for (int d = 1; d < 33; ++d) t[d] = sphere_volume(d);
    return t;
  }();
  if (n >= 1 && n < 33) return table[n];
  return sphere_volume(n);
}

void require_order(int k) {
  if (k < 0 || k > kMaxGegenbauerDegree) throw std::invalid_argument("modification order must lie in [0, 64]");
}

void require_dims(int n, std::size_t y, std::size_t yp) {
  if (n < 3) throw std::invalid_argument("kernel dimension must be at least 3");
  if (y != static_cast<std::size_t>(n - 1) || yp != static_cast<std::size_t>(n - 1)) {
    throw std::invalid_argument("boundary points must have n - 1 coordinates");
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double dist2(double x, std::span<const double> y, std::span<const double> yp) {
  double s = x * x;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double d = y[i] - yp[i];
    s += d * d;
  }
  return s;
}

// C^lambda_0 .. C^lambda_M at t, by the same recurrence as gegenbauer().
template <std::size_t N>
void gegenbauer_table(double lambda, int degree, double t, std::array<double, N>& out) {
  long double prev = 0.0L;
  long double cur = 1.0L;
  out[0] = 1.0;
  for (int j = 1; j <= degree; ++j) {
    long double next = (2.0L * t * (j + lambda - 1.0L) * cur - (j + 2.0L * lambda - 2.0L) * prev) / j;
    prev = cur;
    cur = next;
    out[j] = static_cast<double>(cur);
  }
}

struct Geometry {
  double rz;     // |z|
  double ryp;    // |y'|
  double theta;  // <z, z'> / (|z| |z'|), 0 at z = 0
};

Geometry geometry(const HalfSpacePoint& z, std::span<const double> yp) {
  Geometry g{};
  double yy = dot(z.y, z.y);
  g.rz = std::sqrt(z.x * z.x + yy);
  g.ryp = std::sqrt(dot(yp, yp));
  g.theta = (g.rz > 0.0 && g.ryp > 0.0) ? std::clamp(dot(z.y, yp) / (g.rz * g.ryp), -1.0, 1.0) : 0.0;
  return g;
}

bool use_tail(const KernelSpec& spec, const Geometry& g, int last_degree) {
  return g.ryp >= spec.cutoff.outer_radius && g.rz <= kTailRatio * g.ryp &&
         last_degree + kTailTerms <= kMaxGegenbauerDegree;
}

}  // namespace

double HalfSpacePoint::norm() const { return std::sqrt(x * x + dot(y, y)); }

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = std::exp(-1.0 / t);
  double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double CutoffSpec::operator()(double s) const { return smooth_step((s - inner_radius) / (outer_radius - inner_radius)); }

void KernelSpec::validate() const {
  if (n < 3) throw std::invalid_argument("kernel dimension n must be at least 3");
  if (k < 0) throw std::invalid_argument("modification order k must be non-negative");
  if (k > kMaxGegenbauerDegree) throw std::invalid_argument("modification order k must be at most 64");
  if (!(cutoff.inner_radius > 0.0 && cutoff.inner_radius < cutoff.outer_radius)) {
    throw std::invalid_argument("cut-off radii must satisfy 0 < inner < outer");
  }
}

double fundamental_solution(int n, std::span<const double> z, std::span<const double> zp) {
  if (n < 3) throw std::invalid_argument("fundamental solution needs n >= 3");
  if (z.size() != static_cast<std::size_t>(n) || zp.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("points must have n coordinates");
  }
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += (z[i] - zp[i]) * (z[i] - zp[i]);
  double r = std::sqrt(s);
  if (r < kCoincidence) throw CoincidentPoints();
  return std::pow(r, 2 - n) / ((2 - n) * volume(n));
}

double single_layer(int n, const HalfSpacePoint& z, std::span<const double> yp) {
  require_dims(n, z.y.size(), yp.size());
  double r = std::sqrt(dist2(z.x, z.y, yp));
  if (r < kCoincidence) throw CoincidentPoints();
  return std::pow(r, 2 - n) / ((2 - n) * volume(n));
}

double double_layer(int n, const HalfSpacePoint& z, std::span<const double> yp) {
  require_dims(n, z.y.size(), yp.size());
  double r = std::sqrt(dist2(z.x, z.y, yp));
  if (r < kCoincidence) throw CoincidentPoints();
  return z.x * std::pow(r, -n) / volume(n);
}

double multipole_term(int n, LayerKind kind, int m, std::span<const double> z, std::span<const double> zp) {
  if (n < 3) throw std::invalid_argument("multipole terms need n >= 3");
  if (m < 0) throw std::invalid_argument("multipole degree must be non-negative");
  if (z.size() != static_cast<std::size_t>(n) || zp.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("points must have n coordinates");
  }
  double rz = std::sqrt(dot(z, z));
  double rzp = std::sqrt(dot(zp, zp));
  if (rzp < kCoincidence) throw std::invalid_argument("multipole term needs z' != 0");
  double theta = rz > 0.0 ? std::clamp(dot(z, zp) / (rz * rzp), -1.0, 1.0) : 0.0;
  if (kind == LayerKind::Single) {
    return std::pow(rz, m) / std::pow(rzp, m + n - 2) * gegenbauer(0.5 * (n - 2), m, theta);
  }
  if (m == 0) return 0.0;
  return z[0] * std::pow(rz, m - 1) / std::pow(rzp, m + n - 1) * gegenbauer(0.5 * n, m - 1, theta);
}

double modified_single(const KernelSpec& spec, const HalfSpacePoint& z, std::span<const double> yp) {
  const int n = spec.n;
  require_dims(n, z.y.size(), yp.size());
  require_order(spec.k);
  const double c = 1.0 / ((2 - n) * volume(n));
  if (spec.k == 0) return single_layer(n, z, yp);
  Geometry g = geometry(z, yp);
  const double lambda = 0.5 * (n - 2);
  std::array<double, kMaxGegenbauerDegree + 1> cm{};

  if (use_tail(spec, g, spec.k)) {
    // SL_k equals the remainder of the multipole series once psi = 1.
    int top = spec.k + kTailTerms;
    gegenbauer_table(lambda, top, g.theta, cm);
    double q = g.rz / g.ryp;
    double sum = 0.0;
    double qm = std::pow(q, spec.k);
    for (int m = spec.k; m <= top; ++m, qm *= q) sum += qm * cm[m];
    return c * sum * std::pow(g.ryp, 2 - n);
  }

  double value = single_layer(n, z, yp);
  double psi = spec.cutoff(g.ryp);
  if (psi == 0.0) return value;
  gegenbauer_table(lambda, spec.k - 1, g.theta, cm);
  double sum = 0.0;
  for (int m = 0; m < spec.k; ++m) sum += std::pow(g.rz, m) / std::pow(g.ryp, m + n - 2) * cm[m];
  return value - c * psi * sum;
}

double modified_double(const KernelSpec& spec, const HalfSpacePoint& z, std::span<const double> yp) {
  const int n = spec.n;
  require_dims(n, z.y.size(), yp.size());
  require_order(spec.k);
  if (spec.k == 0) return double_layer(n, z, yp);
  const double c = 1.0 / volume(n);
  Geometry g = geometry(z, yp);
  const double lambda = 0.5 * n;
  std::array<double, kMaxGegenbauerDegree + 1> cm{};

  if (use_tail(spec, g, spec.k)) {
    int top = spec.k + kTailTerms;
    gegenbauer_table(lambda, top, g.theta, cm);
    double q = g.rz / g.ryp;
    double sum = 0.0;
    double qm = std::pow(q, spec.k);
    for (int m = spec.k; m <= top; ++m, qm *= q) sum += qm * cm[m];
    return c * z.x * sum * std::pow(g.ryp, -n);
  }

  double value = double_layer(n, z, yp);
  double psi = spec.cutoff(g.ryp);
  if (psi == 0.0) return value;
  gegenbauer_table(lambda, spec.k - 1, g.theta, cm);
  double sum = 0.0;
  // Terms m' = 1..k of x |z|^{m'-1} / |z'|^{m'+n-1} C^{n/2}_{m'-1}; the m' = 0 term vanishes.
  for (int m = 0; m < spec.k; ++m) sum += std::pow(g.rz, m) / std::pow(g.ryp, m + n) * cm[m];
  return value - c * psi * z.x * sum;
}

double layer_kernel(const KernelSpec& spec, const HalfSpacePoint& z, std::span<const double> yp) {
  return spec.kind == LayerKind::Single ? modified_single(spec, z, yp) : modified_double(spec, z, yp);
}

double modification_term_dx(double lambda, int m, const HalfSpacePoint& z, std::span<const double> yp) {
  if (m <= 1) return 0.0;
  Geometry g = geometry(z, yp);
  if (g.rz == 0.0) return 0.0;
  double cm = gegenbauer(lambda, m, g.theta);
  double dcm = gegenbauer_derivative(lambda, m, g.theta);
  return z.x * std::pow(g.rz, m - 2) * (m * cm - g.theta * dcm);
}

double normal_derivative_single(const KernelSpec& spec, const HalfSpacePoint& z, std::span<const double> yp) {
  const int n = spec.n;
  require_dims(n, z.y.size(), yp.size());
  require_order(spec.k);
  if (spec.k == 0) return -double_layer(n, z, yp);
  const double c = 1.0 / ((2 - n) * volume(n));
  const double lambda = 0.5 * (n - 2);
  Geometry g = geometry(z, yp);

  if (use_tail(spec, g, spec.k + 1) && g.rz > 0.0) {
    // -d/dx of c * sum_{m >= k} |z|^m C_m / |y'|^{m+n-2}.
    int top = spec.k + kTailTerms;
    std::array<double, kMaxGegenbauerDegree + 1> cm{};
    std::array<double, kMaxGegenbauerDegree + 1> cm1{};
    gegenbauer_table(lambda, top, g.theta, cm);
    gegenbauer_table(lambda + 1.0, top, g.theta, cm1);
    double q = g.rz / g.ryp;
    double sum = 0.0;
    double qm = std::pow(q, spec.k);
    for (int m = spec.k; m <= top; ++m, qm *= q) {
      if (m <= 1) continue;
      double d = m * cm[m] - g.theta * 2.0 * lambda * cm1[m - 1];
      sum += qm * d;
    }
    // x |z|^{m-2} / |y'|^{m+n-2} = x / |z|^2 * q^m * |y'|^{2-n}.
    return -c * z.x / (g.rz * g.rz) * sum * std::pow(g.ryp, 2 - n);
  }

  double value = -double_layer(n, z, yp);
  double psi = spec.cutoff(g.ryp);
  if (psi == 0.0) return value;
  double sum = 0.0;
  for (int m = 2; m < spec.k; ++m) sum += modification_term_dx(lambda, m, z, yp) / std::pow(g.ryp, m + n - 2);
  return value + c * psi * sum;
}

double boundary_single(const KernelSpec& spec, std::span<const double> y, std::span<const double> yp) {
  HalfSpacePoint z{0.0, std::vector<double>(y.begin(), y.end())};
  return modified_single(spec, z, yp);
}

double boundary_double(const KernelSpec& spec, std::span<const double> y, std::span<const double> yp) {
  require_dims(spec.n, y.size(), yp.size());
  return 0.0;
}

}  // namespace lpot
