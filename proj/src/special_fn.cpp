#include "lpot/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lpot {

double gegenbauer(double lambda, int m, double t) {
  if (!(lambda > 0.0)) throw std::domain_error("gegenbauer: lambda must be positive");
  if (m < -1 || m > kMaxGegenbauerDegree) {
    throw std::domain_error("gegenbauer: degree " + std::to_string(m) + " outside [-1, 64]");
  }
  if (!(std::abs(t) <= 1.0 + 1e-12)) throw std::domain_error("gegenbauer: |t| > 1");
  t = std::clamp(t, -1.0, 1.0);
  if (m == -1) return 0.0;

  long double lam = lambda;
  long double tt = t;
  long double prev = 0.0L;  // C_{j-2}
  long double cur = 1.0L;   // C_{j-1}
  for (int j = 1; j <= m; ++j) {
    long double next = (2.0L * tt * (j + lam - 1.0L) * cur - (j + 2.0L * lam - 2.0L) * prev) / j;
    prev = cur;
    cur = next;
  }
  return static_cast<double>(cur);
}

double gegenbauer_derivative(double lambda, int m, double t) {
  if (m <= 0) {
    // Validate the arguments the same way as the polynomial itself.
    gegenbauer(lambda, m, t);
    return 0.0;
  }
  return 2.0 * lambda * gegenbauer(lambda + 1.0, m - 1, t);
}

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("gamma_fn: argument must be positive");
  if (x < 0.5) return gamma_fn(x + 1.0) / x;
  double z = x - 1.0;
  double a = kLanczos[0];
  double t = z + kLanczosG + 0.5;
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + static_cast<double>(i));
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double sphere_volume(int d) {
  if (d < 1) throw std::domain_error("sphere_volume: dimension must be at least 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / gamma_fn(0.5 * d);
}

}  // namespace lpot
