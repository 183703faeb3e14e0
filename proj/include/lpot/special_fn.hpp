#pragma once

namespace lpot {

/// Largest Gegenbauer degree the recurrence is trusted for.
inline constexpr int kMaxGegenbauerDegree = 64;

/// C^lambda_m(t) by the three-term recurrence, with C^lambda_{-1} = 0.
/// Requires lambda > 0, -1 <= m <= 64 and |t| <= 1 + 1e-12 (t is clamped to [-1, 1]).
/// Throws std::domain_error otherwise.
double gegenbauer(double lambda, int m, double t);

/// d/dt C^lambda_m(t) = 2 lambda C^{lambda+1}_{m-1}(t).
double gegenbauer_derivative(double lambda, int m, double t);

/// Lanczos approximation of Gamma for x > 0.
double gamma_fn(double x);

/// Surface measure of the unit sphere S^{d-1} in R^d, 2 pi^{d/2} / Gamma(d/2).
double sphere_volume(int d);

}  // namespace lpot
