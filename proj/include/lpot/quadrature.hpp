#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lpot {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  /// Radial break between the near and intermediate panels.
  double split_radius = 1.0;
  /// Start of the analytic tail; raised to twice the largest break when needed.
  double far_radius = 16.0;
  /// Bisection budget per initial radial segment.
  int max_subdivisions = 40;
  /// Starting trapezoid size on circles.
  int angular_points = 32;

  /// Throws std::invalid_argument when an invariant fails.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  /// Conservative estimate of the absolute error.
  double error = 0.0;
  long evaluations = 0;
};

using PlaneIntegrand = std::function<double(std::span<const double>)>;

struct PlaneOptions {
  /// Extra radii (measured from the center) where radial panels must break.
  std::vector<double> radial_breaks;
  /// Geometric breaks from this radius up to split_radius (0 disables them). Used for
  /// integrands peaked at a scale x around the center.
  double peak_width = 0.0;
};

/// Integral over R^{n-1} in polar coordinates about center. The integrand must decay like
/// |y|^{-decay_order}, which fixes the tail substitution. Throws NonIntegrable when
/// decay_order <= n - 1 and ToleranceNotMet when the budget runs out.
QuadratureResult integrate_plane(int n, const PlaneIntegrand& f, std::span<const double> center, double decay_order,
                                 const QuadratureSpec& spec, const PlaneOptions& options = {});

/// As integrate_plane for an integrand with a |y - y0|^{-s} singularity at y0, s < n - 1;
/// polar coordinates about y0 absorb the singularity into the Jacobian.
QuadratureResult integrate_plane_singular(int n, const PlaneIntegrand& f, std::span<const double> y0, double s,
                                          double decay_order, const QuadratureSpec& spec,
                                          const PlaneOptions& options = {});

using SphereIntegrand = std::function<double(std::span<const double>)>;

/// Integral over S^{d-1} in R^d, d in [2, 8]: trapezoid on circles, Gauss-Legendre in the
/// polar angles for d > 2, refined by doubling until converged.
QuadratureResult integrate_sphere(int d, const SphereIntegrand& f, const QuadratureSpec& spec);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace lpot
