#pragma once

#include <span>
#include <vector>

#include "lpot/layer_kind.hpp"

namespace lpot {

/// A point z = (x, y) of the closed half-space, x >= 0 and y in R^{n-1}.
struct HalfSpacePoint {
  double x = 0.0;
  std::vector<double> y;

  int dimension() const noexcept { return static_cast<int>(y.size()) + 1; }
  /// Euclidean norm |z|.
  double norm() const;
};

/// Smooth cut-off psi(|y'|): 0 below inner_radius, 1 above outer_radius.
struct CutoffSpec {
  double inner_radius = 1.0;
  double outer_radius = 2.0;

  double operator()(double s) const;
};

struct KernelSpec {
  int n = 3;
  LayerKind kind = LayerKind::Single;
  int k = 0;
  CutoffSpec cutoff{};

  /// Throws std::invalid_argument on n < 3, k < 0 or a bad cut-off.
  void validate() const;
};

/// Smooth step on [0, 1]: e(t) / (e(t) + e(1 - t)), e(t) = exp(-1/t).
double smooth_step(double t);

/// |z - z'|^{2-n} / ((2 - n) vol S^{n-1}) for z, z' in R^n. Throws CoincidentPoints.
double fundamental_solution(int n, std::span<const double> z, std::span<const double> zp);

/// Fundamental solution with z' = (0, y') on the boundary.
double single_layer(int n, const HalfSpacePoint& z, std::span<const double> yp);
/// x |z - z'|^{-n} / vol S^{n-1}.
double double_layer(int n, const HalfSpacePoint& z, std::span<const double> yp);

/// Homogeneous harmonic terms of the multipole expansion, z and z' in R^n with z' != 0.
/// Single: |z|^m / |z'|^{m+n-2} C^{(n-2)/2}_m(Theta).
/// Double: x |z|^{m-1} / |z'|^{m+n-1} C^{n/2}_{m-1}(Theta), zero for m = 0.
double multipole_term(int n, LayerKind kind, int m, std::span<const double> z, std::span<const double> zp);

/// SL_k: the single layer minus its first k cut-off multipole terms.
double modified_single(const KernelSpec& spec, const HalfSpacePoint& z, std::span<const double> yp);
/// DL_k: the double layer minus its first k cut-off multipole terms.
double modified_double(const KernelSpec& spec, const HalfSpacePoint& z, std::span<const double> yp);
/// modified_single or modified_double according to spec.kind.
double layer_kernel(const KernelSpec& spec, const HalfSpacePoint& z, std::span<const double> yp);

/// Normal derivative -d/dx of SL_k(z, (0, y')).
double normal_derivative_single(const KernelSpec& spec, const HalfSpacePoint& z, std::span<const double> yp);

/// N_k(y, y'): SL_k restricted to x = 0.
double boundary_single(const KernelSpec& spec, std::span<const double> y, std::span<const double> yp);
/// K_k vanishes identically on the half-space.
double boundary_double(const KernelSpec& spec, std::span<const double> y, std::span<const double> yp);

/// d/dx [ |z|^m C^lambda_m(Theta) ] with Theta = <y, y'> / (|z| |y'|), z = (x, y).
double modification_term_dx(double lambda, int m, const HalfSpacePoint& z, std::span<const double> yp);

}  // namespace lpot
