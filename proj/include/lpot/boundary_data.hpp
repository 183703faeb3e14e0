#pragma once

#include <functional>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "lpot/index_calculus.hpp"

namespace lpot {

using PlaneFunction = std::function<double(std::span<const double>)>;
/// A function on S^{n-2}, called with a unit vector of R^{n-1}.
using SphereFunction = std::function<double(std::span<const double>)>;

inline constexpr int kDefaultExpansionDepth = 10;

/// Boundary data on Y with the expansion f(y') ~ sum_j |y'|^{-j} f_j(y'/|y'|) at infinity,
/// j = l ... l + J, valid for |y'| >= validity_radius.
///
/// Data whose expansion vanishes to all orders (zero or compactly supported data) has the
/// empty index set; rapid_decay() reports this and leading_order() is then meaningless.
class BoundaryData {
 public:
  BoundaryData(std::string name, int n, PlaneFunction eval, int leading_order, std::vector<SphereFunction> coefficients,
               double validity_radius);
  /// Data that vanishes to infinite order at infinity.
  static BoundaryData rapidly_decaying(std::string name, int n, PlaneFunction eval);

  const std::string& name() const noexcept { return name_; }
  int n() const noexcept { return n_; }
  int leading_order() const noexcept { return leading_order_; }
  int depth() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  double validity_radius() const noexcept { return validity_radius_; }
  bool rapid_decay() const noexcept { return rapid_decay_; }

  double operator()(std::span<const double> y) const { return eval_(y); }
  /// f_j on the sphere; the zero function for j outside l ... l + J.
  double coefficient(int j, std::span<const double> omega) const;
  /// Truncated expansion sum_{j <= l+J} |y|^{-j} f_j(y/|y|).
  double expansion(std::span<const double> y) const;

  /// Integer index set l, or empty for rapidly decaying data.
  IndexSet index_set(double truncation = kDefaultTruncation) const;

  /// Largest |f - expansion| / |y|^{-(l+J+1)} over a ring of sample points at the radii,
  /// after discounting a rounding allowance of 16 eps (|f| + sum of |terms|).
  double expansion_defect(const std::vector<double>& radii, int angular_samples = 16) const;

  /// a f + b g, with the expansion coefficients combined term by term.
  static BoundaryData linear_combination(double a, const BoundaryData& f, double b, const BoundaryData& g);

 private:
  std::string name_;
  int n_;
  PlaneFunction eval_;
  int leading_order_;
  std::vector<SphereFunction> coefficients_;
  double validity_radius_;
  bool rapid_decay_ = false;
};

/// f(y') = 1 / (1 + |y'|^2), n = 3.
BoundaryData make_example_f(int n = 3, int depth = kDefaultExpansionDepth);
/// g(y') = |y'| / (1 + |y'|^4), n = 3.
BoundaryData make_example_g(int n = 3, int depth = kDefaultExpansionDepth);
/// |y'|^d angular(y'/|y'|); angular must be the restriction of a degree-d homogeneous polynomial.
BoundaryData make_homogeneous_poly(int n, int degree, SphereFunction angular, std::string name = "poly");
BoundaryData make_zero(int n);

/// Built-in data: "example-f", "example-g", "zero" and "poly:d:odd|even" (the polynomial y_1^d,
/// whose parity must agree with d). Throws std::invalid_argument for unknown names.
BoundaryData make_named_data(const std::string& name, int n);

/// Tabulated data for n = 3 from CSV rows "kind,param,angle,value" with a header line.
/// kind "sample": param is the radius r, value is f(r, angle). kind "coeff": param is the
/// order j, value is f_j(angle). Angles are in radians on a common grid. Radial profiles are
/// interpolated by modified Akima splines, angles periodically and linearly; beyond the largest
/// sampled radius the coefficient expansion is used. Throws ParseError.
BoundaryData load_tabulated_data(std::istream& in, const std::string& name = "table");

}  // namespace lpot
