#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "lpot/errors.hpp"
#include "lpot/potentials.hpp"

using namespace lpot;

namespace {

constexpr double kPi = std::numbers::pi;

// (x/4) int_0^inf du / ((x^2 + u)^{3/2} (1 + u)), the double layer of 1/(1 + |y|^2) at (x, 0).
double double_layer_f_on_axis(double x) {
  double c = 1.0 - x * x;
  if (std::abs(c) < 1e-12) return 1.0 / 6.0;
  double inner;
  if (c > 0.0) {
    double s = std::sqrt(c);
    inner = (2.0 / c) * (1.0 / x - (0.5 * kPi - std::atan(x / s)) / s);
  } else {
    double b = std::sqrt(-c);
    inner = (2.0 / c) * (1.0 / x - std::log((x + b) / (x - b)) / (2.0 * b));
  }
  return 0.25 * x * inner;
}

// Complete elliptic integral K(m) with k' = |r - a| / (r + a) given directly.
double ellip_k_from_complement(double kc) {
  double p = 1.0;
  double q = kc;
  for (int i = 0; i < 60 && std::abs(p - q) > 1e-16 * p; ++i) {
    double next = 0.5 * (p + q);
    q = std::sqrt(p * q);
    p = next;
  }
  return kPi / (2.0 * p);
}

// N_0 f(a, 0) for f = 1/(1 + |y|^2): -1/(4 pi) int_0^inf r / (1 + r^2) * 4 K(m) / (r + a) dr.
double boundary_single_f(double a) {
  std::vector<double> x, w;
  gauss_legendre(30, x, w);
  auto radial = [&](double r) {
    return r / (1.0 + r * r) * 4.0 * ellip_k_from_complement(std::abs(r - a) / (r + a)) / (r + a);
  };
  auto panel = [&](double lo, double hi) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * radial(0.5 * (lo + hi) + 0.5 * (hi - lo) * x[i]);
    return 0.5 * (hi - lo) * s;
  };
  double total = 0.0;
  for (double h = a; h > 1e-14; h *= 0.5) {
    total += panel(a - h, a - 0.5 * h);
    total += panel(a + 0.5 * h, a + h);
  }
  // Beyond 2a the integrand is smooth; its large-r behaviour r/(1+r^2) * 2 pi / r is handled
  // with r = 2a/t.
  double r0 = 2.0 * a;
  for (double lo = 0.0; lo < 1.0; lo += 1.0 / 64) {
    double hi = lo + 1.0 / 64;
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x[i];
      double r = r0 / t;
      s += w[i] * radial(r) * r0 / (t * t);
    }
    total += 0.5 * (hi - lo) * s;
  }
  return -total / (4.0 * kPi);
}

KernelSpec spec_of(LayerKind kind, int k, int n = 3) {
  KernelSpec s;
  s.n = n;
  s.kind = kind;
  s.k = k;
  return s;
}

BoundaryData data_of_order(int l) {
  // Order l > 0: (1 + |y|^2)^{-l/2}; order l <= 0: y_1^{-l}.
  if (l <= 0) {
    int d = -l;
    return make_homogeneous_poly(3, d, [d](std::span<const double> w) { return std::pow(w[0], d); });
  }
  PlaneFunction eval = [l](std::span<const double> y) { return std::pow(1.0 + y[0] * y[0] + y[1] * y[1], -0.5 * l); };
  return BoundaryData("order", 3, eval, l, {[](std::span<const double>) { return 1.0; }}, 10.0);
}

}  // namespace

TEST_CASE("double layer of example f on the axis") {
  PotentialField field = make_field(spec_of(LayerKind::Double, 0), make_example_f());
  CHECK(apply_layer(field, HalfSpacePoint{1.0, {0.0, 0.0}}) == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  for (double x : {0.05, 0.3, 0.5, 2.0, 5.0}) {
    CAPTURE(x);
    CHECK(apply_layer(field, HalfSpacePoint{x, {0.0, 0.0}}) == doctest::Approx(double_layer_f_on_axis(x)).epsilon(1e-8));
  }
  // Boundary limit f(0)/2.
  CHECK(double_layer_f_on_axis(1e-6) == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(apply_layer(field, HalfSpacePoint{0.0, {0.3, 0.1}}) == 0.0);
}

TEST_CASE("boundary single layer of example f") {
  KernelSpec s = spec_of(LayerKind::Single, 0);
  BoundaryData f = make_example_f();
  std::vector<double> origin{0.0, 0.0};
  CHECK(apply_boundary(s, f, origin) == doctest::Approx(-kPi / 4.0).epsilon(1e-9));
  for (double a : {0.5, 1.0, 3.0}) {
    CAPTURE(a);
    std::vector<double> y{a * std::cos(0.4), a * std::sin(0.4)};
    CHECK(apply_boundary(s, f, y) == doctest::Approx(boundary_single_f(a)).epsilon(1e-8));
  }
  // Field at x = 0 is the boundary operator.
  PotentialField field = make_field(s, f);
  CHECK(apply_layer(field, HalfSpacePoint{0.0, {0.0, 0.0}}) == doctest::Approx(-kPi / 4.0).epsilon(1e-9));
  CHECK(apply_boundary_double(s, f, origin) == 0.0);
}

TEST_CASE("translation covariance of the boundary operator") {
  auto bump = [](std::span<const double> y, double cx, double cy) {
    double r2 = (y[0] - cx) * (y[0] - cx) + (y[1] - cy) * (y[1] - cy);
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
  };
  BoundaryData h = BoundaryData::rapidly_decaying("bump", 3, [&](std::span<const double> y) { return bump(y, 0.0, 0.0); });
  BoundaryData hc =
      BoundaryData::rapidly_decaying("bump", 3, [&](std::span<const double> y) { return bump(y, 0.7, -0.4); });
  KernelSpec s = spec_of(LayerKind::Single, 0);
  for (double t : {0.0, 0.5, 2.0}) {
    std::vector<double> y{t, 0.2};
    std::vector<double> yc{t + 0.7, 0.2 - 0.4};
    double a = apply_boundary(s, h, y);
    CHECK(apply_boundary(s, hc, yc) == doctest::Approx(a).epsilon(1e-8));
  }
}

TEST_CASE("far field of the single layer") {
  // g has finite mass pi^2 / sqrt(2), so SL g ~ -mass / (4 pi |z|).
  PotentialField field = make_field(spec_of(LayerKind::Single, 0), make_example_g());
  const double mass = kPi * kPi / std::sqrt(2.0);
  std::vector<double> logs, vals;
  for (double r : {10.0, 20.0, 40.0, 100.0}) {
    HalfSpacePoint z{r / std::sqrt(2.0), {r / std::sqrt(2.0), 0.0}};
    double v = apply_layer(field, z);
    CHECK(v * r == doctest::Approx(-mass / (4.0 * kPi)).epsilon(3.0 / r));
    logs.push_back(std::log(r));
    vals.push_back(std::log(-v));
  }
  double slope = (vals.back() - vals.front()) / (logs.back() - logs.front());
  CHECK(slope == doctest::Approx(-1.0).epsilon(0.02));
}

TEST_CASE("normal derivative of the single layer") {
  BoundaryData f = make_example_f();
  PotentialField sl = make_field(spec_of(LayerKind::Single, 0), f);
  PotentialField dl = make_field(spec_of(LayerKind::Double, 0), f);
  HalfSpacePoint z{0.5, {0.2, -0.3}};
  CHECK(apply_normal_derivative_single(sl, z) == -apply_layer(dl, z));

  const double h = 1e-3;
  for (int k : {0, 1, 2}) {
    CAPTURE(k);
    PotentialField field = make_field(spec_of(LayerKind::Single, k), f);
    HalfSpacePoint zp = z, zm = z;
    zp.x += h;
    zm.x -= h;
    double fd = -(apply_layer(field, zp) - apply_layer(field, zm)) / (2.0 * h);
    CHECK(std::abs(apply_normal_derivative_single(field, z) - fd) <= 1e-5);
  }
  PotentialField poly = make_field(spec_of(LayerKind::Single, 3), make_named_data("poly:1:odd", 3));
  HalfSpacePoint zp = z, zm = z;
  zp.x += h;
  zm.x -= h;
  double fd = -(apply_layer(poly, zp) - apply_layer(poly, zm)) / (2.0 * h);
  CHECK(std::abs(apply_normal_derivative_single(poly, z) - fd) <= 1e-5);

  CHECK_THROWS_AS(apply_normal_derivative_single(dl, z), std::invalid_argument);
  CHECK_THROWS_AS(apply_normal_derivative_single(sl, HalfSpacePoint{0.0, {0.2, -0.3}}), std::invalid_argument);
}

TEST_CASE("linearity") {
  BoundaryData f = make_example_f();
  BoundaryData g = make_example_g();
  BoundaryData comb = BoundaryData::linear_combination(1.5, f, -0.5, g);
  for (LayerKind kind : {LayerKind::Single, LayerKind::Double}) {
    for (int k : {0, 2}) {
      KernelSpec s = spec_of(kind, k);
      for (const HalfSpacePoint& z : {HalfSpacePoint{0.4, {0.1, 0.2}}, HalfSpacePoint{2.0, {-1.0, 3.0}}}) {
        QuadratureResult a = apply_layer_detailed(make_field(s, f), z);
        QuadratureResult b = apply_layer_detailed(make_field(s, g), z);
        QuadratureResult c = apply_layer_detailed(make_field(s, comb), z);
        CHECK(std::abs(c.value - (1.5 * a.value - 0.5 * b.value)) <= c.error + 1.5 * a.error + 0.5 * b.error);
      }
    }
  }
}

TEST_CASE("integrability gate agrees with the symbolic gate") {
  HalfSpacePoint z{0.8, {0.3, 0.1}};
  int gated = 0;
  for (LayerKind kind : {LayerKind::Single, LayerKind::Double}) {
    for (int k = 0; k <= 4; ++k) {
      for (int l = -3; l <= 3; ++l) {
        CAPTURE(l);
        CAPTURE(k);
        BoundaryData data = data_of_order(l);
        bool symbolic = false;
        try {
          layer_potential_index_family(kind, k, 3, data.index_set());
        } catch (const IntegrabilityViolation&) {
          symbolic = true;
        }
        bool numeric = false;
        PotentialField field = make_field(spec_of(kind, k), make_example_g());
        field.data = data;
        try {
          apply_layer(field, z);
        } catch (const NonIntegrable&) {
          numeric = true;
        }
        CHECK(symbolic == numeric);
        CHECK(numeric == (l <= alpha(kind, k)));
        CHECK_EQ(numeric, !admissible(kind, k, data.index_set()));
        if (numeric) {
          ++gated;
          CHECK_THROWS_AS(make_field(spec_of(kind, k), data), NonIntegrable);
        }
      }
    }
  }
  CHECK(gated > 10);
  try {
    make_field(spec_of(LayerKind::Single, 0), make_homogeneous_poly(3, 0, [](std::span<const double>) { return 1.0; }));
    FAIL("expected NonIntegrable");
  } catch (const NonIntegrable& e) {
    CHECK(std::string(e.what()).find("Re E > alpha") != std::string::npos);
  }
}

TEST_CASE("solvers") {
  PotentialField d = solve_dirichlet(make_example_f());
  CHECK(d.spec.kind == LayerKind::Double);
  CHECK(d.spec.k == 0);
  CHECK(d.weight == 2.0);
  CHECK(d.role == "dirichlet");
  CHECK(d.ambiguity_degree == 0);
  CHECK(same_members(d.index_family.at("Y"), IndexSet::integer(0)));
  CHECK(same_members(d.index_family.at("Z"), extended_union(IndexSet::integer(2), IndexSet::integer(2))));
  // Boundary attainment: 2 DL f -> f.
  CHECK(apply_layer(d, HalfSpacePoint{1.0, {0.0, 0.0}}) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  PotentialField nm = solve_neumann(make_named_data("poly:1:odd", 3));
  CHECK(nm.spec.kind == LayerKind::Single);
  CHECK(nm.spec.k == 3);
  CHECK(nm.weight == -2.0);
  CHECK(nm.role == "neumann");
  CHECK(nm.ambiguity_degree == 3);

  PotentialField dz = solve_dirichlet(make_zero(3));
  CHECK(dz.spec.k == 0);
  CHECK(apply_layer(dz, HalfSpacePoint{1.0, {0.0, 0.0}}) == 0.0);

  // Neumann data: -d/dx u -> g at the boundary.
  PotentialField ng = solve_neumann(make_example_g());
  CHECK(ng.spec.k == 0);
  HalfSpacePoint near{1e-3, {1.0, 0.0}};
  CHECK(apply_normal_derivative_single(ng, near) == doctest::Approx(0.5).epsilon(5e-3));
}

TEST_CASE("harmonicity of the field") {
  PotentialField field = make_field(spec_of(LayerKind::Double, 0), make_example_f());
  const double h = 1e-2;
  std::vector<HalfSpacePoint> points;
  for (int i = 0; i < 20; ++i) {
    double x = 0.3 + 2.7 * i / 19.0;
    points.push_back({x, {std::cos(1.3 * i), 0.5 * std::sin(0.7 * i)}});
  }
  for (const auto& z : points) {
    double u0 = apply_layer(field, z);
    double lap = 0.0;
    for (int dim = 0; dim < 3; ++dim) {
      HalfSpacePoint p = z, m = z;
      (dim == 0 ? p.x : p.y[dim - 1]) += h;
      (dim == 0 ? m.x : m.y[dim - 1]) -= h;
      lap += (apply_layer(field, p) - 2.0 * u0 + apply_layer(field, m)) / (h * h);
    }
    CHECK(std::abs(lap) <= 100.0 * h * h + 10.0 * field.quad.rel_tol);
  }
}

TEST_CASE("evaluation helpers and output formats") {
  PotentialField field = make_field(spec_of(LayerKind::Double, 0), make_example_f());
  std::vector<HalfSpacePoint> pts{{1.0, {0.0, 0.0}}, {0.5, {0.25, -1.0}}};
  std::vector<double> vals = evaluate_points(field, pts);
  REQUIRE(vals.size() == 2);
  CHECK(vals[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  std::ostringstream os;
  write_csv(os, pts, vals);
  std::istringstream is(os.str());
  std::string header, row1, row2;
  std::getline(is, header);
  std::getline(is, row1);
  std::getline(is, row2);
  CHECK(header == "x,y1,y2,value");
  CHECK(row1.rfind("1,0,0,0.1666666666", 0) == 0);
  CHECK(row2.rfind("0.5,0.25,-1,", 0) == 0);
  CHECK(std::stod(row2.substr(row2.rfind(',') + 1)) == vals[1]);
  CHECK_THROWS_AS(write_csv(os, pts, {1.0}), std::invalid_argument);

  nlohmann::json meta = field_metadata(solve_dirichlet(make_example_f()));
  CHECK(meta["role"] == "dirichlet");
  CHECK(meta["kernel"]["kind"] == "double");
  CHECK(meta["kernel"]["k"] == 0);
  CHECK(meta["kernel"]["n"] == 3);
  CHECK(meta["data"]["name"] == "example-f");
  CHECK(meta["data"]["leading_order"] == 2);
  CHECK(meta["weight"] == 2.0);
  CHECK(meta["quadrature"]["rel_tol"] == 1e-10);
  IndexFamily back = index_family_from_json(meta["index_family"]);
  CHECK(same_members(back, solve_dirichlet(make_example_f()).index_family));
  CHECK(field_metadata(solve_dirichlet(make_zero(3)))["data"]["leading_order"].is_null());
}

TEST_CASE("argument checks") {
  PotentialField field = make_field(spec_of(LayerKind::Double, 0), make_example_f());
  CHECK_THROWS_AS(apply_layer(field, HalfSpacePoint{-0.1, {0.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(apply_layer(field, HalfSpacePoint{1.0, {0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_field(spec_of(LayerKind::Double, 0, 4), make_example_f()), std::invalid_argument);
  std::vector<double> bad{0.0};
  CHECK_THROWS_AS(apply_boundary(spec_of(LayerKind::Single, 0), make_example_f(), bad), std::invalid_argument);
  CHECK(integrand_decay(LayerKind::Single, 2, make_example_f()) == 5.0);
  CHECK(integrand_decay(LayerKind::Double, 1, make_example_f()) == 6.0);
}
