#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "lpot/boundary_data.hpp"
#include "lpot/errors.hpp"

using namespace lpot;

namespace {

double partial_sum(const BoundaryData& d, double r, double phi, int j_max) {
  std::vector<double> w{std::cos(phi), std::sin(phi)};
  double s = 0.0;
  for (int j = d.leading_order(); j <= j_max; ++j) s += std::pow(r, -j) * d.coefficient(j, w);
  return s;
}

std::vector<double> at(double r, double phi) { return {r * std::cos(phi), r * std::sin(phi)}; }

}  // namespace

TEST_CASE("example f") {
  BoundaryData f = make_example_f();
  std::vector<double> origin{0.0, 0.0};
  CHECK(f(origin) == 1.0);
  CHECK(f.leading_order() == 2);
  CHECK(f.n() == 3);
  CHECK(!f.rapid_decay());
  std::vector<double> w{0.6, 0.8};
  for (int j = 0; j <= 20; ++j) {
    double expect = 0.0;
    if (j >= 2 && j <= 12 && j % 2 == 0) expect = ((j - 2) / 2) % 2 == 0 ? 1.0 : -1.0;
    CHECK(f.coefficient(j, w) == expect);
  }
  // Remainder of the geometric series after j = 10 is r^-12 / (1 + r^-2).
  for (double phi : {0.0, 1.0, 2.5}) {
    double rem = std::abs(f(at(10.0, phi)) - partial_sum(f, 10.0, phi, 10));
    CHECK(rem <= 1e-12);
    CHECK(rem == doctest::Approx(1e-12 / 1.01).epsilon(1e-6));
  }
  CHECK_THROWS_AS(make_example_f(4), std::invalid_argument);
}

TEST_CASE("example g") {
  BoundaryData g = make_example_g();
  CHECK(g.leading_order() == 3);
  std::vector<double> origin{0.0, 0.0};
  CHECK(g(origin) == 0.0);
  CHECK(g(at(1.0, 0.4)) == doctest::Approx(0.5));
  std::vector<double> w{1.0, 0.0};
  for (int j = 0; j <= 20; ++j) {
    double expect = 0.0;
    if (j >= 3 && (j - 3) % 4 == 0 && j <= 13) expect = ((j - 3) / 4) % 2 == 0 ? 1.0 : -1.0;
    CHECK(g.coefficient(j, w) == expect);
  }
}

TEST_CASE("expansion consistency on rings") {
  std::vector<double> rings{10.0, 20.0, 40.0};
  BoundaryData f = make_example_f();
  BoundaryData g = make_example_g();
  // f: next term r^{-14}, so the scaled defect at order 13 is about 1/r.
  CHECK(f.expansion_defect(rings) <= 0.11);
  // g: next term r^{-15} against order 14.
  CHECK(g.expansion_defect(rings) <= 0.11);
  for (double r : rings) {
    double eps = std::numeric_limits<double>::epsilon();
    CHECK(std::abs(f(at(r, 0.3)) - f.expansion(at(r, 0.3))) <= std::pow(r, -14) + 8 * eps * f(at(r, 0.3)));
    CHECK(std::abs(g(at(r, 0.3)) - g.expansion(at(r, 0.3))) <= std::pow(r, -15) + 8 * eps * g(at(r, 0.3)));
  }
}

TEST_CASE("homogeneous polynomials") {
  auto one = [](std::span<const double>) { return 1.0; };
  BoundaryData c = make_homogeneous_poly(3, 0, one);
  CHECK(c.leading_order() == 0);
  CHECK(c(at(0.0, 0.0)) == 1.0);
  CHECK(c(at(7.0, 1.0)) == doctest::Approx(1.0));

  auto w1 = [](std::span<const double> w) { return w[0]; };
  BoundaryData lin = make_homogeneous_poly(3, 1, w1);
  CHECK(lin.leading_order() == -1);
  for (double x : {-3.0, 0.5, 2.0}) {
    std::vector<double> y{x, 1.7};
    CHECK(lin(y) == doctest::Approx(x));
  }
  CHECK(lin(at(0.0, 0.0)) == 0.0);
  CHECK(lin.expansion_defect({10.0, 20.0}) <= 1e-12);

  auto w1_cubed = [](std::span<const double> w) { return w[0] * w[0] * w[0]; };
  BoundaryData cubic = make_homogeneous_poly(4, 3, w1_cubed);
  std::vector<double> y{0.5, -2.0, 1.0};
  CHECK(cubic(y) == doctest::Approx(0.125));
  CHECK(cubic.n() == 4);

  CHECK_THROWS_AS(make_homogeneous_poly(3, -1, one), std::invalid_argument);
  CHECK_THROWS_AS(make_homogeneous_poly(3, 1, nullptr), std::invalid_argument);
}

TEST_CASE("named data") {
  CHECK(make_named_data("example-f", 3).leading_order() == 2);
  CHECK(make_named_data("example-g", 3).leading_order() == 3);
  BoundaryData z = make_named_data("zero", 4);
  CHECK(z.rapid_decay());
  CHECK(z.index_set().is_empty());
  BoundaryData p = make_named_data("poly:3:odd", 3);
  CHECK(p.leading_order() == -3);
  std::vector<double> y{2.0, 5.0};
  CHECK(p(y) == doctest::Approx(8.0));
  BoundaryData e = make_named_data("poly:2:even", 3);
  CHECK(e(y) == doctest::Approx(4.0));
  CHECK_THROWS_AS(make_named_data("poly:2:odd", 3), std::invalid_argument);
  CHECK_THROWS_AS(make_named_data("poly:x:odd", 3), std::invalid_argument);
  CHECK_THROWS_AS(make_named_data("poly:3", 3), std::invalid_argument);
  CHECK_THROWS_AS(make_named_data("poly:3:weird", 3), std::invalid_argument);
  CHECK_THROWS_AS(make_named_data("nothing", 3), std::invalid_argument);
  CHECK_THROWS_AS(make_named_data("example-f", 5), std::invalid_argument);
}

TEST_CASE("index set of data") {
  BoundaryData f = make_example_f();
  IndexSet e = f.index_set();
  CHECK(e.contains(Exponent(2), 0));
  CHECK(e.contains(Exponent(5), 0));
  CHECK(!e.contains(Exponent(1), 0));
  CHECK(!e.contains(Exponent(2), 1));
}

TEST_CASE("tabulated data from CSV") {
  // f(r, phi) = (1 + cos phi) / (1 + r^2) on 4 angles, with its leading coefficients.
  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "kind,param,angle,value\n";
  const double pi = std::numbers::pi;
  std::vector<double> angles{0.0, pi / 2, pi, 3 * pi / 2};
  for (double a : angles) {
    for (int i = 0; i <= 40; ++i) {
      double r = 0.25 * i;
      csv << "sample," << r << "," << a << "," << (1 + std::cos(a)) / (1 + r * r) << "\n";
    }
    csv << "coeff,2," << a << "," << 1 + std::cos(a) << "\n";
    csv << "coeff,4," << a << "," << -(1 + std::cos(a)) << "\n";
  }
  std::istringstream in(csv.str());
  BoundaryData t = load_tabulated_data(in, "tab");
  CHECK(t.leading_order() == 2);
  CHECK(t.depth() == 2);
  CHECK(t.validity_radius() == 10.0);
  CHECK(t.name() == "tab");
  // On grid angles the radial spline is the only approximation.
  for (double r : {0.1, 1.3, 4.7, 9.9}) {
    CHECK(t(at(r, 0.0)) == doctest::Approx(2.0 / (1 + r * r)).epsilon(5e-3));
    CHECK(t(at(r, pi / 2)) == doctest::Approx(1.0 / (1 + r * r)).epsilon(5e-3));
  }
  // Nodes are reproduced exactly.
  CHECK(t(at(1.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-14));
  // Linear in angle between grid angles.
  CHECK(t(at(1.0, pi / 4)) == doctest::Approx(0.5 * (1.0 + 0.5)).epsilon(1e-12));
  // Beyond the last radius the expansion takes over.
  double r = 20.0;
  CHECK(t(at(r, 0.0)) == doctest::Approx(2.0 / (r * r) - 2.0 / std::pow(r, 4)).epsilon(1e-14));
  std::vector<double> w{0.0, 1.0};
  CHECK(t.coefficient(3, w) == 0.0);
  CHECK(t.coefficient(4, w) == doctest::Approx(-1.0));
}

TEST_CASE("tabulated data without coefficients decays rapidly") {
  std::istringstream in("sample,0,0,1\nsample,1,0,0.5\nsample,2,0,0.1\nsample,3,0,0\n");
  BoundaryData t = load_tabulated_data(in);
  CHECK(t.rapid_decay());
  CHECK(t(at(0.0, 0.0)) == doctest::Approx(1.0));
  CHECK(t(at(2.0, 1.0)) == doctest::Approx(0.1));
}

TEST_CASE("tabulated data errors") {
  auto load = [](const std::string& s) {
    std::istringstream in(s);
    return load_tabulated_data(in);
  };
  CHECK_THROWS_AS(load("kind,param,angle,value\n"), ParseError);
  CHECK_THROWS_AS(load("sample,0,0\n"), ParseError);
  CHECK_THROWS_AS(load("sample,a,0,1\n"), ParseError);
  CHECK_THROWS_AS(load("sample,-1,0,1\nsample,0,0,1\nsample,1,0,1\nsample,2,0,1\n"), ParseError);
  CHECK_THROWS_AS(load("sample,0,0,1\nsample,1,0,1\nsample,2,0,1\nsample,3,0,1\ncoeff,1.5,0,1\n"), ParseError);
  CHECK_THROWS_AS(load("blob,0,0,1\n"), ParseError);
  CHECK_THROWS_AS(load("sample,0,0,1\nsample,1,0,1\nsample,2,0,1\n"), ParseError);
  CHECK_THROWS_AS(load("sample,0,0,1\nsample,1,0,1\nsample,2,0,1\nsample,3,0,1\n"
                       "sample,0,1,1\nsample,1,1,1\nsample,2,1,1\nsample,4,1,1\n"),
                  ParseError);
}

TEST_CASE("linear combinations") {
  BoundaryData f = make_example_f();
  BoundaryData g = make_example_g();
  BoundaryData h = BoundaryData::linear_combination(2.0, f, -3.0, g);
  CHECK(h.leading_order() == 2);
  auto y = at(1.5, 0.7);
  CHECK(h(y) == doctest::Approx(2.0 * f(y) - 3.0 * g(y)));
  std::vector<double> w{1.0, 0.0};
  for (int j = 2; j <= 12; ++j) CHECK(h.coefficient(j, w) == doctest::Approx(2.0 * f.coefficient(j, w) - 3.0 * g.coefficient(j, w)));
  CHECK(h.expansion_defect({10.0, 20.0, 40.0}) <= 1.0);

  BoundaryData fz = BoundaryData::linear_combination(0.5, f, 1.0, make_zero(3));
  CHECK(!fz.rapid_decay());
  CHECK(fz.leading_order() == 2);
  CHECK(fz.coefficient(2, w) == doctest::Approx(0.5));
  BoundaryData zz = BoundaryData::linear_combination(1.0, make_zero(3), 1.0, make_zero(3));
  CHECK(zz.rapid_decay());
  CHECK_THROWS_AS(BoundaryData::linear_combination(1.0, f, 1.0, make_zero(4)), std::invalid_argument);
}

TEST_CASE("construction errors") {
  auto e = [](std::span<const double>) { return 0.0; };
  auto one = [](std::span<const double>) { return 1.0; };
  CHECK_THROWS_AS(BoundaryData("x", 2, e, 0, {one}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(BoundaryData("x", 3, nullptr, 0, {one}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(BoundaryData("x", 3, e, 0, {}, 0.0), std::invalid_argument);
}
