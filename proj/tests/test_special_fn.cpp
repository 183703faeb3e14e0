#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "lpot/special_fn.hpp"

using namespace lpot;

namespace {

// Explicit sum: C^l_m(t) = sum_k (-1)^k Gamma(m-k+l) / (Gamma(l) k! (m-2k)!) (2t)^{m-2k}.
// abs_sum receives the sum of term magnitudes, which bounds the oracle's rounding.
double explicit_gegenbauer(double lambda, int m, double t, double& abs_sum) {
  double s = 0.0;
  abs_sum = 0.0;
  for (int k = 0; 2 * k <= m; ++k) {
    double lg = std::lgamma(m - k + lambda) - std::lgamma(lambda) - std::lgamma(k + 1.0) - std::lgamma(m - 2.0 * k + 1.0);
    double term = std::exp(lg) * std::pow(2.0 * t, m - 2 * k);
    s += k % 2 ? -term : term;
    abs_sum += std::abs(term);
  }
  return s;
}

double binomial_at_one(double lambda, int m) {
  return std::exp(std::lgamma(m + 2.0 * lambda) - std::lgamma(2.0 * lambda) - std::lgamma(m + 1.0));
}

}  // namespace

TEST_CASE("low orders") {
  for (double lambda : {0.5, 1.0, 2.5}) {
    for (double t : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
      CHECK(gegenbauer(lambda, -1, t) == 0.0);
      CHECK(gegenbauer(lambda, 0, t) == 1.0);
      CHECK(gegenbauer(lambda, 1, t) == doctest::Approx(2.0 * lambda * t));
      CHECK(gegenbauer_derivative(lambda, 0, t) == 0.0);
      CHECK(gegenbauer_derivative(lambda, 1, t) == doctest::Approx(2.0 * lambda));
    }
  }
  CHECK(gegenbauer(0.5, 2, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("agreement with the explicit sum") {
  for (double lambda : {0.5, 1.5, 2.5, 3.0}) {
    for (int m = 0; m <= 20; ++m) {
      for (double t : {-0.9, -0.25, 0.1, 0.6, 1.0}) {
        double scale = 0.0;
        double ref = explicit_gegenbauer(lambda, m, t, scale);
        INFO("lambda=", lambda, " m=", m, " t=", t);
        CHECK(std::abs(gegenbauer(lambda, m, t) - ref) <= 1e-13 * scale);
      }
    }
  }
}

TEST_CASE("Legendre and Chebyshev special cases") {
  for (int m = 0; m <= 30; ++m) {
    for (int i = 0; i <= 20; ++i) {
      double t = -1.0 + 0.1 * i;
      CHECK(std::abs(gegenbauer(0.5, m, t) - std::legendre(m, t)) <= 1e-12);
      if (std::abs(t) < 1.0) {
        double th = std::acos(t);
        CHECK(std::abs(gegenbauer(1.0, m, t) - std::sin((m + 1) * th) / std::sin(th)) <= 1e-11 * (m + 1));
      }
    }
    CHECK(gegenbauer(2.5, m, 1.0) == doctest::Approx(binomial_at_one(2.5, m)).epsilon(1e-12));
  }
}

TEST_CASE("parity") {
  for (double lambda : {0.5, 1.5, 2.5}) {
    for (int m = 0; m <= 40; ++m) {
      for (double t : {0.05, 0.35, 0.8, 1.0}) {
        double sign = m % 2 ? -1.0 : 1.0;
        CHECK(std::abs(gegenbauer(lambda, m, -t) - sign * gegenbauer(lambda, m, t)) <= 1e-13);
      }
    }
  }
}

TEST_CASE("derivative identity") {
  const double h = 1e-5;
  double fd = (gegenbauer(1.5, 4, 0.3 + h) - gegenbauer(1.5, 4, 0.3 - h)) / (2.0 * h);
  CHECK(std::abs(fd - gegenbauer_derivative(1.5, 4, 0.3)) <= 1e-8);
  // For the sweep one Richardson step removes the h^2 error of the plain difference.
  for (double lambda : {0.5, 1.5, 2.5}) {
    for (int m = 1; m <= 12; ++m) {
      for (double t : {-0.99, -0.7, 0.0, 0.45, 0.99}) {
        auto central = [&](double s) { return (gegenbauer(lambda, m, t + s) - gegenbauer(lambda, m, t - s)) / (2.0 * s); };
        double d = (4.0 * central(5e-5) - central(1e-4)) / 3.0;
        CHECK(std::abs(d - gegenbauer_derivative(lambda, m, t)) <= 1e-7);
      }
    }
  }
}

TEST_CASE("generating function up to its truncation remainder") {
  // |C^l_m(t)| <= C^l_m(1), so the tail past m = 40 is bounded by the tail of (1 - r)^(-2 l).
  for (double lambda : {0.5, 1.5, 2.5}) {
    for (int j = 0; j <= 20; ++j) {
      double r = 0.025 * j;
      double head = 0.0;
      for (int m = 0; m <= 40; ++m) head += binomial_at_one(lambda, m) * std::pow(r, m);
      double tail_bound = std::pow(1.0 - r, -2.0 * lambda) - head;
      for (int i = 0; i <= 20; ++i) {
        double t = -1.0 + 0.1 * i;
        double sum = 0.0;
        for (int m = 0; m <= 40; ++m) sum += gegenbauer(lambda, m, t) * std::pow(r, m);
        double exact = std::pow(1.0 - 2.0 * t * r + r * r, -lambda);
        CHECK(std::abs(sum - exact) <= std::abs(tail_bound) + 1e-13 * std::abs(exact));
        if (lambda == 0.5) CHECK(std::abs(sum - exact) <= 1e-10);
      }
    }
  }
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(gegenbauer(0.0, 2, 0.1), std::domain_error);
  CHECK_THROWS_AS(gegenbauer(1.0, -2, 0.1), std::domain_error);
  CHECK_THROWS_AS(gegenbauer(1.0, 65, 0.1), std::domain_error);
  CHECK_THROWS_AS(gegenbauer(1.0, 2, 1.1), std::domain_error);
  CHECK(gegenbauer(1.0, 2, 1.0 + 1e-13) == doctest::Approx(3.0));
  CHECK_NOTHROW(gegenbauer(1.0, kMaxGegenbauerDegree, 0.5));
}

TEST_CASE("gamma function") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  for (double x = 0.5; x <= 30.0; x += 0.37) {
    CHECK(std::abs(gamma_fn(x) / std::tgamma(x) - 1.0) <= 1e-12);
  }
  CHECK_THROWS(gamma_fn(0.0));
}

TEST_CASE("sphere volumes") {
  CHECK(sphere_volume(2) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
  CHECK(sphere_volume(3) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));
  CHECK(sphere_volume(4) == doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-14));
  for (int d = 1; d <= 12; ++d) {
    CHECK(sphere_volume(d) == doctest::Approx(2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d)).epsilon(1e-12));
  }
}
