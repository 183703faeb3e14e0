#include "lpot/boundary_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/interpolators/makima.hpp>

#include "lpot/errors.hpp"

namespace lpot {

namespace {

double norm(std::span<const double> y) {
  double s = 0.0;
  for (double v : y) s += v * v;
  return std::sqrt(s);
}

SphereFunction constant(double c) {
  return [c](std::span<const double>) { return c; };
}

}  // namespace

BoundaryData::BoundaryData(std::string name, int n, PlaneFunction eval, int leading_order,
                           std::vector<SphereFunction> coefficients, double validity_radius)
    : name_(std::move(name)),
      n_(n),
      eval_(std::move(eval)),
      leading_order_(leading_order),
      coefficients_(std::move(coefficients)),
      validity_radius_(validity_radius) {
  if (n_ < 3) throw std::invalid_argument("boundary data needs n >= 3");
  if (!eval_) throw std::invalid_argument("boundary data needs an evaluator");
  if (coefficients_.empty()) throw std::invalid_argument("boundary data needs at least the leading coefficient");
}

BoundaryData BoundaryData::rapidly_decaying(std::string name, int n, PlaneFunction eval) {
  BoundaryData d(std::move(name), n, std::move(eval), 0, {constant(0.0)}, 0.0);
  d.rapid_decay_ = true;
  return d;
}

double BoundaryData::coefficient(int j, std::span<const double> omega) const {
  if (rapid_decay_) return 0.0;
  int idx = j - leading_order_;
  if (idx < 0 || idx >= static_cast<int>(coefficients_.size())) return 0.0;
  return coefficients_[idx](omega);
}

double BoundaryData::expansion(std::span<const double> y) const {
  if (rapid_decay_) return 0.0;
  double r = norm(y);
  std::vector<double> omega(y.begin(), y.end());
  for (double& v : omega) v /= r;
  double sum = 0.0;
  for (int i = 0; i <= depth(); ++i) sum += std::pow(r, -(leading_order_ + i)) * coefficients_[i](omega);
  return sum;
}

IndexSet BoundaryData::index_set(double truncation) const {
  if (rapid_decay_) return IndexSet::empty();
  return IndexSet::integer(leading_order_, truncation);
}

double BoundaryData::expansion_defect(const std::vector<double>& radii, int angular_samples) const {
  double worst = 0.0;
  const int order = leading_order_ + depth() + 1;
  std::vector<double> y(n_ - 1, 0.0);
  for (double r : radii) {
    for (int a = 0; a < angular_samples; ++a) {
      double phi = 2.0 * std::numbers::pi * a / angular_samples;
      std::fill(y.begin(), y.end(), 0.0);
      y[0] = r * std::cos(phi);
      y[1] = r * std::sin(phi);
      double value = eval_(y);
      double sum = 0.0;
      double magnitude = std::abs(value);
      if (!rapid_decay_) {
        std::vector<double> omega(y.begin(), y.end());
        for (double& v : omega) v /= r;
        for (int i = 0; i <= depth(); ++i) {
          double term = std::pow(r, -(leading_order_ + i)) * coefficients_[i](omega);
          sum += term;
          magnitude += std::abs(term);
        }
      }
      // Differences at the level of rounding in f and the partial sum are not counted.
      double slack = 16.0 * std::numeric_limits<double>::epsilon() * magnitude;
      double defect = std::max(0.0, std::abs(value - sum) - slack);
      worst = std::max(worst, rapid_decay_ ? defect : defect * std::pow(r, order));
    }
  }
  return worst;
}

BoundaryData BoundaryData::linear_combination(double a, const BoundaryData& f, double b, const BoundaryData& g) {
  if (f.n_ != g.n_) throw std::invalid_argument("linear combination of data in different dimensions");
  PlaneFunction eval = [a, b, fe = f.eval_, ge = g.eval_](std::span<const double> y) { return a * fe(y) + b * ge(y); };
  std::string name = "(" + f.name_ + ")+(" + g.name_ + ")";
  if (f.rapid_decay_ && g.rapid_decay_) return rapidly_decaying(name, f.n_, eval);
  if (f.rapid_decay_ || g.rapid_decay_) {
    const BoundaryData& slow = f.rapid_decay_ ? g : f;
    double c = f.rapid_decay_ ? b : a;
    std::vector<SphereFunction> coeffs;
    for (const auto& fn : slow.coefficients_) coeffs.push_back([c, fn](std::span<const double> w) { return c * fn(w); });
    return BoundaryData(name, f.n_, eval, slow.leading_order_, coeffs,
                        std::max(f.validity_radius_, g.validity_radius_));
  }
  int lo = std::min(f.leading_order_, g.leading_order_);
  int hi = std::min(f.leading_order_ + f.depth(), g.leading_order_ + g.depth());
  std::vector<SphereFunction> coeffs;
  for (int j = lo; j <= std::max(lo, hi); ++j) {
    coeffs.push_back([a, b, j, f, g](std::span<const double> w) { return a * f.coefficient(j, w) + b * g.coefficient(j, w); });
  }
  return BoundaryData(name, f.n_, eval, lo, coeffs, std::max(f.validity_radius_, g.validity_radius_));
}

BoundaryData make_example_f(int n, int depth) {
  if (n != 3) throw std::invalid_argument("example-f is defined for n = 3");
  std::vector<SphereFunction> coeffs;
  for (int i = 0; i <= depth; ++i) {
    // f_{2+2m} = (-1)^m, odd orders vanish.
    coeffs.push_back(constant(i % 2 == 1 ? 0.0 : ((i / 2) % 2 == 0 ? 1.0 : -1.0)));
  }
  PlaneFunction eval = [](std::span<const double> y) { return 1.0 / (1.0 + y[0] * y[0] + y[1] * y[1]); };
  return BoundaryData("example-f", 3, eval, 2, coeffs, 2.0);
}

BoundaryData make_example_g(int n, int depth) {
  if (n != 3) throw std::invalid_argument("example-g is defined for n = 3");
  std::vector<SphereFunction> coeffs;
  for (int i = 0; i <= depth; ++i) {
    // g_{3+4m} = (-1)^m, all other orders vanish.
    coeffs.push_back(constant(i % 4 != 0 ? 0.0 : ((i / 4) % 2 == 0 ? 1.0 : -1.0)));
  }
  PlaneFunction eval = [](std::span<const double> y) {
    double r2 = y[0] * y[0] + y[1] * y[1];
    return std::sqrt(r2) / (1.0 + r2 * r2);
  };
  return BoundaryData("example-g", 3, eval, 3, coeffs, 2.0);
}

BoundaryData make_homogeneous_poly(int n, int degree, SphereFunction angular, std::string name) {
  if (degree < 0) throw std::invalid_argument("polynomial degree must be non-negative");
  if (!angular) throw std::invalid_argument("polynomial data needs an angular profile");
  PlaneFunction eval = [degree, angular](std::span<const double> y) {
    double r = norm(y);
    if (r == 0.0) return degree == 0 ? angular(std::vector<double>(y.size(), 0.0)) : 0.0;
    std::vector<double> omega(y.begin(), y.end());
    for (double& v : omega) v /= r;
    return std::pow(r, degree) * angular(omega);
  };
  return BoundaryData(std::move(name), n, eval, -degree, {angular}, 0.0);
}

BoundaryData make_zero(int n) {
  return BoundaryData::rapidly_decaying("zero", n, [](std::span<const double>) { return 0.0; });
}

BoundaryData make_named_data(const std::string& name, int n) {
  if (name == "example-f") return make_example_f(n);
  if (name == "example-g") return make_example_g(n);
  if (name == "zero") return make_zero(n);
  if (name.rfind("poly:", 0) == 0) {
    std::string rest = name.substr(5);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("polynomial data must be poly:d:odd|even");
    std::string deg = rest.substr(0, colon);
    std::string parity = rest.substr(colon + 1);
    int d = 0;
    try {
      std::size_t used = 0;
      d = std::stoi(deg, &used);
      if (used != deg.size()) throw std::invalid_argument(deg);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("bad polynomial degree in '" + name + "'");
    }
    if (d < 0) throw std::invalid_argument("polynomial degree must be non-negative");
    if (parity != "odd" && parity != "even") throw std::invalid_argument("polynomial parity must be odd or even");
    if ((parity == "odd") != (d % 2 == 1)) {
      throw std::invalid_argument("poly:" + deg + ":" + parity + " has no homogeneous polynomial of that parity");
    }
    SphereFunction angular = [d](std::span<const double> w) { return std::pow(w[0], d); };
    return make_homogeneous_poly(n, d, angular, name);
  }
  throw std::invalid_argument("unknown boundary data '" + name + "'");
}

namespace {

struct AngularProfile {
  std::vector<double> angles;  // sorted in [0, 2 pi)
  std::vector<double> values;

  double operator()(double phi) const {
    std::size_t m = angles.size();
    if (m == 1) return values[0];
    phi = std::fmod(phi, 2.0 * std::numbers::pi);
    if (phi < 0) phi += 2.0 * std::numbers::pi;
    auto it = std::upper_bound(angles.begin(), angles.end(), phi);
    std::size_t hi = static_cast<std::size_t>(it - angles.begin()) % m;
    std::size_t lo = (hi + m - 1) % m;
    double a0 = angles[lo];
    double a1 = angles[hi];
    double span = a1 - a0;
    double off = phi - a0;
    if (span <= 0) span += 2.0 * std::numbers::pi;
    if (off < 0) off += 2.0 * std::numbers::pi;
    double w = off / span;
    return (1.0 - w) * values[lo] + w * values[hi];
  }
};

double normalize_angle(double a) {
  a = std::fmod(a, 2.0 * std::numbers::pi);
  if (a < 0) a += 2.0 * std::numbers::pi;
  return a;
}

}  // namespace

BoundaryData load_tabulated_data(std::istream& in, const std::string& name) {
  using Spline = boost::math::interpolators::makima<std::vector<double>>;
  std::map<double, std::map<double, double>> samples;  // angle -> r -> value
  std::map<int, std::map<double, double>> coeffs;      // j -> angle -> value
  std::string line;
  int lineno = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (header) {
      header = false;
      if (!cells.empty() && cells[0].find("kind") != std::string::npos) continue;
    }
    if (cells.size() != 4) throw ParseError("line " + std::to_string(lineno) + ": expected kind,param,angle,value");
    double param = 0;
    double angle = 0;
    double value = 0;
    try {
      param = std::stod(cells[1]);
      angle = normalize_angle(std::stod(cells[2]));
      value = std::stod(cells[3]);
    } catch (const std::logic_error&) {
      throw ParseError("line " + std::to_string(lineno) + ": malformed number");
    }
    std::string kind = cells[0];
    kind.erase(std::remove_if(kind.begin(), kind.end(), ::isspace), kind.end());
    if (kind == "sample") {
      if (param < 0) throw ParseError("line " + std::to_string(lineno) + ": negative radius");
      samples[angle][param] = value;
    } else if (kind == "coeff") {
      if (param != std::floor(param)) throw ParseError("line " + std::to_string(lineno) + ": order must be an integer");
      coeffs[static_cast<int>(param)][angle] = value;
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": kind must be sample or coeff");
    }
  }
  if (samples.empty()) throw ParseError("tabulated data has no samples");

  auto splines = std::make_shared<std::vector<Spline>>();
  auto angles = std::make_shared<std::vector<double>>();
  double r_max = 0.0;
  double r_min = 0.0;
  bool first = true;
  for (auto& [angle, by_r] : samples) {
    if (by_r.size() < 4) throw ParseError("each sampled angle needs at least 4 radii");
    std::vector<double> rs;
    std::vector<double> vs;
    for (auto& [r, v] : by_r) {
      rs.push_back(r);
      vs.push_back(v);
    }
    double lo = rs.front();
    double hi = rs.back();
    if (first) {
      r_min = lo;
      r_max = hi;
      first = false;
    } else if (lo != r_min || hi != r_max) {
      throw ParseError("all sampled angles must share the same radial range");
    }
    angles->push_back(angle);
    splines->emplace_back(std::move(rs), std::move(vs));
  }

  std::vector<SphereFunction> coefficient_fns;
  int leading = 0;
  bool rapid = coeffs.empty();
  if (!rapid) {
    leading = coeffs.begin()->first;
    int top = coeffs.rbegin()->first;
    for (int j = leading; j <= top; ++j) {
      AngularProfile prof;
      auto it = coeffs.find(j);
      if (it == coeffs.end()) {
        prof.angles = {0.0};
        prof.values = {0.0};
      } else {
        for (auto& [a, v] : it->second) {
          prof.angles.push_back(a);
          prof.values.push_back(v);
        }
      }
      coefficient_fns.push_back([prof](std::span<const double> w) { return prof(std::atan2(w[1], w[0])); });
    }
  }

  auto expansion = std::make_shared<std::vector<SphereFunction>>(coefficient_fns);
  PlaneFunction eval = [splines, angles, r_min, r_max, leading, expansion](std::span<const double> y) {
    double r = std::hypot(y[0], y[1]);
    double phi = normalize_angle(std::atan2(y[1], y[0]));
    if (r > r_max) {
      double sum = 0.0;
      std::vector<double> w = {y[0] / r, y[1] / r};
      for (std::size_t i = 0; i < expansion->size(); ++i) {
        sum += std::pow(r, -(leading + static_cast<int>(i))) * (*expansion)[i](w);
      }
      return sum;
    }
    double rr = std::max(r, r_min);
    AngularProfile prof;
    prof.angles = *angles;
    for (const auto& s : *splines) prof.values.push_back(s(rr));
    return prof(phi);
  };
  if (rapid) return BoundaryData::rapidly_decaying(name, 3, eval);
  return BoundaryData(name, 3, eval, leading, coefficient_fns, r_max);
}

}  // namespace lpot
