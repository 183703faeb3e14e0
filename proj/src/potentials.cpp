#include "lpot/potentials.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "lpot/errors.hpp"

namespace lpot {

namespace {

// Decay exponent assumed for data vanishing to infinite order.
constexpr double kRapidExtraDecay = 8.0;

double norm(std::span<const double> y) {
  double s = 0.0;
  for (double v : y) s += v * v;
  return std::sqrt(s);
}

// Polar center and radial breaks for a kernel peaked at the projection of z onto Y.
PlaneOptions layout(const HalfSpacePoint& z, const QuadratureSpec& quad, std::vector<double>& center) {
  PlaneOptions opt;
  double ry = norm(z.y);
  if (z.x < 0.25 * ry) {
    center = z.y;
    opt.radial_breaks = {ry};
  } else {
    center.assign(z.y.size(), 0.0);
    opt.radial_breaks = {ry, ry - z.x, ry + z.x};
  }
  if (z.x > 0.0 && z.x < quad.split_radius) opt.peak_width = z.x;
  return opt;
}

}  // namespace

void check_integrability(LayerKind kind, int k, const BoundaryData& data) {
  IndexSet e = data.index_set();
  if (admissible(kind, k, e)) return;
  std::ostringstream os;
  os << to_string(kind) << " layer potential with k = " << k << " is not defined for data of order "
     << data.leading_order() << ": the condition Re E > alpha(" << to_string(kind) << ", " << k
     << ") = " << alpha(kind, k) << " fails (Re E = " << e.real_part() << ")";
  throw NonIntegrable(os.str());
}

double integrand_decay(LayerKind kind, int k, const BoundaryData& data) {
  const int n = data.n();
  double base = kind == LayerKind::Single ? n - 2 + k : n + k;
  if (data.rapid_decay()) return n + k + kRapidExtraDecay;
  return base + data.leading_order();
}

PotentialField make_field(const KernelSpec& spec, const BoundaryData& data, const QuadratureSpec& quad) {
  spec.validate();
  quad.validate();
  if (spec.n != data.n()) throw std::invalid_argument("kernel and data dimensions differ");
  check_integrability(spec.kind, spec.k, data);
  PotentialField f{spec, data, quad, layer_potential_index_family(spec.kind, spec.k, spec.n, data.index_set())};
  return f;
}

QuadratureResult apply_layer_detailed(const PotentialField& field, const HalfSpacePoint& z) {
  const KernelSpec& spec = field.spec;
  check_integrability(spec.kind, spec.k, field.data);
  if (z.dimension() != spec.n) throw std::invalid_argument("evaluation point has the wrong dimension");
  if (!(z.x >= 0.0)) throw std::invalid_argument("evaluation point must satisfy x >= 0");
  QuadratureResult res;
  if (z.x == 0.0) {
    if (spec.kind == LayerKind::Double) return res;
    res.value = field.weight * apply_boundary(spec, field.data, z.y, field.quad);
    return res;
  }
  std::vector<double> center;
  PlaneOptions opt = layout(z, field.quad, center);
  auto integrand = [&](std::span<const double> yp) { return layer_kernel(spec, z, yp) * field.data(yp); };
  res = integrate_plane(spec.n, integrand, center, integrand_decay(spec.kind, spec.k, field.data), field.quad, opt);
  res.value *= field.weight;
  res.error *= std::abs(field.weight);
  return res;
}

double apply_layer(const PotentialField& field, const HalfSpacePoint& z) { return apply_layer_detailed(field, z).value; }

double apply_normal_derivative_single(const PotentialField& field, const HalfSpacePoint& z) {
  const KernelSpec& spec = field.spec;
  if (spec.kind != LayerKind::Single) throw std::invalid_argument("normal derivative needs a single layer field");
  check_integrability(spec.kind, spec.k, field.data);
  if (!(z.x > 0.0)) throw std::invalid_argument("normal derivative is evaluated at x > 0");
  if (spec.k == 0) {
    PotentialField dl = field;
    dl.spec.kind = LayerKind::Double;
    return -apply_layer(dl, z);
  }
  std::vector<double> center;
  PlaneOptions opt = layout(z, field.quad, center);
  auto integrand = [&](std::span<const double> yp) { return normal_derivative_single(spec, z, yp) * field.data(yp); };
  auto res =
      integrate_plane(spec.n, integrand, center, integrand_decay(spec.kind, spec.k, field.data), field.quad, opt);
  return field.weight * res.value;
}

double apply_boundary(const KernelSpec& spec, const BoundaryData& data, std::span<const double> y,
                      const QuadratureSpec& quad) {
  spec.validate();
  check_integrability(LayerKind::Single, spec.k, data);
  if (y.size() != static_cast<std::size_t>(spec.n - 1)) throw std::invalid_argument("boundary point has the wrong dimension");
  KernelSpec single = spec;
  single.kind = LayerKind::Single;
  PlaneOptions opt;
  opt.radial_breaks = {norm(y)};
  auto integrand = [&](std::span<const double> yp) { return boundary_single(single, y, yp) * data(yp); };
  auto res = integrate_plane_singular(spec.n, integrand, y, spec.n - 2, integrand_decay(LayerKind::Single, spec.k, data),
                                      quad, opt);
  return res.value;
}

double apply_boundary_double(const KernelSpec& spec, const BoundaryData& data, std::span<const double> y) {
  if (y.size() != static_cast<std::size_t>(spec.n - 1) || data.n() != spec.n) {
    throw std::invalid_argument("boundary point has the wrong dimension");
  }
  return 0.0;
}

PotentialField solve_dirichlet(const BoundaryData& data, const QuadratureSpec& quad) {
  IndexSet e = data.index_set();
  KernelSpec spec;
  spec.n = data.n();
  spec.kind = LayerKind::Double;
  spec.k = e.is_empty() ? 0 : k_min(LayerKind::Double, e);
  PotentialField f = make_field(spec, data, quad);
  f.weight = 2.0;
  f.ambiguity_degree = spec.k;
  f.role = "dirichlet";
  return f;
}

PotentialField solve_neumann(const BoundaryData& data, const QuadratureSpec& quad) {
  IndexSet e = data.index_set();
  KernelSpec spec;
  spec.n = data.n();
  spec.kind = LayerKind::Single;
  spec.k = e.is_empty() ? 0 : k_min(LayerKind::Single, e);
  PotentialField f = make_field(spec, data, quad);
  f.weight = -2.0;
  f.ambiguity_degree = spec.k;
  f.role = "neumann";
  return f;
}

std::vector<double> evaluate_points(const PotentialField& field, const std::vector<HalfSpacePoint>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(apply_layer(field, p));
  return out;
}

void write_csv(std::ostream& out, const std::vector<HalfSpacePoint>& points, const std::vector<double>& values) {
  if (points.size() != values.size()) throw std::invalid_argument("points and values differ in length");
  std::size_t dims = points.empty() ? 0 : points.front().y.size();
  out << "x";
  for (std::size_t i = 0; i < dims; ++i) out << ",y" << (i + 1);
  out << ",value\n";
  out << std::setprecision(17);
  for (std::size_t p = 0; p < points.size(); ++p) {
    out << points[p].x;
    for (double v : points[p].y) out << "," << v;
    out << "," << values[p] << "\n";
  }
}

nlohmann::json field_metadata(const PotentialField& field) {
  nlohmann::json doc;
  doc["role"] = field.role;
  doc["kernel"] = {{"n", field.spec.n},
                   {"kind", to_string(field.spec.kind)},
                   {"k", field.spec.k},
                   {"cutoff", {{"inner_radius", field.spec.cutoff.inner_radius}, {"outer_radius", field.spec.cutoff.outer_radius}}}};
  doc["data"] = {{"name", field.data.name()},
                 {"leading_order", field.data.rapid_decay() ? nlohmann::json(nullptr) : nlohmann::json(field.data.leading_order())},
                 {"index_set", to_json(field.data.index_set())}};
  doc["weight"] = field.weight;
  doc["ambiguity_degree"] = field.ambiguity_degree;
  doc["index_family"] = to_json(field.index_family);
  doc["quadrature"] = {{"rel_tol", field.quad.rel_tol},
                       {"abs_tol", field.quad.abs_tol},
                       {"split_radius", field.quad.split_radius},
                       {"far_radius", field.quad.far_radius},
                       {"max_subdivisions", field.quad.max_subdivisions},
                       {"angular_points", field.quad.angular_points}};
  return doc;
}

}  // namespace lpot
