#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lpot/boundary_data.hpp"
#include "lpot/index_calculus.hpp"
#include "lpot/kernels.hpp"
#include "lpot/quadrature.hpp"

namespace lpot {

/// A layer potential of boundary data, ready for evaluation.
///
/// `weight` multiplies every value; plain layer potentials have weight 1. Solver fields carry
/// the factor that turns the jump relations into the boundary condition (2 for Dirichlet,
/// -2 for Neumann). `ambiguity_degree` is the largest degree of the harmonic polynomials a
/// solver solution is unique up to, or -1 when not applicable.
struct PotentialField {
  KernelSpec spec;
  BoundaryData data;
  QuadratureSpec quad;
  IndexFamily index_family;
  double weight = 1.0;
  int ambiguity_degree = -1;
  std::string role = "layer";
};

/// Builds a field after checking Re E > alpha(kind, k). Throws NonIntegrable otherwise.
PotentialField make_field(const KernelSpec& spec, const BoundaryData& data, const QuadratureSpec& quad = {});

/// Throws NonIntegrable unless data with index set E admits the layer of the given kind and k.
void check_integrability(LayerKind kind, int k, const BoundaryData& data);

/// Decay exponent in |y'| of kernel x data, used for the tail of the plane quadrature.
double integrand_decay(LayerKind kind, int k, const BoundaryData& data);

/// weight * Op[SL_k]f(z) or weight * Op[DL_k]f(z). At x = 0 the single layer is evaluated as
/// the boundary operator N_k and the double layer as K_k = 0.
double apply_layer(const PotentialField& field, const HalfSpacePoint& z);
QuadratureResult apply_layer_detailed(const PotentialField& field, const HalfSpacePoint& z);

/// weight * d_nu Op[SL_k]f(z), d_nu = -d/dx, for a single layer field and x > 0.
double apply_normal_derivative_single(const PotentialField& field, const HalfSpacePoint& z);

/// Op[N_k]f(y), the boundary single layer operator.
double apply_boundary(const KernelSpec& spec, const BoundaryData& data, std::span<const double> y,
                      const QuadratureSpec& quad = {});
/// Op[K_k]f(y), identically zero.
double apply_boundary_double(const KernelSpec& spec, const BoundaryData& data, std::span<const double> y);

/// Dirichlet solution 2 Op[DL_k]f with k = k_min(double, E).
PotentialField solve_dirichlet(const BoundaryData& data, const QuadratureSpec& quad = {});
/// Neumann solution -2 Op[SL_k]g with k = k_min(single, E).
PotentialField solve_neumann(const BoundaryData& data, const QuadratureSpec& quad = {});

std::vector<double> evaluate_points(const PotentialField& field, const std::vector<HalfSpacePoint>& points);
/// CSV with columns x, y1 ... y_{n-1}, value.
void write_csv(std::ostream& out, const std::vector<HalfSpacePoint>& points, const std::vector<double>& values);
/// Metadata sidecar: kernel spec, data, index family and quadrature settings.
nlohmann::json field_metadata(const PotentialField& field);

}  // namespace lpot
