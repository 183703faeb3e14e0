#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lpot/boundary_data.hpp"
#include "lpot/potentials.hpp"

namespace lpot {

struct Measurement {
  std::string label;
  double measured = 0.0;
  double reference = 0.0;
  /// Where the reference value comes from, e.g. "exact constant" or "closed form".
  std::string provenance;
  double tolerance = 0.0;
  bool pass = false;
};

/// Structured record of one check. pass holds exactly when every row is within tolerance.
struct VerificationReport {
  std::string check_name;
  nlohmann::json params = nlohmann::json::object();
  std::vector<Measurement> rows;
  std::vector<std::string> notes;
  bool pass = true;
  double runtime_seconds = 0.0;

  /// Appends a row, deciding its verdict by |measured - reference| <= tolerance.
  void add(std::string label, double measured, double reference, std::string provenance, double tolerance);
  /// Appends a row checking measured <= bound.
  void add_bound(std::string label, double measured, double bound, std::string provenance);
  /// Runtime is omitted unless requested, so identical runs serialize identically.
  nlohmann::json to_json(bool with_timings = false) const;
  std::string to_text() const;
};

/// Integral of DL(x, y; .) over R^{n-1} for each x, against 1/2, plus the Gamma-function
/// identity for the constant.
VerificationReport check_poisson_normalization(int n, const std::vector<double>& xs, const QuadratureSpec& quad = {},
                                               double tolerance = 1e-8);

struct JumpOptions {
  /// Distances to the boundary; the defect ratios are taken between consecutive entries.
  std::vector<double> chis;
  /// Distance at which the defect bound is asserted.
  double chi_final = 1e-3;
  /// Defect bound as a multiple of max |f| over the patch.
  double relative_bound = 0.01;
  double ratio_min = 1.7;
  double ratio_max = 2.3;
  bool throw_on_failure = false;

  static JumpOptions defaults();
};

/// 3 x 3 grid {-0.7, 0, 0.7}^2 (n = 3) or its analogue along the first two axes.
std::vector<std::vector<double>> default_patch(int n);

/// Boundary limits along x -> 0 on a patch: DL_k f -> f/2 (double), or SL_k f -> N_k f,
/// d_nu SL_k f -> -f/2 and (SL_k f - N_k f)/x -> f/2 (single). Throws JumpFailure when
/// options.throw_on_failure is set and a relation fails.
VerificationReport check_jump(LayerKind kind, int k, const BoundaryData& data,
                              const std::vector<std::vector<double>>& patch, const JumpOptions& options = JumpOptions::defaults(),
                              const QuadratureSpec& quad = {});

struct LogConditionResult {
  VerificationReport report;
  /// Each entry: j, Gegenbauer index, max over theta of |integral|.
  struct Term {
    int j;
    int gegenbauer_index;
    std::string family;
    double max_abs;
    std::vector<double> values;
  };
  std::vector<Term> terms;
  bool no_logs = true;
  std::string verdict;
};

/// Upper half-sphere directions (sin a, cos a e_1), a in [0.05, pi - 0.05].
std::vector<std::vector<double>> default_theta_grid(int n, int count = 16);

/// Integrals of f_j(w) C^{lambda}_{idx}(<theta, w>) over S^{n-2} for the ranges of the log
/// criteria. The report passes, and the verdict reads "integer index set at Z", exactly when
/// all integrals vanish to within tolerance.
LogConditionResult check_log_condition(LayerKind kind, int k, const BoundaryData& data, int j_max,
                                       const std::vector<std::vector<double>>& thetas, double tolerance = 1e-10,
                                       const QuadratureSpec& quad = {});

struct AsymptoticFit {
  /// Fitted terms rho^z log^p rho.
  std::vector<IndexPair> terms;
  std::vector<double> coefficients;
  /// Per term, whether it is a log term exceeding the detection threshold.
  std::vector<bool> detected;
  /// Coefficient divided by its detection threshold (0 for non-log terms).
  std::vector<double> significance;
  double residual = 0.0;
  double condition = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  std::vector<double> theta;

  bool logs_detected() const;
};

/// Least squares fit of samples u(theta / rho) to sum c_{z,p} rho^z log^p rho.
/// Throws IllConditionedFit when the scaled design matrix has condition number above 1e12.
AsymptoticFit fit_samples(const std::vector<double>& rhos, const std::vector<double>& values,
                          const std::vector<IndexPair>& terms, double tolerance);

/// Samples the field along theta at the given rho values and fits the terms.
AsymptoticFit fit_asymptotics(const PotentialField& field, const std::vector<double>& theta,
                              const std::vector<double>& rhos, const std::vector<IndexPair>& terms);

/// Terms of the field's Z-face index set over `orders` consecutive real parts starting at the
/// leading one, each with all log powers up to its maximum.
std::vector<IndexPair> fit_terms_from_family(const IndexFamily& family, int orders = 4);

/// Geometric sequence of `count` values of rho = 1/|z| for |z| in [r_min, r_max].
std::vector<double> rho_window(double r_min, double r_max, int count = 24);

using PointFunction = std::function<double(const HalfSpacePoint&)>;

/// Second-order central FD Laplacian at each point, asserting |Delta_h u| <= c_h h^2 + c_q noise,
/// where noise = 4 n quad_rel |u| / h^2 models quadrature error amplified by the stencil.
VerificationReport check_harmonicity(const std::string& name, const PointFunction& u,
                                     const std::vector<HalfSpacePoint>& points, double h, double c_h, double c_q,
                                     double quad_rel);
VerificationReport check_harmonicity(const PotentialField& field, const std::vector<HalfSpacePoint>& points,
                                     double h);

/// Symbolic fixtures of the index calculus.
VerificationReport check_index_fixtures();
/// Generating function, derivative identity and Legendre agreement of the Gegenbauer polynomials.
VerificationReport check_gegenbauer_properties();

}  // namespace lpot
