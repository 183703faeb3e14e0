#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lpot/exponent.hpp"
#include "lpot/layer_kind.hpp"

namespace lpot {

/// Truncation used for integer index sets when the caller does not pick one.
inline constexpr double kDefaultTruncation = 16.0;

struct IndexPair {
  Exponent z;
  int p = 0;

  friend bool operator==(const IndexPair& a, const IndexPair& b) { return a.z == b.z && a.p == b.p; }
};

/// Index set given by generators and a real truncation bound.
///
/// A pair (z, p) is a member when some generator (z0, p0) has z - z0 in N0, p <= p0 and
/// Re z <= truncation. Generators are kept canonical: none is implied by another, all satisfy
/// Re z <= truncation, and they are sorted by (Re z, Im z). The empty index set (written
/// "infinity" in the literature) has no generators and an infinite truncation.
class IndexSet {
 public:
  IndexSet() = default;

  static IndexSet empty() { return IndexSet(); }
  /// The integer index set k = {(z, 0) : z in k + N0}.
  static IndexSet integer(std::int64_t k, double truncation = kDefaultTruncation);
  /// Throws std::invalid_argument on p < 0 or non-finite truncation.
  static IndexSet canonicalize(const std::vector<IndexPair>& raw, double truncation);

  bool is_empty() const noexcept { return generators_.empty(); }
  const std::vector<IndexPair>& generators() const noexcept { return generators_; }
  double truncation() const noexcept { return truncation_; }

  bool contains(const Exponent& z, int p) const;
  /// Every exponent that occurs with Re z <= truncation, each with its largest log power.
  std::vector<IndexPair> members() const;
  std::vector<IndexPair> members_up_to(double bound) const;

  /// min Re z over members; +infinity for the empty set.
  double real_part() const;
  /// A member exponent of minimal real part; nullopt for the empty set.
  std::optional<Exponent> leading_exponent() const;
  bool has_logs() const;

  /// Same generators with a new truncation; generators above it are dropped.
  IndexSet truncated(double truncation) const;

  std::string to_string() const;

  friend bool operator==(const IndexSet& a, const IndexSet& b);

 private:
  std::vector<IndexPair> generators_;
  double truncation_ = std::numeric_limits<double>::infinity();
};

/// True when both sets have the same members up to the smaller truncation.
bool same_members(const IndexSet& a, const IndexSet& b);

IndexSet index_union(const IndexSet& a, const IndexSet& b);
IndexSet index_intersection(const IndexSet& a, const IndexSet& b);
IndexSet extended_union(const IndexSet& a, const IndexSet& b);
/// {(z + z', max(p, p'))}.
IndexSet index_sum(const IndexSet& a, const IndexSet& b);
IndexSet index_shift(const IndexSet& g, const Exponent& c);
/// {(z / e, p)}: the members of g rescaled, closed under z -> z + 1.
IndexSet index_divide(const IndexSet& g, std::int64_t e);

/// Parses "empty", an integer or rational number, "(z,p)" or "(re,im,p)" generators, or a
/// comma-separated list of those, optionally wrapped in braces. Throws ParseError.
IndexSet parse_index_set(const std::string& literal, double truncation = kDefaultTruncation);

class FaceLattice {
 public:
  FaceLattice() = default;
  /// Throws std::invalid_argument on duplicate names.
  explicit FaceLattice(std::vector<std::string> faces);

  const std::vector<std::string>& faces() const noexcept { return faces_; }
  std::size_t size() const noexcept { return faces_.size(); }
  /// Throws std::out_of_range for unknown names.
  std::size_t index_of(const std::string& face) const;

  friend bool operator==(const FaceLattice&, const FaceLattice&) = default;

 private:
  std::vector<std::string> faces_;
};

/// The half-space X with faces (Y, Z).
FaceLattice lattice_half_space();
/// The double space P_D with faces (lf(Y), lf(Z), rf, bf, df).
FaceLattice lattice_double_space();
/// The boundary Y with its single face at infinity, Gamma.
FaceLattice lattice_boundary();
/// The b-double space of Y with faces (lf, rf, bf).
FaceLattice lattice_boundary_double();

class IndexFamily {
 public:
  IndexFamily() = default;
  /// Throws std::invalid_argument unless there is exactly one set per face.
  IndexFamily(FaceLattice lattice, std::vector<IndexSet> sets);

  const FaceLattice& lattice() const noexcept { return lattice_; }
  const std::vector<IndexSet>& sets() const noexcept { return sets_; }
  const IndexSet& at(const std::string& face) const { return sets_.at(lattice_.index_of(face)); }
  const IndexSet& operator[](std::size_t i) const { return sets_.at(i); }

  std::string to_string() const;

 private:
  FaceLattice lattice_;
  std::vector<IndexSet> sets_;
};

/// Face-by-face same_members.
bool same_members(const IndexFamily& a, const IndexFamily& b);
IndexFamily family_sum(const IndexFamily& a, const IndexFamily& b);

/// Non-negative integer matrix e(G, H), rows indexed by domain faces G and columns by range
/// faces H.
class ExponentMatrix {
 public:
  ExponentMatrix() = default;
  /// Throws std::invalid_argument on shape mismatch or negative entries.
  ExponentMatrix(FaceLattice domain, FaceLattice range, std::vector<std::vector<int>> entries);

  static ExponentMatrix identity(const FaceLattice& lattice);

  const FaceLattice& domain() const noexcept { return domain_; }
  const FaceLattice& range() const noexcept { return range_; }
  int operator()(std::size_t g, std::size_t h) const { return entries_.at(g).at(h); }
  const std::vector<std::vector<int>>& entries() const noexcept { return entries_; }

  /// Domain faces mapped into the interior: rows that are entirely zero.
  std::vector<std::string> null_set() const;

 private:
  FaceLattice domain_;
  FaceLattice range_;
  std::vector<std::vector<int>> entries_;
};

/// Exponent matrix of the left projection P_D -> X.
const ExponentMatrix& exponent_matrix_pi_l();
/// Exponent matrix of the right projection P_D -> Y.
const ExponentMatrix& exponent_matrix_pi_r();

/// Pull-back index family on e.domain() of a family on e.range().
IndexFamily pullback_family(const ExponentMatrix& e, const IndexFamily& g);
/// Push-forward index family on e.range(). Throws IntegrabilityViolation when a null-set face
/// has Re E <= 0.
IndexFamily pushforward_family(const ExponentMatrix& e, const IndexFamily& family);

/// 1 - k for single layers, -1 - k for double layers.
int alpha(LayerKind kind, int k);
/// Smallest l in N0 with l > +-1 - Re E. E must be non-empty.
int k_min(LayerKind kind, const IndexSet& e);
/// True when Re E > alpha(kind, k), i.e. the layer potential of data with index set E exists.
bool admissible(LayerKind kind, int k, const IndexSet& e);

/// Index family on P_D of the b-kernel (SL, DL or their k-modifications) in dimension n.
IndexFamily kernel_index_family(LayerKind kind, int k, int n, double truncation = kDefaultTruncation);

/// Index family on (Y, Z) of the layer potential of data with index set E, derived by
/// pulling back, multiplying by the kernel and pushing forward.
IndexFamily layer_potential_index_family(LayerKind kind, int k, int n, const IndexSet& e);

nlohmann::json to_json(const IndexSet& set);
nlohmann::json to_json(const IndexFamily& family);
nlohmann::json to_json(const ExponentMatrix& matrix);
IndexFamily index_family_from_json(const nlohmann::json& doc);
ExponentMatrix exponent_matrix_from_json(const nlohmann::json& doc);

}  // namespace lpot
