#include "lpot/index_calculus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lpot/bundled_assets.hpp"
#include "lpot/errors.hpp"

namespace lpot {

LayerKind parse_layer_kind(std::string_view text) {
  if (text == "single" || text == "sl" || text == "SL") return LayerKind::Single;
  if (text == "double" || text == "dl" || text == "DL") return LayerKind::Double;
  throw std::invalid_argument("unknown layer kind '" + std::string(text) + "' (expected single or double)");
}

namespace {

bool pair_less(const IndexPair& a, const IndexPair& b) {
  if (a.z < b.z) return true;
  if (b.z < a.z) return false;
  return a.p > b.p;
}

// (z, p) is implied by the generator g when z - g.z is in N0 and p <= g.p.
bool implied_by(const IndexPair& pair, const IndexPair& g) {
  if (pair.p > g.p) return false;
  auto q = pair.z.integer_offset_from(g.z);
  return q && *q >= 0;
}

// Sorted list of distinct exponents, each carrying its largest log power.
std::vector<IndexPair> merge_members(std::vector<IndexPair> pairs) {
  std::sort(pairs.begin(), pairs.end(), pair_less);
  std::vector<IndexPair> out;
  for (const auto& pr : pairs) {
    if (!out.empty() && out.back().z == pr.z) {
      out.back().p = std::max(out.back().p, pr.p);
    } else {
      out.push_back(pr);
    }
  }
  return out;
}

const IndexPair* find_member(const std::vector<IndexPair>& sorted, const Exponent& z) {
  for (const auto& pr : sorted) {
    if (pr.z == z) return &pr;
  }
  return nullptr;
}

enum class Combine { Union, Intersection, Extended };

IndexSet combine(const IndexSet& a, const IndexSet& b, Combine mode) {
  if (a.is_empty() || b.is_empty()) {
    if (mode == Combine::Intersection) return IndexSet::empty();
    return a.is_empty() ? b : a;
  }
  double t = std::min(a.truncation(), b.truncation());
  auto ma = a.members_up_to(t);
  auto mb = b.members_up_to(t);
  std::vector<IndexPair> raw;
  for (const auto& pa : ma) {
    const IndexPair* pb = find_member(mb, pa.z);
    switch (mode) {
      case Combine::Union:
        raw.push_back(pb ? IndexPair{pa.z, std::max(pa.p, pb->p)} : pa);
        break;
      case Combine::Intersection:
        if (pb) raw.push_back({pa.z, std::min(pa.p, pb->p)});
        break;
      case Combine::Extended:
        raw.push_back(pb ? IndexPair{pa.z, pa.p + pb->p + 1} : pa);
        break;
    }
  }
  if (mode != Combine::Intersection) {
    for (const auto& pb : mb) {
      if (!find_member(ma, pb.z)) raw.push_back(pb);
    }
  }
  return IndexSet::canonicalize(raw, t);
}

}  // namespace

IndexSet IndexSet::integer(std::int64_t k, double truncation) {
  return canonicalize({IndexPair{Exponent(k), 0}}, truncation);
}

IndexSet IndexSet::canonicalize(const std::vector<IndexPair>& raw, double truncation) {
  if (std::isnan(truncation)) throw std::invalid_argument("index set truncation is NaN");
  std::vector<IndexPair> kept;
  for (const auto& pr : raw) {
    if (pr.p < 0) throw std::invalid_argument("index pair with negative log power " + std::to_string(pr.p));
    if (pr.z.compare_re(truncation) <= 0) kept.push_back(pr);
  }
  if (kept.empty()) return empty();
  if (!std::isfinite(truncation)) throw std::invalid_argument("non-empty index set needs a finite truncation");

  std::sort(kept.begin(), kept.end(), pair_less);
  std::vector<IndexPair> gens;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < kept.size() && !redundant; ++j) {
      if (i == j || !implied_by(kept[i], kept[j])) continue;
      // Mutually implied pairs are duplicates; keep the first occurrence.
      redundant = !implied_by(kept[j], kept[i]) || j < i;
    }
    if (!redundant) gens.push_back(kept[i]);
  }
  IndexSet s;
  s.generators_ = std::move(gens);
  s.truncation_ = truncation;
  return s;
}

bool IndexSet::contains(const Exponent& z, int p) const {
  if (p < 0 || z.compare_re(truncation_) > 0) return false;
  IndexPair probe{z, p};
  return std::any_of(generators_.begin(), generators_.end(),
                     [&](const IndexPair& g) { return implied_by(probe, g); });
}

std::vector<IndexPair> IndexSet::members() const { return members_up_to(truncation_); }

std::vector<IndexPair> IndexSet::members_up_to(double bound) const {
  bound = std::min(bound, truncation_);
  std::vector<IndexPair> all;
  for (const auto& g : generators_) {
    for (std::int64_t q = 0;; ++q) {
      Exponent z = g.z + Exponent(q);
      if (z.compare_re(bound) > 0) break;
      all.push_back({z, g.p});
    }
  }
  return merge_members(std::move(all));
}

double IndexSet::real_part() const {
  if (is_empty()) return std::numeric_limits<double>::infinity();
  return generators_.front().z.re();
}

std::optional<Exponent> IndexSet::leading_exponent() const {
  if (is_empty()) return std::nullopt;
  return generators_.front().z;
}

bool IndexSet::has_logs() const {
  return std::any_of(generators_.begin(), generators_.end(), [](const IndexPair& g) { return g.p > 0; });
}

IndexSet IndexSet::truncated(double truncation) const { return canonicalize(generators_, truncation); }

std::string IndexSet::to_string() const {
  if (is_empty()) return "empty";
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) os << ", ";
    os << "(" << generators_[i].z.to_string() << "," << generators_[i].p << ")";
  }
  os << "}";
  return os.str();
}

bool operator==(const IndexSet& a, const IndexSet& b) {
  if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
  return a.truncation_ == b.truncation_ && a.generators_ == b.generators_;
}

bool same_members(const IndexSet& a, const IndexSet& b) {
  if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
  double t = std::min(a.truncation(), b.truncation());
  return a.members_up_to(t) == b.members_up_to(t);
}

IndexSet index_union(const IndexSet& a, const IndexSet& b) { return combine(a, b, Combine::Union); }
IndexSet index_intersection(const IndexSet& a, const IndexSet& b) { return combine(a, b, Combine::Intersection); }
IndexSet extended_union(const IndexSet& a, const IndexSet& b) { return combine(a, b, Combine::Extended); }

IndexSet index_sum(const IndexSet& a, const IndexSet& b) {
  if (a.is_empty() || b.is_empty()) return IndexSet::empty();
  double t = std::min(a.truncation() + b.real_part(), b.truncation() + a.real_part());
  std::vector<IndexPair> raw;
  for (const auto& ga : a.generators()) {
    for (const auto& gb : b.generators()) raw.push_back({ga.z + gb.z, std::max(ga.p, gb.p)});
  }
  return IndexSet::canonicalize(raw, t);
}

IndexSet index_shift(const IndexSet& g, const Exponent& c) {
  if (g.is_empty()) return g;
  std::vector<IndexPair> raw;
  for (const auto& pr : g.generators()) raw.push_back({pr.z + c, pr.p});
  return IndexSet::canonicalize(raw, g.truncation() + c.re());
}

IndexSet index_divide(const IndexSet& g, std::int64_t e) {
  if (e <= 0) throw std::invalid_argument("index_divide needs a positive divisor");
  if (g.is_empty()) return g;
  std::vector<IndexPair> raw;
  for (const auto& pr : g.generators()) {
    for (std::int64_t q = 0; q < e; ++q) {
      Exponent z = pr.z + Exponent(q);
      if (z.compare_re(g.truncation()) > 0) break;
      raw.push_back({z.divided_by(e), pr.p});
    }
  }
  return IndexSet::canonicalize(raw, g.truncation() / static_cast<double>(e));
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Splits on commas that are not nested inside parentheses.
std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced ')' in index set literal");
    if (c == ',' && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw ParseError("unbalanced '(' in index set literal");
  parts.push_back(trim(cur));
  return parts;
}

double parse_number(const std::string& token) {
  std::string t = trim(token);
  if (t.empty()) throw ParseError("empty number in index set literal");
  auto slash = t.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      std::string num = trim(t.substr(0, slash));
      std::string den = trim(t.substr(slash + 1));
      double a = std::stod(num, &used);
      if (used != num.size()) throw ParseError("malformed number '" + t + "'");
      double b = std::stod(den, &used);
      if (used != den.size() || b == 0.0) throw ParseError("malformed number '" + t + "'");
      return a / b;
    }
    double v = std::stod(t, &used);
    if (used != t.size() || !std::isfinite(v)) throw ParseError("malformed number '" + t + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("malformed number '" + t + "'");
  }
}

int parse_power(const std::string& token) {
  double v = parse_number(token);
  if (v < 0 || v != std::floor(v) || v > 1000) {
    throw ParseError("log power must be a non-negative integer, got '" + trim(token) + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

IndexSet parse_index_set(const std::string& literal, double truncation) {
  std::string s = trim(literal);
  if (s.size() >= 2 && s.front() == '{' && s.back() == '}') s = trim(s.substr(1, s.size() - 2));
  if (s.empty()) throw ParseError("empty index set literal (use 'empty')");
  if (s == "empty" || s == "inf" || s == "infinity") return IndexSet::empty();

  std::vector<IndexPair> raw;
  for (const auto& part : split_top_level(s)) {
    if (part.empty()) throw ParseError("empty element in index set literal '" + literal + "'");
    if (part.front() == '(') {
      if (part.back() != ')') throw ParseError("malformed generator '" + part + "'");
      auto fields = split_top_level(part.substr(1, part.size() - 2));
      if (fields.size() == 2) {
        raw.push_back({Exponent::from_double(parse_number(fields[0])), parse_power(fields[1])});
      } else if (fields.size() == 3) {
        raw.push_back(
            {Exponent::from_double(parse_number(fields[0]), parse_number(fields[1])), parse_power(fields[2])});
      } else {
        throw ParseError("generator '" + part + "' must be (z,p) or (re,im,p)");
      }
    } else {
      raw.push_back({Exponent::from_double(parse_number(part)), 0});
    }
  }
  return IndexSet::canonicalize(raw, truncation);
}

FaceLattice::FaceLattice(std::vector<std::string> faces) : faces_(std::move(faces)) {
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    for (std::size_t j = i + 1; j < faces_.size(); ++j) {
      if (faces_[i] == faces_[j]) throw std::invalid_argument("duplicate face name " + faces_[i]);
    }
  }
}

std::size_t FaceLattice::index_of(const std::string& face) const {
  auto it = std::find(faces_.begin(), faces_.end(), face);
  if (it == faces_.end()) throw std::out_of_range("unknown face " + face);
  return static_cast<std::size_t>(it - faces_.begin());
}

FaceLattice lattice_half_space() { return FaceLattice({"Y", "Z"}); }
FaceLattice lattice_double_space() { return FaceLattice({"lf(Y)", "lf(Z)", "rf", "bf", "df"}); }
FaceLattice lattice_boundary() { return FaceLattice({"Gamma"}); }
FaceLattice lattice_boundary_double() { return FaceLattice({"lf", "rf", "bf"}); }

IndexFamily::IndexFamily(FaceLattice lattice, std::vector<IndexSet> sets)
    : lattice_(std::move(lattice)), sets_(std::move(sets)) {
  if (sets_.size() != lattice_.size()) {
    throw std::invalid_argument("index family needs one index set per face");
  }
}

std::string IndexFamily::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (i) os << ", ";
    os << lattice_.faces()[i] << ": " << sets_[i].to_string();
  }
  os << ")";
  return os.str();
}

bool same_members(const IndexFamily& a, const IndexFamily& b) {
  if (!(a.lattice() == b.lattice())) return false;
  for (std::size_t i = 0; i < a.sets().size(); ++i) {
    if (!same_members(a[i], b[i])) return false;
  }
  return true;
}

IndexFamily family_sum(const IndexFamily& a, const IndexFamily& b) {
  if (!(a.lattice() == b.lattice())) throw std::invalid_argument("family_sum over different lattices");
  std::vector<IndexSet> sets;
  for (std::size_t i = 0; i < a.sets().size(); ++i) sets.push_back(index_sum(a[i], b[i]));
  return IndexFamily(a.lattice(), std::move(sets));
}

ExponentMatrix::ExponentMatrix(FaceLattice domain, FaceLattice range, std::vector<std::vector<int>> entries)
    : domain_(std::move(domain)), range_(std::move(range)), entries_(std::move(entries)) {
  if (entries_.size() != domain_.size()) throw std::invalid_argument("exponent matrix row count mismatch");
  for (const auto& row : entries_) {
    if (row.size() != range_.size()) throw std::invalid_argument("exponent matrix column count mismatch");
    for (int v : row) {
      if (v < 0) throw std::invalid_argument("exponent matrix entries must be non-negative");
    }
  }
}

ExponentMatrix ExponentMatrix::identity(const FaceLattice& lattice) {
  std::vector<std::vector<int>> rows(lattice.size(), std::vector<int>(lattice.size(), 0));
  for (std::size_t i = 0; i < lattice.size(); ++i) rows[i][i] = 1;
  return ExponentMatrix(lattice, lattice, rows);
}

std::vector<std::string> ExponentMatrix::null_set() const {
  std::vector<std::string> out;
  for (std::size_t g = 0; g < entries_.size(); ++g) {
    if (std::all_of(entries_[g].begin(), entries_[g].end(), [](int v) { return v == 0; })) {
      out.push_back(domain_.faces()[g]);
    }
  }
  return out;
}

const ExponentMatrix& exponent_matrix_pi_l() {
  static const ExponentMatrix m = exponent_matrix_from_json(nlohmann::json::parse(assets::kExponentMatrixPiL));
  return m;
}

const ExponentMatrix& exponent_matrix_pi_r() {
  static const ExponentMatrix m = exponent_matrix_from_json(nlohmann::json::parse(assets::kExponentMatrixPiR));
  return m;
}

namespace {

// Generators of e * G: members of G shifted by q become e*z + e*q, which the final N0 closure
// of the pull-back absorbs, so scaling generators suffices.
struct ScaledSet {
  std::vector<IndexPair> gens;
  double truncation;
  double real_part;
};

}  // namespace

IndexFamily pullback_family(const ExponentMatrix& e, const IndexFamily& g) {
  if (!(g.lattice() == e.range())) throw std::invalid_argument("pull-back family is not on the matrix range");
  double default_t = kDefaultTruncation;
  bool any_finite = false;
  for (const auto& s : g.sets()) {
    if (!s.is_empty()) {
      default_t = any_finite ? std::min(default_t, s.truncation()) : s.truncation();
      any_finite = true;
    }
  }

  std::vector<IndexSet> out;
  for (std::size_t row = 0; row < e.domain().size(); ++row) {
    // The accumulator starts as the integer set 0 with an unbounded truncation.
    ScaledSet acc{{IndexPair{Exponent(0), 0}}, std::numeric_limits<double>::infinity(), 0.0};
    bool is_empty = false;
    bool hit = false;
    for (std::size_t col = 0; col < e.range().size(); ++col) {
      int m = e(row, col);
      if (m == 0) continue;
      hit = true;
      const IndexSet& h = g[col];
      if (h.is_empty()) {
        is_empty = true;
        break;
      }
      ScaledSet next{{}, 0.0, 0.0};
      for (const auto& a : acc.gens) {
        for (const auto& b : h.generators()) next.gens.push_back({a.z + b.z.times(m), a.p + b.p});
      }
      double t_scaled = m * h.truncation();
      double re_scaled = m * h.real_part();
      next.truncation = std::min(acc.truncation + re_scaled, t_scaled + acc.real_part);
      next.real_part = acc.real_part + re_scaled;
      acc = std::move(next);
    }
    if (is_empty) {
      out.push_back(IndexSet::empty());
    } else {
      double t = (hit && std::isfinite(acc.truncation)) ? acc.truncation : default_t;
      out.push_back(IndexSet::canonicalize(acc.gens, t));
    }
  }
  return IndexFamily(e.domain(), std::move(out));
}

IndexFamily pushforward_family(const ExponentMatrix& e, const IndexFamily& family) {
  if (!(family.lattice() == e.domain())) throw std::invalid_argument("push-forward family is not on the matrix domain");
  for (const auto& face : e.null_set()) {
    const IndexSet& s = family.at(face);
    auto lead = s.leading_exponent();
    if (lead && lead->compare_re(0.0) <= 0) throw IntegrabilityViolation(face, lead->re());
  }
  std::vector<IndexSet> out;
  for (std::size_t col = 0; col < e.range().size(); ++col) {
    IndexSet acc = IndexSet::empty();
    for (std::size_t row = 0; row < e.domain().size(); ++row) {
      int m = e(row, col);
      if (m > 0) acc = extended_union(acc, index_divide(family[row], m));
    }
    out.push_back(acc);
  }
  return IndexFamily(e.range(), std::move(out));
}

int alpha(LayerKind kind, int k) {
  if (k < 0) throw std::invalid_argument("modification order must be non-negative");
  return kind == LayerKind::Single ? 1 - k : -1 - k;
}

int k_min(LayerKind kind, const IndexSet& e) {
  auto lead = e.leading_exponent();
  if (!lead) throw std::invalid_argument("k_min of the empty index set");
  std::int64_t sign = kind == LayerKind::Single ? 1 : -1;
  std::int64_t floor_neg = 0;
  if (lead->is_exact()) {
    floor_neg = (-lead->re_exact()).floor();
  } else {
    double t = -lead->re();
    double r = std::round(t);
    floor_neg = static_cast<std::int64_t>(std::abs(t - r) <= Exponent::kExponentEps ? r : std::floor(t));
  }
  return static_cast<int>(std::max<std::int64_t>(0, sign + floor_neg + 1));
}

bool admissible(LayerKind kind, int k, const IndexSet& e) {
  auto lead = e.leading_exponent();
  if (!lead) return true;
  return lead->compare_re(Exponent(alpha(kind, k))) > 0;
}

IndexFamily kernel_index_family(LayerKind kind, int k, int n, double truncation) {
  if (n < 3) throw std::invalid_argument("dimension must be at least 3");
  if (k < 0) throw std::invalid_argument("modification order must be non-negative");
  std::vector<int> orders;
  if (kind == LayerKind::Single) {
    orders = k == 0 ? std::vector<int>{0, -1, -1, -n, 1} : std::vector<int>{0, 2 - n - k, k - 1, -n, 1};
  } else {
    orders = k == 0 ? std::vector<int>{1, 0, 1, 1 - n, 0} : std::vector<int>{1, 1 - n - k, k + 1, 1 - n, 0};
  }
  std::vector<IndexSet> sets;
  for (int o : orders) sets.push_back(IndexSet::integer(o, truncation));
  return IndexFamily(lattice_double_space(), std::move(sets));
}

IndexFamily layer_potential_index_family(LayerKind kind, int k, int n, const IndexSet& e) {
  IndexFamily data(lattice_boundary(), {e});
  IndexFamily pulled = pullback_family(exponent_matrix_pi_r(), data);
  IndexFamily integrand = family_sum(pulled, kernel_index_family(kind, k, n));
  IndexFamily pushed = pushforward_family(exponent_matrix_pi_l(), integrand);
  const IndexSet& y = pushed.at("Y");
  double ty = (!y.is_empty() && std::isfinite(y.truncation())) ? y.truncation() : kDefaultTruncation;
  return IndexFamily(lattice_half_space(), {IndexSet::integer(0, ty), index_shift(pushed.at("Z"), Exponent(n - 1))});
}

namespace {

nlohmann::json pairs_json(const IndexSet& set) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& g : set.generators()) arr.push_back({g.z.re(), g.z.im(), g.p});
  return arr;
}

nlohmann::json lattice_json(const FaceLattice& l) { return nlohmann::json(l.faces()); }

FaceLattice lattice_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("lattice must be an array of face names");
  return FaceLattice(j.get<std::vector<std::string>>());
}

}  // namespace

nlohmann::json to_json(const IndexSet& set) {
  nlohmann::json doc;
  doc["generators"] = pairs_json(set);
  doc["truncation"] = set.is_empty() ? nlohmann::json(nullptr) : nlohmann::json(set.truncation());
  return doc;
}

nlohmann::json to_json(const IndexFamily& family) {
  nlohmann::json sets = nlohmann::json::object();
  double t = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < family.sets().size(); ++i) {
    sets[family.lattice().faces()[i]] = pairs_json(family[i]);
    if (!family[i].is_empty()) t = std::min(t, family[i].truncation());
  }
  sets["truncation"] = std::isfinite(t) ? nlohmann::json(t) : nlohmann::json(nullptr);
  nlohmann::json doc;
  doc["lattice"] = lattice_json(family.lattice());
  doc["sets"] = sets;
  return doc;
}

nlohmann::json to_json(const ExponentMatrix& matrix) {
  nlohmann::json doc;
  doc["domain"] = lattice_json(matrix.domain());
  doc["range"] = lattice_json(matrix.range());
  doc["entries"] = matrix.entries();
  return doc;
}

IndexFamily index_family_from_json(const nlohmann::json& doc) {
  try {
    FaceLattice lattice = lattice_from_json(doc.at("lattice"));
    const auto& sets = doc.at("sets");
    double t = sets.contains("truncation") && !sets.at("truncation").is_null() ? sets.at("truncation").get<double>()
                                                                               : kDefaultTruncation;
    std::vector<IndexSet> out;
    for (const auto& face : lattice.faces()) {
      std::vector<IndexPair> raw;
      for (const auto& g : sets.at(face)) {
        if (!g.is_array() || g.size() != 3) throw ParseError("index pair must be [re, im, p]");
        raw.push_back({Exponent::from_double(g[0].get<double>(), g[1].get<double>()), g[2].get<int>()});
      }
      out.push_back(IndexSet::canonicalize(raw, t));
    }
    return IndexFamily(lattice, std::move(out));
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed index family document: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ParseError(std::string("malformed index family document: ") + ex.what());
  }
}

ExponentMatrix exponent_matrix_from_json(const nlohmann::json& doc) {
  try {
    return ExponentMatrix(lattice_from_json(doc.at("domain")), lattice_from_json(doc.at("range")),
                          doc.at("entries").get<std::vector<std::vector<int>>>());
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed exponent matrix document: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ParseError(std::string("malformed exponent matrix document: ") + ex.what());
  }
}

}  // namespace lpot
