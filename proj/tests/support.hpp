#pragma once

#include <cmath>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "lpot/index_calculus.hpp"

namespace lpot::testing {

// Exponents scaled by 60 so that halves, thirds, quarters and fifths stay integral.
constexpr long kScale = 60;

using Members = std::set<std::pair<long, int>>;

inline long scaled(double z) { return std::lround(z * kScale); }

// Closure of generators under (z,p) -> (z,q<=p) and (z,p) -> (z+1,p), up to Re z <= bound.
inline Members closure(const std::vector<std::pair<long, int>>& gens, long bound) {
  Members out;
  for (auto [z, p] : gens) {
    for (long w = z; w <= bound; w += kScale) {
      for (int q = 0; q <= p; ++q) out.insert({w, q});
    }
  }
  return out;
}

inline Members integer_members(long k, long bound) { return closure({{k * kScale, 0}}, bound); }

inline Members library_members(const IndexSet& s, long bound) {
  Members out;
  // members_up_to lists the top log power per exponent; lower powers are implied.
  for (const auto& m : s.members_up_to(static_cast<double>(bound) / kScale + 1e-9)) {
    for (int q = 0; q <= m.p; ++q) out.insert({scaled(m.z.re()), q});
  }
  return out;
}

inline std::map<long, int> max_power(const Members& s) {
  std::map<long, int> out;
  for (auto [z, p] : s) out[z] = std::max(out.count(z) ? out[z] : 0, p);
  return out;
}

inline Members brute_extended_union(const Members& a, const Members& b) {
  Members out = a;
  out.insert(b.begin(), b.end());
  auto pa = max_power(a);
  auto pb = max_power(b);
  for (auto [z, p1] : pa) {
    auto it = pb.find(z);
    if (it == pb.end()) continue;
    for (int q = 0; q <= p1 + it->second + 1; ++q) out.insert({z, q});
  }
  return out;
}

inline Members brute_sum(const Members& a, const Members& b, long bound) {
  Members out;
  for (auto [z1, p1] : a) {
    for (auto [z2, p2] : b) {
      if (z1 + z2 <= bound) out.insert({z1 + z2, std::max(p1, p2)});
    }
  }
  return out;
}

inline Members brute_union(const Members& a, const Members& b) {
  Members out = a;
  out.insert(b.begin(), b.end());
  return out;
}

inline Members brute_intersection(const Members& a, const Members& b) {
  Members out;
  for (const auto& m : a) {
    if (b.count(m)) out.insert(m);
  }
  return out;
}

inline Members restrict_to(const Members& a, long bound) {
  Members out;
  for (const auto& m : a) {
    if (m.first <= bound) out.insert(m);
  }
  return out;
}

}  // namespace lpot::testing
