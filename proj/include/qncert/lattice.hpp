#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qncert/element.hpp"
#include "qncert/errors.hpp"
#include "qncert/group.hpp"
#include "qncert/subgroup.hpp"

namespace qncert {

namespace detail {
struct ElementListLess {
  bool operator()(const std::vector<Element>& a,
                  const std::vector<Element>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int c = Element::compare(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};
}  // namespace detail

/// Every subgroup of a small finite group, exactly once, ordered by
/// (order, canonical element list). Candidates are the closures of all
/// generating subsets of size at most 3, plus the full generator set.
inline std::vector<Subgroup> enumerate_subgroups(const Group& g,
                                                 std::size_t order_cap = 24) {
  if (!g.is_finite_family())
    throw PreconditionError("subgroup enumeration requires a finite group");
  const std::vector<Element> elems = g.elements();
  const std::size_t n = elems.size();
  if (n > order_cap)
    throw PreconditionError("group order exceeds the enumeration cap");

  std::map<std::vector<Element>, Subgroup, detail::ElementListLess> found;
  auto consider = [&](std::vector<Element> gens) {
    Subgroup s = Subgroup::generated(g, std::move(gens));
    std::vector<Element> key = s.elements();
    found.try_emplace(std::move(key), std::move(s));
  };

  for (std::size_t i = 0; i < n; ++i) {
    consider({elems[i]});
    for (std::size_t j = i + 1; j < n; ++j) {
      consider({elems[i], elems[j]});
      for (std::size_t k = j + 1; k < n; ++k)
        consider({elems[i], elems[j], elems[k]});
    }
  }
  consider(g.generators());

  std::vector<Subgroup> out;
  for (auto& [key, s] : found) out.push_back(std::move(s));
  return out;
}

/// True when every element of `a` lies in `b` (finite backends).
inline bool subgroup_leq(const Subgroup& a, const Subgroup& b) {
  for (const auto& x : a.elements())
    if (!b.contains(x)) return false;
  return true;
}

struct NamedGroup {
  std::string name;
  Group group;
};

/// The fixed test battery: cyclic, dihedral, quaternion, and alternating
/// examples of order at most 12, as permutation groups.
inline std::vector<NamedGroup> standard_finite_groups() {
  std::vector<NamedGroup> out;
  out.push_back({"Z4", Group::permutation_group(4, {{1, 2, 3, 0}})});
  out.push_back({"Z6", Group::permutation_group(6, {{1, 2, 3, 4, 5, 0}})});
  out.push_back({"S3", Group::permutation_group(3, {{1, 0, 2}, {1, 2, 0}})});
  out.push_back(
      {"D4", Group::permutation_group(4, {{1, 2, 3, 0}, {2, 1, 0, 3}})});
  // unit quaternions acting on themselves, basis 1,i,j,k,-1,-i,-j,-k
  out.push_back({"Q8", Group::permutation_group(
                           8, {{1, 4, 3, 6, 5, 0, 7, 2},
                               {2, 7, 4, 1, 6, 3, 0, 5}})});
  out.push_back(
      {"A4", Group::permutation_group(4, {{1, 0, 3, 2}, {1, 2, 0, 3}})});
  return out;
}

}  // namespace qncert
