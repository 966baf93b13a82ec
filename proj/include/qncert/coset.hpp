#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qncert/element.hpp"
#include "qncert/errors.hpp"
#include "qncert/group.hpp"
#include "qncert/subgroup.hpp"

namespace qncert {

/// Left coset g·H carrying its canonical representative. Equality is
/// representative equality, which the canonical choice makes equivalent to
/// the subgroup test contains(inverse(r1)·r2).
struct Coset {
  Element representative;
  Subgroup subgroup;

  friend bool operator==(const Coset& a, const Coset& b) {
    return a.representative == b.representative;
  }
};

inline Coset canonical_coset(const Element& g, const Subgroup& h) {
  return Coset{h.coset_representative(g), h};
}

enum class OrbitStatus { Finite, InfiniteCertified, BudgetExhausted };

inline const char* to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::Finite:
      return "finite";
    case OrbitStatus::InfiniteCertified:
      return "infinite-certified";
    case OrbitStatus::BudgetExhausted:
      return "budget-exhausted";
  }
  return "?";
}

inline OrbitStatus orbit_status_from_string(const std::string& s) {
  if (s == "finite") return OrbitStatus::Finite;
  if (s == "infinite-certified") return OrbitStatus::InfiniteCertified;
  if (s == "budget-exhausted") return OrbitStatus::BudgetExhausted;
  throw Error("unknown orbit status: " + s);
}

/// Outcome of bounded enumeration of the left H-orbit of a coset. When
/// finite, `cosets` is the complete orbit in discovery order and
/// `covering_family` holds one canonical representative per orbit coset,
/// certifying Hg ⊆ FH. Otherwise `cosets` is the partial frontier.
struct OrbitResult {
  OrbitStatus status = OrbitStatus::BudgetExhausted;
  std::vector<Coset> cosets;
  std::vector<Element> covering_family;
  std::uint64_t budget_used = 0;
};

/// Step set for orbit BFS: the subgroup generators and their inverses,
/// deduplicated, in canonical element order.
inline std::vector<Element> orbit_steps(const Subgroup& h) {
  std::set<Element, ElementLess> steps;
  for (const auto& s : h.generators()) {
    if (h.group().is_identity(s)) continue;
    steps.insert(s);
    steps.insert(h.group().inverse(s));
  }
  return {steps.begin(), steps.end()};
}

/// Exact orbit size of [g] under left H-multiplication for free ambients:
/// by orbit-stabilizer this is the index [H : H ∩ gHg⁻¹]. nullopt = infinite.
inline std::optional<std::uint64_t> orbit_size_crosscheck(const Element& g,
                                                          const Subgroup& h) {
  const Subgroup stab = Subgroup::intersect(h, h.conjugated_by(g));
  return Subgroup::index_in(stab, h);
}

/// Breadth-first closure of {[g]} under the orbit steps, visiting cosets in
/// discovery order. Free ambients first consult the exact index route and
/// certify infinite orbits without search; only that route may certify
/// infinitude.
inline OrbitResult h_orbit(const Element& g, const Subgroup& h,
                           std::uint64_t budget) {
  if (budget < 1) throw PreconditionError("orbit budget must be >= 1");
  h.group().check_member(g);

  if (h.group().family() == Family::Free) {
    if (!orbit_size_crosscheck(g, h)) {
      OrbitResult r;
      r.status = OrbitStatus::InfiniteCertified;
      r.cosets.push_back(canonical_coset(g, h));
      r.budget_used = 1;
      return r;
    }
  }

  const std::vector<Element> steps = orbit_steps(h);
  const Group& grp = h.group();

  OrbitResult r;
  std::set<Element, ElementLess> seen;
  std::vector<Element> queue;
  const Element start = h.coset_representative(g);
  seen.insert(start);
  queue.push_back(start);
  r.cosets.push_back(Coset{start, h});

  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& s : steps) {
      Element rep = h.coset_representative(grp.mul(s, queue[qi]));
      if (seen.count(rep)) continue;
      if (queue.size() + 1 > budget) {
        r.status = OrbitStatus::BudgetExhausted;
        r.budget_used = queue.size() + 1;
        r.cosets.push_back(Coset{rep, h});
        return r;
      }
      seen.insert(rep);
      queue.push_back(rep);
      r.cosets.push_back(Coset{rep, h});
    }
  }

  r.status = OrbitStatus::Finite;
  r.budget_used = queue.size();
  for (const auto& c : r.cosets) r.covering_family.push_back(c.representative);
  return r;
}

}  // namespace qncert
