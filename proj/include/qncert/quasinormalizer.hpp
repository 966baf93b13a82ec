#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qncert/coset.hpp"
#include "qncert/element.hpp"
#include "qncert/errors.hpp"
#include "qncert/group.hpp"
#include "qncert/subgroup.hpp"

namespace qncert {

enum class TriState { True, False, Unknown };

inline TriState tristate_from_string(const std::string& s) {
  if (s == "true") return TriState::True;
  if (s == "false") return TriState::False;
  if (s == "unknown") return TriState::Unknown;
  throw Error("unknown tri-state value: " + s);
}

inline const char* to_string(TriState t) {
  switch (t) {
    case TriState::True:
      return "true";
    case TriState::False:
      return "false";
    case TriState::Unknown:
      return "unknown";
  }
  return "?";
}

/// Element set over which a condition is tested: every element of a finite
/// group, or a radius ball over the ambient generators.
struct ElementScope {
  bool all_elements = false;
  int radius = 0;

  static ElementScope all() { return {true, 0}; }
  static ElementScope ball(int radius) {
    if (radius < 0) throw PreconditionError("scope radius must be >= 0");
    return {false, radius};
  }

  std::string describe() const {
    return all_elements ? "all-elements" : "ball(" + std::to_string(radius) + ")";
  }

  std::vector<Element> enumerate(const Group& g) const {
    if (all_elements) {
      if (!g.is_finite_family())
        throw PreconditionError("all-elements scope requires a finite group");
      return g.elements();
    }
    std::vector<Element> gens = g.generators();
    return g.ball(gens, radius);
  }
};

/// One failure of the quasi-normalizer condition: g lies outside K yet its
/// H-orbit is finite, covered by the listed family.
/// A finite-orbit element outside K. The family F consists of the inverses
/// of the orbit representatives, so F·h·g meets H for every h in H and F
/// falsifies the pair condition for g directly.
struct Violation {
  Element g;
  std::vector<Element> covering_family;

  bool operator==(const Violation&) const = default;
};

struct Verdict3 {
  TriState holds = TriState::Unknown;
  std::vector<Violation> violations;
  bool exhaustive = false;
  std::string scope;
  std::uint64_t unknowns = 0;
};

inline void require_nested(const Subgroup& h, const Subgroup& k) {
  if (!h.group().same(k.group()))
    throw BackendMismatchError("subgroups live in different ambient groups");
  for (const auto& s : h.generators())
    if (!k.contains(s))
      throw PreconditionError("H is not contained in K: generator " +
                              h.group().print(s) + " fails K membership");
}

/// Tests whether every element whose H-orbit on G/H is finite lies in K,
/// over the given scope. Violations carry re-checkable covering families.
inline Verdict3 check_condition3(const Subgroup& h, const Subgroup& k,
                                 ElementScope scope,
                                 std::uint64_t budget = 10000) {
  require_nested(h, k);
  Verdict3 v;
  v.scope = scope.describe();
  v.exhaustive = scope.all_elements;
  for (const auto& g : scope.enumerate(h.group())) {
    if (k.contains(g)) continue;
    OrbitResult orb = h_orbit(g, h, budget);
    switch (orb.status) {
      case OrbitStatus::Finite: {
        std::vector<Element> family;
        for (const auto& rep : orb.covering_family)
          family.push_back(h.group().inverse(rep));
        v.violations.push_back(Violation{g, std::move(family)});
        break;
      }
      case OrbitStatus::InfiniteCertified:
        break;
      case OrbitStatus::BudgetExhausted:
        ++v.unknowns;
        break;
    }
  }
  if (!v.violations.empty())
    v.holds = TriState::False;
  else if (v.unknowns > 0)
    v.holds = TriState::Unknown;
  else
    v.holds = TriState::True;
  return v;
}

/// Independent re-check of one violation using only membership and orbit
/// recomputation.
inline bool verify_violation(const Violation& viol, const Subgroup& h,
                             const Subgroup& k, std::uint64_t budget = 10000) {
  if (k.contains(viol.g)) return false;
  OrbitResult orb = h_orbit(viol.g, h, budget);
  if (orb.status != OrbitStatus::Finite) return false;
  if (orb.cosets.size() != viol.covering_family.size()) return false;
  // the inverse of exactly one family member lands in each orbit coset
  for (const auto& c : orb.cosets) {
    bool hit = false;
    for (const auto& f : viol.covering_family)
      hit = hit || h.contains(h.group().mul(f, c.representative));
    if (!hit) return false;
  }
  return true;
}

struct Cond6Certificate {
  std::vector<Element> F;
  Element h;
  bool verified = false;
};

enum class SearchOutcome { Found, Falsified, NotFoundWithinRadius };

inline const char* to_string(SearchOutcome s) {
  switch (s) {
    case SearchOutcome::Found:
      return "certificate";
    case SearchOutcome::Falsified:
      return "falsified";
    case SearchOutcome::NotFoundWithinRadius:
      return "not-found-within-radius";
  }
  return "?";
}

inline SearchOutcome search_outcome_from_string(const std::string& s) {
  if (s == "certificate") return SearchOutcome::Found;
  if (s == "falsified") return SearchOutcome::Falsified;
  if (s == "not-found-within-radius") return SearchOutcome::NotFoundWithinRadius;
  throw Error("unknown search outcome: " + s);
}

struct Cond6Result {
  SearchOutcome outcome = SearchOutcome::NotFoundWithinRadius;
  std::optional<Cond6Certificate> certificate;
};

inline void require_outside_k(const std::vector<Element>& f,
                              const Subgroup& k) {
  if (f.empty()) throw PreconditionError("F must be nonempty");
  for (const auto& x : f)
    if (k.contains(x))
      throw PreconditionError("element of F lies in K: " +
                              k.group().print(x));
}

/// Candidate h values: all of H (finite ambient) or the radius ball over
/// H's generators, in ball order.
inline std::vector<Element> subgroup_candidates(const Subgroup& h,
                                                int radius) {
  std::vector<Element> gens = h.generators();
  if (h.group().is_finite_family()) return h.group().ball_closure(gens);
  return h.group().ball(gens, radius);
}

inline bool verify_cond6_certificate(const Cond6Certificate& cert,
                                     const Subgroup& h, const Subgroup& k) {
  if (cert.F.empty() || !h.contains(cert.h)) return false;
  const Group& g = h.group();
  for (const auto& f : cert.F)
    if (k.contains(f)) return false;
  for (const auto& f1 : cert.F)
    for (const auto& f2 : cert.F)
      if (h.contains(g.mul(g.mul(f1, cert.h), f2))) return false;
  return true;
}

/// Searches for h in H with F·h·F disjoint from H. "falsified" is emitted
/// only when the enumeration provably covered all of H (finite ambient).
inline Cond6Result cond6_search(const std::vector<Element>& f,
                                const Subgroup& h, const Subgroup& k,
                                int radius) {
  require_nested(h, k);
  require_outside_k(f, k);
  const Group& g = h.group();
  for (const auto& cand : subgroup_candidates(h, radius)) {
    bool clear = true;
    for (const auto& f1 : f) {
      for (const auto& f2 : f) {
        if (h.contains(g.mul(g.mul(f1, cand), f2))) {
          clear = false;
          break;
        }
      }
      if (!clear) break;
    }
    if (clear) {
      Cond6Certificate cert{f, cand, false};
      cert.verified = verify_cond6_certificate(cert, h, k);
      return Cond6Result{SearchOutcome::Found, std::move(cert)};
    }
  }
  return Cond6Result{g.is_finite_family() ? SearchOutcome::Falsified
                                          : SearchOutcome::NotFoundWithinRadius,
                     std::nullopt};
}

struct PairSearchResult {
  SearchOutcome outcome = SearchOutcome::NotFoundWithinRadius;
  std::optional<Element> h;
};

/// Searches for h in H with F·h·g disjoint from H (the restated pair
/// condition used to pass from failures of the orbit condition to the
/// inequality bound).
inline PairSearchResult pair_condition_search(const std::vector<Element>& f,
                                              const Element& g,
                                              const Subgroup& h,
                                              const Subgroup& k, int radius) {
  require_nested(h, k);
  require_outside_k(f, k);
  if (k.contains(g))
    throw PreconditionError("pair condition requires g outside K");
  const Group& grp = h.group();
  for (const auto& cand : subgroup_candidates(h, radius)) {
    bool clear = true;
    for (const auto& f1 : f) {
      if (h.contains(grp.mul(grp.mul(f1, cand), g))) {
        clear = false;
        break;
      }
    }
    if (clear) return PairSearchResult{SearchOutcome::Found, cand};
  }
  return PairSearchResult{grp.is_finite_family()
                              ? SearchOutcome::Falsified
                              : SearchOutcome::NotFoundWithinRadius,
                          std::nullopt};
}

}  // namespace qncert
