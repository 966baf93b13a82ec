#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "qncert/coset.hpp"
#include "qncert/element.hpp"
#include "qncert/errors.hpp"
#include "qncert/group.hpp"
#include "qncert/quasinormalizer.hpp"
#include "qncert/subgroup.hpp"

namespace qncert {

/// Finitely supported vector in ℓ²(G/H). Coefficients are keyed by the
/// canonical coset representative; exact zeros are pruned.
class CosetVector {
public:
  explicit CosetVector(Subgroup h) : h_(std::move(h)) {}

  static CosetVector delta(const Element& g, const Subgroup& h) {
    CosetVector v(h);
    v.add_at(g, 1.0);
    return v;
  }

  const Subgroup& subgroup() const { return h_; }

  const std::map<Element, std::complex<double>, ElementLess>& coefficients()
      const {
    return c_;
  }

  /// Adds c to the coefficient of the coset [g].
  void add_at(const Element& g, std::complex<double> c) {
    add_rep(h_.coset_representative(g), c);
  }

  void scale(std::complex<double> s) {
    for (auto it = c_.begin(); it != c_.end();) {
      it->second *= s;
      if (it->second == 0.0)
        it = c_.erase(it);
      else
        ++it;
    }
  }

  double norm2() const {
    double n = 0;
    for (const auto& [k, v] : c_) n += std::norm(v);
    return n;
  }

  double norm() const { return std::sqrt(norm2()); }

  friend bool operator==(const CosetVector& a, const CosetVector& b) {
    return a.c_ == b.c_;
  }

  /// Internal accumulate at an already-canonical key.
  void add_rep(Element rep, std::complex<double> c) {
    auto [it, fresh] = c_.try_emplace(std::move(rep), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0.0) c_.erase(it);
    } else if (c == 0.0) {
      c_.erase(it);
    }
  }

private:
  Subgroup h_;
  std::map<Element, std::complex<double>, ElementLess> c_;
};

inline void require_same_subgroup(const CosetVector& a, const CosetVector& b) {
  if (!(a.subgroup() == b.subgroup()))
    throw BackendMismatchError("coset vectors are over different subgroups");
}

/// Quasi-regular action: relabels [x] to [g·x], carrying coefficients.
/// Unitary at the support level (the coefficient multiset is preserved).
inline CosetVector apply_pi(const Element& g, const CosetVector& v) {
  const Subgroup& h = v.subgroup();
  h.group().check_member(g);
  CosetVector out(h);
  for (const auto& [rep, c] : v.coefficients())
    out.add_rep(h.coset_representative(h.group().mul(g, rep)), c);
  return out;
}

/// ℓ² pairing, linear in the first argument and conjugated in the second.
inline std::complex<double> inner(const CosetVector& v, const CosetVector& w) {
  require_same_subgroup(v, w);
  std::complex<double> s = 0;
  for (const auto& [rep, c] : v.coefficients()) {
    auto it = w.coefficients().find(rep);
    if (it != w.coefficients().end()) s += c * std::conj(it->second);
  }
  return s;
}

inline double distance(const CosetVector& v, const CosetVector& w) {
  require_same_subgroup(v, w);
  double n = 0;
  auto& a = v.coefficients();
  auto& b = w.coefficients();
  for (const auto& [rep, c] : a) {
    auto it = b.find(rep);
    n += std::norm(it == b.end() ? c : c - it->second);
  }
  for (const auto& [rep, c] : b)
    if (!a.count(rep)) n += std::norm(c);
  return std::sqrt(n);
}

/// ξ = Σ_{g∈F} δ_[g]; sharing a coset accumulates multiplicity.
inline CosetVector delta_sum(const std::vector<Element>& f,
                             const Subgroup& h) {
  if (f.empty()) throw PreconditionError("delta_sum needs a nonempty family");
  CosetVector v(h);
  for (const auto& g : f) v.add_at(g, 1.0);
  return v;
}

/// (1/|hs|) Σ π(h)v. With hs = all of a finite H this is the orthogonal
/// projection onto the invariant vectors.
inline CosetVector average_over(const CosetVector& v,
                                const std::vector<Element>& hs) {
  if (hs.empty()) throw PreconditionError("average needs a nonempty list");
  for (const auto& x : hs)
    if (!v.subgroup().contains(x))
      throw PreconditionError("averaging element outside the subgroup: " +
                              v.subgroup().group().print(x));
  CosetVector acc(v.subgroup());
  for (const auto& x : hs) {
    CosetVector t = apply_pi(x, v);
    for (const auto& [rep, c] : t.coefficients()) acc.add_rep(rep, c);
  }
  acc.scale(1.0 / static_cast<double>(hs.size()));
  return acc;
}

/// Generator invariance suffices: π(s)v = v for every generator s of H.
inline bool is_invariant(const CosetVector& v, double tol = 1e-9) {
  for (const auto& s : v.subgroup().generators())
    if (distance(apply_pi(s, v), v) > tol) return false;
  return true;
}

/// Unit-norm invariant indicator of the H-orbit of [g], when that orbit is
/// finite within the budget.
inline std::optional<CosetVector> finite_orbit_invariant(
    const Element& g, const Subgroup& h, std::uint64_t budget = 10000) {
  OrbitResult orb = h_orbit(g, h, budget);
  if (orb.status != OrbitStatus::Finite) return std::nullopt;
  CosetVector v(h);
  const double c = 1.0 / std::sqrt(static_cast<double>(orb.cosets.size()));
  for (const auto& coset : orb.cosets) v.add_rep(coset.representative, c);
  return v;
}

struct ConditionWitness {
  bool holds = false;
  std::optional<CosetVector> witness;
};

/// Finite-group test of "every H-invariant vector lives over K": the
/// invariant vectors are spanned by H-orbit indicators, so the condition
/// fails exactly on an orbit leaving K/H, whose indicator is the witness.
inline ConditionWitness check_condition5(const Subgroup& h,
                                         const Subgroup& k) {
  require_nested(h, k);
  const Group& g = h.group();
  if (!g.is_finite_family())
    throw PreconditionError("the invariant-vector check requires a finite group");
  std::vector<Element> reps;
  {
    std::set<Element, ElementLess> seen;
    for (const auto& x : g.elements()) {
      Element r = h.coset_representative(x);
      if (seen.insert(r).second) reps.push_back(std::move(r));
    }
  }
  const std::uint64_t budget = g.order();
  std::set<Element, ElementLess> visited;
  for (const auto& r : reps) {
    if (visited.count(r)) continue;
    OrbitResult orb = h_orbit(r, h, budget);
    bool inside = true;
    for (const auto& c : orb.cosets) {
      visited.insert(c.representative);
      inside = inside && k.contains(c.representative);
    }
    if (!inside) {
      CosetVector w(h);
      const double c = 1.0 / std::sqrt(static_cast<double>(orb.cosets.size()));
      for (const auto& coset : orb.cosets) w.add_rep(coset.representative, c);
      return ConditionWitness{false, std::move(w)};
    }
  }
  return ConditionWitness{true, std::nullopt};
}

/// Finite-group test of "every H-compact vector lives over K". On a finite
/// group every vector is H-compact, so this holds exactly when K = G; the
/// witness is δ_[g] for the first g outside K.
inline ConditionWitness check_condition4(const Subgroup& h,
                                         const Subgroup& k) {
  require_nested(h, k);
  const Group& g = h.group();
  if (!g.is_finite_family())
    throw PreconditionError("the compact-vector check requires a finite group");
  for (const auto& x : g.elements())
    if (!k.contains(x))
      return ConditionWitness{false, CosetVector::delta(x, h)};
  return ConditionWitness{true, std::nullopt};
}

/// Special case K = H: the invariant vectors reduce to multiples of δ_[e]
/// exactly when the pair condition holds with K = H.
inline ConditionWitness invariant_vectors_trivial(const Subgroup& h) {
  return check_condition5(h, h);
}

}  // namespace qncert
