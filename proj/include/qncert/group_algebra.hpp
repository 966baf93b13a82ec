#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qncert/element.hpp"
#include "qncert/errors.hpp"
#include "qncert/group.hpp"
#include "qncert/quasinormalizer.hpp"
#include "qncert/subgroup.hpp"

namespace qncert {

/// Finitely supported element of the group algebra: a complex coefficient
/// per normal-form group element, exact zeros pruned.
class AlgebraElement {
public:
  explicit AlgebraElement(Group g) : g_(std::move(g)) {}

  const Group& group() const { return g_; }

  const std::map<Element, std::complex<double>, ElementLess>& coefficients()
      const {
    return c_;
  }

  void add_at(const Element& x, std::complex<double> c) {
    g_.check_member(x);
    auto [it, fresh] = c_.try_emplace(x, c);
    if (!fresh) it->second += c;
    if (it->second == 0.0) c_.erase(it);
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

  std::complex<double> trace() const {
    auto it = c_.find(g_.identity());
    return it == c_.end() ? 0.0 : it->second;
  }

  std::vector<Element> support() const {
    std::vector<Element> out;
    for (const auto& [k, v] : c_) out.push_back(k);
    return out;
  }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.g_.same(b.g_) && a.c_ == b.c_;
  }

private:
  Group g_;
  std::map<Element, std::complex<double>, ElementLess> c_;
};

inline AlgebraElement lam(const Group& g, const Element& x) {
  AlgebraElement a(g);
  a.add_at(x, 1.0);
  return a;
}

inline AlgebraElement convolve(const AlgebraElement& x,
                               const AlgebraElement& y) {
  if (!x.group().same(y.group()))
    throw BackendMismatchError("convolution of mixed-group elements");
  AlgebraElement out(x.group());
  for (const auto& [k1, c1] : x.coefficients())
    for (const auto& [k2, c2] : y.coefficients())
      out.add_at(x.group().mul(k1, k2), c1 * c2);
  return out;
}

inline AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
  if (!x.group().same(y.group()))
    throw BackendMismatchError("sum of mixed-group elements");
  AlgebraElement out = x;
  for (const auto& [k, c] : y.coefficients()) out.add_at(k, c);
  return out;
}

/// Conditional expectation onto the subgroup algebra: restriction of the
/// coefficient support to S.
inline AlgebraElement e_sub(const AlgebraElement& x, const Subgroup& s) {
  if (!x.group().same(s.group()))
    throw BackendMismatchError("conditional expectation onto a foreign subgroup");
  AlgebraElement out(x.group());
  for (const auto& [k, c] : x.coefficients())
    if (s.contains(k)) out.add_at(k, c);
  return out;
}

/// x − E_K(x): the component orthogonal to the middle subalgebra.
inline AlgebraElement m_minus_en(const AlgebraElement& x, const Subgroup& k) {
  AlgebraElement out = x;
  const AlgebraElement en = e_sub(x, k);
  for (const auto& [key, c] : en.coefficients()) out.add_at(key, -c);
  return out;
}

inline void require_perp(const AlgebraElement& x, const Subgroup& k,
                         const char* name) {
  for (const auto& [key, c] : x.coefficients())
    if (k.contains(key))
      throw PreconditionError(std::string(name) +
                              " has a coefficient over K at " +
                              x.group().print(key));
}

/// Support-level witness test: supp(x)·h·supp(y) misses H entirely.
inline bool witness_supports_clear(const AlgebraElement& x,
                                   const AlgebraElement& y, const Element& h,
                                   const Subgroup& sub_h) {
  const Group& g = x.group();
  for (const auto& [s1, c1] : x.coefficients())
    for (const auto& [s2, c2] : y.coefficients())
      if (sub_h.contains(g.mul(g.mul(s1, h), s2))) return false;
  return true;
}

/// First h in the length-lex H-ball with supp(x)·h·supp(y) ∩ H = ∅. The
/// combinatorial clearance forces E_H(x·λ_h·y) = 0 exactly, which is
/// recomputed and asserted before returning.
inline std::optional<Element> wahp_witness(const AlgebraElement& x,
                                           const AlgebraElement& y,
                                           const Subgroup& h,
                                           const Subgroup& k, int radius) {
  require_perp(x, k, "x");
  require_perp(y, k, "y");
  for (const auto& cand : subgroup_candidates(h, radius)) {
    if (!witness_supports_clear(x, y, cand, h)) continue;
    const AlgebraElement rest =
        e_sub(convolve(convolve(x, lam(x.group(), cand)), y), h);
    if (!rest.coefficients().empty())
      throw Error("internal: support-clear witness failed exact recheck");
    return cand;
  }
  return std::nullopt;
}

/// Σ_{g'∈F} ‖E_H(λ_{g'} · u · λ_g)‖₂², evaluated term by term as
/// Σ over h ∈ supp(u) with g'·h·g ∈ H of |u(h)|².
inline double inequality_check(const std::vector<Element>& f,
                               const Element& g, const Subgroup& h,
                               const AlgebraElement& u) {
  const Group& grp = h.group();
  grp.check_member(g);
  for (const auto& [key, c] : u.coefficients())
    if (!h.contains(key))
      throw PreconditionError("u has support outside H at " + grp.print(key));
  if (std::abs(u.norm() - 1.0) > 1e-9)
    throw PreconditionError("u must be an l2 unit vector");
  double total = 0;
  for (const auto& gp : f)
    for (const auto& [key, c] : u.coefficients())
      if (h.contains(grp.mul(grp.mul(gp, key), g))) total += std::norm(c);
  return total;
}

struct DecayProbe {
  std::optional<Element> common_witness;
  double achieved = 0;
  std::optional<Element> best_h;
};

/// Searches one h making E_H(x·λ_h·y) vanish for every pair at once, via
/// the union-of-supports set F₀. Failing that, reports the smallest
/// achievable max-norm over the ball together with its h.
inline DecayProbe wahp_decay_probe(const std::vector<AlgebraElement>& xs,
                                   const std::vector<AlgebraElement>& ys,
                                   const Subgroup& h, const Subgroup& k,
                                   int radius) {
  if (xs.empty() || xs.size() != ys.size())
    throw PreconditionError("probe needs matched nonempty x/y lists");
  for (const auto& x : xs) require_perp(x, k, "x");
  for (const auto& y : ys) require_perp(y, k, "y");
  const Group& g = h.group();
  std::set<Element, ElementLess> f0;
  for (const auto& x : xs)
    for (const auto& [key, c] : x.coefficients()) f0.insert(key);
  for (const auto& y : ys)
    for (const auto& [key, c] : y.coefficients()) f0.insert(key);

  const std::vector<Element> candidates = subgroup_candidates(h, radius);
  for (const auto& cand : candidates) {
    bool clear = true;
    for (auto i = f0.begin(); i != f0.end() && clear; ++i)
      for (auto j = f0.begin(); j != f0.end(); ++j)
        if (h.contains(g.mul(g.mul(*i, cand), *j))) {
          clear = false;
          break;
        }
    if (clear) return DecayProbe{cand, 0.0, cand};
  }

  DecayProbe out;
  out.achieved = std::numeric_limits<double>::infinity();
  for (const auto& cand : candidates) {
    double worst = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const AlgebraElement rest =
          e_sub(convolve(convolve(xs[i], lam(g, cand)), ys[i]), h);
      worst = std::max(worst, rest.norm());
    }
    if (worst < out.achieved) {
      out.achieved = worst;
      out.best_h = cand;
    }
  }
  return out;
}

}  // namespace qncert
