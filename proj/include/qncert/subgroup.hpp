#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "qncert/element.hpp"
#include "qncert/errors.hpp"
#include "qncert/group.hpp"
#include "qncert/stallings.hpp"

namespace qncert {
namespace detail {

inline std::int64_t chk_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error("integer overflow in lattice arithmetic");
  return r;
}

inline std::int64_t chk_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Error("integer overflow in lattice arithmetic");
  return r;
}

/// Floor division for b > 0.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

/// Integer lattice in row Hermite normal form: pivot columns strictly
/// increase, pivots are positive, entries above a pivot lie in [0, pivot).
struct Lattice {
  int n = 0;
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<int> pivot_col;

  static void submul(std::vector<std::int64_t>& x,
                     const std::vector<std::int64_t>& y, std::int64_t q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = chk_sub(x[i], chk_mul(q, y[i]));
  }

  static Lattice from_generators(int n,
                                 std::vector<std::vector<std::int64_t>> gens) {
    Lattice L;
    L.n = n;
    std::vector<std::vector<std::int64_t>> work;
    for (auto& g : gens) {
      bool zero = true;
      for (auto v : g) zero = zero && v == 0;
      if (!zero) work.push_back(std::move(g));
    }
    std::size_t r = 0;
    for (int col = 0; col < n && r < work.size(); ++col) {
      while (true) {
        std::size_t best = work.size();
        for (std::size_t i = r; i < work.size(); ++i) {
          if (work[i][col] == 0) continue;
          if (best == work.size() ||
              std::abs(work[i][col]) < std::abs(work[best][col]))
            best = i;
        }
        if (best == work.size()) break;
        std::swap(work[r], work[best]);
        bool leftover = false;
        for (std::size_t i = r + 1; i < work.size(); ++i) {
          if (work[i][col] == 0) continue;
          submul(work[i], work[r], work[i][col] / work[r][col]);
          leftover = leftover || work[i][col] != 0;
        }
        if (!leftover) break;
      }
      if (work[r][col] != 0) {
        if (work[r][col] < 0)
          for (auto& v : work[r]) v = chk_sub(0, v);
        for (std::size_t i = 0; i < r; ++i)
          submul(work[i], work[r], floor_div(work[i][col], work[r][col]));
        L.pivot_col.push_back(col);
        ++r;
      }
    }
    work.resize(r);
    L.rows = std::move(work);
    return L;
  }

  bool contains(std::vector<std::int64_t> v) const {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const int c = pivot_col[k];
      if (v[c] % rows[k][c] != 0) return false;
      submul(v, rows[k], v[c] / rows[k][c]);
    }
    for (auto x : v)
      if (x != 0) return false;
    return true;
  }

  /// Canonical coset representative: constant on v + L, congruent to v.
  std::vector<std::int64_t> residue(std::vector<std::int64_t> v) const {
    for (std::size_t k = 0; k < rows.size(); ++k)
      submul(v, rows[k], floor_div(v[pivot_col[k]], rows[k][pivot_col[k]]));
    return v;
  }

  friend bool operator==(const Lattice&, const Lattice&) = default;
};

}  // namespace detail

/// Finitely generated subgroup with an exact membership oracle. The backend
/// depends on the ambient family: folded automaton (free), enumerated
/// element set (finite permutation), exponent lattice (fg-abelian).
/// Immutable and cheap to copy.
class Subgroup {
public:
  static Subgroup generated(const Group& g, std::vector<Element> gens) {
    if (gens.empty()) gens.push_back(g.identity());
    for (const auto& x : gens) g.check_member(x);
    Subgroup s;
    s.group_ = g;
    s.gens_ = std::move(gens);
    switch (g.family()) {
      case Family::Free: {
        std::vector<FreeWord> ws;
        for (const auto& x : s.gens_) ws.push_back(x.word());
        s.autom_ = std::make_shared<const FoldedAutomaton>(
            FoldedAutomaton::from_generators(g.rank(), ws));
        break;
      }
      case Family::Permutation: {
        std::vector<Element> closure = g.ball_closure(s.gens_);
        auto eset = std::make_shared<std::set<Element, ElementLess>>(
            closure.begin(), closure.end());
        auto elems = std::make_shared<std::vector<Element>>(eset->begin(),
                                                            eset->end());
        s.eset_ = std::move(eset);
        s.elems_ = std::move(elems);
        break;
      }
      case Family::Abelian: {
        std::vector<std::vector<std::int64_t>> vs;
        for (const auto& x : s.gens_) vs.push_back(x.exps().e);
        s.lat_ = std::make_shared<const detail::Lattice>(
            detail::Lattice::from_generators(g.rank(), std::move(vs)));
        break;
      }
    }
    return s;
  }

  const Group& group() const { return group_; }
  const std::vector<Element>& generators() const { return gens_; }

  bool contains(const Element& x) const {
    group_.check_member(x);
    switch (group_.family()) {
      case Family::Free:
        return autom_->accepts(x.word().letters);
      case Family::Permutation:
        return eset_->count(x) > 0;
      case Family::Abelian:
        return lat_->contains(x.exps().e);
    }
    throw Error("unreachable");
  }

  bool is_trivial() const {
    switch (group_.family()) {
      case Family::Free:
        return autom_->vertex_count() == 1 && autom_->basis().empty();
      case Family::Permutation:
        return elems_->size() == 1;
      case Family::Abelian:
        return lat_->rows.empty();
    }
    throw Error("unreachable");
  }

  /// Elements of the subgroup in canonical order (finite backend only).
  const std::vector<Element>& elements() const {
    if (!elems_)
      throw PreconditionError("element enumeration requires a finite backend");
    return *elems_;
  }

  std::uint64_t order() const { return elements().size(); }

  const FoldedAutomaton& automaton() const {
    if (!autom_)
      throw BackendMismatchError("operation requires a free ambient group");
    return *autom_;
  }

  /// Canonical representative of the left coset x·H: the least coset
  /// element under the canonical element order (free backend: the
  /// length-lex-least reduced word of the coset).
  Element coset_representative(const Element& x) const {
    group_.check_member(x);
    switch (group_.family()) {
      case Family::Free: {
        const Element xi = group_.inverse(x);
        const auto& w = xi.word().letters;
        auto [v, read] = autom_->walk(w);
        std::vector<std::int32_t> rep;
        for (std::size_t i = w.size(); i > read; --i) rep.push_back(-w[i - 1]);
        for (std::int32_t l : autom_->least_geodesic_to_base(v))
          rep.push_back(l);
        return Element(FreeWord{free_reduce(rep)});
      }
      case Family::Permutation: {
        Element best = group_.mul(x, (*elems_)[0]);
        for (std::size_t i = 1; i < elems_->size(); ++i) {
          Element y = group_.mul(x, (*elems_)[i]);
          if (Element::compare(y, best) < 0) best = std::move(y);
        }
        return best;
      }
      case Family::Abelian:
        return Element(ExpVec{lat_->residue(x.exps().e)});
    }
    throw Error("unreachable");
  }

  Subgroup conjugated_by(const Element& g) const {
    group_.check_member(g);
    const Element gi = group_.inverse(g);
    std::vector<Element> cg;
    for (const auto& h : gens_) cg.push_back(group_.mul(group_.mul(g, h), gi));
    return generated(group_, std::move(cg));
  }

  /// Intersection of two subgroups of the same free group, via the fiber
  /// product of their automata.
  static Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    if (a.group_.family() != Family::Free || !a.group_.same(b.group_))
      throw BackendMismatchError(
          "subgroup intersection requires one common free ambient group");
    auto fp = std::make_shared<const FoldedAutomaton>(
        FoldedAutomaton::fiber_product(*a.autom_, *b.autom_));
    Subgroup s;
    s.group_ = a.group_;
    for (const auto& w : fp->basis()) s.gens_.push_back(Element(w));
    if (s.gens_.empty()) s.gens_.push_back(a.group_.identity());
    s.autom_ = std::move(fp);
    return s;
  }

  /// Index [sup : sub] for subgroups of a free group; nullopt = infinite.
  /// Rewrites sub's generators in a free basis of sup and reads the index
  /// off completeness of the rewritten subgroup's automaton.
  static std::optional<std::uint64_t> index_in(const Subgroup& sub,
                                               const Subgroup& sup) {
    if (sub.group_.family() != Family::Free || !sub.group_.same(sup.group_))
      throw BackendMismatchError(
          "index computation requires one common free ambient group");
    for (const auto& w : sub.gens_)
      if (!sup.contains(w))
        throw PreconditionError("not a subgroup: generator " +
                                sub.group_.print(w) +
                                " lies outside the claimed supergroup");
    const std::vector<FreeWord> basis = sup.autom_->basis();
    std::vector<FreeWord> rewritten;
    for (const auto& w : sub.gens_) {
      FreeWord rw = sup.autom_->rewrite_in_basis(w.word().letters);
      if (!rw.letters.empty()) rewritten.push_back(std::move(rw));
    }
    const FoldedAutomaton a = FoldedAutomaton::from_generators(
        static_cast<int>(basis.size()), rewritten);
    if (!a.is_complete()) return std::nullopt;
    return static_cast<std::uint64_t>(a.vertex_count());
  }

  /// Backend equality: same subgroup regardless of the generating sets.
  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    if (!a.group_.same(b.group_)) return false;
    switch (a.group_.family()) {
      case Family::Free:
        return *a.autom_ == *b.autom_;
      case Family::Permutation:
        return *a.elems_ == *b.elems_;
      case Family::Abelian:
        return *a.lat_ == *b.lat_;
    }
    return false;
  }

private:
  Subgroup() = default;

  Group group_;
  std::vector<Element> gens_;
  std::shared_ptr<const FoldedAutomaton> autom_;
  std::shared_ptr<const std::vector<Element>> elems_;
  std::shared_ptr<const std::set<Element, ElementLess>> eset_;
  std::shared_ptr<const detail::Lattice> lat_;
};

}  // namespace qncert
