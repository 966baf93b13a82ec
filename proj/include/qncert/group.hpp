#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qncert/element.hpp"
#include "qncert/errors.hpp"

namespace qncert {

enum class Family { Free, Permutation, Abelian };

/// Description of a concrete ambient group. Permutation groups are given by
/// generating permutations on {1..degree}; free and free-abelian groups by
/// their rank. Generator names are single lowercase letters assigned in
/// order, skipping 'e' which is reserved for the identity in word notation.
struct GroupSpec {
  Family family = Family::Free;
  int rank = 0;    // free / abelian
  int degree = 0;  // permutation
  std::vector<PermImages> perm_gens;
  std::vector<char> gen_names;
};

inline std::vector<char> default_generator_names(int count) {
  std::vector<char> names;
  for (char c = 'a'; c <= 'z' && static_cast<int>(names.size()) < count; ++c) {
    if (c == 'e') continue;  // "e" spells the identity
    names.push_back(c);
  }
  if (static_cast<int>(names.size()) < count)
    throw Error("too many generators for single-letter naming");
  return names;
}

/// Immutable handle to a concrete group backend. Cheap to copy; all
/// operations are const and safe to call concurrently.
class Group {
public:
  Group() = default;

  static Group free_group(int rank) {
    if (rank < 1) throw PreconditionError("free rank must be >= 1");
    GroupSpec s;
    s.family = Family::Free;
    s.rank = rank;
    s.gen_names = default_generator_names(rank);
    return Group(std::move(s));
  }

  static Group abelian_group(int rank) {
    if (rank < 1) throw PreconditionError("abelian rank must be >= 1");
    GroupSpec s;
    s.family = Family::Abelian;
    s.rank = rank;
    s.gen_names = default_generator_names(rank);
    return Group(std::move(s));
  }

  static Group permutation_group(int degree,
                                 std::vector<std::vector<int>> generators) {
    if (degree < 1) throw PreconditionError("permutation degree must be >= 1");
    GroupSpec s;
    s.family = Family::Permutation;
    s.degree = degree;
    for (const auto& g : generators) {
      PermImages p;
      p.img.assign(g.begin(), g.end());
      check_bijection(p, degree);
      s.perm_gens.push_back(std::move(p));
    }
    s.gen_names = default_generator_names(
        static_cast<int>(s.perm_gens.size()));
    return Group(std::move(s));
  }

  Family family() const { return spec_->family; }
  int rank() const { return spec_->rank; }
  int degree() const { return spec_->degree; }
  const GroupSpec& spec() const { return *spec_; }
  bool is_finite_family() const { return spec_->family == Family::Permutation; }

  bool same(const Group& other) const {
    if (spec_ == other.spec_) return true;
    const GroupSpec& a = *spec_;
    const GroupSpec& b = *other.spec_;
    return a.family == b.family && a.rank == b.rank && a.degree == b.degree &&
           a.perm_gens == b.perm_gens;
  }

  Element identity() const {
    switch (spec_->family) {
      case Family::Free:
        return Element(FreeWord{});
      case Family::Abelian:
        return Element(ExpVec{std::vector<std::int64_t>(spec_->rank, 0)});
      case Family::Permutation: {
        PermImages p;
        p.img.resize(spec_->degree);
        for (int i = 0; i < spec_->degree; ++i) p.img[i] = i;
        return Element(std::move(p));
      }
    }
    throw Error("unreachable");
  }

  /// The spec's own generators as elements (free/abelian: basis letters;
  /// permutation: the generating permutations).
  std::vector<Element> generators() const {
    std::vector<Element> out;
    switch (spec_->family) {
      case Family::Free:
        for (int i = 1; i <= spec_->rank; ++i)
          out.push_back(Element(FreeWord{{i}}));
        break;
      case Family::Abelian:
        for (int i = 0; i < spec_->rank; ++i) {
          ExpVec v{std::vector<std::int64_t>(spec_->rank, 0)};
          v.e[i] = 1;
          out.push_back(Element(std::move(v)));
        }
        break;
      case Family::Permutation:
        for (const auto& p : spec_->perm_gens) out.push_back(Element(p));
        break;
    }
    return out;
  }

  Element mul(const Element& a, const Element& b) const {
    check_member(a);
    check_member(b);
    switch (spec_->family) {
      case Family::Free: {
        std::vector<std::int32_t> cat = a.word().letters;
        for (std::int32_t l : b.word().letters) {
          if (!cat.empty() && cat.back() == -l)
            cat.pop_back();
          else
            cat.push_back(l);
        }
        return Element(FreeWord{std::move(cat)});
      }
      case Family::Abelian: {
        ExpVec v = a.exps();
        for (std::size_t i = 0; i < v.e.size(); ++i) v.e[i] += b.exps().e[i];
        return Element(std::move(v));
      }
      case Family::Permutation: {
        // (a*b)(x) = a(b(x)): the right factor acts first, matching the
        // left-translation convention on coset spaces.
        const auto& pa = a.perm().img;
        const auto& pb = b.perm().img;
        PermImages r;
        r.img.resize(pa.size());
        for (std::size_t x = 0; x < pa.size(); ++x) r.img[x] = pa[pb[x]];
        return Element(std::move(r));
      }
    }
    throw Error("unreachable");
  }

  Element inverse(const Element& a) const {
    check_member(a);
    switch (spec_->family) {
      case Family::Free: {
        FreeWord w;
        w.letters.reserve(a.word().letters.size());
        for (auto it = a.word().letters.rbegin(); it != a.word().letters.rend();
             ++it)
          w.letters.push_back(-*it);
        return Element(std::move(w));
      }
      case Family::Abelian: {
        ExpVec v = a.exps();
        for (auto& x : v.e) x = -x;
        return Element(std::move(v));
      }
      case Family::Permutation: {
        const auto& p = a.perm().img;
        PermImages r;
        r.img.resize(p.size());
        for (std::size_t x = 0; x < p.size(); ++x) r.img[p[x]] = x;
        return Element(std::move(r));
      }
    }
    throw Error("unreachable");
  }

  Element power(const Element& a, std::int64_t k) const {
    Element base = k < 0 ? inverse(a) : a;
    std::int64_t n = k < 0 ? -k : k;
    Element acc = identity();
    for (std::int64_t i = 0; i < n; ++i) acc = mul(acc, base);
    return acc;
  }

  bool is_identity(const Element& a) const { return a == identity(); }

  /// Verifies `a` belongs to this backend; throws BackendMismatchError
  /// otherwise. Used as the entry check of every binary operation.
  void check_member(const Element& a) const {
    switch (spec_->family) {
      case Family::Free:
        if (!a.is_free())
          throw BackendMismatchError("element is not a free-group word");
        for (std::int32_t l : a.word().letters)
          if (l == 0 || l > spec_->rank || l < -spec_->rank)
            throw BackendMismatchError("letter outside free basis");
        return;
      case Family::Abelian:
        if (!a.is_abelian() ||
            a.exps().e.size() != static_cast<std::size_t>(spec_->rank))
          throw BackendMismatchError("element is not an exponent vector of this rank");
        return;
      case Family::Permutation:
        if (!a.is_perm() ||
            a.perm().img.size() != static_cast<std::size_t>(spec_->degree))
          throw BackendMismatchError("element is not a permutation of this degree");
        return;
    }
  }

  // ---- word notation ----

  /// Parses a word expression: terms separated by whitespace, each either a
  /// generator letter with optional ^exponent, a cycle "(p1 p2 ...)" for
  /// permutation backends, or "e" for the identity.
  Element parse(std::string_view text) const {
    std::size_t pos = 0;
    Element acc = identity();
    bool any = false;
    while (true) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
      if (pos == text.size()) break;
      any = true;
      const char c = text[pos];
      if (c == '(') {
        if (spec_->family != Family::Permutation)
          throw ParseError("cycle notation is only valid for permutation groups", pos);
        acc = mul(acc, parse_cycle(text, pos));
      } else if (c == 'e' && (pos + 1 == text.size() ||
                              is_term_boundary(text[pos + 1]))) {
        ++pos;  // identity term
      } else if (std::islower(static_cast<unsigned char>(c))) {
        const int gi = generator_index(c);
        if (gi < 0) throw ParseError(std::string("unknown generator symbol '") + c + "'", pos);
        ++pos;
        std::int64_t exp = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          exp = parse_int(text, pos);
        }
        acc = mul(acc, generator_power(gi, exp));
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
      }
    }
    if (!any) throw ParseError("empty word expression", 0);
    return acc;
  }

  /// Prints the normal form in the same notation parse() accepts;
  /// parse(print(x)) == x for every element.
  std::string print(const Element& a) const {
    check_member(a);
    switch (spec_->family) {
      case Family::Free: {
        const auto& ls = a.word().letters;
        if (ls.empty()) return "e";
        std::string out;
        std::size_t i = 0;
        while (i < ls.size()) {
          std::size_t j = i;
          while (j < ls.size() && ls[j] == ls[i]) ++j;
          const std::int64_t exp =
              static_cast<std::int64_t>(j - i) * (ls[i] > 0 ? 1 : -1);
          if (!out.empty()) out += ' ';
          out += spec_->gen_names[std::abs(ls[i]) - 1];
          if (exp != 1) out += "^" + std::to_string(exp);
          i = j;
        }
        return out;
      }
      case Family::Abelian: {
        std::string out;
        for (std::size_t i = 0; i < a.exps().e.size(); ++i) {
          const std::int64_t exp = a.exps().e[i];
          if (exp == 0) continue;
          if (!out.empty()) out += ' ';
          out += spec_->gen_names[i];
          if (exp != 1) out += "^" + std::to_string(exp);
        }
        return out.empty() ? "e" : out;
      }
      case Family::Permutation: {
        const auto& img = a.perm().img;
        std::string out;
        std::vector<bool> seen(img.size(), false);
        for (std::size_t s = 0; s < img.size(); ++s) {
          if (seen[s] || img[s] == static_cast<std::int32_t>(s)) continue;
          if (!out.empty()) out += ' ';
          out += '(';
          std::size_t x = s;
          bool first = true;
          while (!seen[x]) {
            seen[x] = true;
            if (!first) out += ' ';
            out += std::to_string(x + 1);
            first = false;
            x = static_cast<std::size_t>(img[x]);
          }
          out += ')';
        }
        return out.empty() ? "e" : out;
      }
    }
    throw Error("unreachable");
  }

  // ---- enumeration ----

  /// All distinct elements expressible as products of at most `radius`
  /// factors from `gens` and their inverses, ordered by (factor count at
  /// first discovery, then canonical element order). Deterministic.
  std::vector<Element> ball(std::span<const Element> gens, int radius) const {
    if (radius < 0) throw PreconditionError("ball radius must be >= 0");
    std::vector<Element> steps;
    for (const auto& g : gens) {
      check_member(g);
      steps.push_back(g);
      Element gi = inverse(g);
      if (gi != g) steps.push_back(gi);
    }
    std::set<Element, ElementLess> seen;
    std::vector<Element> out;
    std::vector<Element> frontier{identity()};
    seen.insert(identity());
    out.push_back(identity());
    for (int r = 0; r < radius && !frontier.empty(); ++r) {
      std::set<Element, ElementLess> next;
      for (const auto& x : frontier)
        for (const auto& s : steps) {
          Element y = mul(x, s);
          if (!seen.count(y)) next.insert(std::move(y));
        }
      frontier.assign(next.begin(), next.end());
      for (const auto& y : frontier) {
        seen.insert(y);
        out.push_back(y);
      }
    }
    return out;
  }

  /// Ball enumeration continued until it stabilizes; the underlying group
  /// generated by `gens` must be finite or this will not terminate.
  std::vector<Element> ball_closure(std::span<const Element> gens) const {
    std::vector<Element> prev;
    int radius = 1;
    while (true) {
      std::vector<Element> cur = ball(gens, radius);
      if (cur.size() == prev.size()) return cur;
      prev = std::move(cur);
      ++radius;
    }
  }

  /// All elements of a finite ambient group (closure of the spec generators)
  /// in ball order. Throws for infinite families.
  std::vector<Element> elements() const {
    if (!is_finite_family())
      throw PreconditionError("element enumeration requires a finite group");
    std::vector<Element> gens = generators();
    return ball_closure(gens);
  }

  std::size_t order() const { return elements().size(); }

  int generator_index(char name) const {
    for (std::size_t i = 0; i < spec_->gen_names.size(); ++i)
      if (spec_->gen_names[i] == name) return static_cast<int>(i);
    return -1;
  }

private:
  explicit Group(GroupSpec s) : spec_(std::make_shared<const GroupSpec>(std::move(s))) {}

  static bool is_term_boundary(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(';
  }

  static void check_bijection(const PermImages& p, int degree) {
    if (p.img.size() != static_cast<std::size_t>(degree))
      throw PreconditionError("permutation image array has wrong length");
    std::vector<bool> hit(degree, false);
    for (std::int32_t v : p.img) {
      if (v < 0 || v >= degree || hit[v])
        throw PreconditionError("image array is not a bijection");
      hit[v] = true;
    }
  }

  Element generator_power(int gi, std::int64_t exp) const {
    switch (spec_->family) {
      case Family::Free: {
        FreeWord w;
        const std::int32_t l = exp >= 0 ? gi + 1 : -(gi + 1);
        for (std::int64_t i = 0; i < (exp < 0 ? -exp : exp); ++i)
          w.letters.push_back(l);
        return Element(std::move(w));
      }
      case Family::Abelian: {
        ExpVec v{std::vector<std::int64_t>(spec_->rank, 0)};
        v.e[gi] = exp;
        return Element(std::move(v));
      }
      case Family::Permutation:
        return power(Element(spec_->perm_gens[gi]), exp);
    }
    throw Error("unreachable");
  }

  static std::int64_t parse_int(std::string_view text, std::size_t& pos) {
    const std::size_t start = pos;
    bool neg = false;
    if (pos < text.size() && text[pos] == '-') {
      neg = true;
      ++pos;
    }
    if (pos == text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError("malformed exponent", start);
    std::int64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      ++pos;
    }
    return neg ? -v : v;
  }

  Element parse_cycle(std::string_view text, std::size_t& pos) const {
    const std::size_t open = pos;
    ++pos;  // '('
    std::vector<int> points;
    while (true) {
      while (pos < text.size() &&
             (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
        ++pos;
      if (pos == text.size()) throw ParseError("unterminated cycle", open);
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos])))
        throw ParseError("expected point number in cycle", pos);
      std::int64_t p = parse_int(text, pos);
      if (p < 1 || p > spec_->degree)
        throw ParseError("cycle point out of range", pos - 1);
      points.push_back(static_cast<int>(p - 1));
    }
    PermImages r;
    r.img.resize(spec_->degree);
    for (int i = 0; i < spec_->degree; ++i) r.img[i] = i;
    std::vector<bool> used(spec_->degree, false);
    for (int p : points) {
      if (used[p]) throw ParseError("repeated point in cycle", open);
      used[p] = true;
    }
    if (points.size() >= 2) {
      for (std::size_t i = 0; i < points.size(); ++i)
        r.img[points[i]] = points[(i + 1) % points.size()];
    }
    return Element(std::move(r));
  }

  std::shared_ptr<const GroupSpec> spec_;
};

}  // namespace qncert
