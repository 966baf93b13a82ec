#pragma once

#include <compare>
#include <cstdint>
#include <variant>
#include <vector>

namespace qncert {

/// Freely reduced word over a free basis. Letters are nonzero integers:
/// +i stands for the i-th generator (1-based), -i for its inverse.
/// Adjacent cancelling pairs never occur.
struct FreeWord {
  std::vector<std::int32_t> letters;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
};

/// Permutation as an image array on 0-based points: img[x] is the image of x.
struct PermImages {
  std::vector<std::int32_t> img;

  friend bool operator==(const PermImages&, const PermImages&) = default;
};

/// Element of a finitely generated free abelian group: exponent vector
/// over the generator basis.
struct ExpVec {
  std::vector<std::int64_t> e;

  friend bool operator==(const ExpVec&, const ExpVec&) = default;
};

/// Letter token used for deterministic orderings: generators and their
/// inverses interleave as a < a^-1 < b < b^-1 < ...
inline int letter_token(std::int32_t letter) {
  const int idx = letter > 0 ? letter - 1 : -letter - 1;
  return 2 * idx + (letter < 0 ? 1 : 0);
}

/// Normal form of a group element of one concrete backend.
/// Equality of elements is exactly equality of normal forms.
class Element {
public:
  Element() = default;
  explicit Element(FreeWord w) : rep_(std::move(w)) {}
  explicit Element(PermImages p) : rep_(std::move(p)) {}
  explicit Element(ExpVec v) : rep_(std::move(v)) {}

  bool is_free() const { return std::holds_alternative<FreeWord>(rep_); }
  bool is_perm() const { return std::holds_alternative<PermImages>(rep_); }
  bool is_abelian() const { return std::holds_alternative<ExpVec>(rep_); }

  const FreeWord& word() const { return std::get<FreeWord>(rep_); }
  const PermImages& perm() const { return std::get<PermImages>(rep_); }
  const ExpVec& exps() const { return std::get<ExpVec>(rep_); }

  friend bool operator==(const Element&, const Element&) = default;

  /// Canonical total order. Free words compare by (length, letter tokens);
  /// permutations by image array; abelian elements by exponent vector.
  /// Used for all deterministic enumeration and container keys.
  static int compare(const Element& a, const Element& b) {
    if (a.rep_.index() != b.rep_.index())
      return a.rep_.index() < b.rep_.index() ? -1 : 1;
    if (a.is_free()) {
      const auto& x = a.word().letters;
      const auto& y = b.word().letters;
      if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const int tx = letter_token(x[i]);
        const int ty = letter_token(y[i]);
        if (tx != ty) return tx < ty ? -1 : 1;
      }
      return 0;
    }
    if (a.is_perm()) return three_way(a.perm().img, b.perm().img);
    return three_way(a.exps().e, b.exps().e);
  }

private:
  template <class V>
  static int three_way(const V& x, const V& y) {
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
    return 0;
  }

  std::variant<FreeWord, PermImages, ExpVec> rep_;
};

struct ElementLess {
  bool operator()(const Element& a, const Element& b) const {
    return Element::compare(a, b) < 0;
  }
};

/// Free reduction of a letter sequence (cancels adjacent inverse pairs).
inline std::vector<std::int32_t> free_reduce(
    const std::vector<std::int32_t>& letters) {
  std::vector<std::int32_t> out;
  out.reserve(letters.size());
  for (std::int32_t l : letters) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

}  // namespace qncert
