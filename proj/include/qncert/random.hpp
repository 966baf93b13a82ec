#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qncert/element.hpp"
#include "qncert/errors.hpp"

namespace qncert {

/// Reproducible random source. Only the raw mt19937_64 stream is used
/// (that engine's output sequence is pinned by the standard); all value
/// shaping is done here so results are identical across toolchains.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, 1), 53 bits.
  double unit_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw PreconditionError("below(0)");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    while (true) {
      const std::uint64_t v = next();
      if (v < limit) return v % n;
    }
  }

  /// Standard normal via Box-Muller on the raw stream.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = unit_double();
    while (u1 == 0.0) u1 = unit_double();
    const double u2 = unit_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::complex<double> complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0;
};

/// Spherically symmetric complex unit vector of the given dimension.
inline std::vector<std::complex<double>> random_unit_vector(Rng& rng,
                                                            std::size_t dim) {
  if (dim == 0) throw PreconditionError("unit vector needs dimension >= 1");
  std::vector<std::complex<double>> v(dim);
  double n2 = 0;
  do {
    n2 = 0;
    for (auto& c : v) {
      c = rng.complex_gaussian();
      n2 += std::norm(c);
    }
  } while (n2 == 0.0);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : v) c *= inv;
  return v;
}

/// Uniformly random reduced word of exactly the given length.
inline FreeWord random_reduced_word(Rng& rng, int rank, int length) {
  if (rank < 1) throw PreconditionError("rank must be >= 1");
  FreeWord w;
  for (int i = 0; i < length; ++i) {
    while (true) {
      const std::uint64_t pick = rng.below(2 * static_cast<std::uint64_t>(rank));
      const int idx = static_cast<int>(pick / 2) + 1;
      const std::int32_t letter = (pick % 2 == 0) ? idx : -idx;
      if (!w.letters.empty() && w.letters.back() == -letter) continue;
      w.letters.push_back(letter);
      break;
    }
  }
  return w;
}

/// Fisher-Yates shuffle driven by this file's Rng, so shuffled orders are
/// reproducible everywhere.
template <typename T>
void shuffle(Rng& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace qncert
