#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qncert/element.hpp"
#include "qncert/errors.hpp"
#include "qncert/random.hpp"

namespace qncert {
namespace {

TEST(Random, SameSeedSameStream) {
  Rng a(12345);
  Rng b(12345);
  for (int i = 0; i < 64; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(Random, DifferentSeedsDiverge) {
  Rng a(1);
  Rng b(2);
  bool differ = false;
  for (int i = 0; i < 64; ++i) differ = differ || (a.next() != b.next());
  EXPECT_TRUE(differ);
}

TEST(Random, UnitDoubleStaysInHalfOpenInterval) {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.unit_double();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Random, BelowStaysInRange) {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(17), 17u);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(rng.below(1), 0u);
  EXPECT_THROW(rng.below(0), PreconditionError);
}

TEST(Random, GaussianIsReproducibleAndCentered) {
  Rng a(31);
  Rng b(31);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.gaussian(), b.gaussian());

  Rng rng(33);
  double sum = 0;
  double sum2 = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.gaussian();
    sum += x;
    sum2 += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.05);
  EXPECT_NEAR(sum2 / n, 1.0, 0.1);
}

TEST(Random, ComplexGaussianPairsTwoDraws) {
  Rng a(37);
  Rng b(37);
  const std::complex<double> c = a.complex_gaussian();
  const double re = b.gaussian();
  const double im = b.gaussian();
  EXPECT_EQ(c, std::complex<double>(re, im));
}

TEST(Random, UnitVectorHasUnitNorm) {
  Rng rng(39);
  for (const std::size_t dim : {1u, 2u, 6u, 50u}) {
    const auto v = random_unit_vector(rng, dim);
    ASSERT_EQ(v.size(), dim);
    double n2 = 0;
    for (const auto& c : v) n2 += std::norm(c);
    EXPECT_NEAR(n2, 1.0, 1e-12);
  }
  EXPECT_THROW(random_unit_vector(rng, 0), PreconditionError);

  Rng a(40);
  Rng b(40);
  EXPECT_EQ(random_unit_vector(a, 5), random_unit_vector(b, 5));
}

TEST(Random, ReducedWordsAreReduced) {
  Rng rng(43);
  for (int i = 0; i < 500; ++i) {
    const int len = static_cast<int>(rng.below(9));
    const FreeWord w = random_reduced_word(rng, 3, len);
    ASSERT_EQ(w.letters.size(), static_cast<std::size_t>(len));
    for (const auto l : w.letters) {
      EXPECT_NE(l, 0);
      EXPECT_LE(std::abs(l), 3);
    }
    for (std::size_t j = 1; j < w.letters.size(); ++j)
      EXPECT_NE(w.letters[j], -w.letters[j - 1]);
  }
  EXPECT_THROW(random_reduced_word(rng, 0, 3), PreconditionError);

  Rng a(44);
  Rng b(44);
  EXPECT_EQ(random_reduced_word(a, 2, 8), random_reduced_word(b, 2, 8));
}

TEST(Random, ShufflePermutesAndReproduces) {
  std::vector<int> v{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<int> w = v;
  Rng a(51);
  Rng b(51);
  shuffle(a, v);
  shuffle(b, w);
  EXPECT_EQ(v, w);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, std::vector<int>({1, 2, 3, 4, 5, 6, 7, 8}));

  std::vector<int> tiny{42};
  shuffle(a, tiny);
  EXPECT_EQ(tiny, std::vector<int>({42}));
  std::vector<int> empty;
  shuffle(a, empty);
  EXPECT_TRUE(empty.empty());
}

}  // namespace
}  // namespace qncert
