#include <gtest/gtest.h>

#include <random>

#include "dzeta/field.hpp"
#include "oracles.hpp"

using namespace dzeta;

namespace {

FqElem random_elem(const FieldTower& K, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> digit(0, K.p() - 1);
  std::vector<std::uint32_t> c(K.degree());
  for (auto& x : c) x = digit(rng);
  return K.from_coeffs(c);
}

}  // namespace

TEST(Field, CanonicalModulusIsLexLeastIrreducible) {
  // degree 2 over F_3: x^2 + 1 is the first irreducible (low degree first)
  EXPECT_EQ(fp::canonical_modulus(3, 2), (FpPoly{1, 0, 1}));
  EXPECT_EQ(fp::canonical_modulus(2, 3), (FpPoly{1, 0, 1, 1}));  // 1 + x^2 + x^3 precedes 1 + x + x^3
  for (std::size_t n : {1, 2, 3, 4, 5, 6}) EXPECT_TRUE(fp::is_irreducible(fp::canonical_modulus(3, n), 3));
}

TEST(Field, RejectsBadParameters) {
  EXPECT_THROW(FieldTower::create(4, 1, 2), ConfigError);
  EXPECT_THROW(FieldTower::create(3, 1, 0), ConfigError);
  EXPECT_THROW(FieldTower::create(2, 1, 200), ConfigError);
  EXPECT_THROW(FieldTower::create(3, 1, 2, FpPoly{2, 0, 1}), ConfigError);  // x^2 + 2 = (x-1)(x+1)
}

TEST(Field, ArithmeticAxioms) {
  auto K = FieldTower::create(3, 2, 3);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const FqElem a = random_elem(*K, rng), b = random_elem(*K, rng), c = random_elem(*K, rng);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a - a, K->zero());
    if (!a.is_zero()) EXPECT_EQ(a * K->inverse(a), K->one());
  }
  EXPECT_THROW(K->inverse(K->zero()), std::exception);
}

TEST(Field, FrobeniusBasics) {
  auto K = FieldTower::create(3, 1, 2);
  const FqElem g = K->generator();
  EXPECT_EQ(K->frobenius(K->zero(), 5), K->zero());
  EXPECT_EQ(K->frobenius(g, 0), g);
  EXPECT_EQ(K->frobenius(g, 1), oracle::power(g, 3));
}

TEST(Field, FrobeniusMatchesRepeatedSquaring) {
  for (auto [p, m, M] : {std::tuple{2u, 1u, 7u}, {3u, 2u, 3u}, {5u, 1u, 4u}, {2u, 3u, 2u}}) {
    auto K = FieldTower::create(p, m, M);
    std::mt19937_64 rng(p * 100 + m * 10 + M);
    for (int k = 0; k < 20; ++k) {
      const FqElem x = random_elem(*K, rng);
      for (std::uint64_t e : {1, 2, 3}) EXPECT_EQ(K->frobenius(x, e), oracle::frob(x, e));
      EXPECT_EQ(K->frobenius(x, M), x);
      EXPECT_EQ(K->frobenius_p(x), oracle::power(x, p));
    }
  }
}

TEST(Field, SubfieldHasExactlyQElements) {
  for (auto [p, m, M] : {std::tuple{3u, 1u, 4u}, {3u, 2u, 2u}, {2u, 2u, 3u}, {2u, 1u, 6u}}) {
    auto K = FieldTower::create(p, m, M);
    std::size_t count = 0;
    for (const auto& x : oracle::all_elements(*K)) {
      const bool fixed = K->frobenius(x, 1) == x;
      EXPECT_EQ(fixed, K->in_subfield(x));
      EXPECT_EQ(fixed, K->fq_index(x).has_value());
      count += fixed;
    }
    EXPECT_EQ(count, K->q());
  }
}

TEST(Field, FqEnumerationRoundTrips) {
  auto K = FieldTower::create(2, 3, 2);
  for (std::uint64_t k = 0; k < K->q(); ++k) {
    EXPECT_TRUE(K->in_subfield(K->fq(k)));
    EXPECT_EQ(K->fq_index(K->fq(k)), k);
  }
  EXPECT_TRUE(K->fq(0).is_zero());
  EXPECT_TRUE(K->fq(1).is_one());
}

TEST(Field, KernelOverFqTrivialMaps) {
  auto K = FieldTower::create(3, 1, 1);
  FpMatrix id(3, 3, 3);
  for (int i = 0; i < 3; ++i) id(i, i) = 1;
  EXPECT_TRUE(kernel_over_fq(*K, id, 3).empty());
  EXPECT_EQ(kernel_over_fq(*K, FpMatrix(2, 2, 3), 2).size(), 2u);
}

TEST(Field, KernelMatchesEnumeration) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint32_t> digit(0, 2);
  for (int trial = 0; trial < 30; ++trial) {
    FpMatrix m(4, 4, 3);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = trial % 3 == 0 && r == 3 ? m(0, c) : digit(rng);
    const auto basis = kernel_fp(m);
    const auto all = oracle::kernel_by_enumeration(m);
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) size *= 3;
    EXPECT_EQ(size, all.size());
    EXPECT_EQ(basis.size() + m.rank(), 4u);
    for (const auto& v : basis)
      for (int r = 0; r < 4; ++r) {
        std::uint32_t s = 0;
        for (int c = 0; c < 4; ++c) s += m(r, c) * v[c];
        EXPECT_EQ(s % 3, 0u);
      }
  }
}

TEST(Field, SolveFp) {
  FpMatrix m(2, 3, 5);
  m(0, 0) = 1, m(0, 1) = 2, m(1, 2) = 3;
  const std::vector<std::uint32_t> w{4, 1};
  auto x = solve_fp(m, w);
  ASSERT_TRUE(x);
  EXPECT_EQ((m(0, 0) * (*x)[0] + m(0, 1) * (*x)[1]) % 5, 4u);
  EXPECT_EQ((m(1, 2) * (*x)[2]) % 5, 1u);
  FpMatrix z(1, 1, 5);
  EXPECT_FALSE(solve_fp(z, std::vector<std::uint32_t>{1}));
}

TEST(Field, FlattenRoundTrip) {
  auto K = FieldTower::create(3, 1, 4);
  std::mt19937_64 rng(3);
  std::vector<FqElem> v{random_elem(*K, rng), random_elem(*K, rng)};
  const auto flat = flatten(v);
  ASSERT_EQ(flat.size(), 8u);
  EXPECT_EQ(unflatten(*K, flat), v);
  EXPECT_EQ(flat[4], v[1].coeff(0));
}

TEST(Field, MatrixInverseAndDeterminant) {
  auto K = FieldTower::create(3, 1, 3);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a(*K, 3, 3), b(*K, 3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) a(r, c) = random_elem(*K, rng), b(r, c) = random_elem(*K, rng);
    EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b));
    auto inv = inverse(a);
    EXPECT_EQ(inv.has_value(), !determinant(a).is_zero());
    if (inv) EXPECT_TRUE((a * *inv).is_identity());
  }
  Matrix s(*K, 2, 2);
  s(0, 0) = K->one(), s(0, 1) = K->one(), s(1, 0) = K->one(), s(1, 1) = K->one();
  EXPECT_FALSE(inverse(s));
  EXPECT_EQ(rank(s), 1u);
}

TEST(Field, SubfieldBasisAndRoots) {
  auto K = FieldTower::create(2, 1, 6);
  for (std::size_t e : {1, 2, 3, 6}) {
    const auto basis = K->subfield_basis(e);
    EXPECT_EQ(basis.size(), e);
    for (const auto& b : basis) EXPECT_EQ(K->frobenius(b, e), b);
  }
  const auto roots = K->roots_in_subfield(fp::canonical_modulus(2, 3), 3);
  EXPECT_EQ(roots.size(), 3u);
  for (const auto& r : roots) EXPECT_EQ(K->degree_over_fq(r), 3u);
}
