#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dzeta/ore.hpp"
#include "oracles.hpp"

using namespace dzeta;

namespace {

OrePoly random_ore(const FieldTower& K, std::size_t deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> digit(0, K.p() - 1);
  std::vector<FqElem> c;
  for (std::size_t i = 0; i <= deg; ++i) {
    std::vector<std::uint32_t> x(K.degree());
    for (auto& v : x) v = digit(rng);
    c.push_back(K.from_coeffs(x));
  }
  return OrePoly(K, c);
}

}  // namespace

TEST(Ore, TwistedCommutation) {
  auto K = FieldTower::create(3, 1, 4);
  const FqElem b = K->generator();
  const OrePoly s = OrePoly::sigma(*K);
  EXPECT_EQ(s * OrePoly::constant(b), OrePoly::monomial(K->frobenius(b, 1), 1));
  EXPECT_EQ(OrePoly::constant(b) * s, OrePoly::monomial(b, 1));
}

TEST(Ore, AssociativeAndEvaluationIsComposition) {
  auto K = FieldTower::create(2, 1, 5);
  std::mt19937_64 rng(12);
  for (int k = 0; k < 20; ++k) {
    const OrePoly f = random_ore(*K, 2, rng), g = random_ore(*K, 3, rng), h = random_ore(*K, 1, rng);
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ(f * (g + h), f * g + f * h);
    const FqElem z = K->generator() + K->one();
    EXPECT_EQ(ore_eval(f * g, z), ore_eval(f, ore_eval(g, z)));
    EXPECT_EQ(ore_eval(f, z), oracle::ore_value(f, z));
  }
}

TEST(Ore, TowerMismatchThrows) {
  auto K = FieldTower::create(2, 1, 2);
  auto L = FieldTower::create(2, 1, 3);
  EXPECT_THROW(OrePoly::sigma(*K) * OrePoly::sigma(*L), std::invalid_argument);
}

TEST(Ore, KernelMatchesEnumeration) {
  auto K = FieldTower::create(3, 1, 4);
  std::mt19937_64 rng(21);
  for (int k = 0; k < 10; ++k) {
    OrePoly f = random_ore(*K, 2, rng);
    if (f.coeff(2).is_zero()) continue;
    const auto basis = additive_kernel(f);
    const auto roots = oracle::roots_by_enumeration(f);
    std::size_t size = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) size *= 3;
    EXPECT_EQ(size, roots.size());
    for (const auto& z : basis) EXPECT_TRUE(ore_eval(f, z).is_zero());
  }
  EXPECT_THROW(additive_kernel(OrePoly(*K)), std::exception);
}

TEST(Ore, PreimageSolvesOrReportsNone) {
  auto K = FieldTower::create(2, 1, 6);
  std::mt19937_64 rng(31);
  const OrePoly f = OrePoly::sigma(*K) * OrePoly::sigma(*K) + OrePoly::constant(K->generator());
  for (int k = 0; k < 20; ++k) {
    const OrePoly w = random_ore(*K, 0, rng);
    const FqElem target = w.coeff(0);
    auto z = additive_preimage(f, target);
    bool reachable = false;
    for (const auto& x : oracle::all_elements(*K))
      if (ore_eval(f, x) == target) reachable = true;
    EXPECT_EQ(z.has_value(), reachable);
    if (z) EXPECT_EQ(ore_eval(f, *z), target);
  }
}
