#pragma once

// Slow, independent reimplementations used to check the library.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dzeta/config.hpp"
#include "dzeta/zeta.hpp"

namespace oracle {

using namespace dzeta;

/// x^e by square and multiply, using only field multiplication.
FqElem power(const FqElem& x, std::uint64_t e);
/// x^(q^k) as k successive q-th powers.
FqElem frob(const FqElem& x, std::uint64_t k);

/// Every element of the ambient field (keep p^(mM) small).
std::vector<FqElem> all_elements(const FieldTower& K);

/// sum b_i z^(q^i) via frob.
FqElem ore_value(const OrePoly& f, const FqElem& z);

/// All z with f(z) = 0, by enumeration.
std::vector<FqElem> roots_by_enumeration(const OrePoly& f);

/// Kernel of an F_p matrix by enumerating every vector.
std::vector<std::vector<std::uint32_t>> kernel_by_enumeration(const FpMatrix& m);

/// Determinant of a matrix over K[t] (entries as coefficient lists) by Laplace expansion.
Poly det_laplace(const std::vector<std::vector<Poly>>& a);
std::vector<std::vector<Poly>> entries(const MatPoly& a);

/// Gaussian elimination over the ambient field; returns the rank.
std::size_t rank(std::vector<std::vector<FqElem>> rows);

/// Decides membership by solving the linear system in the entries of
/// A_0..A_{d-1}: Delta_target(t) A(t) = Delta_source(t) mod p(t) and
/// Delta_inf(source) = Delta_inf(target) A_{d-1}. The target side is reduced once.
class LinearMembership {
 public:
  explicit LinearMembership(const LevelData& target);
  bool member(const LevelData& source) const;

 private:
  const FieldTower* K_;
  std::size_t n_, d_;
  Poly p_;
  // Rows of the transform T (T * system = echelon form) whose echelon row is zero.
  std::vector<std::vector<FqElem>> left_null_;
};

/// Monic s of the given degree over F_q, as polynomials.
std::vector<Poly> monic_polys(const FieldTower& K, std::size_t degree);
bool is_unit_mod(const Poly& s, const FieldTower& K, const DivisorSpec& div);

/// {(h_s, n*i) : s monic unit of degree d-1-i, 0 <= i <= d-1} as (group index, i) pairs.
std::set<std::pair<std::uint64_t, std::uint64_t>> homothety_census(const GroupEnumerator& G, const FieldTower& K,
                                                                    std::size_t n, const DivisorSpec& div);

std::set<std::pair<std::uint64_t, std::uint64_t>> member_set(const Census& c);

/// Fixture session by file stem, from the shipped fixtures directory.
Session fixture(const std::string& name);

}  // namespace oracle
