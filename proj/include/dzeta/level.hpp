#pragma once

// Level data (Delta(t) mod p(t), Delta_inf) built from a Drinfeld module:
// companion products, the infinity-level solve, Moore blocks, CRT assembly,
// and the group / Frobenius actions on level data.

#include <cstdint>
#include <vector>

#include "dzeta/drinfeld.hpp"
#include "dzeta/field.hpp"
#include "dzeta/poly.hpp"

namespace dzeta {

struct CompanionPair {
  Matrix A;  // coefficient of t
  Matrix B;  // constant coefficient
};

struct LevelData {
  DivisorSpec div;
  MatPoly delta;    // Delta_0 .. Delta_{d-1}
  Matrix delta_inf;

  const FieldTower& tower() const { return delta_inf.tower(); }
  std::size_t rank() const { return delta_inf.rows(); }
  friend bool operator==(const LevelData& x, const LevelData& y) {
    return x.div == y.div && x.delta == y.delta && x.delta_inf == y.delta_inf;
  }
};

/// g_inf in GL_n(F_q); g_D[i] is a jet (r_i coefficient matrices in t - alpha_i)
/// with entries in F_q.
struct GroupElement {
  Matrix g_inf;
  std::vector<MatPoly> g_D;

  static GroupElement identity(const FieldTower& K, std::size_t n, const DivisorSpec& div);
  /// c * Id at every component.
  static GroupElement scalar(const FqElem& c, std::size_t n, const DivisorSpec& div);
  /// Id at infinity, s(t) Id on the D-part.
  static GroupElement central(const Poly& s, std::size_t n, const DivisorSpec& div);

  bool is_invertible() const;
  friend bool operator==(const GroupElement& x, const GroupElement& y) {
    return x.g_inf == y.g_inf && x.g_D == y.g_D;
  }
};

/// (g h) acting as g after h.
GroupElement compose(const GroupElement& g, const GroupElement& h, const DivisorSpec& div);

/// The matrix over K[t] of sigma on the basis s, sigma s, ..., sigma^{n-1} s:
/// subdiagonal ones, last column (t - theta, -a_1, ..., -a_{n-1}).
MatPoly companion_matrix(const DrinfeldModule& dm);

/// C F(C) ... F^{n-1}(C) = A t + B.
CompanionPair tau_n_matrix(const DrinfeldModule& dm);

struct NuSolution {
  std::vector<std::vector<FqElem>> fq_basis;   // echelon F_q-basis of the row solutions
  std::vector<std::vector<FqElem>> fqn_basis;  // F_{q^n}-basis extracted greedily
  Matrix nu;                                   // canonical invertible assembly
};

/// Rows v with v^(q^n) = v A. Throws PreconditionError("singular A") or
/// PreconditionError("ambient too small").
NuSolution solve_nu(const CompanionPair& cp, std::size_t n);

/// Entry (j, k) = alpha_{j,h}^(q^k) at point i.
Matrix moore_block(const TorsionData& td, std::size_t i, std::size_t h, std::size_t n);

/// p_i(u) (u = t - alpha_i) with deg < r_i and 1/p = sum p_i(t - alpha_i)/(t - alpha_i)^r_i.
std::vector<Poly> partial_fractions(const FieldTower& K, const DivisorSpec& div);

/// Idempotent-weighted basis: e[i][h] = p_i(u) u^h p(t)/(t - alpha_i)^r_i mod p(t).
std::vector<std::vector<Poly>> crt_basis(const FieldTower& K, const DivisorSpec& div);

/// delta(h_1, ..., h_l) for scalar jets (coefficients in t - alpha_i).
Poly crt_delta(const FieldTower& K, const DivisorSpec& div, const std::vector<Poly>& jets);
/// Entrywise CRT for matrix jets; returns exactly d coefficient matrices.
MatPoly crt_delta(const FieldTower& K, const DivisorSpec& div, const std::vector<MatPoly>& jets);

/// Inverse of crt_delta: the jet of a (reduced) matrix polynomial at every point.
std::vector<MatPoly> local_jets(const DivisorSpec& div, const MatPoly& a);

LevelData build_level_data(const DrinfeldModule& dm, const DivisorSpec& div);
/// Same from precomputed pieces.
LevelData assemble_level_data(const TorsionData& td, const Matrix& nu, const DivisorSpec& div);

/// Throws PreconditionError when det Delta(t) is not a unit mod p(t) or Delta_inf is singular.
void check_level_data(const LevelData& L);

LevelData act_group(const GroupElement& g, const LevelData& L);
LevelData act_frobenius(const LevelData& L, std::uint64_t i);

}  // namespace dzeta
