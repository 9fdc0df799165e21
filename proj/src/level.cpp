#include "dzeta/level.hpp"

#include <stdexcept>

namespace dzeta {

namespace {

Matrix scalar_identity(const FqElem& c, std::size_t n) { return Matrix::scalar(c, n); }

}  // namespace

// ---------------------------------------------------------------------------
// Group elements

GroupElement GroupElement::identity(const FieldTower& K, std::size_t n, const DivisorSpec& div) {
  return scalar(K.one(), n, div);
}

GroupElement GroupElement::scalar(const FqElem& c, std::size_t n, const DivisorSpec& div) {
  const FieldTower& K = c.tower();
  GroupElement g;
  g.g_inf = scalar_identity(c, n);
  for (const auto& pt : div.points()) {
    MatPoly jet(pt.r, Matrix(K, n, n));
    jet[0] = scalar_identity(c, n);
    g.g_D.push_back(std::move(jet));
  }
  return g;
}

GroupElement GroupElement::central(const Poly& s, std::size_t n, const DivisorSpec& div) {
  const FieldTower& K = s.tower();
  if (!s.over_fq()) throw std::invalid_argument("central element needs s(t) over F_q");
  const Poly red = s.mod(div.poly(K));
  GroupElement g;
  g.g_inf = Matrix::identity(K, n);
  for (std::size_t i = 0; i < div.size(); ++i) {
    const Poly shifted = red.taylor_shift(div.alpha(K, i));
    MatPoly jet;
    for (std::uint32_t h = 0; h < div.points()[i].r; ++h) jet.push_back(scalar_identity(shifted.coeff(h), n));
    g.g_D.push_back(std::move(jet));
  }
  return g;
}

bool GroupElement::is_invertible() const {
  if (determinant(g_inf).is_zero()) return false;
  for (const auto& jet : g_D)
    if (determinant(jet[0]).is_zero()) return false;
  return true;
}

GroupElement compose(const GroupElement& g, const GroupElement& h, const DivisorSpec& div) {
  GroupElement out;
  out.g_inf = g.g_inf * h.g_inf;
  for (std::size_t i = 0; i < div.size(); ++i)
    out.g_D.push_back(matpoly_mul_trunc(g.g_D[i], h.g_D[i], div.points()[i].r));
  return out;
}

// ---------------------------------------------------------------------------
// Companion products and the infinity level

MatPoly companion_matrix(const DrinfeldModule& dm) {
  const FieldTower& K = dm.tower();
  const std::size_t n = dm.rank();
  Matrix C0(K, n, n), C1(K, n, n);
  for (std::size_t k = 0; k + 1 < n; ++k) C0(k + 1, k) = K.one();
  C1(0, n - 1) = K.one();
  C0(0, n - 1) = -dm.theta();
  for (std::size_t k = 1; k < n; ++k) C0(k, n - 1) = -dm.a(k);
  return {C0, C1};
}

CompanionPair tau_n_matrix(const DrinfeldModule& dm) {
  const MatPoly C = companion_matrix(dm);
  MatPoly P = C;
  for (std::size_t k = 1; k < dm.rank(); ++k) P = matpoly_mul(P, matpoly_frobenius(C, k));
  P = matpoly_trimmed(std::move(P));
  if (P.size() != 2) throw std::logic_error("tau_n_matrix: product is not of degree 1 in t");
  return {P[1], P[0]};
}

NuSolution solve_nu(const CompanionPair& cp, std::size_t n) {
  const FieldTower& K = cp.A.tower();
  if (cp.A.rows() != n || cp.A.cols() != n) throw std::invalid_argument("solve_nu: A must be n x n");
  if (determinant(cp.A).is_zero()) throw PreconditionError("singular A");
  if (K.M() % n != 0) throw AmbientTooSmall("F_{q^n} is not contained in the ambient field");

  const Matrix& A = cp.A;
  FpMatrix L = flatten_linear_map(K, n, n, [&](std::span<const FqElem> v) {
    std::vector<FqElem> out(n, K.zero());
    for (std::size_t j = 0; j < n; ++j) {
      FqElem acc = K.frobenius(v[j], n);
      for (std::size_t k = 0; k < n; ++k)
        if (!v[k].is_zero()) acc -= v[k] * A(k, j);
      out[j] = acc;
    }
    return out;
  });
  NuSolution sol;
  sol.fq_basis = kernel_over_fq(K, L, n);
  if (sol.fq_basis.size() < n * n) throw AmbientTooSmall("infinity-level solutions do not split");
  sol.fqn_basis = select_independent(K, sol.fq_basis, K.subfield_basis(std::size_t(K.m()) * n));
  if (sol.fqn_basis.size() != n) throw std::logic_error("solve_nu: unexpected F_{q^n}-dimension");

  std::vector<std::vector<FqElem>> rows;
  for (const auto& v : sol.fq_basis) {
    rows.push_back(v);
    Matrix trial(K, rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) trial(r, c) = rows[r][c];
    if (rank(trial) < rows.size()) rows.pop_back();
    if (rows.size() == n) break;
  }
  if (rows.size() != n) throw std::logic_error("solve_nu: solutions do not span K^n");
  sol.nu = Matrix(K, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) sol.nu(r, c) = rows[r][c];
  return sol;
}

// ---------------------------------------------------------------------------
// Finite level

Matrix moore_block(const TorsionData& td, std::size_t i, std::size_t h, std::size_t n) {
  const auto& gens = td.jets.at(i).at(h);
  if (gens.size() != n) throw std::invalid_argument("moore_block: wrong number of generators");
  const FieldTower& K = gens[0].tower();
  Matrix m(K, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    FqElem x = gens[j];
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) x = K.frobenius(x, 1);
      m(j, k) = x;
    }
  }
  return m;
}

namespace {

Poly cofactor(const FieldTower& K, const DivisorSpec& div, std::size_t i) {
  Poly Q = Poly::constant(K.one());
  for (std::size_t k = 0; k < div.size(); ++k) {
    if (k == i) continue;
    const Poly lin = Poly::linear(div.alpha(K, k));
    for (std::uint32_t e = 0; e < div.points()[k].r; ++e) Q = Q * lin;
  }
  return Q;
}

}  // namespace

std::vector<Poly> partial_fractions(const FieldTower& K, const DivisorSpec& div) {
  std::vector<Poly> out;
  for (std::size_t i = 0; i < div.size(); ++i) {
    const Poly shifted = cofactor(K, div, i).taylor_shift(div.alpha(K, i));
    out.push_back(series_inverse(shifted, div.points()[i].r));
  }
  return out;
}

std::vector<std::vector<Poly>> crt_basis(const FieldTower& K, const DivisorSpec& div) {
  const Poly p = div.poly(K);
  const std::vector<Poly> pf = partial_fractions(K, div);
  std::vector<std::vector<Poly>> e;
  for (std::size_t i = 0; i < div.size(); ++i) {
    const FqElem a = div.alpha(K, i);
    const Poly weight = (pf[i].taylor_shift(-a) * cofactor(K, div, i)).mod(p);
    std::vector<Poly> row;
    Poly upow = Poly::constant(K.one());
    for (std::uint32_t h = 0; h < div.points()[i].r; ++h) {
      row.push_back((weight * upow).mod(p));
      upow = upow * Poly::linear(a);
    }
    e.push_back(std::move(row));
  }
  return e;
}

Poly crt_delta(const FieldTower& K, const DivisorSpec& div, const std::vector<Poly>& jets) {
  if (jets.size() != div.size()) throw std::invalid_argument("crt_delta: one jet per point expected");
  const auto e = crt_basis(K, div);
  Poly out(K);
  for (std::size_t i = 0; i < div.size(); ++i) {
    if (jets[i].degree() >= static_cast<int>(div.points()[i].r))
      throw std::invalid_argument("crt_delta: jet degree too large");
    for (std::size_t h = 0; h < jets[i].coeffs().size(); ++h) out += jets[i].coeffs()[h] * e[i][h];
  }
  return out;
}

MatPoly crt_delta(const FieldTower& K, const DivisorSpec& div, const std::vector<MatPoly>& jets) {
  if (jets.size() != div.size()) throw std::invalid_argument("crt_delta: one jet per point expected");
  const auto e = crt_basis(K, div);
  const std::size_t rows = jets[0][0].rows(), cols = jets[0][0].cols();
  MatPoly out(div.degree(), Matrix(K, rows, cols));
  for (std::size_t i = 0; i < div.size(); ++i) {
    if (jets[i].size() > div.points()[i].r) throw std::invalid_argument("crt_delta: jet too long");
    for (std::size_t h = 0; h < jets[i].size(); ++h) {
      if (jets[i][h].is_zero()) continue;
      const auto& c = e[i][h].coeffs();
      for (std::size_t k = 0; k < c.size(); ++k)
        if (!c[k].is_zero()) out[k] += c[k] * jets[i][h];
    }
  }
  return out;
}

std::vector<MatPoly> local_jets(const DivisorSpec& div, const MatPoly& a) {
  const FieldTower& K = a[0].tower();
  std::vector<MatPoly> out;
  for (std::size_t i = 0; i < div.size(); ++i) out.push_back(matpoly_jet(a, div.alpha(K, i), div.points()[i].r));
  return out;
}

LevelData assemble_level_data(const TorsionData& td, const Matrix& nu, const DivisorSpec& div) {
  const FieldTower& K = nu.tower();
  const std::size_t n = nu.rows();
  std::vector<MatPoly> jets;
  for (std::size_t i = 0; i < div.size(); ++i) {
    MatPoly jet;
    for (std::uint32_t h = 0; h < div.points()[i].r; ++h) jet.push_back(moore_block(td, i, h, n));
    jets.push_back(std::move(jet));
  }
  LevelData L{div, crt_delta(K, div, jets), nu};
  check_level_data(L);
  return L;
}

LevelData build_level_data(const DrinfeldModule& dm, const DivisorSpec& div) {
  const TorsionData td = torsion_basis(dm, div);
  const NuSolution sol = solve_nu(tau_n_matrix(dm), dm.rank());
  return assemble_level_data(td, sol.nu, div);
}

void check_level_data(const LevelData& L) {
  if (L.delta.size() != L.div.degree()) throw PreconditionError("level data: Delta(t) must have d coefficients");
  for (const auto& jet : local_jets(L.div, L.delta))
    if (determinant(jet[0]).is_zero()) throw PreconditionError("level data: det Delta(t) is not a unit mod p(t)");
  if (determinant(L.delta_inf).is_zero()) throw PreconditionError("level data: Delta_inf is singular");
}

LevelData act_group(const GroupElement& g, const LevelData& L) {
  const FieldTower& K = L.tower();
  if (g.g_D.size() != L.div.size() || g.g_inf.rows() != L.rank())
    throw std::invalid_argument("act_group: shape mismatch");
  std::vector<MatPoly> jets = local_jets(L.div, L.delta);
  for (std::size_t i = 0; i < jets.size(); ++i) jets[i] = matpoly_mul_trunc(g.g_D[i], jets[i], L.div.points()[i].r);
  return LevelData{L.div, crt_delta(K, L.div, jets), g.g_inf * L.delta_inf};
}

LevelData act_frobenius(const LevelData& L, std::uint64_t i) {
  return LevelData{L.div, matpoly_frobenius(L.delta, i), frobenius(L.delta_inf, i)};
}

}  // namespace dzeta
