#include "oracles.hpp"

#include <stdexcept>

#ifndef DZETA_FIXTURE_DIR
#define DZETA_FIXTURE_DIR "fixtures"
#endif

namespace oracle {

FqElem power(const FqElem& x, std::uint64_t e) {
  FqElem acc = x.tower().one(), b = x;
  while (e) {
    if (e & 1) acc = acc * b;
    b = b * b;
    e >>= 1;
  }
  return acc;
}

FqElem frob(const FqElem& x, std::uint64_t k) {
  FqElem y = x;
  for (std::uint64_t i = 0; i < k; ++i) y = power(y, x.tower().q());
  return y;
}

std::vector<FqElem> all_elements(const FieldTower& K) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < K.degree(); ++i) total *= K.p();
  if (total > (1u << 20)) throw std::invalid_argument("all_elements: field too large");
  std::vector<FqElem> out;
  std::vector<std::uint32_t> c(K.degree());
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t r = k;
    for (auto& x : c) {
      x = static_cast<std::uint32_t>(r % K.p());
      r /= K.p();
    }
    out.push_back(K.from_coeffs(c));
  }
  return out;
}

FqElem ore_value(const OrePoly& f, const FqElem& z) {
  FqElem acc = z.tower().zero();
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) acc += f.coeffs()[i] * frob(z, i);
  return acc;
}

std::vector<FqElem> roots_by_enumeration(const OrePoly& f) {
  std::vector<FqElem> out;
  for (const auto& z : all_elements(f.tower()))
    if (ore_value(f, z).is_zero()) out.push_back(z);
  return out;
}

std::vector<std::vector<std::uint32_t>> kernel_by_enumeration(const FpMatrix& m) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m.cols(); ++i) total *= m.p();
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> v(m.cols());
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t r = k;
    for (auto& x : v) {
      x = static_cast<std::uint32_t>(r % m.p());
      r /= m.p();
    }
    bool zero = true;
    for (std::size_t i = 0; i < m.rows() && zero; ++i) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < m.cols(); ++j) s += std::uint64_t(m(i, j)) * v[j];
      zero = s % m.p() == 0;
    }
    if (zero) out.push_back(v);
  }
  return out;
}

Poly det_laplace(const std::vector<std::vector<Poly>>& a) {
  const std::size_t n = a.size();
  const FieldTower& K = a[0][0].tower();
  if (n == 1) return a[0][0];
  Poly acc(K);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Poly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    const Poly term = a[0][c] * det_laplace(minor);
    if (c % 2 == 0)
      acc = acc + term;
    else
      acc = acc - term;
  }
  return acc;
}

std::vector<std::vector<Poly>> entries(const MatPoly& a) {
  const FieldTower& K = a[0].tower();
  std::vector<std::vector<Poly>> out(a[0].rows(), std::vector<Poly>(a[0].cols(), Poly(K)));
  for (std::size_t r = 0; r < a[0].rows(); ++r)
    for (std::size_t c = 0; c < a[0].cols(); ++c) {
      std::vector<FqElem> co;
      for (const auto& m : a) co.push_back(m(r, c));
      out[r][c] = Poly(K, co);
    }
  return out;
}

namespace {

// Reduces rows to echelon form, applying every operation to the rows of T too.
std::size_t eliminate(std::vector<std::vector<FqElem>>& rows, std::vector<std::vector<FqElem>>* T) {
  if (rows.empty()) return 0;
  const FieldTower& K = rows[0][0].tower();
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    if (T) std::swap((*T)[piv], (*T)[r]);
    const FqElem inv = K.inverse(rows[r][c]);
    for (auto& x : rows[r]) x = x * inv;
    if (T)
      for (auto& x : (*T)[r]) x = x * inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const FqElem f = rows[i][c];
      for (std::size_t k = 0; k < cols; ++k) rows[i][k] -= f * rows[r][k];
      if (T)
        for (std::size_t k = 0; k < (*T)[i].size(); ++k) (*T)[i][k] -= f * (*T)[r][k];
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(std::vector<std::vector<FqElem>> rows) { return eliminate(rows, nullptr); }

LinearMembership::LinearMembership(const LevelData& target)
    : K_(&target.tower()), n_(target.rank()), d_(target.div.degree()), p_(target.div.poly(target.tower())) {
  const FieldTower& K = *K_;
  const std::size_t n = n_, d = d_;
  const std::size_t unknowns = n * n * d, eqs = n * n * d + n * n;
  std::vector<std::vector<FqElem>> sys(eqs, std::vector<FqElem>(unknowns, K.zero()));
  const auto D = entries(target.delta);
  // unknown (j, a, b): coefficient of t^j in entry (a, b) of A(t)
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t u = (j * n + a) * n + b;
        // Delta(t) E_ab t^j has column b equal to t^j times column a of Delta
        for (std::size_t r = 0; r < n; ++r) {
          std::vector<FqElem> shift(j, K.zero());
          for (const auto& c : D[r][a].coeffs()) shift.push_back(c);
          const Poly red = Poly(K, shift).mod(p_);
          for (std::size_t k = 0; k < d; ++k) sys[(k * n + r) * n + b][u] = red.coeff(k);
        }
        if (j == d - 1)
          for (std::size_t r = 0; r < n; ++r) sys[n * n * d + r * n + b][u] = target.delta_inf(r, a);
      }
  std::vector<std::vector<FqElem>> T(eqs, std::vector<FqElem>(eqs, K.zero()));
  for (std::size_t i = 0; i < eqs; ++i) T[i][i] = K.one();
  const std::size_t rk = eliminate(sys, &T);
  for (std::size_t i = rk; i < eqs; ++i) left_null_.push_back(T[i]);
}

bool LinearMembership::member(const LevelData& source) const {
  const std::size_t n = n_, d = d_;
  std::vector<FqElem> rhs;
  const auto S = entries(source.delta);
  std::vector<std::vector<Poly>> red(n, std::vector<Poly>(n, Poly(*K_)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) red[r][c] = S[r][c].mod(p_);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) rhs.push_back(red[r][c].coeff(k));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) rhs.push_back(source.delta_inf(r, c));
  for (const auto& row : left_null_) {
    FqElem s = K_->zero();
    for (std::size_t i = 0; i < row.size(); ++i)
      if (!row[i].is_zero()) s += row[i] * rhs[i];
    if (!s.is_zero()) return false;
  }
  return true;
}

std::vector<Poly> monic_polys(const FieldTower& K, std::size_t degree) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < degree; ++i) total *= K.q();
  std::vector<Poly> out;
  for (std::uint64_t k = 0; k < total; ++k) {
    std::vector<FqElem> c;
    std::uint64_t r = k;
    for (std::size_t i = 0; i < degree; ++i) {
      c.push_back(K.fq(r % K.q()));
      r /= K.q();
    }
    c.push_back(K.one());
    out.emplace_back(K, c);
  }
  return out;
}

bool is_unit_mod(const Poly& s, const FieldTower& K, const DivisorSpec& div) {
  for (std::size_t i = 0; i < div.size(); ++i)
    if (s(div.alpha(K, i)).is_zero()) return false;
  return true;
}

std::set<std::pair<std::uint64_t, std::uint64_t>> homothety_census(const GroupEnumerator& G, const FieldTower& K,
                                                                    std::size_t n, const DivisorSpec& div) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  const std::size_t d = div.degree();
  for (std::size_t i = 0; i < d; ++i)
    for (const Poly& s : monic_polys(K, d - 1 - i)) {
      if (!is_unit_mod(s, K, div)) continue;
      const auto idx = G.find(GroupElement::central(s, n, div));
      if (!idx) throw std::logic_error("homothety_census: central element not found");
      out.insert({*idx, n * i});
    }
  return out;
}

std::set<std::pair<std::uint64_t, std::uint64_t>> member_set(const Census& c) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& e : c.entries)
    if (e.member) out.insert({e.g, e.i});
  return out;
}

Session fixture(const std::string& name) {
  return open_session(SessionConfig::load(std::string(DZETA_FIXTURE_DIR) + "/" + name + ".json"));
}

}  // namespace oracle
