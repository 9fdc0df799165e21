#include <omp.h>

#include "dzeta/zeta.hpp"

namespace dzeta {

namespace {

using Vec = std::vector<std::uint32_t>;

Vec flatten_matrix(const Matrix& m) {
  std::vector<FqElem> entries;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) entries.push_back(m(r, c));
  return flatten(entries);
}

Matrix unflatten_matrix(const FieldTower& K, std::size_t n, const Vec& v) {
  const auto entries = unflatten(K, v);
  Matrix m(K, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = entries[r * n + c];
  return m;
}

// table[c][e] = flattened residual contribution of element e of component c.
std::vector<std::vector<Vec>> contributions(const LevelData& x, const LevelData& fx, const GroupEnumerator& G,
                                            const std::vector<MatPoly>& jt_inv,
                                            const std::vector<std::vector<Poly>>& e) {
  const FieldTower& K = x.tower();
  const std::size_t d = x.div.degree();
  const auto js = local_jets(x.div, fx.delta);
  std::vector<std::vector<Vec>> table(G.components());
  table[0].resize(G.component_size(0));
  for (std::uint64_t k = 0; k < G.component_size(0); ++k)
    table[0][k] = flatten_matrix(G.component_element(0, k)[0] * fx.delta_inf);
  for (std::size_t pt = 0; pt < x.div.size(); ++pt) {
    const std::size_t c = pt + 1, r = x.div.points()[pt].r;
    std::vector<FqElem> weight;
    for (std::size_t h = 0; h < r; ++h) weight.push_back(e[pt][h].coeff(d - 1));
    table[c].resize(G.component_size(c));
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(G.component_size(c)); ++k) {
      const MatPoly g = G.component_element(c, static_cast<std::uint64_t>(k));
      const MatPoly a = matpoly_mul_trunc(jt_inv[pt], matpoly_mul_trunc(g, js[pt], r), r);
      Matrix w(K, x.rank(), x.rank());
      for (std::size_t h = 0; h < a.size(); ++h)
        if (!weight[h].is_zero()) w += weight[h] * a[h];
      table[c][k] = flatten_matrix(Matrix(K, x.rank(), x.rank()) - x.delta_inf * w);
    }
  }
  return table;
}

}  // namespace

Census scan_graphs(const LevelData& x, const ScanOptions& opts) {
  const FieldTower& K = x.tower();
  const std::size_t n = x.rank();
  const GroupEnumerator G(K, n, x.div);
  if (G.size() > opts.cap) throw PreconditionError("group too large");
  const std::uint64_t i_max = opts.i_max.value_or(n * (x.div.degree() - 1));
  const std::uint32_t p = K.p();

  std::vector<MatPoly> jt_inv;
  const auto jt = local_jets(x.div, x.delta);
  for (std::size_t pt = 0; pt < x.div.size(); ++pt) {
    auto inv = matpoly_series_inverse(jt[pt], x.div.points()[pt].r);
    if (!inv) throw PreconditionError("singular D-part");
    jt_inv.push_back(std::move(*inv));
  }
  const auto e = crt_basis(K, x.div);
  const std::size_t comps = G.components();

  Census census;
  census.entries.reserve((i_max + 1) * G.size());
  for (std::uint64_t i = 0; i <= i_max; ++i) {
    const LevelData fx = act_frobenius(x, i);
    const auto table = contributions(x, fx, G, jt_inv, e);
    const std::size_t len = table[0][0].size();
    std::vector<std::uint8_t> member(G.size(), 0);

#pragma omp parallel
    {
      Vec acc(len);
#pragma omp for schedule(static)
      for (std::int64_t gi = 0; gi < static_cast<std::int64_t>(G.size()); ++gi) {
        std::uint64_t rest = static_cast<std::uint64_t>(gi);
        std::fill(acc.begin(), acc.end(), 0u);
        for (std::size_t c = comps; c-- > 0;) {
          const Vec& v = table[c][rest % G.component_size(c)];
          rest /= G.component_size(c);
          for (std::size_t k = 0; k < len; ++k) acc[k] += v[k];
        }
        bool zero = true;
        for (std::size_t k = 0; k < len && zero; ++k) zero = acc[k] % p == 0;
        member[gi] = zero;
      }
    }

    for (std::uint64_t g = 0; g < G.size(); ++g) {
      CensusEntry entry{g, i, member[g] != 0, std::nullopt};
      if (opts.keep_residuals) {
        const auto dg = G.digits(g);
        Vec acc(len, 0);
        for (std::size_t c = 0; c < comps; ++c)
          for (std::size_t k = 0; k < len; ++k) acc[k] = (acc[k] + table[c][dg[c]][k]) % p;
        entry.residual = unflatten_matrix(K, n, acc);
      }
      census.entries.push_back(std::move(entry));
    }
  }
  return census;
}

}  // namespace dzeta
