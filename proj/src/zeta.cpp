#include "dzeta/zeta.hpp"

#include <stdexcept>

namespace dzeta {

TransferResult transfer(const LevelData& source, const LevelData& target) {
  if (!(source.div == target.div)) throw std::invalid_argument("transfer: divisors differ");
  if (&source.tower() != &target.tower()) throw std::invalid_argument("transfer: towers differ");
  if (source.rank() != target.rank()) throw std::invalid_argument("transfer: ranks differ");
  const FieldTower& K = target.tower();
  const DivisorSpec& div = target.div;
  const auto jt = local_jets(div, target.delta);
  const auto js = local_jets(div, source.delta);
  std::vector<MatPoly> local;
  for (std::size_t i = 0; i < div.size(); ++i) {
    const std::size_t r = div.points()[i].r;
    auto inv = matpoly_series_inverse(jt[i], r);
    if (!inv) throw PreconditionError("singular D-part");
    local.push_back(matpoly_mul_trunc(*inv, js[i], r));
  }
  TransferResult res;
  res.a_poly = crt_delta(K, div, local);
  const Poly p = div.poly(K);
  if (matpoly_mulmod(target.delta, res.a_poly, p) != matpoly_mod(source.delta, p))
    throw std::logic_error("transfer: defining equation fails");
  res.residual = source.delta_inf - target.delta_inf * res.a_poly.back();
  res.member = res.residual.is_zero();
  if (auto inv = inverse(source.delta_inf))
    res.normalized = target.delta_inf * res.a_poly.back() * *inv - Matrix::identity(K, source.rank());
  return res;
}

bool zeta_member(const LevelData& source, const LevelData& target, TransferResult* certificate) {
  TransferResult r = transfer(source, target);
  const bool m = r.member;
  if (certificate) *certificate = std::move(r);
  return m;
}

bool theta_member_rank1(const LevelData& L) {
  if (L.rank() != 1) throw PreconditionError("theta criterion needs rank 1");
  return L.delta_inf == L.delta.back();
}

LevelData rank1_quotient(const LevelData& source, const LevelData& target) {
  if (source.rank() != 1 || target.rank() != 1) throw PreconditionError("quotient needs rank 1");
  const TransferResult t = transfer(source, target);
  Matrix nu = source.delta_inf;
  nu(0, 0) = source.delta_inf(0, 0) / target.delta_inf(0, 0);
  return LevelData{source.div, t.a_poly, nu};
}

// ---------------------------------------------------------------------------

GroupEnumerator::GroupEnumerator(const FieldTower& K, std::size_t n, const DivisorSpec& div)
    : K_(&K), n_(n), div_(div) {
  const std::uint64_t q = K.q();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n * n; ++k) {
    total *= q;
    if (total > (std::uint64_t(1) << 24)) throw PreconditionError("group too large");
  }
  std::vector<std::uint64_t> entries(n * n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t k = idx;
    for (std::size_t e = n * n; e-- > 0;) {
      entries[e] = k % q;
      k /= q;
    }
    if (determinant(fq_matrix(entries)).is_zero()) continue;
    gl_.push_back(entries);
  }
  for (std::size_t g = 0; g < gl_.size(); ++g) {
    for (auto v : gl_[g]) {
      if (v == 0) continue;
      if (v == 1) inf_reps_.push_back(g);
      break;
    }
  }
  auto mul_checked = [](std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > (std::uint64_t(1) << 62) / b) throw PreconditionError("group too large");
    return a * b;
  };
  radix_.push_back(inf_reps_.size());
  for (const auto& pt : div.points()) {
    std::uint64_t s = gl_.size();
    for (std::uint32_t h = 1; h < pt.r; ++h)
      for (std::size_t k = 0; k < n * n; ++k) s = mul_checked(s, q);
    radix_.push_back(s);
  }
  size_ = 1;
  for (auto r : radix_) size_ = mul_checked(size_, r);
}

Matrix GroupEnumerator::fq_matrix(const std::vector<std::uint64_t>& entries) const {
  Matrix m(*K_, n_, n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) m(r, c) = K_->fq(entries[r * n_ + c]);
  return m;
}

std::vector<std::uint64_t> GroupEnumerator::digits(std::uint64_t index) const {
  std::vector<std::uint64_t> d(radix_.size());
  for (std::size_t c = radix_.size(); c-- > 0;) {
    d[c] = index % radix_[c];
    index /= radix_[c];
  }
  return d;
}

std::uint64_t GroupEnumerator::index(const std::vector<std::uint64_t>& digits) const {
  std::uint64_t idx = 0;
  for (std::size_t c = 0; c < radix_.size(); ++c) idx = idx * radix_[c] + digits[c];
  return idx;
}

MatPoly GroupEnumerator::component_element(std::size_t c, std::uint64_t e) const {
  if (c == 0) return {fq_matrix(gl_[inf_reps_[e]])};
  const std::uint32_t r = div_.points()[c - 1].r;
  MatPoly jet;
  jet.push_back(fq_matrix(gl_[e % gl_.size()]));
  std::uint64_t rest = e / gl_.size();
  const std::uint64_t q = K_->q();
  std::vector<std::uint64_t> entries(n_ * n_);
  for (std::uint32_t h = 1; h < r; ++h) {
    for (std::size_t k = 0; k < n_ * n_; ++k) {
      entries[k] = rest % q;
      rest /= q;
    }
    jet.push_back(fq_matrix(entries));
  }
  return jet;
}

GroupElement GroupEnumerator::element(std::uint64_t index) const {
  const auto d = digits(index);
  GroupElement g;
  g.g_inf = component_element(0, d[0])[0];
  for (std::size_t c = 1; c < radix_.size(); ++c) g.g_D.push_back(component_element(c, d[c]));
  return g;
}

std::optional<std::uint64_t> GroupEnumerator::find(const GroupElement& g) const {
  if (!g.is_invertible() || g.g_D.size() != div_.size()) return std::nullopt;
  // Normalize by the inverse of the first nonzero entry of g_inf.
  FqElem lead = K_->zero();
  for (std::size_t r = 0; r < n_ && lead.is_zero(); ++r)
    for (std::size_t c = 0; c < n_ && lead.is_zero(); ++c) lead = g.g_inf(r, c);
  const FqElem s = K_->inverse(lead);
  auto to_entries = [&](const Matrix& m) -> std::optional<std::vector<std::uint64_t>> {
    std::vector<std::uint64_t> e;
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) {
        auto v = K_->fq_index(s * m(r, c));
        if (!v) return std::nullopt;
        e.push_back(*v);
      }
    return e;
  };
  std::vector<std::uint64_t> d(radix_.size());
  auto inf = to_entries(g.g_inf);
  if (!inf) return std::nullopt;
  bool found = false;
  for (std::size_t k = 0; k < inf_reps_.size(); ++k)
    if (gl_[inf_reps_[k]] == *inf) {
      d[0] = k;
      found = true;
    }
  if (!found) return std::nullopt;
  const std::uint64_t q = K_->q();
  for (std::size_t i = 0; i < div_.size(); ++i) {
    const auto& jet = g.g_D[i];
    const std::uint32_t r = div_.points()[i].r;
    auto c0 = to_entries(jet[0]);
    if (!c0) return std::nullopt;
    std::uint64_t pos = 0;
    found = false;
    for (std::size_t k = 0; k < gl_.size(); ++k)
      if (gl_[k] == *c0) {
        pos = k;
        found = true;
      }
    if (!found) return std::nullopt;
    std::uint64_t rest = 0, scale = 1;
    for (std::uint32_t h = 1; h < r; ++h) {
      std::vector<std::uint64_t> e(n_ * n_, 0);
      if (h < jet.size()) {
        auto eh = to_entries(jet[h]);
        if (!eh) return std::nullopt;
        e = *eh;
      }
      for (std::size_t k = 0; k < n_ * n_; ++k) {
        rest += e[k] * scale;
        scale *= q;
      }
    }
    d[i + 1] = pos + gl_.size() * rest;
  }
  return index(d);
}

std::vector<CensusEntry> Census::members() const {
  std::vector<CensusEntry> out;
  for (const auto& e : entries)
    if (e.member) out.push_back(e);
  return out;
}

Census scan_graphs_reference(const LevelData& x, const ScanOptions& opts) {
  const std::size_t n = x.rank();
  const GroupEnumerator G(x.tower(), n, x.div);
  if (G.size() > opts.cap) throw PreconditionError("group too large");
  const std::uint64_t i_max = opts.i_max.value_or(n * (x.div.degree() - 1));
  Census census;
  for (std::uint64_t i = 0; i <= i_max; ++i) {
    const LevelData fx = act_frobenius(x, i);
    for (std::uint64_t g = 0; g < G.size(); ++g) {
      TransferResult t = transfer(act_group(G.element(g), fx), x);
      CensusEntry e{g, i, t.member, std::nullopt};
      if (opts.keep_residuals) e.residual = std::move(t.residual);
      census.entries.push_back(std::move(e));
    }
  }
  return census;
}

}  // namespace dzeta
