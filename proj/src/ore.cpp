#include "dzeta/ore.hpp"

#include <sstream>
#include <stdexcept>

namespace dzeta {

OrePoly::OrePoly(const FieldTower& K, std::vector<FqElem> coeffs) : tower_(&K), c_(std::move(coeffs)) { trim(); }

OrePoly OrePoly::constant(const FqElem& c) { return OrePoly(c.tower(), {c}); }

OrePoly OrePoly::monomial(const FqElem& c, std::size_t k) {
  std::vector<FqElem> v(k + 1, c.tower().zero());
  v[k] = c;
  return OrePoly(c.tower(), std::move(v));
}

void OrePoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FqElem OrePoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : tower_->zero(); }

OrePoly& OrePoly::operator+=(const OrePoly& o) {
  if (tower_ == nullptr) tower_ = o.tower_;
  if (o.tower_ != nullptr && o.tower_ != tower_) throw std::invalid_argument("OrePoly: tower mismatch");
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), tower_->zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

OrePoly& OrePoly::operator-=(const OrePoly& o) {
  if (tower_ == nullptr) tower_ = o.tower_;
  if (o.tower_ != nullptr && o.tower_ != tower_) throw std::invalid_argument("OrePoly: tower mismatch");
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), tower_->zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

OrePoly ore_mul(const OrePoly& f, const OrePoly& g) {
  if (f.tower_ == nullptr || g.tower_ == nullptr) throw std::invalid_argument("ore_mul: uninitialized operand");
  if (f.tower_ != g.tower_) throw std::invalid_argument("ore_mul: tower mismatch");
  const FieldTower& K = *f.tower_;
  if (f.is_zero() || g.is_zero()) return OrePoly(K);
  std::vector<FqElem> r(f.c_.size() + g.c_.size() - 1, K.zero());
  // (a sigma^i)(b sigma^j) = a b^(q^i) sigma^(i+j)
  std::vector<FqElem> gt = g.c_;
  for (std::size_t i = 0; i < f.c_.size(); ++i) {
    if (i > 0)
      for (auto& b : gt) b = K.frobenius(b, 1);
    if (f.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < gt.size(); ++j) r[i + j] += f.c_[i] * gt[j];
  }
  return OrePoly(K, std::move(r));
}

OrePoly OrePoly::twisted(std::uint64_t k) const {
  std::vector<FqElem> r = c_;
  for (auto& b : r) b = tower_->frobenius(b, k);
  return OrePoly(*tower_, std::move(r));
}

std::string OrePoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "[";
    for (std::size_t k = 0; k < c_[i].size(); ++k) os << (k ? "," : "") << c_[i].coeff(k);
    os << "]";
    if (i == 1) os << "s";
    if (i > 1) os << "s^" << i;
  }
  return os.str();
}

FqElem ore_eval(const OrePoly& f, const FqElem& z) {
  const FieldTower& K = z.tower();
  FqElem acc = K.zero();
  FqElem zk = z;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i > 0) zk = K.frobenius(zk, 1);
    if (!f.coeffs()[i].is_zero()) acc += f.coeffs()[i] * zk;
  }
  return acc;
}

FpMatrix ore_matrix(const OrePoly& f) {
  const FieldTower& K = f.tower();
  return flatten_linear_map(K, 1, 1, [&](std::span<const FqElem> v) { return std::vector<FqElem>{ore_eval(f, v[0])}; });
}

std::vector<FqElem> additive_kernel(const OrePoly& f) {
  if (f.is_zero()) throw std::invalid_argument("additive_kernel: zero polynomial");
  const auto basis = kernel_over_fq(f.tower(), ore_matrix(f), 1);
  std::vector<FqElem> out;
  out.reserve(basis.size());
  for (const auto& v : basis) out.push_back(v[0]);
  return out;
}

std::optional<FqElem> additive_preimage(const OrePoly& f, const FqElem& w) {
  if (f.is_zero()) throw std::invalid_argument("additive_preimage: zero polynomial");
  const FieldTower& K = f.tower();
  const auto rhs = w.coeffs();
  const auto z = solve_fp(ore_matrix(f), rhs);
  if (!z) return std::nullopt;
  return K.from_coeffs(*z);
}

}  // namespace dzeta
