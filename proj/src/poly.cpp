#include "dzeta/poly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace dzeta {

Poly::Poly(const FieldTower& K, std::vector<FqElem> coeffs) : tower_(&K), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const FqElem& c) { return Poly(c.tower(), {c}); }

Poly Poly::monomial(const FqElem& c, std::size_t deg) {
  std::vector<FqElem> v(deg + 1, c.tower().zero());
  v[deg] = c;
  return Poly(c.tower(), std::move(v));
}

Poly Poly::linear(const FqElem& a) { return Poly(a.tower(), {-a, a.tower().one()}); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FqElem Poly::coeff(std::size_t k) const { return k < c_.size() ? c_[k] : tower_->zero(); }

bool Poly::over_fq() const {
  for (const FqElem& c : c_)
    if (!tower_->in_subfield(c)) return false;
  return true;
}

FqElem Poly::operator()(const FqElem& x) const {
  FqElem acc = tower_->zero();
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (tower_ == nullptr) tower_ = o.tower_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), tower_->zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (tower_ == nullptr) tower_ = o.tower_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), tower_->zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  const FieldTower& K = a.tower_ ? *a.tower_ : *b.tower_;
  if (a.is_zero() || b.is_zero()) return Poly(K);
  std::vector<FqElem> r(a.c_.size() + b.c_.size() - 1, K.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(K, std::move(r));
}

Poly operator*(const FqElem& c, const Poly& a) {
  std::vector<FqElem> r = a.c_;
  for (auto& x : r) x *= c;
  return Poly(c.tower(), std::move(r));
}

Poly Poly::mod(const Poly& monic) const {
  if (!monic.is_monic()) throw std::invalid_argument("Poly::mod: divisor must be monic");
  const std::size_t d = static_cast<std::size_t>(monic.degree());
  std::vector<FqElem> r = c_;
  for (std::size_t k = r.size(); k-- > d;) {
    const FqElem c = r[k];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j <= d; ++j) r[k - d + j] -= c * monic.c_[j];
  }
  if (r.size() > d) r.resize(d);
  return Poly(*tower_, std::move(r));
}

Poly Poly::div(const Poly& monic) const {
  if (!monic.is_monic()) throw std::invalid_argument("Poly::div: divisor must be monic");
  const std::size_t d = static_cast<std::size_t>(monic.degree());
  if (c_.size() <= d) return Poly(*tower_);
  std::vector<FqElem> r = c_;
  std::vector<FqElem> quo(c_.size() - d, tower_->zero());
  for (std::size_t k = r.size(); k-- > d;) {
    const FqElem c = r[k];
    quo[k - d] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j <= d; ++j) r[k - d + j] -= c * monic.c_[j];
  }
  return Poly(*tower_, std::move(quo));
}

Poly Poly::taylor_shift(const FqElem& a) const {
  // Repeated synthetic division by (t - a).
  std::vector<FqElem> work = c_;
  std::vector<FqElem> out;
  out.reserve(work.size());
  while (!work.empty()) {
    // divide work by (t - a): remainder is work(a)
    std::vector<FqElem> quo(work.size() > 1 ? work.size() - 1 : 0, tower_->zero());
    FqElem carry = tower_->zero();
    for (std::size_t i = work.size(); i-- > 0;) {
      const FqElem cur = work[i] + carry * a;
      if (i > 0) quo[i - 1] = cur;
      else out.push_back(cur);
      carry = cur;
    }
    work = std::move(quo);
  }
  return Poly(*tower_, std::move(out));
}

Poly Poly::truncated(std::size_t k) const {
  std::vector<FqElem> r(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(k, c_.size())));
  return Poly(*tower_, std::move(r));
}

std::string Poly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const auto idx = tower_->fq_index(c_[i]);
    std::string coef = idx ? std::to_string(*idx) : "[...]";
    if (i == 0) {
      os << coef;
    } else {
      if (coef != "1") os << coef;
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Poly series_inverse(const Poly& f, std::size_t k) {
  const FieldTower& K = f.tower();
  const FqElem c0 = f.coeff(0);
  if (c0.is_zero()) throw std::domain_error("series_inverse: constant term is zero");
  const FqElem inv0 = K.inverse(c0);
  std::vector<FqElem> g(k, K.zero());
  if (k == 0) return Poly(K);
  g[0] = inv0;
  for (std::size_t i = 1; i < k; ++i) {
    FqElem acc = K.zero();
    for (std::size_t j = 1; j <= i; ++j) acc += f.coeff(j) * g[i - j];
    g[i] = -(acc * inv0);
  }
  return Poly(K, std::move(g));
}

Poly parse_fq_poly(const FieldTower& K, const std::string& text, char var) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ConfigError("empty polynomial");
  std::vector<FqElem> coeffs;
  auto add_term = [&](bool negative, std::uint64_t c, std::size_t e) {
    if (coeffs.size() <= e) coeffs.resize(e + 1, K.zero());
    FqElem v = K.fq(c % K.q());
    coeffs[e] += negative ? -v : v;
  };
  std::size_t i = 0;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    }
    std::uint64_t c = 1;
    bool have_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      c = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) c = c * 10 + (s[i++] - '0');
      have_coef = true;
      if (i < s.size() && s[i] == '*') ++i;
    }
    std::size_t e = 0;
    if (i < s.size() && s[i] == var) {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
          throw ConfigError("bad exponent in polynomial '" + text + "'");
        e = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e = e * 10 + (s[i++] - '0');
      }
    } else if (!have_coef) {
      throw ConfigError("cannot parse polynomial '" + text + "'");
    }
    if (c >= K.q()) throw ConfigError("coefficient " + std::to_string(c) + " is not an element index of F_q");
    add_term(negative, c, e);
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw ConfigError("cannot parse polynomial '" + text + "'");
  }
  return Poly(K, std::move(coeffs));
}

// ---------------------------------------------------------------------------

MatPoly matpoly_mul(const MatPoly& a, const MatPoly& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("matpoly_mul: empty operand");
  const FieldTower& K = a[0].tower();
  MatPoly r(a.size() + b.size() - 1, Matrix(K, a[0].rows(), b[0].cols()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

MatPoly matpoly_add(const MatPoly& a, const MatPoly& b) {
  MatPoly r = a.size() >= b.size() ? a : b;
  const MatPoly& o = a.size() >= b.size() ? b : a;
  for (std::size_t i = 0; i < o.size(); ++i) r[i] += o[i];
  return r;
}

MatPoly matpoly_mod(const MatPoly& a, const Poly& monic) {
  if (!monic.is_monic()) throw std::invalid_argument("matpoly_mod: modulus must be monic");
  const std::size_t d = static_cast<std::size_t>(monic.degree());
  MatPoly r = a;
  const Matrix zero(a[0].tower(), a[0].rows(), a[0].cols());
  for (std::size_t k = r.size(); k-- > d;) {
    if (r[k].is_zero()) continue;
    const Matrix c = r[k];
    for (std::size_t j = 0; j < d; ++j) {
      const FqElem& mj = monic.coeffs()[j];
      if (mj.is_zero()) continue;
      r[k - d + j] -= mj * c;
    }
    r[k] = zero;
  }
  r.resize(d, zero);
  return r;
}

MatPoly matpoly_mulmod(const MatPoly& a, const MatPoly& b, const Poly& monic) {
  return matpoly_mod(matpoly_mul(a, b), monic);
}

MatPoly matpoly_scale(const Poly& s, const MatPoly& a) {
  const FieldTower& K = a[0].tower();
  if (s.is_zero()) return MatPoly{Matrix(K, a[0].rows(), a[0].cols())};
  MatPoly r(a.size() + s.coeffs().size() - 1, Matrix(K, a[0].rows(), a[0].cols()));
  for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
    const FqElem& si = s.coeffs()[i];
    if (si.is_zero()) continue;
    for (std::size_t j = 0; j < a.size(); ++j) r[i + j] += si * a[j];
  }
  return r;
}

Poly matpoly_entry(const MatPoly& a, std::size_t r, std::size_t c) {
  std::vector<FqElem> v;
  v.reserve(a.size());
  for (const Matrix& m : a) v.push_back(m(r, c));
  return Poly(a[0].tower(), std::move(v));
}

MatPoly matpoly_jet(const MatPoly& a, const FqElem& at, std::size_t k) {
  const FieldTower& K = a[0].tower();
  const std::size_t rows = a[0].rows(), cols = a[0].cols();
  MatPoly out(k, Matrix(K, rows, cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const Poly shifted = matpoly_entry(a, r, c).taylor_shift(at);
      for (std::size_t h = 0; h < k; ++h) out[h](r, c) = shifted.coeff(h);
    }
  return out;
}

Matrix matpoly_eval(const MatPoly& a, const FqElem& at) {
  Matrix acc(a[0].tower(), a[0].rows(), a[0].cols());
  for (std::size_t i = a.size(); i-- > 0;) acc = at * acc + a[i];
  return acc;
}

MatPoly matpoly_trimmed(MatPoly a) {
  while (a.size() > 1 && a.back().is_zero()) a.pop_back();
  return a;
}

MatPoly matpoly_frobenius(const MatPoly& a, std::uint64_t k) {
  MatPoly r;
  r.reserve(a.size());
  for (const Matrix& m : a) r.push_back(frobenius(m, k));
  return r;
}

std::optional<MatPoly> matpoly_series_inverse(const MatPoly& a, std::size_t k) {
  const FieldTower& K = a[0].tower();
  const std::size_t n = a[0].rows();
  auto inv0 = inverse(a[0]);
  if (!inv0) return std::nullopt;
  MatPoly g(k, Matrix(K, n, n));
  if (k == 0) return g;
  g[0] = *inv0;
  for (std::size_t i = 1; i < k; ++i) {
    Matrix acc(K, n, n);
    for (std::size_t j = 1; j <= i && j < a.size(); ++j) acc += a[j] * g[i - j];
    g[i] = Matrix(K, n, n) - (*inv0 * acc);
  }
  return g;
}

MatPoly matpoly_mul_trunc(const MatPoly& a, const MatPoly& b, std::size_t k) {
  const FieldTower& K = a[0].tower();
  MatPoly r(k, Matrix(K, a[0].rows(), b[0].cols()));
  for (std::size_t i = 0; i < a.size() && i < k; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < k; ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace dzeta
