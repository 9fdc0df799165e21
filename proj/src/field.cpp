#include "dzeta/field.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace dzeta {

// ---------------------------------------------------------------------------
// F_p scalars and polynomials

namespace fp {

std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw std::domain_error("fp::inv: zero has no inverse");
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    const std::int64_t quo = r / nr;
    t -= quo * nt;
    std::swap(t, nt);
    r -= quo * nr;
    std::swap(r, nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  }
  const std::size_t n = f.size() - 1;
  for (std::size_t k = acc.size(); k-- > n;) {
    const std::uint64_t c = acc[k] % p;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= n; ++j) acc[k - n + j] = (acc[k - n + j] + (p - c) * f[j]) % p;
  }
  FpPoly r(std::min(acc.size(), n));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::uint32_t>(acc[i] % p);
  trim(r);
  return r;
}

FpPoly powmod(FpPoly base, std::uint64_t e, const FpPoly& f, std::uint32_t p) {
  FpPoly r{1};
  while (e != 0) {
    if (e & 1) r = mulmod(r, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

FpPoly polymod(FpPoly a, const FpPoly& b, std::uint32_t p) {
  trim(a);
  const std::uint32_t lead_inv = inv(b.back(), p);
  const std::size_t db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    const std::uint32_t c = mul(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = sub(a[shift + j], mul(c, b[j], p), p);
    trim(a);
  }
  return a;
}

FpPoly gcd(FpPoly a, FpPoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = polymod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// x^(p^k) mod f by k successive p-th powers.
FpPoly x_pow_p_k(const FpPoly& f, std::uint32_t p, std::size_t k) {
  FpPoly r = polymod(FpPoly{0, 1}, f, p);
  for (std::size_t i = 0; i < k; ++i) r = powmod(r, p, f, p);
  return r;
}

}  // namespace

bool is_irreducible(const FpPoly& f_in, std::uint32_t p) {
  FpPoly f = f_in;
  trim(f);
  if (f.size() < 2 || f.back() != 1) return false;
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  if (f[0] == 0) return false;
  FpPoly x{0, 1};
  FpPoly xn = x_pow_p_k(f, p, n);
  if (xn != polymod(x, f, p)) return false;
  for (std::uint64_t r : prime_factors(n)) {
    FpPoly h = x_pow_p_k(f, p, n / r);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = sub(h[1], 1, p);
    trim(h);
    if (gcd(f, h, p).size() != 1) return false;
  }
  return true;
}

FpPoly canonical_modulus(std::uint32_t p, std::size_t n) {
  if (n == 0) throw std::invalid_argument("canonical_modulus: degree must be positive");
  FpPoly f(n + 1, 0);
  f[n] = 1;
  if (n == 1) return f;  // x itself
  f[0] = 1;
  // Enumerate (c_0, ..., c_{n-1}) lexicographically with c_0 most significant,
  // i.e. the highest coefficient varies fastest.
  for (;;) {
    if (is_irreducible(f, p)) return f;
    std::size_t i = n - 1;
    for (;;) {
      if (++f[i] < p) break;
      f[i] = 0;
      if (i == 0) throw std::logic_error("canonical_modulus: exhausted search");
      --i;
    }
  }
}

}  // namespace fp

// ---------------------------------------------------------------------------
// FqElem

std::size_t FqElem::size() const { return tower_->degree(); }

std::vector<std::uint32_t> FqElem::coeffs() const {
  return std::vector<std::uint32_t>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(size()));
}

bool FqElem::is_zero() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool FqElem::is_one() const {
  if (c_[0] != 1) return false;
  const std::size_t n = size();
  for (std::size_t i = 1; i < n; ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool FqElem::in_prime_field() const {
  const std::size_t n = size();
  for (std::size_t i = 1; i < n; ++i)
    if (c_[i] != 0) return false;
  return true;
}

FqElem& FqElem::operator+=(const FqElem& o) {
  assert(tower_ == o.tower_);
  const std::uint32_t p = tower_->p();
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t s = std::uint32_t(c_[i]) + o.c_[i];
    if (s >= p) s -= p;
    c_[i] = static_cast<std::uint16_t>(s);
  }
  return *this;
}

FqElem& FqElem::operator-=(const FqElem& o) {
  assert(tower_ == o.tower_);
  const std::uint32_t p = tower_->p();
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t a = c_[i], b = o.c_[i];
    c_[i] = static_cast<std::uint16_t>(a >= b ? a - b : a + p - b);
  }
  return *this;
}

FqElem& FqElem::operator*=(const FqElem& o) {
  assert(tower_ == o.tower_);
  FqElem out;
  tower_->mul_into(*this, o, out);
  *this = out;
  return *this;
}

FqElem operator/(const FqElem& a, const FqElem& b) { return a * a.tower().inverse(b); }

FqElem FqElem::operator-() const {
  FqElem r = *this;
  const std::uint32_t p = tower_->p();
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    if (r.c_[i] != 0) r.c_[i] = static_cast<std::uint16_t>(p - r.c_[i]);
  return r;
}

bool operator==(const FqElem& a, const FqElem& b) {
  if (a.tower_ != b.tower_) return false;
  if (a.tower_ == nullptr) return true;
  const std::size_t n = a.size();
  return std::equal(a.c_.begin(), a.c_.begin() + static_cast<std::ptrdiff_t>(n), b.c_.begin());
}

bool operator<(const FqElem& a, const FqElem& b) {
  const std::size_t n = a.size();
  return std::lexicographical_compare(a.c_.begin(), a.c_.begin() + static_cast<std::ptrdiff_t>(n),
                                      b.c_.begin(), b.c_.begin() + static_cast<std::ptrdiff_t>(n));
}

FqElem FqElem::scaled(std::uint32_t c) const {
  FqElem r = *this;
  const std::uint32_t p = tower_->p();
  c %= p;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) r.c_[i] = static_cast<std::uint16_t>((std::uint32_t(c_[i]) * c) % p);
  return r;
}

// ---------------------------------------------------------------------------
// FieldTower

std::shared_ptr<const FieldTower> FieldTower::create(std::uint32_t p, std::uint32_t m, std::uint32_t M) {
  if (!fp::is_prime(p) || p >= 65536) throw ConfigError("characteristic must be a prime below 65536");
  if (m == 0 || M == 0) throw ConfigError("extension degrees must be positive");
  const std::size_t n = std::size_t(m) * M;
  if (n > kMaxDegree)
    throw ConfigError("ambient degree " + std::to_string(n) + " exceeds the supported maximum " +
                      std::to_string(kMaxDegree));
  return create(p, m, M, fp::canonical_modulus(p, n));
}

std::shared_ptr<const FieldTower> FieldTower::create(std::uint32_t p, std::uint32_t m, std::uint32_t M,
                                                     FpPoly modulus) {
  if (!fp::is_prime(p) || p >= 65536) throw ConfigError("characteristic must be a prime below 65536");
  if (m == 0 || M == 0) throw ConfigError("extension degrees must be positive");
  const std::size_t n = std::size_t(m) * M;
  if (n > kMaxDegree) throw ConfigError("ambient degree exceeds the supported maximum");
  if (modulus.size() != n + 1 || !fp::is_irreducible(modulus, p))
    throw ConfigError("modulus must be monic irreducible of degree m*M");
  return std::shared_ptr<const FieldTower>(new FieldTower(p, m, M, std::move(modulus)));
}

FieldTower::FieldTower(std::uint32_t p, std::uint32_t m, std::uint32_t M, FpPoly modulus)
    : p_(p), m_(m), M_(M), n_(std::size_t(m) * M), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < m_; ++i) q_ *= p_;
  for (std::size_t j = 0; j < n_; ++j)
    if (modulus_[j] != 0) reduction_terms_.emplace_back(j, p_ - modulus_[j]);

  // Frobenius x -> x^p is F_p-linear; tabulate it on the power basis.
  frob_p_.assign(n_ * n_, 0);
  for (std::size_t j = 0; j < n_; ++j) {
    FqElem e = zero();
    e.c_[j] = 1;
    const FqElem img = pow(e, p_);
    for (std::size_t i = 0; i < n_; ++i) frob_p_[j * n_ + i] = img.c_[i];
  }
  frob_q_.assign(n_ * n_, 0);
  for (std::size_t j = 0; j < n_; ++j) {
    FqElem e = zero();
    e.c_[j] = 1;
    for (std::uint32_t k = 0; k < m_; ++k) e = apply_linear(frob_p_, e);
    for (std::size_t i = 0; i < n_; ++i) frob_q_[j * n_ + i] = e.c_[i];
  }
  init_subfield_basis();
}

void FieldTower::init_subfield_basis() {
  fq_basis_.clear();
  if (m_ == 1) {
    fq_basis_.push_back(one());
  } else {
    const FpPoly g = fp::canonical_modulus(p_, m_);
    const std::vector<FqElem> roots = roots_in_subfield(g, m_);
    if (roots.empty()) throw std::logic_error("F_q generator not found in ambient field");
    FqElem w = roots.front();
    FqElem power = one();
    for (std::uint32_t i = 0; i < m_; ++i) {
      fq_basis_.push_back(power);
      power *= w;
    }
  }
  // Choose m coordinates on which the basis is invertible, for reading digits.
  FpMatrix B(n_, m_, p_);
  for (std::size_t j = 0; j < m_; ++j)
    for (std::size_t i = 0; i < n_; ++i) B(i, j) = fq_basis_[j].c_[i];
  // Pivot rows of B = pivot columns of B^T.
  FpMatrix Bt(m_, n_, p_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < m_; ++j) Bt(j, i) = B(i, j);
  FpMatrix work = Bt;
  fq_pivots_ = work.rref();
  // Inverse of the m x m submatrix B[pivots, :].
  FpMatrix aug(m_, 2 * m_, p_);
  for (std::size_t r = 0; r < m_; ++r) {
    for (std::size_t c = 0; c < m_; ++c) aug(r, c) = B(fq_pivots_[r], c);
    aug(r, m_ + r) = 1;
  }
  aug.rref();
  fq_solve_.assign(m_ * m_, 0);
  for (std::size_t r = 0; r < m_; ++r)
    for (std::size_t c = 0; c < m_; ++c) fq_solve_[r * m_ + c] = aug(r, m_ + c);
}

FqElem FieldTower::zero() const {
  FqElem z;
  z.tower_ = this;
  return z;
}

FqElem FieldTower::one() const { return from_int(1); }

FqElem FieldTower::from_int(std::int64_t v) const {
  FqElem z = zero();
  std::int64_t r = v % std::int64_t(p_);
  if (r < 0) r += p_;
  z.c_[0] = static_cast<std::uint16_t>(r);
  return z;
}

FqElem FieldTower::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() > n_) throw std::invalid_argument("from_coeffs: too many coordinates");
  FqElem z = zero();
  for (std::size_t i = 0; i < c.size(); ++i) z.c_[i] = static_cast<std::uint16_t>(c[i] % p_);
  return z;
}

FqElem FieldTower::generator() const {
  if (n_ == 1) {
    // F_p[x]/(x): the class of x is 0; use it anyway for uniformity.
    return zero();
  }
  FqElem z = zero();
  z.c_[1] = 1;
  return z;
}

FqElem FieldTower::fq(std::uint64_t k) const {
  if (k >= q_) throw std::out_of_range("fq: index outside F_q");
  FqElem r = zero();
  for (std::uint32_t i = 0; i < m_; ++i) {
    const std::uint32_t d = static_cast<std::uint32_t>(k % p_);
    k /= p_;
    if (d != 0) r += fq_basis_[i].scaled(d);
  }
  return r;
}

std::optional<std::uint64_t> FieldTower::fq_index(const FqElem& x) const {
  std::vector<std::uint32_t> digits(m_, 0);
  for (std::size_t r = 0; r < m_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < m_; ++c) acc += std::uint64_t(fq_solve_[r * m_ + c]) * x.c_[fq_pivots_[c]];
    digits[r] = static_cast<std::uint32_t>(acc % p_);
  }
  std::uint64_t k = 0;
  for (std::size_t i = m_; i-- > 0;) k = k * p_ + digits[i];
  if (fq(k) != x) return std::nullopt;
  return k;
}

bool FieldTower::in_subfield(const FqElem& x) const { return frobenius(x, 1) == x; }

FqElem FieldTower::apply_linear(const std::vector<std::uint16_t>& cols, const FqElem& x) const {
  std::array<std::uint64_t, kMaxDegree> acc{};
  for (std::size_t j = 0; j < n_; ++j) {
    const std::uint64_t xj = x.c_[j];
    if (xj == 0) continue;
    const std::uint16_t* col = &cols[j * n_];
    for (std::size_t i = 0; i < n_; ++i) acc[i] += xj * col[i];
  }
  FqElem r = zero();
  for (std::size_t i = 0; i < n_; ++i) r.c_[i] = static_cast<std::uint16_t>(acc[i] % p_);
  return r;
}

FqElem FieldTower::frobenius(const FqElem& x, std::uint64_t k) const {
  k %= M_;
  FqElem r = x;
  for (std::uint64_t i = 0; i < k; ++i) r = apply_linear(frob_q_, r);
  return r;
}

FqElem FieldTower::frobenius_p(const FqElem& x) const { return apply_linear(frob_p_, x); }

void FieldTower::mul_into(const FqElem& a, const FqElem& b, FqElem& out) const {
  const std::size_t n = n_;
  std::array<std::uint64_t, 2 * kMaxDegree> acc{};
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t ai = a.c_[i];
    if (ai == 0) continue;
    std::uint64_t* row = acc.data() + i;
    for (std::size_t j = 0; j < n; ++j) row[j] += ai * b.c_[j];
  }
  // Reduce from the top. Every partial sum stays far below 2^64 because
  // p < 2^16 and n <= kMaxDegree.
  for (std::size_t k = 2 * n - 1; k-- > n;) {
    const std::uint64_t c = acc[k] % p_;
    if (c == 0) continue;
    std::uint64_t* base = acc.data() + (k - n);
    for (const auto& [j, neg] : reduction_terms_) base[j] += c * neg;
  }
  out.tower_ = this;
  for (std::size_t i = 0; i < n; ++i) out.c_[i] = static_cast<std::uint16_t>(acc[i] % p_);
  for (std::size_t i = n; i < kMaxDegree; ++i) out.c_[i] = 0;
}

FqElem FieldTower::pow(const FqElem& x, std::uint64_t e) const {
  FqElem r = one();
  FqElem b = x;
  while (e != 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return r;
}

FqElem FieldTower::inverse(const FqElem& x) const {
  if (x.is_zero()) throw std::domain_error("inverse of zero");
  // Extended Euclid in F_p[x]: find s with s*a = 1 mod f.
  FpPoly a = x.coeffs();
  while (!a.empty() && a.back() == 0) a.pop_back();
  FpPoly r0 = modulus_, r1 = a;
  FpPoly s0{}, s1{1};
  auto trim = [](FpPoly& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  while (!r1.empty() && !(r1.size() == 1)) {
    // r0 = quo * r1 + rem
    FpPoly rem = r0;
    FpPoly quo(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
    const std::uint32_t li = fp::inv(r1.back(), p_);
    while (rem.size() >= r1.size() && !rem.empty()) {
      const std::uint32_t c = fp::mul(rem.back(), li, p_);
      const std::size_t shift = rem.size() - r1.size();
      quo[shift] = c;
      for (std::size_t j = 0; j < r1.size(); ++j)
        rem[shift + j] = fp::sub(rem[shift + j], fp::mul(c, r1[j], p_), p_);
      trim(rem);
    }
    trim(quo);
    // s2 = s0 - quo * s1
    FpPoly prod(quo.size() + s1.size(), 0);
    for (std::size_t i = 0; i < quo.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j)
        prod[i + j] = fp::add(prod[i + j], fp::mul(quo[i], s1[j], p_), p_);
    FpPoly s2(std::max(s0.size(), prod.size()), 0);
    for (std::size_t i = 0; i < s2.size(); ++i) {
      const std::uint32_t u = i < s0.size() ? s0[i] : 0;
      const std::uint32_t v = i < prod.size() ? prod[i] : 0;
      s2[i] = fp::sub(u, v, p_);
    }
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant c; s1 * a = c.
  const std::uint32_t ci = fp::inv(r1.at(0), p_);
  FqElem out = zero();
  for (std::size_t i = 0; i < s1.size(); ++i) out.c_[i] = static_cast<std::uint16_t>(fp::mul(s1[i], ci, p_));
  return out;
}

std::size_t FieldTower::degree_over_fq(const FqElem& x) const {
  FqElem y = x;
  for (std::size_t e = 1; e <= M_; ++e) {
    y = apply_linear(frob_q_, y);
    if (y == x) return e;
  }
  return M_;
}

std::vector<FqElem> FieldTower::subfield_basis(std::size_t e) const {
  if (e == 0 || n_ % e != 0) throw std::invalid_argument("subfield_basis: degree must divide m*M");
  // Kernel of x -> x^(p^e) - x.
  FpMatrix L = flatten_linear_map(*this, 1, 1, [&](std::span<const FqElem> v) {
    FqElem y = v[0];
    for (std::size_t i = 0; i < e; ++i) y = apply_linear(frob_p_, y);
    return std::vector<FqElem>{y - v[0]};
  });
  std::vector<FqElem> out;
  for (const auto& k : kernel_fp(L)) out.push_back(from_coeffs(k));
  return out;
}

std::vector<FqElem> FieldTower::roots_in_subfield(const FpPoly& f, std::size_t e) const {
  const std::vector<FqElem> basis = subfield_basis(e);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    count *= p_;
    if (count > (std::uint64_t(1) << 24)) throw PreconditionError("subfield too large to enumerate");
  }
  std::vector<FqElem> roots;
  std::vector<std::uint32_t> digits(basis.size(), 0);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t k = idx;
    FqElem z = zero();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const std::uint32_t d = static_cast<std::uint32_t>(k % p_);
      k /= p_;
      if (d != 0) z += basis[i].scaled(d);
    }
    // Horner
    FqElem acc = zero();
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * z + from_int(f[i]);
    if (acc.is_zero()) roots.push_back(z);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string FieldTower::describe() const {
  std::ostringstream os;
  os << "F_" << q_ << "^" << M_ << " (p=" << p_ << ", m=" << m_ << ", M=" << M_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// F_p linear algebra

std::vector<std::size_t> FpMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t piv = r;
    while (piv < rows_ && (*this)(piv, c) == 0) ++piv;
    if (piv == rows_) continue;
    if (piv != r)
      for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(piv, k), (*this)(r, k));
    const std::uint32_t s = fp::inv((*this)(r, c), p_);
    std::uint32_t* rowr = &a_[r * cols_];
    for (std::size_t k = c; k < cols_; ++k) rowr[k] = fp::mul(rowr[k], s, p_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      std::uint32_t* rowi = &a_[i * cols_];
      const std::uint32_t f = rowi[c];
      if (f == 0) continue;
      const std::uint32_t neg = p_ - f;
      for (std::size_t k = c; k < cols_; ++k)
        if (rowr[k] != 0) rowi[k] = static_cast<std::uint32_t>((rowi[k] + std::uint64_t(neg) * rowr[k]) % p_);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t FpMatrix::rank() const {
  FpMatrix w = *this;
  return w.rref().size();
}

std::vector<std::vector<std::uint32_t>> kernel_fp(FpMatrix m) {
  const std::vector<std::size_t> pivots = m.rref();
  const std::uint32_t p = m.p();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint32_t> v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = (p - m(r, f)) % p;
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<std::uint32_t>> solve_fp(FpMatrix L, std::span<const std::uint32_t> w) {
  if (w.size() != L.rows()) throw std::invalid_argument("solve_fp: right-hand side size mismatch");
  const std::uint32_t p = L.p();
  FpMatrix aug(L.rows(), L.cols() + 1, p);
  for (std::size_t r = 0; r < L.rows(); ++r) {
    for (std::size_t c = 0; c < L.cols(); ++c) aug(r, c) = L(r, c);
    aug(r, L.cols()) = w[r] % p;
  }
  const std::vector<std::size_t> pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == L.cols()) return std::nullopt;
  std::vector<std::uint32_t> z(L.cols(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) z[pivots[r]] = aug(r, L.cols());
  return z;
}

std::vector<std::uint32_t> flatten(std::span<const FqElem> v) {
  std::vector<std::uint32_t> out;
  if (v.empty()) return out;
  const std::size_t n = v[0].size();
  out.reserve(v.size() * n);
  for (const FqElem& x : v)
    for (std::size_t i = 0; i < n; ++i) out.push_back(x.coeff(i));
  return out;
}

std::vector<FqElem> unflatten(const FieldTower& K, std::span<const std::uint32_t> v) {
  const std::size_t n = K.degree();
  if (v.size() % n != 0) throw std::invalid_argument("unflatten: length not a multiple of the degree");
  std::vector<FqElem> out;
  for (std::size_t b = 0; b < v.size() / n; ++b) out.push_back(K.from_coeffs(v.subspan(b * n, n)));
  return out;
}

std::vector<std::vector<FqElem>> select_independent(const FieldTower& K,
                                                    const std::vector<std::vector<FqElem>>& candidates,
                                                    const std::vector<FqElem>& scalars) {
  std::vector<std::vector<FqElem>> kept;
  std::vector<std::vector<std::uint32_t>> span_rows;  // F_p-spanning set of the kept F-span
  std::size_t current_rank = 0;
  for (const auto& v : candidates) {
    std::vector<std::vector<std::uint32_t>> trial = span_rows;
    for (const FqElem& s : scalars) {
      std::vector<FqElem> sv;
      sv.reserve(v.size());
      for (const FqElem& x : v) sv.push_back(s * x);
      trial.push_back(flatten(sv));
    }
    FpMatrix M(trial.size(), trial.front().size(), K.p());
    for (std::size_t r = 0; r < trial.size(); ++r)
      for (std::size_t c = 0; c < trial[r].size(); ++c) M(r, c) = trial[r][c];
    const std::size_t rk = M.rank();
    if (rk > current_rank) {
      kept.push_back(v);
      span_rows = std::move(trial);
      current_rank = rk;
    }
  }
  return kept;
}

std::vector<std::vector<FqElem>> kernel_over_fq(const FieldTower& K, const FpMatrix& L, std::size_t blocks) {
  if (L.cols() != blocks * K.degree())
    throw std::invalid_argument("kernel_over_fq: column count does not match the flattened domain");
  std::vector<std::vector<FqElem>> fp_basis;
  for (const auto& k : kernel_fp(L)) fp_basis.push_back(unflatten(K, k));
  if (K.m() == 1 || fp_basis.empty()) return fp_basis;
  std::vector<FqElem> scalars;
  std::uint64_t digit = 1;
  for (std::uint32_t i = 0; i < K.m(); ++i, digit *= K.p()) scalars.push_back(K.fq(digit));
  return select_independent(K, fp_basis, scalars);
}

// ---------------------------------------------------------------------------
// Matrices over the ambient field

Matrix::Matrix(const FieldTower& K, std::size_t rows, std::size_t cols)
    : tower_(&K), rows_(rows), cols_(cols), a_(rows * cols, K.zero()) {}

Matrix Matrix::identity(const FieldTower& K, std::size_t n) {
  Matrix I(K, n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = K.one();
  return I;
}

Matrix Matrix::scalar(const FqElem& c, std::size_t n) {
  Matrix I(c.tower(), n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = c;
  return I;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const FqElem& x) { return x.is_zero(); });
}

bool Matrix::is_identity() const {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r == c ? !(*this)(r, c).is_one() : !(*this)(r, c).is_zero()) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  Matrix r(*a.tower_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const FqElem& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) r(i, j) += aik * b(k, j);
    }
  return r;
}

Matrix operator*(const FqElem& c, const Matrix& a) {
  Matrix r = a;
  for (auto& x : r.a_) x *= c;
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

Matrix Matrix::transposed() const {
  Matrix t(*tower_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<FqElem> Matrix::row(std::size_t r) const {
  return std::vector<FqElem>(a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                             a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

FqElem determinant(Matrix a) {
  if (!a.square()) throw std::invalid_argument("determinant of a non-square matrix");
  const FieldTower& K = a.tower();
  const std::size_t n = a.rows();
  FqElem det = K.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) return K.zero();
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(piv, k), a(c, k));
      det = -det;
    }
    det *= a(c, c);
    const FqElem inv = K.inverse(a(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      const FqElem f = a(r, c) * inv;
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

std::size_t rank(Matrix a) {
  const FieldTower& K = a.tower();
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(piv, k), a(r, k));
    const FqElem inv = K.inverse(a(r, c));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c).is_zero()) continue;
      const FqElem f = a(i, c) * inv;
      for (std::size_t k = c; k < a.cols(); ++k) a(i, k) -= f * a(r, k);
    }
    ++r;
  }
  return r;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.square()) throw std::invalid_argument("inverse of a non-square matrix");
  const FieldTower& K = a.tower();
  const std::size_t n = a.rows();
  Matrix w = a;
  Matrix inv = Matrix::identity(K, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && w(piv, c).is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != c)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(w(piv, k), w(c, k));
        std::swap(inv(piv, k), inv(c, k));
      }
    const FqElem s = K.inverse(w(c, c));
    for (std::size_t k = 0; k < n; ++k) {
      w(c, k) *= s;
      inv(c, k) *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || w(r, c).is_zero()) continue;
      const FqElem f = w(r, c);
      for (std::size_t k = 0; k < n; ++k) {
        w(r, k) -= f * w(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

Matrix frobenius(const Matrix& a, std::uint64_t k) {
  Matrix r = a;
  const FieldTower& K = a.tower();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = K.frobenius(a(i, j), k);
  return r;
}

}  // namespace dzeta
