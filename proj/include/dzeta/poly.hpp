#pragma once

// Polynomials in t over the ambient field, and matrices over K[t] stored as
// coefficient lists (entry k is the matrix coefficient of t^k).

#include <cstddef>
#include <string>
#include <vector>

#include "dzeta/field.hpp"

namespace dzeta {

class Poly {
 public:
  Poly() = default;
  explicit Poly(const FieldTower& K) : tower_(&K) {}
  Poly(const FieldTower& K, std::vector<FqElem> coeffs);
  static Poly constant(const FqElem& c);
  static Poly monomial(const FqElem& c, std::size_t deg);
  /// t - a
  static Poly linear(const FqElem& a);

  const FieldTower& tower() const { return *tower_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  FqElem coeff(std::size_t k) const;
  const std::vector<FqElem>& coeffs() const { return c_; }
  /// True when every coefficient lies in F_q.
  bool over_fq() const;

  FqElem operator()(const FqElem& x) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const FqElem& c, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Remainder modulo a monic polynomial.
  Poly mod(const Poly& monic) const;
  /// Quotient by a monic polynomial (remainder discarded).
  Poly div(const Poly& monic) const;
  /// Coefficients of the expansion in u = t - a: returns g with g(u) = f(u + a).
  Poly taylor_shift(const FqElem& a) const;
  /// Keeps the terms of degree < k.
  Poly truncated(std::size_t k) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  const FieldTower* tower_ = nullptr;
  std::vector<FqElem> c_;
};

/// Inverse of a power series modulo u^k; throws when the constant term is 0.
Poly series_inverse(const Poly& f, std::size_t k);

/// Parses things like "t+1", "2t^2+t", "t" with integer coefficients mapped into
/// F_q through FieldTower::fq. Throws ConfigError.
Poly parse_fq_poly(const FieldTower& K, const std::string& text, char var = 't');

using MatPoly = std::vector<Matrix>;

/// Product of matrix polynomials (no reduction).
MatPoly matpoly_mul(const MatPoly& a, const MatPoly& b);
MatPoly matpoly_add(const MatPoly& a, const MatPoly& b);
/// Entrywise reduction modulo a monic polynomial; result has exactly deg(p)
/// coefficient matrices (zero-padded).
MatPoly matpoly_mod(const MatPoly& a, const Poly& monic);
/// (a * b) mod monic.
MatPoly matpoly_mulmod(const MatPoly& a, const MatPoly& b, const Poly& monic);
/// Multiplies every coefficient matrix entrywise by a scalar polynomial.
MatPoly matpoly_scale(const Poly& s, const MatPoly& a);
/// Entry (r, c) as a polynomial.
Poly matpoly_entry(const MatPoly& a, std::size_t r, std::size_t c);
/// Entrywise Taylor expansion at a, truncated to k terms (jets in u = t - a).
MatPoly matpoly_jet(const MatPoly& a, const FqElem& at, std::size_t k);
/// Evaluation at a point.
Matrix matpoly_eval(const MatPoly& a, const FqElem& at);
/// Drops trailing zero coefficient matrices (keeps at least one).
MatPoly matpoly_trimmed(MatPoly a);
/// Frobenius x -> x^(q^k) applied to every coefficient.
MatPoly matpoly_frobenius(const MatPoly& a, std::uint64_t k);
/// Inverse of a matrix power series modulo u^k; nullopt when the constant
/// term is singular.
std::optional<MatPoly> matpoly_series_inverse(const MatPoly& a, std::size_t k);
/// (a * b) truncated modulo u^k.
MatPoly matpoly_mul_trunc(const MatPoly& a, const MatPoly& b, std::size_t k);

}  // namespace dzeta
