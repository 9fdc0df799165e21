#pragma once

// The twisted polynomial ring K{sigma} with sigma * b = b^q * sigma, and its
// elements viewed as F_q-linear maps z -> sum b_i z^(q^i).

#include <optional>
#include <string>
#include <vector>

#include "dzeta/field.hpp"

namespace dzeta {

class OrePoly {
 public:
  OrePoly() = default;
  explicit OrePoly(const FieldTower& K) : tower_(&K) {}
  OrePoly(const FieldTower& K, std::vector<FqElem> coeffs);
  static OrePoly constant(const FqElem& c);
  /// c * sigma^k
  static OrePoly monomial(const FqElem& c, std::size_t k);
  static OrePoly sigma(const FieldTower& K) { return monomial(K.one(), 1); }

  const FieldTower& tower() const { return *tower_; }
  const std::vector<FqElem>& coeffs() const { return c_; }
  FqElem coeff(std::size_t i) const;
  /// -1 for zero.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  OrePoly& operator+=(const OrePoly& o);
  OrePoly& operator-=(const OrePoly& o);
  friend OrePoly operator+(OrePoly a, const OrePoly& b) { return a += b; }
  friend OrePoly operator-(OrePoly a, const OrePoly& b) { return a -= b; }
  friend OrePoly operator*(const OrePoly& f, const OrePoly& g) { return ore_mul(f, g); }
  friend bool operator==(const OrePoly& a, const OrePoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const OrePoly& a, const OrePoly& b) { return !(a == b); }

  friend OrePoly ore_mul(const OrePoly& f, const OrePoly& g);

  /// Every coefficient raised to the q^k-th power.
  OrePoly twisted(std::uint64_t k) const;

  std::string to_string() const;

 private:
  void trim();
  const FieldTower* tower_ = nullptr;
  std::vector<FqElem> c_;
};

OrePoly ore_mul(const OrePoly& f, const OrePoly& g);

/// sum b_i z^(q^i)
FqElem ore_eval(const OrePoly& f, const FqElem& z);

/// F_q-basis of the roots of f in the ambient field; throws on f = 0.
std::vector<FqElem> additive_kernel(const OrePoly& f);

/// One z with f(z) = w (free coordinates set to zero), or nullopt when w is
/// not in the image. Throws on f = 0.
std::optional<FqElem> additive_preimage(const OrePoly& f, const FqElem& w);

/// F_p matrix of z -> f(z) in flattened coordinates.
FpMatrix ore_matrix(const OrePoly& f);

}  // namespace dzeta
