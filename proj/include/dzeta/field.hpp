#pragma once

// Exact arithmetic in a tower F_p ⊂ F_q ⊂ F_{q^M}, plus the F_p / F_q linear
// algebra used for every semilinear solve in the library.
//
// The ambient field is F_p[x]/(f) with f the lexicographically least monic
// irreducible of degree m*M (coefficients compared from the constant term up).
// Elements carry a raw pointer to their tower; the tower must outlive them.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dzeta/error.hpp"

namespace dzeta {

/// Largest supported absolute degree m*M of the ambient field.
inline constexpr std::size_t kMaxDegree = 128;

using FpPoly = std::vector<std::uint32_t>;  // low degree first

namespace fp {

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  const std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}
std::uint32_t inv(std::uint32_t a, std::uint32_t p);
bool is_prime(std::uint64_t n);

/// Rabin irreducibility test for a monic polynomial over F_p.
bool is_irreducible(const FpPoly& f, std::uint32_t p);

/// Lexicographically least monic irreducible of degree n over F_p, with the
/// constant term compared first. Returned with its leading 1.
FpPoly canonical_modulus(std::uint32_t p, std::size_t n);

}  // namespace fp

class FieldTower;

/// An element of the ambient field F_{q^M}, stored as power-basis coordinates
/// over F_p with respect to the tower modulus.
class FqElem {
 public:
  FqElem() = default;

  const FieldTower& tower() const { return *tower_; }
  const FieldTower* tower_ptr() const { return tower_; }
  std::size_t size() const;
  std::uint32_t coeff(std::size_t i) const { return c_[i]; }
  std::vector<std::uint32_t> coeffs() const;

  bool is_zero() const;
  bool is_one() const;
  bool in_prime_field() const;

  FqElem& operator+=(const FqElem& o);
  FqElem& operator-=(const FqElem& o);
  FqElem& operator*=(const FqElem& o);

  friend FqElem operator+(FqElem a, const FqElem& b) { return a += b; }
  friend FqElem operator-(FqElem a, const FqElem& b) { return a -= b; }
  friend FqElem operator*(FqElem a, const FqElem& b) { return a *= b; }
  friend FqElem operator/(const FqElem& a, const FqElem& b);
  FqElem operator-() const;

  friend bool operator==(const FqElem& a, const FqElem& b);
  friend bool operator!=(const FqElem& a, const FqElem& b) { return !(a == b); }
  /// Coordinate-wise lexicographic order, constant coordinate first.
  friend bool operator<(const FqElem& a, const FqElem& b);

  /// Multiply by an element of the prime field (cheaper than a full product).
  FqElem scaled(std::uint32_t c) const;

 private:
  friend class FieldTower;
  const FieldTower* tower_ = nullptr;
  std::array<std::uint16_t, kMaxDegree> c_{};
};

class FieldTower {
 public:
  /// Builds F_{p^(m*M)} on the canonical modulus. Throws ConfigError on bad
  /// parameters (p not prime, degree above kMaxDegree, ...).
  static std::shared_ptr<const FieldTower> create(std::uint32_t p, std::uint32_t m,
                                                  std::uint32_t M);
  /// Same, on an explicit monic modulus (verified irreducible).
  static std::shared_ptr<const FieldTower> create(std::uint32_t p, std::uint32_t m,
                                                  std::uint32_t M, FpPoly modulus);

  FieldTower(const FieldTower&) = delete;
  FieldTower& operator=(const FieldTower&) = delete;

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t M() const { return M_; }
  std::size_t degree() const { return n_; }  // m*M
  std::uint64_t q() const { return q_; }
  const FpPoly& modulus() const { return modulus_; }

  FqElem zero() const;
  FqElem one() const;
  FqElem from_int(std::int64_t v) const;  // image of an integer in F_p
  FqElem from_coeffs(std::span<const std::uint32_t> c) const;
  FqElem generator() const;  // class of x

  /// The k-th element of F_q, 0 <= k < q: base-p digits of k on the basis
  /// 1, w, ..., w^(m-1) where w is the least root of the canonical degree-m
  /// irreducible. For m = 1 this is just k mod p.
  FqElem fq(std::uint64_t k) const;
  /// Inverse of fq(); nullopt when x is not in F_q.
  std::optional<std::uint64_t> fq_index(const FqElem& x) const;
  bool in_subfield(const FqElem& x) const;  // x^q == x

  /// x^(q^k). Periodic in k with period M.
  FqElem frobenius(const FqElem& x, std::uint64_t k = 1) const;
  /// x^p.
  FqElem frobenius_p(const FqElem& x) const;
  FqElem pow(const FqElem& x, std::uint64_t e) const;
  FqElem inverse(const FqElem& x) const;  // throws on zero
  /// Smallest e >= 1 with x^(q^e) == x, i.e. [F_q(x) : F_q].
  std::size_t degree_over_fq(const FqElem& x) const;

  /// F_p-basis of the unique subfield of absolute degree e (e | m*M).
  std::vector<FqElem> subfield_basis(std::size_t e) const;
  /// All roots in the ambient field of a polynomial over F_p whose roots lie in
  /// the subfield of absolute degree e; sorted by operator<.
  std::vector<FqElem> roots_in_subfield(const FpPoly& f, std::size_t e) const;

  std::string describe() const;

 private:
  FieldTower(std::uint32_t p, std::uint32_t m, std::uint32_t M, FpPoly modulus);
  friend class FqElem;

  void mul_into(const FqElem& a, const FqElem& b, FqElem& out) const;
  FqElem apply_linear(const std::vector<std::uint16_t>& cols, const FqElem& x) const;
  void init_subfield_basis();

  std::uint32_t p_, m_, M_;
  std::size_t n_;
  std::uint64_t q_;
  FpPoly modulus_;
  std::vector<std::pair<std::size_t, std::uint32_t>> reduction_terms_;  // (j, p - f_j)
  std::vector<std::uint16_t> frob_p_;  // n x n, column-major: column j = (x^j)^p
  std::vector<std::uint16_t> frob_q_;  // n x n, column j = (x^j)^q
  std::vector<FqElem> fq_basis_;       // 1, w, ..., w^(m-1)
  std::vector<std::size_t> fq_pivots_; // coordinates used to read F_q digits
  std::vector<std::uint32_t> fq_solve_; // m x m inverse on the pivot coordinates
};

// ---------------------------------------------------------------------------
// Linear algebra over F_p (flattened coordinates).

/// Dense matrix over F_p, row-major.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
      : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  std::uint32_t operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  /// In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> a_;
};

/// Kernel basis over F_p in reduced echelon form (one vector per free column,
/// free columns in increasing order).
std::vector<std::vector<std::uint32_t>> kernel_fp(FpMatrix m);

/// One solution of L z = w over F_p with all free variables set to zero.
std::optional<std::vector<std::uint32_t>> solve_fp(FpMatrix L, std::span<const std::uint32_t> w);

/// Flattening convention: an ambient element is a column of m*M residues; a
/// vector of ambient elements concatenates the blocks in index order.
std::vector<std::uint32_t> flatten(std::span<const FqElem> v);
std::vector<FqElem> unflatten(const FieldTower& K, std::span<const std::uint32_t> v);

/// Matrix over F_p of an F_p-linear map K^in_blocks -> K^out_blocks, obtained
/// by evaluating it on the flattened standard basis.
template <class LinearMap>
FpMatrix flatten_linear_map(const FieldTower& K, std::size_t in_blocks, std::size_t out_blocks,
                            LinearMap&& f);

/// F_q-basis of the kernel of an F_q-linear map given in flattened F_p
/// coordinates. Each returned vector has `blocks` ambient entries. For m = 1
/// this is the reduced echelon basis; for m > 1, echelon vectors are kept
/// greedily when they are F_q-independent of those already kept.
/// Throws std::invalid_argument when L.cols() != blocks * m * M.
std::vector<std::vector<FqElem>> kernel_over_fq(const FieldTower& K, const FpMatrix& L,
                                                std::size_t blocks);

/// Greedy selection from `candidates` (in order) of vectors independent over
/// the subfield of absolute degree `e` (given by an F_p-basis `scalars`).
std::vector<std::vector<FqElem>> select_independent(const FieldTower& K,
                                                    const std::vector<std::vector<FqElem>>& candidates,
                                                    const std::vector<FqElem>& scalars);

// ---------------------------------------------------------------------------
// Matrices over the ambient field.

class Matrix {
 public:
  Matrix() = default;
  Matrix(const FieldTower& K, std::size_t rows, std::size_t cols);
  static Matrix identity(const FieldTower& K, std::size_t n);
  static Matrix scalar(const FqElem& c, std::size_t n);

  const FieldTower& tower() const { return *tower_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  FqElem& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const FqElem& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool is_zero() const;
  bool is_identity() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const FqElem& c, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix transposed() const;
  std::vector<FqElem> row(std::size_t r) const;

 private:
  const FieldTower* tower_ = nullptr;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<FqElem> a_;
};

FqElem determinant(Matrix a);
std::size_t rank(Matrix a);
std::optional<Matrix> inverse(const Matrix& a);
/// Entrywise x -> x^(q^k).
Matrix frobenius(const Matrix& a, std::uint64_t k = 1);

// ---------------------------------------------------------------------------

template <class LinearMap>
FpMatrix flatten_linear_map(const FieldTower& K, std::size_t in_blocks, std::size_t out_blocks,
                            LinearMap&& f) {
  const std::size_t n = K.degree();
  FpMatrix L(out_blocks * n, in_blocks * n, K.p());
  std::vector<FqElem> e(in_blocks, K.zero());
  std::vector<std::uint32_t> unit(n, 0);
  for (std::size_t b = 0; b < in_blocks; ++b) {
    for (std::size_t j = 0; j < n; ++j) {
      unit.assign(n, 0);
      unit[j] = 1;
      e[b] = K.from_coeffs(unit);
      const std::vector<FqElem> img = f(std::span<const FqElem>(e));
      if (img.size() != out_blocks) throw std::invalid_argument("flatten_linear_map: bad image size");
      for (std::size_t ob = 0; ob < out_blocks; ++ob)
        for (std::size_t i = 0; i < n; ++i) L(ob * n + i, b * n + j) = img[ob].coeff(i);
      e[b] = K.zero();
    }
  }
  return L;
}

}  // namespace dzeta
