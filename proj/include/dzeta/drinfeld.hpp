#pragma once

// Rank-n Drinfeld modules phi_t = sigma^n + a_{n-1} sigma^{n-1} + ... + a_1 sigma + theta,
// rational divisors on A^1 over F_q, torsion jet bases and the isogeny test.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dzeta/field.hpp"
#include "dzeta/ore.hpp"
#include "dzeta/poly.hpp"

namespace dzeta {

struct DivisorPoint {
  std::uint64_t alpha;  // element index in F_q (see FieldTower::fq)
  std::uint32_t r;      // multiplicity
  friend bool operator==(const DivisorPoint&, const DivisorPoint&) = default;
};

class DivisorSpec {
 public:
  DivisorSpec() = default;
  /// Throws ConfigError on repeated points or zero multiplicities or an empty list.
  explicit DivisorSpec(std::vector<DivisorPoint> points);
  /// "a1:r1,a2:r2,..." ; ":r" may be omitted for r = 1.
  static DivisorSpec parse(const std::string& text);

  const std::vector<DivisorPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  std::size_t degree() const;
  /// Throws ConfigError when some alpha is not below q.
  void check_against(std::uint64_t q) const;

  FqElem alpha(const FieldTower& K, std::size_t i) const { return K.fq(points_[i].alpha); }
  /// p(t) = prod (t - alpha_i)^r_i
  Poly poly(const FieldTower& K) const;
  std::string to_string() const;

  friend bool operator==(const DivisorSpec&, const DivisorSpec&) = default;

 private:
  std::vector<DivisorPoint> points_;
};

class DrinfeldModule {
 public:
  /// a holds a_1, ..., a_{n-1}.
  DrinfeldModule(std::size_t n, FqElem theta, std::vector<FqElem> a);

  std::size_t rank() const { return n_; }
  const FqElem& theta() const { return theta_; }
  const std::vector<FqElem>& a() const { return a_; }
  /// a_k for 1 <= k <= n-1.
  const FqElem& a(std::size_t k) const { return a_.at(k - 1); }
  const FieldTower& tower() const { return theta_.tower(); }

  const OrePoly& phi_t() const { return phi_t_; }
  /// The module with every coefficient replaced by its q^k-th power.
  DrinfeldModule twisted(std::uint64_t k) const;

  friend bool operator==(const DrinfeldModule& x, const DrinfeldModule& y) {
    return x.n_ == y.n_ && x.theta_ == y.theta_ && x.a_ == y.a_;
  }

 private:
  std::size_t n_;
  FqElem theta_;
  std::vector<FqElem> a_;
  OrePoly phi_t_;
};

/// phi_a for a in F_q[t] (coefficients must lie in F_q).
OrePoly phi(const DrinfeldModule& dm, const Poly& a);

struct TorsionData {
  /// jets[i][h][j] = alpha_{j,h} at point i (j = 0..n-1, h = 0..r_i-1)
  std::vector<std::vector<std::vector<FqElem>>> jets;
  std::size_t rank() const { return jets.empty() || jets[0].empty() ? 0 : jets[0][0].size(); }
};

/// F_q-dimension of ker phi_{p(t)}.
std::size_t torsion_dimension(const DrinfeldModule& dm, const DivisorSpec& div);

/// Jet bases at every point. Throws PreconditionError("characteristic meets divisor")
/// when p(theta) = 0 and PreconditionError("ambient too small") when the torsion
/// does not split in the ambient field.
TorsionData torsion_basis(const DrinfeldModule& dm, const DivisorSpec& div);

/// u phi_t = psi_t u
bool is_isogeny(const OrePoly& u, const DrinfeldModule& dm1, const DrinfeldModule& dm2);

// ---------------------------------------------------------------------------
// Tower-independent description of a module, used to search for an ambient
// field large enough for a given divisor.

struct ModuleParams {
  std::uint32_t p = 3;
  std::uint32_t m = 1;
  std::size_t n = 1;
  /// "auto" (= "degree:4"), "degree:k", "fq:k", "random:k", or a JSON array of
  /// coordinates (valid for one fixed M only).
  std::string theta = "auto";
  /// coeff_polys[k-1] lists the F_q-indices of q_k, low degree first, and a_k = q_k(theta).
  std::vector<std::vector<std::uint64_t>> coeff_polys;
  std::uint64_t seed = 1;

  std::uint64_t q() const;
  /// Required divisor of M implied by the theta spec (1 if none).
  std::uint32_t theta_degree() const;
};

/// Resolves a theta spec inside a given tower. Throws ConfigError / PreconditionError.
FqElem resolve_theta(const FieldTower& K, const std::string& spec, std::uint64_t seed);
DrinfeldModule instantiate(const ModuleParams& params, const FieldTower& K);

struct ExtensionSearch {
  std::uint32_t M;
  std::shared_ptr<const FieldTower> tower;
  std::vector<std::uint32_t> tried;
};

/// Smallest M among multiples of lcm(theta degree, n) with m*M <= max_degree for
/// which torsion_basis and solve_nu both succeed. Throws PreconditionError
/// ("cap exceeded") otherwise.
ExtensionSearch sufficient_extension(const ModuleParams& params, const DivisorSpec& div,
                                     std::size_t max_degree = kMaxDegree);

}  // namespace dzeta
