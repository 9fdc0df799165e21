#pragma once

// Membership in the zeta correspondence for pairs of level data, the rank-1
// theta criterion, and exhaustive scans over graphs of g . F^i.

#include <cstdint>
#include <optional>
#include <vector>

#include "dzeta/level.hpp"

namespace dzeta {

struct TransferResult {
  MatPoly a_poly;   // A_0 .. A_{d-1}, A(t) = Delta_target^{-1} Delta_source mod p(t)
  Matrix residual;  // Delta_inf(source) - Delta_inf(target) A_{d-1}
  bool member = false;
  /// Delta_inf(target) A_{d-1} Delta_inf(source)^{-1} - Id, when Delta_inf(source) is invertible.
  std::optional<Matrix> normalized;
};

/// Throws PreconditionError("singular D-part") when Delta_target(t) is not a unit mod p(t).
TransferResult transfer(const LevelData& source, const LevelData& target);

bool zeta_member(const LevelData& source, const LevelData& target, TransferResult* certificate = nullptr);

/// Rank 1 only: Delta_inf equals the t^{d-1} coefficient of Delta(t).
bool theta_member_rank1(const LevelData& L);

/// Rank-1 quotient (Delta_source / Delta_target mod p, nu_source / nu_target).
LevelData rank1_quotient(const LevelData& source, const LevelData& target);

// ---------------------------------------------------------------------------
// Group enumeration modulo global scalars.

/// Enumerates GL_n(F_q)_inf x prod_i GL_n(F_q[t]/(t - alpha_i)^r_i) modulo F_q^x,
/// taking as representatives the elements whose g_inf has first nonzero entry
/// (row-major) equal to 1. Index = mixed radix with the infinity part most
/// significant, then the points in divisor order.
class GroupEnumerator {
 public:
  GroupEnumerator(const FieldTower& K, std::size_t n, const DivisorSpec& div);

  std::uint64_t size() const { return size_; }
  std::size_t components() const { return radix_.size(); }
  std::uint64_t component_size(std::size_t c) const { return radix_[c]; }
  /// Digits of a global index, one per component.
  std::vector<std::uint64_t> digits(std::uint64_t index) const;
  std::uint64_t index(const std::vector<std::uint64_t>& digits) const;
  /// Component 0 is g_inf (as a 1-term jet), component c >= 1 is the jet at point c-1.
  MatPoly component_element(std::size_t c, std::uint64_t e) const;
  GroupElement element(std::uint64_t index) const;
  /// Index of a representative of g's class, or nullopt if g is not in the group.
  std::optional<std::uint64_t> find(const GroupElement& g) const;

  const std::vector<std::vector<std::uint64_t>>& gl() const { return gl_; }

 private:
  Matrix fq_matrix(const std::vector<std::uint64_t>& entries) const;

  const FieldTower* K_;
  std::size_t n_;
  DivisorSpec div_;
  std::vector<std::vector<std::uint64_t>> gl_;        // GL_n(F_q), entries as F_q indices
  std::vector<std::size_t> inf_reps_;                 // indices into gl_
  std::vector<std::uint64_t> radix_;
  std::uint64_t size_ = 1;
};

struct ScanOptions {
  std::uint64_t cap = 1'000'000;  // largest admissible group size (modulo scalars)
  std::optional<std::uint64_t> i_max;  // defaults to n(d-1)
  bool keep_residuals = false;
};

struct CensusEntry {
  std::uint64_t g;  // GroupEnumerator index
  std::uint64_t i;
  bool member = false;
  std::optional<Matrix> residual;
};

struct Census {
  std::vector<CensusEntry> entries;  // ordered by (i, g)
  std::vector<CensusEntry> members() const;
};

/// Serial reference: act_group / act_frobenius / transfer for every (g, i).
Census scan_graphs_reference(const LevelData& x, const ScanOptions& opts = {});

/// Linearized kernel: the residual is F_q-linear in the entries of g, so
/// per-component contributions are precomputed and summed; OpenMP over g.
Census scan_graphs(const LevelData& x, const ScanOptions& opts = {});

}  // namespace dzeta
