#pragma once

// F_p[Z/pZ]-modules as sums of Jordan blocks F_p[t]/(t^k), t = σ - 1, and the
// Smith inequality chain built from their multiplicities.

#include "smith/fp.hpp"

#include <vector>

namespace smith {

struct ModuleDecomposition {
  Prime p;
  std::vector<std::size_t> m;  // m[k-1] = number of blocks of size k, k = 1..p

  std::size_t multiplicity(std::size_t k) const { return m.at(k - 1); }
  std::size_t dim() const;
};

/// Throws NotOrderP unless σ^p = 1.
ModuleDecomposition decompose(const FpMatrix& sigma);

struct TateInvariantDims {
  std::size_t tate_dim = 0;       // 2 (m_1 + ... + m_{p-1})
  std::size_t invariant_dim = 0;  // m_1 + ... + m_p
};

TateInvariantDims tate_and_invariant_dims(const ModuleDecomposition& d);

/// hf <= m_1 + ... + m_{p-1} <= dim H^G <= dim H, plus the classical
/// hf <= dim H^G.
struct ChainReport {
  std::size_t hf_dim = 0;
  std::size_t sharpened = 0;
  std::size_t invariants = 0;
  std::size_t total = 0;
  ModuleDecomposition decomposition;

  bool sharpened_bound() const { return hf_dim <= sharpened; }
  bool middle() const { return sharpened <= invariants; }
  bool upper() const { return invariants <= total; }
  bool classical_bound() const { return hf_dim <= invariants; }
  /// The sharpened middle term is strictly below the invariant dimension.
  bool strictly_stronger() const { return sharpened < invariants; }
  bool all_hold() const { return sharpened_bound() && middle() && upper() && classical_bound(); }
};

ChainReport smith_chain_check(std::size_t hf_phi_dim, const FpMatrix& sigma_on_hf_phi_p);

}  // namespace smith
