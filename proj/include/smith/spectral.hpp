#pragma once

// Spectral sequences of filtered complexes: the action filtration of a
// Floer-type complex, and the u-adic filtration of an equivariant model
// V<1, θ> with differential Σ u^k d^i_α.

#include "smith/complex.hpp"
#include "smith/tate.hpp"

#include <map>
#include <optional>
#include <vector>

namespace smith {

// ---------------------------------------------------------------------------
// Action filtration

/// One page E_r. dims[k][s] is dim E_r^{s} in degree k; ranks[k][s] is the
/// rank of d_r leaving E_r^{s} in degree k. Filtration index s runs over
/// 0..L-1 with s = 0 the highest action level.
struct Page {
  int r = 0;
  std::map<int, std::vector<std::size_t>> dims;
  std::map<int, std::vector<std::size_t>> ranks;

  std::size_t total() const;
  std::map<int, std::size_t> total_by_degree() const;
};

struct SpectralSequencePages {
  std::vector<Rational> levels;  // distinct actions, ascending
  std::vector<Page> pages;       // r = 0..L; the last page is E_∞

  const Page& infinity() const { return pages.back(); }
};

/// The filtered complex is c with its generator actions (σ is ignored).
/// Throws FiltrationViolation unless d strictly decreases action, or, with
/// strict = false, does not increase it.
SpectralSequencePages action_ss_pages(const EquivariantComplex& c, bool strict = true);

// ---------------------------------------------------------------------------
// Algebraic filtration

struct DTerm {
  int i = 0;
  int alpha = 0;
  FpMatrix matrix;
};

/// Base complex V (d = d^0_0, σ) and the maps d^i_α, |d^i_α x| = |x|+1-i+α.
/// Terms not supplied default to d^1_1 = -d, d^1_0 = 1-σ, d^2_1 = N and zero
/// otherwise; supplying d^0_0 is an error.
struct EquivariantFloerModel {
  EquivariantComplex base;
  std::vector<DTerm> terms;
  int i_max = 2;
};

/// Every d^i_α after defaults, keyed by (i, α).
std::map<std::pair<int, int>, FpMatrix> effective_terms(const EquivariantFloerModel& m);

/// Throws MalformedInput for a supplied d^0_0, duplicate terms, wrong shapes,
/// α outside {0,1}, i outside [0, i_max], d^1_1 != -d or entries breaking the
/// degree rule.
void check_model_shape(const EquivariantFloerModel& m);

/// Action invariants of the model: d^0_0 and d^1_1 strictly decrease action,
/// every other term does not increase it.
ValidationReport validate_model_actions(const EquivariantFloerModel& m);

/// d^{Z/pZ} on V<1, θ> over F_p(u), basis as in TateComplexView:
///   (x⊗1 -> ⊗1) Σ u^k d^{2k}_0,  (x⊗1 -> ⊗θ) Σ u^k d^{2k+1}_0,
///   (x⊗θ -> ⊗θ) Σ u^k d^{2k+1}_1, (x⊗θ -> ⊗1) Σ_{k>=1} u^k d^{2k}_1.
RatFunMatrix assemble_differential(const EquivariantFloerModel& m);

struct AlgebraicPages {
  std::size_t homology_dim = 0;
  std::vector<int> homology_degrees;
  FpMatrix d10_induced{Prime(2), 0, 0};  // [d^1_0] on H(V, d^0_0)
  FpMatrix d21_induced{Prime(2), 0, 0};  // [d^2_1]
  /// E_2 summed along total degree a + |x|, for min(0, lowest) <= k <= max_degree.
  std::map<int, std::size_t> e2_by_degree;
  TateDims e2_tate;        // Tate part of E_2, over F_p(u)
  TateDims e_infinity;     // homology of the assembled differential over F_p(u)
  /// [d^1_0] = 1 - σ* and [d^2_1] = N* for σ* induced by the base σ.
  bool matches_sigma = false;
  /// E_2 equals H*(Z/pZ; H(V)) for the action 1 - [d^1_0]; empty when that
  /// map does not have order p.
  std::optional<bool> matches_group_cohomology;
  bool tate_bound_holds = false;  // E_∞ <= E_2 Tate part, per parity
};

/// Throws NotSquareZero if the assembled differential does not square to zero.
AlgebraicPages algebraic_ss_pages(const EquivariantFloerModel& m,
                                  std::optional<int> max_degree = std::nullopt);

/// Model of a genuine action twisted by Φ = 1 + uA, where A lowers total
/// degree by 2: every d^i_α is read off Φ d̂ Φ^{-1}.
EquivariantFloerModel conjugated_model(const EquivariantComplex& base,
                                       const FpMatrix& a_on_v_1_theta);

}  // namespace smith
