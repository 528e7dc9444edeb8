#pragma once

// Z-graded cochain complexes over F_p with a Z/pZ-action and an action value
// per generator.

#include "smith/fp.hpp"
#include "smith/rational.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smith {

struct Generator {
  std::string id;
  int degree = 0;
  Rational action{0};
};

/// Basis, differential d (degree +1) and automorphism sigma (degree 0).
/// Column j of d is d applied to generator j. Immutable once built.
class EquivariantComplex {
 public:
  /// sigma defaults to the identity. Throws DimensionMismatch or
  /// ModulusMismatch on inconsistent shapes; everything else is left to
  /// validate().
  EquivariantComplex(Prime p, std::vector<Generator> generators, FpMatrix d,
                     std::optional<FpMatrix> sigma = std::nullopt);

  /// The zero complex over F_p.
  static EquivariantComplex zero(Prime p);

  Prime modulus() const { return p_; }
  Index size() const { return static_cast<Index>(gens_.size()); }
  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& generator(Index i) const { return gens_[static_cast<std::size_t>(i)]; }
  const FpMatrix& d() const { return d_; }
  const FpMatrix& sigma() const { return sigma_; }

  std::optional<Index> index_of(const std::string& id) const;
  /// Distinct degrees present, ascending.
  std::vector<int> degrees() const;
  std::vector<Index> indices_in_degree(int k) const;
  std::vector<int> degree_list() const;

  /// Same complex with a different sigma.
  EquivariantComplex with_sigma(FpMatrix sigma) const;

 private:
  Prime p_;
  std::vector<Generator> gens_;
  FpMatrix d_;
  FpMatrix sigma_;
};

struct Violation {
  std::string invariant;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  bool has(const std::string& invariant) const;
};

namespace invariant {
inline constexpr const char* kDuplicateId = "duplicate generator id";
inline constexpr const char* kSquareZero = "d squared nonzero";
inline constexpr const char* kDegree = "d not of degree +1";
inline constexpr const char* kOrder = "sigma^p not identity";
inline constexpr const char* kCommutes = "sigma does not commute with d";
inline constexpr const char* kSigmaDegree = "sigma does not preserve degree";
inline constexpr const char* kSigmaAction = "sigma does not preserve action";
inline constexpr const char* kActionDecrease = "action not strictly decreased";
}  // namespace invariant

/// Every violated invariant, with the offending generators. With
/// check_action = false the two action invariants are skipped; algebraic
/// constructions only need the others.
ValidationReport validate(const EquivariantComplex& c, bool check_action = true);

/// Throws InvalidComplex listing the violations, if any.
void require_valid(const EquivariantComplex& c, bool check_action, const std::string& context);

/// Homology dimension per degree of a graded map of degree +1, given the
/// degree of each basis vector. Degrees with no generators are omitted.
/// Throws FiltrationViolation unless d strictly decreases action (or, with
/// strict = false, does not increase it).
void require_action_filtration(const EquivariantComplex& c, bool strict = true);

std::map<int, std::size_t> graded_homology_dims(const std::vector<int>& degrees,
                                                const FpMatrix& d);
std::map<int, std::size_t> homology_dims(const EquivariantComplex& c);
std::size_t total_homology_dim(const EquivariantComplex& c);

/// Cocycle representatives of a homology basis. Within each degree,
/// generators are scanned in id order and a representative is kept whenever
/// it is independent of the coboundaries and earlier choices.
struct HomologyBasis {
  std::vector<ResidueVector> reps;  // vectors in the chain space
  std::vector<int> degrees;
  std::vector<Index> anchors;  // generator each representative was chosen at

  std::size_t size() const { return reps.size(); }
  /// Coordinates of the class of cocycle z. Throws InvalidComplex if z is not
  /// a cocycle.
  ResidueVector coordinates(const ResidueVector& z) const;

  FpMatrix d;  // the differential the basis was computed for
};

HomologyBasis homology_basis(const EquivariantComplex& c);

/// Matrix of the map induced on homology by a chain map f: c -> c, in the
/// given basis.
FpMatrix induced_on_homology(const HomologyBasis& basis, const FpMatrix& f);

/// H(c) with zero differential and the induced sigma. Generator ids are
/// "[anchor-id]", actions are those of the anchors.
EquivariantComplex homology_complex(const EquivariantComplex& c);

/// V^{⊗p} for the underlying complex of v (its sigma is ignored): Koszul
/// differential, sigma the signed cyclic shift, degrees and actions summed.
/// Basis is lexicographic in the factors; throws DimensionMismatch when the
/// result would exceed kMaxTensorDim.
inline constexpr Index kMaxTensorDim = 2048;
EquivariantComplex tensor_power(const EquivariantComplex& v, Prime p);

/// Sign of the cyclic shift on x_0 ⊗ ... ⊗ x_{p-1} with the given degrees.
int cyclic_shift_sign(const std::vector<int>& factor_degrees);

struct InvariantDims {
  std::map<int, std::size_t> invariants;    // dim ker(1 - sigma)
  std::map<int, std::size_t> coinvariants;  // dim coker(1 - sigma)
};

InvariantDims invariants_coinvariants(const EquivariantComplex& c);

/// Subquotient spanned by generators with action inside w. Throws
/// InadmissibleWindow when an endpoint equals a generator's action.
EquivariantComplex window_truncate(const EquivariantComplex& c, const ActionWindow& w);

/// Block sum; ids of b are suffixed with "'" when they collide with ids of a.
EquivariantComplex direct_sum(const EquivariantComplex& a, const EquivariantComplex& b);

/// The module (F_p^n, sigma) as a complex: generators e0, e1, ... in degree 0
/// with action 0 and zero differential.
EquivariantComplex module_complex(const FpMatrix& sigma);

/// Indices of the generators satisfying keep, in basis order.
std::vector<Index> indices_where(const EquivariantComplex& c,
                                 const std::function<bool(const Generator&)>& keep);

}  // namespace smith
