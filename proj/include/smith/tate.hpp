#pragma once

// Group and Tate cohomology of Z/pZ with coefficients in an equivariant
// complex, mapping cones, and the quasi-Frobenius map x -> x^{⊗p}.

#include "smith/complex.hpp"
#include "smith/ratfun.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace smith {

/// Element of F_p[u, u^-1]<θ> with θ² = 0; u has degree 2 and θ degree 1.
class RpElement {
 public:
  using Key = std::pair<int, int>;  // (u-exponent, θ-exponent)

  explicit RpElement(Prime p) : p_(p) {}
  static RpElement monomial(Prime p, std::int64_t c, int u_exp, int theta_exp);

  Prime modulus() const { return p_; }
  /// Nonzero coefficients only.
  const std::map<Key, Residue>& terms() const { return terms_; }
  Residue coefficient(int u_exp, int theta_exp) const;
  bool is_zero() const { return terms_.empty(); }
  /// Degree if all terms share one, else nullopt (also for zero).
  std::optional<int> degree() const;

  RpElement operator+(const RpElement& o) const;
  RpElement operator*(const RpElement& o) const;
  friend bool operator==(const RpElement& a, const RpElement& b) {
    return a.p_ == b.p_ && a.terms_ == b.terms_;
  }

 private:
  void add_term(int u_exp, int theta_exp, Residue c);

  Prime p_;
  std::map<Key, Residue> terms_;
};

struct TateDims {
  std::size_t even = 0;
  std::size_t odd = 0;

  std::size_t total() const { return even + odd; }
  friend bool operator==(const TateDims&, const TateDims&) = default;
};

/// The Tate complex on V<1, θ> over F_p(u). Basis order: x_0⊗1, ..., x_{n-1}⊗1,
/// x_0⊗θ, ..., x_{n-1}⊗θ, with
///   d̂(x⊗1) = dx⊗1 + (1-σ)x⊗θ,   d̂(x⊗θ) = -dx⊗θ + uNx⊗1.
class TateComplexView {
 public:
  explicit TateComplexView(const EquivariantComplex& v);

  const EquivariantComplex& source() const { return source_; }
  const RatFunMatrix& differential() const { return dhat_; }
  const FpMatrix& one_minus_sigma() const { return one_minus_sigma_; }
  const FpMatrix& norm() const { return norm_; }
  /// Degree parity (0 or 1) of each basis vector.
  const std::vector<int>& parity() const { return parity_; }

  bool squares_to_zero() const;
  TateDims dims() const;

 private:
  EquivariantComplex source_;
  FpMatrix one_minus_sigma_;
  FpMatrix norm_;
  RatFunMatrix dhat_;
  std::vector<int> parity_;
};

/// N = 1 + σ + ... + σ^{p-1}.
FpMatrix norm_map(const FpMatrix& sigma);

/// Homology dims of a 2-periodic complex over F_p(u), given the parity of each
/// basis vector: per parity, dim - rank(d on that parity) - rank(d on the
/// other parity).
TateDims parity_homology_dims(const RatFunMatrix& d, const std::vector<int>& parity);

/// Default upper degree: 2 * (max degree - min degree) + 4.
int default_max_degree(const EquivariantComplex& v);

/// H^k(Z/pZ; V) for min(0, lowest degree of V) <= k <= max_degree, from the
/// complex C^k = ⊕_{i>=0} V^{k-i} with differential (-1)^i d_V plus 1-σ (i
/// even) or N (i odd) into the next summand.
std::map<int, std::size_t> group_cohomology_dims(const EquivariantComplex& v,
                                                 std::optional<int> max_degree = std::nullopt);

TateDims tate_cohomology_dims(const EquivariantComplex& v);

/// Cone of an equivariant chain map f: V -> W (f has W.size() rows):
/// Cone^k = V^{k+1} ⊕ W^k, d(v, w) = (-d_V v, f v + d_W w), σ = σ_V ⊕ σ_W.
/// Generator ids are prefixed "v:" and "w:"; actions are kept.
EquivariantComplex mapping_cone(const EquivariantComplex& v, const EquivariantComplex& w,
                                const FpMatrix& f);

/// |dim Ĥ(W) - dim Ĥ(V)| <= dim Ĥ(cone) <= dim Ĥ(V) + dim Ĥ(W), in total
/// dimension.
bool cone_triangle_holds(const TateDims& v, const TateDims& w, const TateDims& cone);

struct QuasiFrobeniusOptions {
  std::size_t certificates = 1;
  std::uint64_t seed = 0;
  /// Cross-check the target dims on V^{⊗p} itself when dim V^p is at most this.
  Index direct_check_limit = 32;
};

/// h^{⊗p} for one homology basis vector h.
struct FrobeniusImage {
  std::string label;  // anchor generator id of h
  int degree = 0;     // degree of h
  bool cocycle = false;    // d(h^{⊗p}) = 0
  bool invariant = false;  // σ(h^{⊗p}) = h^{⊗p}
  ResidueVector constant_coefficients;  // class read off the constant tensors
};

/// c = (x+y)^{⊗p} - x^{⊗p} - y^{⊗p} for random cocycles x, y of one degree,
/// with a norm preimage z (N z = c) when one exists.
struct AdditivityCertificate {
  int degree = 0;
  bool invariant = false;    // (1-σ) c = 0
  bool norm_zero = false;    // N c = 0
  bool nonconstant = false;  // c vanishes on constant tensors
  bool preimage_found = false;
  bool preimage_verified = false;  // N z recomputed equals c

  bool ok() const {
    return invariant && norm_zero && nonconstant && preimage_found && preimage_verified;
  }
};

struct QuasiFrobeniusResult {
  std::size_t homology_dim = 0;
  std::vector<FrobeniusImage> images;
  TateDims domain_dims;  // Ĥ(Z/pZ; H(V)) with trivial action
  TateDims target_dims;  // Ĥ(Z/pZ; V^{⊗p}) via the orbit model of H(V)^{⊗p}
  std::optional<TateDims> direct_target_dims;
  /// Columns h_i⊗1 then h_i⊗θ; rows c_j⊗1 then c_j⊗θ, c_j the constant tensor
  /// of the j-th homology basis vector.
  FpMatrix matrix;
  /// Blocks of matrix between basis vectors of equal parity (meaningful for
  /// odd p, where F preserves parity).
  FpMatrix matrix_even;
  FpMatrix matrix_odd;
  bool is_bijective = false;
  std::vector<AdditivityCertificate> certificates;

  bool ok() const;
};

/// The quasi-Frobenius map on the underlying complex of v (its σ is ignored).
QuasiFrobeniusResult quasi_frobenius(const EquivariantComplex& v,
                                     const QuasiFrobeniusOptions& options = {});

}  // namespace smith
