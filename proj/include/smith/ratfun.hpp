#pragma once

// Polynomials over F_p in one variable u, and the rational function field
// F_p(u). Ranks of Laurent-polynomial matrices over F_p((u)) agree with ranks
// over F_p(u), so this field is an exact stand-in for Laurent series.

#include "smith/fp.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace smith {

/// Coefficients c[0] + c[1] u + ..., trailing zeros trimmed; the zero
/// polynomial has no coefficients.
struct Poly {
  std::vector<Residue> c;

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  Residue lead() const { return c.back(); }

  friend bool operator==(const Poly&, const Poly&) = default;
};

/// Arithmetic in F_p[u].
class PolyRing {
 public:
  explicit PolyRing(Prime p) : f_(p) {}

  Prime modulus() const { return f_.modulus(); }
  const PrimeField& scalars() const { return f_; }

  Poly constant(std::int64_t c) const;
  /// c u^k
  Poly monomial(std::int64_t c, int k) const;

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(const Poly& a, Residue s) const;
  Poly neg(const Poly& a) const { return scale(a, f_.neg(f_.one())); }
  /// Quotient and remainder; throws on division by zero.
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
  /// a / b where b is known to divide a.
  Poly exact_div(const Poly& a, const Poly& b) const;
  /// Monic gcd (zero only when both inputs are zero).
  Poly gcd(Poly a, Poly b) const;
  Poly monic(const Poly& a) const;
  Residue evaluate(const Poly& a, Residue u) const;

 private:
  void trim(Poly& a) const;

  PrimeField f_;
};

/// numerator / denominator with gcd 1 and monic denominator.
struct RatFun {
  Poly num;
  Poly den{{1}};

  friend bool operator==(const RatFun&, const RatFun&) = default;
};

/// Field policy for F_p(u).
class RatFunField {
 public:
  using Element = RatFun;

  explicit RatFunField(Prime p) : ring_(p) {}

  Prime modulus() const { return ring_.modulus(); }
  const PolyRing& ring() const { return ring_; }

  RatFun make(Poly num, Poly den) const;
  RatFun from_poly(Poly a) const { return make(std::move(a), ring_.constant(1)); }
  RatFun constant(std::int64_t c) const { return from_poly(ring_.constant(c)); }
  /// c u^k for any integer k, including negative exponents.
  RatFun laurent_monomial(std::int64_t c, int k) const;

  RatFun zero() const { return RatFun{}; }
  RatFun one() const { return constant(1); }
  RatFun add(const RatFun& a, const RatFun& b) const;
  RatFun sub(const RatFun& a, const RatFun& b) const;
  RatFun mul(const RatFun& a, const RatFun& b) const;
  RatFun neg(const RatFun& a) const { return {ring_.neg(a.num), a.den}; }
  RatFun inv(const RatFun& a) const;
  bool is_zero(const RatFun& a) const { return a.num.is_zero(); }

  /// Value at u = u0, or nullopt when u0 is a root of the denominator.
  std::optional<Residue> evaluate(const RatFun& a, Residue u0) const;

 private:
  PolyRing ring_;
};

std::string to_string(const Poly& a);
std::string to_string(const RatFun& a);

}  // namespace smith

namespace Eigen {
template <>
struct NumTraits<smith::Poly> : GenericNumTraits<smith::Poly> {
  using Real = smith::Poly;
  using NonInteger = smith::Poly;
  using Literal = smith::Poly;
  using Nested = smith::Poly;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 16
  };
};
template <>
struct NumTraits<smith::RatFun> : GenericNumTraits<smith::RatFun> {
  using Real = smith::RatFun;
  using NonInteger = smith::RatFun;
  using Literal = smith::RatFun;
  using Nested = smith::RatFun;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 16,
    MulCost = 32
  };
};
}  // namespace Eigen

namespace smith {

/// Dense matrix over F_p(u).
class RatFunMatrix {
 public:
  RatFunMatrix(Prime p, Index rows, Index cols);
  RatFunMatrix(Prime p, DenseMatrix<RatFun> entries);

  Prime modulus() const { return field_.modulus(); }
  const RatFunField& field() const { return field_; }
  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }
  const DenseMatrix<RatFun>& entries() const { return m_; }

  const RatFun& operator()(Index i, Index j) const { return m_(i, j); }
  void set(Index i, Index j, RatFun v) { m_(i, j) = std::move(v); }
  /// entry += c u^k
  void add_monomial(Index i, Index j, std::int64_t c, int k);

  RatFunMatrix operator*(const RatFunMatrix& o) const;
  bool is_zero() const;
  RatFunMatrix select(const std::vector<Index>& row_ids, const std::vector<Index>& col_ids) const;
  /// Entry-wise evaluation at u = u0; nullopt when u0 hits a pole.
  std::optional<FpMatrix> evaluate(Residue u0) const;

 private:
  RatFunField field_;
  DenseMatrix<RatFun> m_;
};

/// Rank over F_p(u): denominators are cleared row by row, then the polynomial
/// matrix is reduced by fraction-free (Bareiss) elimination over F_p[u].
std::size_t ratfun_rank(const RatFunMatrix& m);

/// Fraction-free elimination over F_p[u]; returns the rank.
std::size_t bareiss_rank(const PolyRing& ring, DenseMatrix<Poly> m);

}  // namespace smith
