#pragma once

// Exact linear algebra over the prime field F_p.

#include "smith/echelon.hpp"
#include "smith/errors.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace smith {

using Index = Eigen::Index;
using Residue = std::int64_t;
using ResidueMatrix = DenseMatrix<Residue>;
using ResidueVector = DenseVector<Residue>;

/// A prime modulus. Construction checks primality; moduli are bounded so that
/// dense integer products of reduced residues cannot overflow.
class Prime {
 public:
  static constexpr std::uint32_t kMax = 65521;

  explicit Prime(std::int64_t p);

  std::uint32_t value() const { return p_; }
  Residue residue() const { return static_cast<Residue>(p_); }

  friend bool operator==(Prime a, Prime b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

bool is_prime(std::int64_t n);

/// Field policy for F_p; elements are reduced residues in [0, p).
class PrimeField {
 public:
  using Element = Residue;

  explicit PrimeField(Prime p) : p_(p), m_(p.residue()) {}

  Prime modulus() const { return p_; }

  Residue reduce(std::int64_t x) const {
    const Residue r = x % m_;
    return r < 0 ? r + m_ : r;
  }
  Residue zero() const { return 0; }
  Residue one() const { return 1 % m_; }
  Residue add(Residue a, Residue b) const { return (a + b) % m_; }
  Residue sub(Residue a, Residue b) const { return (a - b + m_) % m_; }
  Residue mul(Residue a, Residue b) const { return (a * b) % m_; }
  Residue neg(Residue a) const { return a == 0 ? 0 : m_ - a; }
  Residue inv(Residue a) const;
  Residue pow(Residue a, std::uint64_t e) const;
  bool is_zero(Residue a) const { return a == 0; }

 private:
  Prime p_;
  Residue m_;
};

/// An element of F_p that remembers its modulus.
class FpScalar {
 public:
  FpScalar(std::int64_t value, Prime p);

  Residue value() const { return value_; }
  Prime modulus() const { return p_; }

  FpScalar operator+(const FpScalar& o) const;
  FpScalar operator-(const FpScalar& o) const;
  FpScalar operator*(const FpScalar& o) const;
  FpScalar operator-() const;
  FpScalar inverse() const;
  FpScalar pow(std::uint64_t e) const;

  friend bool operator==(const FpScalar& a, const FpScalar& b) {
    return a.p_ == b.p_ && a.value_ == b.value_;
  }

 private:
  Residue value_;
  Prime p_;
};

std::ostream& operator<<(std::ostream& os, const FpScalar& x);

/// Dense matrix over F_p. Column j is the image of the j-th basis vector.
class FpMatrix {
 public:
  FpMatrix(Prime p, Index rows, Index cols);
  FpMatrix(Prime p, const ResidueMatrix& entries);

  static FpMatrix zero(Prime p, Index rows, Index cols) { return {p, rows, cols}; }
  static FpMatrix identity(Prime p, Index n);
  /// Permutation matrix sending basis vector j to basis vector perm[j].
  static FpMatrix permutation(Prime p, const std::vector<Index>& perm);

  Prime modulus() const { return p_; }
  PrimeField field() const { return PrimeField(p_); }
  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }
  bool square() const { return rows() == cols(); }
  const ResidueMatrix& entries() const { return m_; }

  Residue operator()(Index i, Index j) const { return m_(i, j); }
  void set(Index i, Index j, std::int64_t v);
  void add_to(Index i, Index j, std::int64_t v);

  bool is_zero() const { return (m_.array() == 0).all(); }
  FpMatrix transpose() const { return {p_, ResidueMatrix(m_.transpose())}; }
  FpMatrix block(Index r0, Index c0, Index nr, Index nc) const {
    return {p_, ResidueMatrix(m_.block(r0, c0, nr, nc))};
  }
  FpMatrix select(const std::vector<Index>& row_ids, const std::vector<Index>& col_ids) const;

  ResidueVector apply(const ResidueVector& v) const;

  FpMatrix operator+(const FpMatrix& o) const;
  FpMatrix operator-(const FpMatrix& o) const;
  FpMatrix operator*(const FpMatrix& o) const;
  FpMatrix operator-() const;
  FpMatrix scaled(std::int64_t c) const;

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
    return a.p_ == b.p_ && a.m_.rows() == b.m_.rows() && a.m_.cols() == b.m_.cols() &&
           a.m_ == b.m_;
  }

 private:
  void require_same(const FpMatrix& o, bool product) const;

  Prime p_;
  ResidueMatrix m_;
};

std::ostream& operator<<(std::ostream& os, const FpMatrix& m);

FpMatrix pow(const FpMatrix& m, std::uint64_t e);
FpMatrix block_diagonal(const std::vector<FpMatrix>& blocks);
/// Matrices with equal row counts placed side by side.
FpMatrix hconcat(const std::vector<FpMatrix>& parts);
FpMatrix from_columns(Prime p, Index rows, const std::vector<ResidueVector>& cols);

struct RrefResult {
  std::size_t rank = 0;
  std::vector<ResidueVector> kernel_basis;
  std::vector<ResidueVector> image_basis;  // pivot columns of the input
  std::vector<Index> pivot_columns;
};

RrefResult rref(const FpMatrix& m);
std::size_t rank(const FpMatrix& m);
std::vector<ResidueVector> kernel(const FpMatrix& m);
/// Some x with m x = b, or nullopt.
std::optional<ResidueVector> solve(const FpMatrix& m, const ResidueVector& b);

/// Jordan block sizes (descending) of a nilpotent t with t^p = 0, from the rank
/// sequence of its powers.
std::vector<std::size_t> nilpotent_partition(const FpMatrix& t);

/// Nilpotent Jordan matrix with the given block sizes, blocks in order.
FpMatrix jordan_nilpotent(Prime p, const std::vector<std::size_t>& blocks);

}  // namespace smith
