#include "smith/fp.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace smith {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::int64_t p) {
  if (p > static_cast<std::int64_t>(kMax)) {
    throw NotPrime("modulus " + std::to_string(p) + " exceeds supported bound " +
                   std::to_string(kMax));
  }
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  p_ = static_cast<std::uint32_t>(p);
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const {
  Residue result = one();
  Residue base = reduce(a);
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

Residue PrimeField::inv(Residue a) const {
  if (a == 0) throw std::domain_error("inverse of zero in F_p");
  // Extended Euclid on (a, p).
  Residue r0 = m_, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const Residue q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  return reduce(s0);
}

// ---------------------------------------------------------------------------

FpScalar::FpScalar(std::int64_t value, Prime p) : value_(PrimeField(p).reduce(value)), p_(p) {}

namespace {
void check_moduli(Prime a, Prime b) {
  if (!(a == b)) {
    throw ModulusMismatch("operands over F_" + std::to_string(a.value()) + " and F_" +
                          std::to_string(b.value()));
  }
}
}  // namespace

FpScalar FpScalar::operator+(const FpScalar& o) const {
  check_moduli(p_, o.p_);
  return {PrimeField(p_).add(value_, o.value_), p_};
}
FpScalar FpScalar::operator-(const FpScalar& o) const {
  check_moduli(p_, o.p_);
  return {PrimeField(p_).sub(value_, o.value_), p_};
}
FpScalar FpScalar::operator*(const FpScalar& o) const {
  check_moduli(p_, o.p_);
  return {PrimeField(p_).mul(value_, o.value_), p_};
}
FpScalar FpScalar::operator-() const { return {PrimeField(p_).neg(value_), p_}; }
FpScalar FpScalar::inverse() const { return {PrimeField(p_).inv(value_), p_}; }
FpScalar FpScalar::pow(std::uint64_t e) const { return {PrimeField(p_).pow(value_, e), p_}; }

std::ostream& operator<<(std::ostream& os, const FpScalar& x) {
  return os << x.value() << " (mod " << x.modulus().value() << ")";
}

// ---------------------------------------------------------------------------

FpMatrix::FpMatrix(Prime p, Index rows, Index cols)
    : p_(p), m_(ResidueMatrix::Zero(rows, cols)) {}

FpMatrix::FpMatrix(Prime p, const ResidueMatrix& entries) : p_(p), m_(entries) {
  const Residue q = p.residue();
  m_ = m_.unaryExpr([q](Residue x) { return ((x % q) + q) % q; });
}

FpMatrix FpMatrix::identity(Prime p, Index n) {
  return {p, ResidueMatrix(ResidueMatrix::Identity(n, n))};
}

FpMatrix FpMatrix::permutation(Prime p, const std::vector<Index>& perm) {
  const auto n = static_cast<Index>(perm.size());
  FpMatrix out(p, n, n);
  for (Index j = 0; j < n; ++j) out.m_(perm[static_cast<std::size_t>(j)], j) = 1;
  return out;
}

void FpMatrix::set(Index i, Index j, std::int64_t v) { m_(i, j) = PrimeField(p_).reduce(v); }

void FpMatrix::add_to(Index i, Index j, std::int64_t v) {
  m_(i, j) = PrimeField(p_).reduce(m_(i, j) + PrimeField(p_).reduce(v));
}

FpMatrix FpMatrix::select(const std::vector<Index>& row_ids,
                          const std::vector<Index>& col_ids) const {
  FpMatrix out(p_, static_cast<Index>(row_ids.size()), static_cast<Index>(col_ids.size()));
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    for (std::size_t j = 0; j < col_ids.size(); ++j) {
      out.m_(static_cast<Index>(i), static_cast<Index>(j)) = m_(row_ids[i], col_ids[j]);
    }
  }
  return out;
}

ResidueVector FpMatrix::apply(const ResidueVector& v) const {
  if (v.size() != cols()) throw DimensionMismatch("matrix-vector size mismatch");
  const Residue q = p_.residue();
  ResidueVector out = m_ * v;
  return out.unaryExpr([q](Residue x) { return ((x % q) + q) % q; });
}

void FpMatrix::require_same(const FpMatrix& o, bool product) const {
  check_moduli(p_, o.p_);
  if (product ? cols() != o.rows() : (rows() != o.rows() || cols() != o.cols())) {
    throw DimensionMismatch("incompatible shapes " + std::to_string(rows()) + "x" +
                            std::to_string(cols()) + " and " + std::to_string(o.rows()) +
                            "x" + std::to_string(o.cols()));
  }
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
  require_same(o, false);
  return {p_, ResidueMatrix(m_ + o.m_)};
}
FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
  require_same(o, false);
  return {p_, ResidueMatrix(m_ - o.m_)};
}
FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
  require_same(o, true);
  // Entries are < 2^16, so each partial sum stays far below 2^63 for any
  // dimension that fits in memory.
  return {p_, ResidueMatrix(m_ * o.m_)};
}
FpMatrix FpMatrix::operator-() const { return {p_, ResidueMatrix(-m_)}; }
FpMatrix FpMatrix::scaled(std::int64_t c) const {
  return {p_, ResidueMatrix(m_ * PrimeField(p_).reduce(c))};
}

std::ostream& operator<<(std::ostream& os, const FpMatrix& m) {
  os << "F_" << m.modulus().value() << " " << m.rows() << "x" << m.cols() << "\n";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << "\n";
  }
  return os;
}

FpMatrix pow(const FpMatrix& m, std::uint64_t e) {
  if (!m.square()) throw DimensionMismatch("power of a non-square matrix");
  FpMatrix result = FpMatrix::identity(m.modulus(), m.rows());
  FpMatrix base = m;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

FpMatrix block_diagonal(const std::vector<FpMatrix>& blocks) {
  if (blocks.empty()) throw DimensionMismatch("block_diagonal of no blocks");
  Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  ResidueMatrix out = ResidueMatrix::Zero(rows, cols);
  Index r = 0, c = 0;
  for (const auto& b : blocks) {
    check_moduli(blocks.front().modulus(), b.modulus());
    out.block(r, c, b.rows(), b.cols()) = b.entries();
    r += b.rows();
    c += b.cols();
  }
  return {blocks.front().modulus(), out};
}

FpMatrix hconcat(const std::vector<FpMatrix>& parts) {
  if (parts.empty()) throw DimensionMismatch("hconcat of no parts");
  Index cols = 0;
  const Index rows = parts.front().rows();
  for (const auto& part : parts) {
    check_moduli(parts.front().modulus(), part.modulus());
    if (part.rows() != rows) throw DimensionMismatch("hconcat row mismatch");
    cols += part.cols();
  }
  ResidueMatrix out(rows, cols);
  Index c = 0;
  for (const auto& part : parts) {
    out.middleCols(c, part.cols()) = part.entries();
    c += part.cols();
  }
  return {parts.front().modulus(), out};
}

FpMatrix from_columns(Prime p, Index rows, const std::vector<ResidueVector>& cols) {
  ResidueMatrix out(rows, static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw DimensionMismatch("column length mismatch");
    out.col(static_cast<Index>(j)) = cols[j];
  }
  return {p, out};
}

RrefResult rref(const FpMatrix& m) {
  const PrimeField field = m.field();
  const auto ech = reduced_row_echelon(field, m.entries());
  RrefResult out;
  out.rank = ech.rank();
  out.pivot_columns = ech.pivots;
  out.kernel_basis = null_space(field, ech);
  for (Index c : ech.pivots) out.image_basis.emplace_back(m.entries().col(c));
  return out;
}

std::size_t rank(const FpMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return reduced_row_echelon(m.field(), m.entries()).rank();
}

std::vector<ResidueVector> kernel(const FpMatrix& m) { return rref(m).kernel_basis; }

std::optional<ResidueVector> solve(const FpMatrix& m, const ResidueVector& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length mismatch");
  return solve(m.field(), m.entries(), b);
}

std::vector<std::size_t> nilpotent_partition(const FpMatrix& t) {
  if (!t.square()) throw DimensionMismatch("nilpotent_partition needs a square matrix");
  const std::uint32_t p = t.modulus().value();
  const auto n = static_cast<std::size_t>(t.rows());

  // ranks[k] = rank(t^k), k = 0..p
  std::vector<std::size_t> ranks{n};
  FpMatrix power = FpMatrix::identity(t.modulus(), t.rows());
  for (std::uint32_t k = 1; k <= p; ++k) {
    power = power * t;
    ranks.push_back(rank(power));
  }
  if (!power.is_zero()) {
    throw NotNilpotent("t^" + std::to_string(p) + " is nonzero");
  }

  // #blocks of size >= k is ranks[k-1] - ranks[k].
  std::vector<std::size_t> partition;
  for (std::uint32_t k = 1; k <= p; ++k) {
    const std::size_t at_least_k = ranks[k - 1] - ranks[k];
    const std::size_t at_least_next = k < p ? ranks[k] - ranks[k + 1] : 0;
    partition.insert(partition.end(), at_least_k - at_least_next, k);
  }
  std::sort(partition.rbegin(), partition.rend());
  return partition;
}

FpMatrix jordan_nilpotent(Prime p, const std::vector<std::size_t>& blocks) {
  Index n = 0;
  for (auto b : blocks) n += static_cast<Index>(b);
  FpMatrix out(p, n, n);
  Index start = 0;
  for (auto b : blocks) {
    // e_i -> e_{i+1} inside the block, last basis vector -> 0
    for (Index i = 0; i + 1 < static_cast<Index>(b); ++i) out.set(start + i + 1, start + i, 1);
    start += static_cast<Index>(b);
  }
  return out;
}

}  // namespace smith
