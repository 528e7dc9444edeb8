#pragma once

// Field-generic dense elimination. A field policy owns whatever context its
// elements need (the modulus for F_p, the polynomial ring for F_p(u)), so the
// same kernels run over every scalar the library uses.

#include <Eigen/Core>

#include <concepts>
#include <cstddef>
#include <optional>
#include <vector>

namespace smith {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class F>
concept FieldPolicy = requires(const F& f, const typename F::Element& a,
                               const typename F::Element& b) {
  typename F::Element;
  { f.zero() } -> std::convertible_to<typename F::Element>;
  { f.one() } -> std::convertible_to<typename F::Element>;
  { f.add(a, b) } -> std::convertible_to<typename F::Element>;
  { f.sub(a, b) } -> std::convertible_to<typename F::Element>;
  { f.mul(a, b) } -> std::convertible_to<typename F::Element>;
  { f.neg(a) } -> std::convertible_to<typename F::Element>;
  { f.inv(a) } -> std::convertible_to<typename F::Element>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
};

template <FieldPolicy F>
struct Echelon {
  using Element = typename F::Element;
  DenseMatrix<Element> reduced;      // reduced row echelon form
  std::vector<Eigen::Index> pivots;  // pivot column of row i

  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination to reduced row echelon form.
template <FieldPolicy F>
Echelon<F> reduced_row_echelon(const F& field, DenseMatrix<typename F::Element> m) {
  using Index = Eigen::Index;
  Echelon<F> out;
  const Index rows = m.rows();
  const Index cols = m.cols();
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index pivot = -1;
    for (Index i = row; i < rows; ++i) {
      if (!field.is_zero(m(i, col))) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));

    const auto scale = field.inv(m(row, col));
    for (Index j = col; j < cols; ++j) m(row, j) = field.mul(m(row, j), scale);

    for (Index i = 0; i < rows; ++i) {
      if (i == row || field.is_zero(m(i, col))) continue;
      const auto factor = m(i, col);
      for (Index j = col; j < cols; ++j) {
        if (field.is_zero(m(row, j))) continue;
        m(i, j) = field.sub(m(i, j), field.mul(factor, m(row, j)));
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

/// Basis of the null space read off a reduced row echelon form; one vector per
/// free column, in increasing column order.
template <FieldPolicy F>
std::vector<DenseVector<typename F::Element>> null_space(const F& field,
                                                         const Echelon<F>& ech) {
  using Index = Eigen::Index;
  const Index cols = ech.reduced.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index c : ech.pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<DenseVector<typename F::Element>> basis;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    DenseVector<typename F::Element> v(cols);
    for (Index j = 0; j < cols; ++j) v(j) = field.zero();
    v(free) = field.one();
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
      v(ech.pivots[r]) = field.neg(ech.reduced(static_cast<Index>(r), free));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

template <FieldPolicy F>
DenseMatrix<typename F::Element> multiply(const F& field,
                                          const DenseMatrix<typename F::Element>& a,
                                          const DenseMatrix<typename F::Element>& b) {
  using Index = Eigen::Index;
  DenseMatrix<typename F::Element> out(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      auto acc = field.zero();
      for (Index k = 0; k < a.cols(); ++k) {
        if (field.is_zero(a(i, k)) || field.is_zero(b(k, j))) continue;
        acc = field.add(acc, field.mul(a(i, k), b(k, j)));
      }
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

/// Solves m x = rhs; nullopt when rhs is outside the column space.
template <FieldPolicy F>
std::optional<DenseVector<typename F::Element>> solve(
    const F& field, const DenseMatrix<typename F::Element>& m,
    const DenseVector<typename F::Element>& rhs) {
  using Index = Eigen::Index;
  DenseMatrix<typename F::Element> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = rhs;
  const auto ech = reduced_row_echelon(field, std::move(aug));
  DenseVector<typename F::Element> x(m.cols());
  for (Index j = 0; j < m.cols(); ++j) x(j) = field.zero();
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    if (ech.pivots[r] == m.cols()) return std::nullopt;
    x(ech.pivots[r]) = ech.reduced(static_cast<Index>(r), m.cols());
  }
  return x;
}

}  // namespace smith
