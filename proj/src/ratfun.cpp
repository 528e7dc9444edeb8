#include "smith/ratfun.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace smith {

void PolyRing::trim(Poly& a) const {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

Poly PolyRing::constant(std::int64_t c) const { return monomial(c, 0); }

Poly PolyRing::monomial(std::int64_t c, int k) const {
  Poly out;
  const Residue r = f_.reduce(c);
  if (r == 0) return out;
  out.c.assign(static_cast<std::size_t>(k) + 1, 0);
  out.c.back() = r;
  return out;
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  Poly out;
  out.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) out.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) out.c[i] = f_.add(out.c[i], b.c[i]);
  trim(out);
  return out;
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const {
  Poly out;
  out.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) out.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) out.c[i] = f_.sub(out.c[i], b.c[i]);
  trim(out);
  return out;
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  const Residue m = f_.modulus().residue();
  std::vector<Residue> acc(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      acc[i + j] = (acc[i + j] + a.c[i] * b.c[j]) % m;
    }
  }
  out.c = std::move(acc);
  trim(out);
  return out;
}

Poly PolyRing::scale(const Poly& a, Residue s) const {
  Poly out = a;
  s = f_.reduce(s);
  for (auto& x : out.c) x = f_.mul(x, s);
  trim(out);
  return out;
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly r = a;
  Poly q;
  if (r.degree() < b.degree()) return {q, r};
  q.c.assign(static_cast<std::size_t>(r.degree() - b.degree() + 1), 0);
  const Residue lead_inv = f_.inv(b.lead());
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const auto shift = static_cast<std::size_t>(r.degree() - b.degree());
    const Residue coef = f_.mul(r.lead(), lead_inv);
    q.c[shift] = coef;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      r.c[shift + j] = f_.sub(r.c[shift + j], f_.mul(coef, b.c[j]));
    }
    trim(r);
  }
  trim(q);
  return {q, r};
}

Poly PolyRing::exact_div(const Poly& a, const Poly& b) const {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
  return q;
}

Poly PolyRing::monic(const Poly& a) const {
  if (a.is_zero()) return a;
  return scale(a, f_.inv(a.lead()));
}

Poly PolyRing::gcd(Poly a, Poly b) const {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Residue PolyRing::evaluate(const Poly& a, Residue u) const {
  Residue acc = 0;
  u = f_.reduce(u);
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) acc = f_.add(f_.mul(acc, u), *it);
  return acc;
}

// ---------------------------------------------------------------------------

RatFun RatFunField::make(Poly num, Poly den) const {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) return RatFun{};
  if (den.degree() > 0) {
    const Poly g = ring_.gcd(num, den);
    if (g.degree() > 0) {
      num = ring_.exact_div(num, g);
      den = ring_.exact_div(den, g);
    }
  }
  const Residue s = ring_.scalars().inv(den.lead());
  return {ring_.scale(num, s), ring_.scale(den, s)};
}

RatFun RatFunField::laurent_monomial(std::int64_t c, int k) const {
  if (k >= 0) return make(ring_.monomial(c, k), ring_.constant(1));
  return make(ring_.constant(c), ring_.monomial(1, -k));
}

RatFun RatFunField::add(const RatFun& a, const RatFun& b) const {
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  if (a.den == b.den) return make(ring_.add(a.num, b.num), a.den);
  return make(ring_.add(ring_.mul(a.num, b.den), ring_.mul(b.num, a.den)),
              ring_.mul(a.den, b.den));
}

RatFun RatFunField::sub(const RatFun& a, const RatFun& b) const { return add(a, neg(b)); }

RatFun RatFunField::mul(const RatFun& a, const RatFun& b) const {
  if (is_zero(a) || is_zero(b)) return RatFun{};
  return make(ring_.mul(a.num, b.num), ring_.mul(a.den, b.den));
}

RatFun RatFunField::inv(const RatFun& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero in F_p(u)");
  return make(a.den, a.num);
}

std::optional<Residue> RatFunField::evaluate(const RatFun& a, Residue u0) const {
  const Residue d = ring_.evaluate(a.den, u0);
  if (d == 0) return std::nullopt;
  const auto& f = ring_.scalars();
  return f.mul(ring_.evaluate(a.num, u0), f.inv(d));
}

std::string to_string(const Poly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = a.c.size(); i-- > 0;) {
    if (a.c[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || a.c[i] != 1) os << a.c[i];
    if (i > 0) os << "u";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::string to_string(const RatFun& a) {
  if (a.den.degree() == 0) return to_string(a.num);
  return "(" + to_string(a.num) + ")/(" + to_string(a.den) + ")";
}

// ---------------------------------------------------------------------------

RatFunMatrix::RatFunMatrix(Prime p, Index rows, Index cols)
    : field_(p), m_(rows, cols) {
  m_.fill(RatFun{});
}

RatFunMatrix::RatFunMatrix(Prime p, DenseMatrix<RatFun> entries)
    : field_(p), m_(std::move(entries)) {}

void RatFunMatrix::add_monomial(Index i, Index j, std::int64_t c, int k) {
  m_(i, j) = field_.add(m_(i, j), field_.laurent_monomial(c, k));
}

RatFunMatrix RatFunMatrix::operator*(const RatFunMatrix& o) const {
  if (!(modulus() == o.modulus())) throw ModulusMismatch("F_p(u) moduli differ");
  if (cols() != o.rows()) throw DimensionMismatch("incompatible F_p(u) matrix shapes");
  return {modulus(), multiply(field_, m_, o.m_)};
}

bool RatFunMatrix::is_zero() const {
  for (Index i = 0; i < rows(); ++i) {
    for (Index j = 0; j < cols(); ++j) {
      if (!field_.is_zero(m_(i, j))) return false;
    }
  }
  return true;
}

RatFunMatrix RatFunMatrix::select(const std::vector<Index>& row_ids,
                                  const std::vector<Index>& col_ids) const {
  RatFunMatrix out(modulus(), static_cast<Index>(row_ids.size()),
                   static_cast<Index>(col_ids.size()));
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    for (std::size_t j = 0; j < col_ids.size(); ++j) {
      out.m_(static_cast<Index>(i), static_cast<Index>(j)) = m_(row_ids[i], col_ids[j]);
    }
  }
  return out;
}

std::optional<FpMatrix> RatFunMatrix::evaluate(Residue u0) const {
  FpMatrix out(modulus(), rows(), cols());
  for (Index i = 0; i < rows(); ++i) {
    for (Index j = 0; j < cols(); ++j) {
      const auto v = field_.evaluate(m_(i, j), u0);
      if (!v) return std::nullopt;
      out.set(i, j, *v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::size_t bareiss_rank(const PolyRing& ring, DenseMatrix<Poly> m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  Poly prev = ring.constant(1);
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    // Lowest-degree nonzero pivot keeps intermediate degrees small.
    Index pivot = -1;
    for (Index i = row; i < rows; ++i) {
      if (m(i, col).is_zero()) continue;
      if (pivot < 0 || m(i, col).degree() < m(pivot, col).degree()) pivot = i;
    }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));

    const Poly piv = m(row, col);
    for (Index i = row + 1; i < rows; ++i) {
      const Poly lead = m(i, col);
      for (Index j = col + 1; j < cols; ++j) {
        Poly v = ring.sub(ring.mul(piv, m(i, j)), ring.mul(lead, m(row, j)));
        m(i, j) = v.is_zero() ? Poly{} : ring.exact_div(v, prev);
      }
      m(i, col) = Poly{};
    }
    prev = piv;
    ++row;
  }
  return static_cast<std::size_t>(row);
}

std::size_t ratfun_rank(const RatFunMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const PolyRing& ring = m.field().ring();
  DenseMatrix<Poly> poly(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i) {
    Poly lcm = ring.constant(1);
    for (Index j = 0; j < m.cols(); ++j) {
      const Poly& d = m(i, j).den;
      if (d.degree() == 0) continue;
      lcm = ring.exact_div(ring.mul(lcm, d), ring.gcd(lcm, d));
    }
    for (Index j = 0; j < m.cols(); ++j) {
      const RatFun& e = m(i, j);
      poly(i, j) = e.num.is_zero() ? Poly{} : ring.mul(e.num, ring.exact_div(lcm, e.den));
    }
  }
  return bareiss_rank(ring, std::move(poly));
}

}  // namespace smith
