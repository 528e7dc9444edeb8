#include "smith/morse.hpp"

#include "smith/complex.hpp"

namespace smith {

Rational CriticalPoint::angle_turns(Prime p) const {
  const Rational base(root_index, static_cast<std::int64_t>(p.value()));
  return odd ? base : base + Rational(1, 2);
}

std::vector<CriticalPoint> enumerate_critical_points(Prime p, int l_max) {
  if (l_max < 0) throw MalformedInput("l_max must be non-negative");
  std::vector<CriticalPoint> out;
  for (int l = 0; l <= l_max; ++l) {
    for (bool odd : {false, true}) {
      for (std::uint32_t k = 0; k < p.value(); ++k) out.push_back({l, static_cast<int>(k), odd});
    }
  }
  return out;
}

bool ResolutionHomology::matches_point() const {
  if (dims.empty() || dims[0] != 1) return false;
  for (std::size_t k = 1; k + 1 < dims.size(); ++k)
    if (dims[k] != 0) return false;
  return true;
}

ResolutionHomology resolution_homology(Prime p, int length) {
  if (length < 2) throw MalformedInput("resolution length must be at least 2");
  const auto n = static_cast<Index>(p.value());
  std::vector<Index> shift(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) shift[static_cast<std::size_t>(k)] = (k + 1) % n;
  const FpMatrix sigma = FpMatrix::permutation(p, shift);
  const FpMatrix one_minus_sigma = FpMatrix::identity(p, n) - sigma;
  const FpMatrix norm = norm_map(sigma);

  std::vector<int> degrees;
  FpMatrix d(p, n * length, n * length);
  for (int i = 0; i < length; ++i) {
    for (Index c = 0; c < n; ++c) degrees.push_back(i);
    if (i + 1 == length) break;
    const FpMatrix& block = (i % 2 == 0) ? one_minus_sigma : norm;
    for (Index c = 0; c < n; ++c)
      for (Index r = 0; r < n; ++r) d.set((i + 1) * n + r, i * n + c, block(r, c));
  }
  ResolutionHomology out;
  for (const auto& [k, dim] : graded_homology_dims(degrees, d)) out.dims.push_back(dim);
  return out;
}

FpScalar wilson_constant(Prime p) {
  FpScalar acc(1, p);
  for (std::uint32_t a = 2; a < p.value(); ++a) acc = acc * FpScalar(a, p);
  return acc;
}

RpElement EulerConstant::as_rp() const {
  return RpElement::monomial(sign.modulus(), sign.value(), static_cast<int>(u_exponent), 0);
}

EulerConstant local_euler_constant(int n, Prime p) {
  if (n < 0) throw MalformedInput("bundle rank must be non-negative");
  return {wilson_constant(p).pow(static_cast<std::uint64_t>(n)),
          static_cast<std::int64_t>(n) * (p.value() - 1)};
}

}  // namespace smith
