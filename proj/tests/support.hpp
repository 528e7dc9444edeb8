#pragma once

// Small builders and brute-force oracles shared by the unit tests.

#include "smith/complex.hpp"
#include "smith/tate.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace smith::testing {

struct Triplet {
  const char* row;
  const char* col;
  std::int64_t value;
};

struct Gen {
  const char* id;
  int degree;
  std::int64_t action = 0;
};

inline EquivariantComplex make_complex(int p, const std::vector<Gen>& gens,
                                       const std::vector<Triplet>& d,
                                       const std::vector<Triplet>& sigma = {},
                                       bool identity_sigma = true) {
  const Prime prime(p);
  std::vector<Generator> out;
  for (const auto& g : gens) out.push_back({g.id, g.degree, Rational(g.action)});
  const auto n = static_cast<Index>(out.size());
  auto index = [&](const char* id) {
    for (Index i = 0; i < n; ++i)
      if (out[static_cast<std::size_t>(i)].id == id) return i;
    throw std::runtime_error(std::string("unknown id ") + id);
  };
  FpMatrix dm(prime, n, n);
  for (const auto& t : d) dm.add_to(index(t.row), index(t.col), t.value);
  if (sigma.empty() && identity_sigma) return {prime, out, dm};
  FpMatrix sm(prime, n, n);
  for (const auto& t : sigma) sm.add_to(index(t.row), index(t.col), t.value);
  return {prime, out, dm, sm};
}

/// Module with zero differential in degree 0 and the given σ.
inline EquivariantComplex module_of(const FpMatrix& sigma) {
  std::vector<Generator> gens;
  for (Index i = 0; i < sigma.rows(); ++i) gens.push_back({"e" + std::to_string(i), 0, Rational(0)});
  return {sigma.modulus(), gens, FpMatrix(sigma.modulus(), sigma.rows(), sigma.rows()), sigma};
}

inline FpMatrix cycle(int p, int copies = 1) {
  std::vector<Index> perm;
  for (int c = 0; c < copies; ++c)
    for (int k = 0; k < p; ++k) perm.push_back(c * p + (k + 1) % p);
  return FpMatrix::permutation(Prime(p), perm);
}

/// Number of vectors v with m v = 0, by enumeration.
inline std::size_t brute_kernel_count(const FpMatrix& m) {
  const std::size_t p = m.modulus().value();
  std::size_t total = 1;
  for (Index j = 0; j < m.cols(); ++j) total *= p;
  std::size_t count = 0;
  for (std::size_t code = 0; code < total; ++code) {
    ResidueVector v(m.cols());
    std::size_t c = code;
    for (Index j = 0; j < m.cols(); ++j) {
      v(j) = static_cast<Residue>(c % p);
      c /= p;
    }
    if ((m.apply(v).array() == 0).all()) ++count;
  }
  return count;
}

/// Classical Tate cohomology of a module (zero differential, degree 0):
/// Ĥ^even = ker(1-σ)/im N, Ĥ^odd = ker N / im(1-σ).
inline TateDims module_tate_oracle(const FpMatrix& sigma) {
  const Index n = sigma.rows();
  const FpMatrix t = FpMatrix::identity(sigma.modulus(), n) - sigma;
  const FpMatrix norm = norm_map(sigma);
  const auto rt = rank(t), rn = rank(norm);
  return {static_cast<std::size_t>(n) - rt - rn, static_cast<std::size_t>(n) - rn - rt};
}

/// H^k(Z/pZ; M) of a module: H^0 = M^G, odd k: ker N / im(1-σ), even k > 0:
/// ker(1-σ) / im N.
inline std::size_t module_group_cohomology_oracle(const FpMatrix& sigma, int k) {
  const Index n = sigma.rows();
  const FpMatrix t = FpMatrix::identity(sigma.modulus(), n) - sigma;
  const FpMatrix norm = norm_map(sigma);
  const auto rt = rank(t), rn = rank(norm);
  const auto un = static_cast<std::size_t>(n);
  if (k < 0) return 0;
  if (k == 0) return un - rt;
  if (k % 2 == 1) return un - rn - rt;
  return un - rt - rn;
}

/// dim H^k from |ker d_k| and |ker d_{k-1}|, both counted by enumeration:
/// dim H^k = log_p(|ker d_k| |ker d_{k-1}| / p^{n_{k-1}}).
inline std::map<int, std::size_t> brute_homology_dims(const EquivariantComplex& c) {
  const std::size_t p = c.modulus().value();
  auto log_p = [&](std::size_t x) {
    std::size_t e = 0;
    while (x > 1) {
      x /= p;
      ++e;
    }
    return e;
  };
  auto kernel_log = [&](int k) {
    const auto cols = c.indices_in_degree(k);
    return log_p(brute_kernel_count(c.d().select(c.indices_in_degree(k + 1), cols)));
  };
  std::map<int, std::size_t> out;
  for (int k : c.degrees()) {
    const std::size_t below = c.indices_in_degree(k - 1).size();
    out[k] = kernel_log(k) + kernel_log(k - 1) - below;
  }
  return out;
}

}  // namespace smith::testing
