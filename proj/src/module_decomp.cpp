#include "smith/module_decomp.hpp"

#include <numeric>

namespace smith {

std::size_t ModuleDecomposition::dim() const {
  std::size_t total = 0;
  for (std::size_t k = 1; k <= m.size(); ++k) total += k * m[k - 1];
  return total;
}

ModuleDecomposition decompose(const FpMatrix& sigma) {
  if (!sigma.square()) throw DimensionMismatch("sigma must be square");
  const Prime p = sigma.modulus();
  const FpMatrix one = FpMatrix::identity(p, sigma.rows());
  if (!(pow(sigma, p.value()) == one)) {
    throw NotOrderP("sigma^" + std::to_string(p.value()) + " is not the identity");
  }
  ModuleDecomposition out{p, std::vector<std::size_t>(p.value(), 0)};
  for (std::size_t block : nilpotent_partition(sigma - one)) ++out.m[block - 1];
  return out;
}

TateInvariantDims tate_and_invariant_dims(const ModuleDecomposition& d) {
  const std::size_t all = std::accumulate(d.m.begin(), d.m.end(), std::size_t{0});
  return {2 * (all - d.m.back()), all};
}

ChainReport smith_chain_check(std::size_t hf_phi_dim, const FpMatrix& sigma_on_hf_phi_p) {
  const auto d = decompose(sigma_on_hf_phi_p);
  const auto dims = tate_and_invariant_dims(d);
  return {hf_phi_dim, dims.tate_dim / 2, dims.invariant_dim,
          static_cast<std::size_t>(sigma_on_hf_phi_p.rows()), d};
}

}  // namespace smith
