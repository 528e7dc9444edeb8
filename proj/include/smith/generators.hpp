#pragma once

// Seeded random instances. Only std::mt19937_64 output is used, through
// uniform(), so instances are identical across standard libraries.

#include "smith/complex.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace smith::gen {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n), n > 0, by rejection sampling.
std::uint64_t uniform(Rng& rng, std::uint64_t n);
/// Uniform integer in [lo, hi].
std::int64_t uniform_in(Rng& rng, std::int64_t lo, std::int64_t hi);
Prime pick_prime(Rng& rng, const std::vector<int>& primes);

FpMatrix random_matrix(Rng& rng, Prime p, Index rows, Index cols);
FpMatrix random_invertible(Rng& rng, Prime p, Index n);
FpMatrix inverse(const FpMatrix& m);

/// Random invertible matrix preserving the given degrees; when actions are
/// supplied it is unipotent and only adds lower-action generators.
FpMatrix random_graded_automorphism(Rng& rng, Prime p, const std::vector<int>& degrees,
                                    const std::vector<Rational>* actions = nullptr);

struct ComplexShape {
  Index min_size = 1;
  Index max_size = 6;
  int min_degree = 0;
  int max_degree = 2;
  int levels = 6;  // actions are drawn from {0, ..., levels - 1}
};

/// Filtered complex with trivial action: planted cancelling pairs x -> y
/// (degree +1, lower action) conjugated by a filtered graded automorphism.
/// The differential strictly decreases action.
EquivariantComplex random_filtered_complex(Rng& rng, Prime p, const ComplexShape& shape);

/// Free module F_p[Z/pZ] ⊗ U with d = 1 ⊗ d_U for a random complex U,
/// conjugated by an equivariant automorphism and then by a random graded
/// change of basis. Actions are minus the degree.
EquivariantComplex random_free_module(Rng& rng, Prime p, Index max_dim);

/// σ = 1 + t with t nilpotent of the given Jordan type, conjugated.
FpMatrix random_order_p(Rng& rng, Prime p, const std::vector<std::size_t>& blocks);
/// Random Jordan type with parts <= p and total size in [1, max_dim].
std::vector<std::size_t> random_partition(Rng& rng, Prime p, std::size_t max_dim);

/// Complex with zero differential on one degree carrying a random σ of order
/// dividing p.
EquivariantComplex random_module(Rng& rng, Prime p, std::size_t max_dim);

/// Direct sum of a filtered complex (trivial action), a free module and a
/// module concentrated in degree 0.
EquivariantComplex random_equivariant(Rng& rng, Prime p, Index max_filtered = 4);

/// Random A on V<1, θ> lowering total degree (|x| on x⊗1, |x|+1 on x⊗θ) by 2.
FpMatrix random_twist(Rng& rng, const EquivariantComplex& base);

}  // namespace smith::gen
