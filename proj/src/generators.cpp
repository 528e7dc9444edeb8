#include "smith/generators.hpp"

#include <algorithm>
#include <limits>

namespace smith::gen {

std::uint64_t uniform(Rng& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform over an empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

std::int64_t uniform_in(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(uniform(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

Prime pick_prime(Rng& rng, const std::vector<int>& primes) {
  return Prime(primes[uniform(rng, primes.size())]);
}

FpMatrix random_matrix(Rng& rng, Prime p, Index rows, Index cols) {
  FpMatrix m(p, rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m.set(i, j, static_cast<std::int64_t>(uniform(rng, p.value())));
  return m;
}

FpMatrix random_invertible(Rng& rng, Prime p, Index n) {
  while (true) {
    FpMatrix m = random_matrix(rng, p, n, n);
    if (rank(m) == static_cast<std::size_t>(n)) return m;
  }
}

FpMatrix inverse(const FpMatrix& m) {
  if (!m.square()) throw DimensionMismatch("inverse of a non-square matrix");
  const Index n = m.rows();
  FpMatrix out(m.modulus(), n, n);
  for (Index j = 0; j < n; ++j) {
    ResidueVector e = ResidueVector::Zero(n);
    e(j) = 1;
    const auto x = solve(m, e);
    if (!x) throw DimensionMismatch("matrix is singular");
    for (Index i = 0; i < n; ++i) out.set(i, j, (*x)(i));
  }
  return out;
}

FpMatrix random_graded_automorphism(Rng& rng, Prime p, const std::vector<int>& degrees,
                                    const std::vector<Rational>* actions) {
  const auto n = static_cast<Index>(degrees.size());
  if (actions) {
    FpMatrix b = FpMatrix::identity(p, n);
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
        if (degrees[si] == degrees[sj] && (*actions)[si] < (*actions)[sj] && uniform(rng, 2) == 0) {
          b.set(i, j, static_cast<std::int64_t>(uniform(rng, p.value())));
        }
      }
    }
    return b;
  }
  while (true) {
    FpMatrix b(p, n, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        if (degrees[static_cast<std::size_t>(i)] == degrees[static_cast<std::size_t>(j)])
          b.set(i, j, static_cast<std::int64_t>(uniform(rng, p.value())));
    if (rank(b) == static_cast<std::size_t>(n)) return b;
  }
}

EquivariantComplex random_filtered_complex(Rng& rng, Prime p, const ComplexShape& shape) {
  const Index n = uniform_in(rng, shape.min_size, shape.max_size);
  std::vector<Generator> gens;
  std::vector<int> degrees;
  std::vector<Rational> actions;
  for (Index i = 0; i < n; ++i) {
    const int deg = static_cast<int>(uniform_in(rng, shape.min_degree, shape.max_degree));
    const Rational a(uniform_in(rng, 0, shape.levels - 1));
    gens.push_back({"g" + std::to_string(i), deg, a});
    degrees.push_back(deg);
    actions.push_back(a);
  }

  FpMatrix d(p, n, n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Index x = 0; x < n; ++x) {
    if (used[static_cast<std::size_t>(x)] || uniform(rng, 3) == 0) continue;
    std::vector<Index> targets;
    for (Index y = 0; y < n; ++y) {
      if (!used[static_cast<std::size_t>(y)] && y != x && degrees[static_cast<std::size_t>(y)] == degrees[static_cast<std::size_t>(x)] + 1 &&
          actions[static_cast<std::size_t>(y)] < actions[static_cast<std::size_t>(x)]) {
        targets.push_back(y);
      }
    }
    if (targets.empty()) continue;
    const Index y = targets[uniform(rng, targets.size())];
    used[static_cast<std::size_t>(x)] = used[static_cast<std::size_t>(y)] = true;
    d.set(y, x, 1 + static_cast<std::int64_t>(uniform(rng, p.value() - 1)));
  }

  const FpMatrix b = random_graded_automorphism(rng, p, degrees, &actions);
  return {p, std::move(gens), b * d * inverse(b)};
}

EquivariantComplex random_free_module(Rng& rng, Prime p, Index max_dim) {
  const Index copies = p.residue();
  const Index m = uniform_in(rng, 1, std::max<Index>(1, max_dim / copies));
  ComplexShape shape;
  shape.min_size = shape.max_size = m;
  const EquivariantComplex u = random_filtered_complex(rng, p, shape);

  const Index n = copies * m;
  std::vector<Generator> gens;
  std::vector<int> degrees;
  FpMatrix d(p, n, n);
  std::vector<Index> shift(static_cast<std::size_t>(n));
  for (Index k = 0; k < copies; ++k) {
    for (Index a = 0; a < m; ++a) {
      const Generator& g = u.generator(a);
      gens.push_back({"s" + std::to_string(k) + "." + g.id, g.degree, Rational(-g.degree)});
      degrees.push_back(g.degree);
      shift[static_cast<std::size_t>(k * m + a)] = ((k + 1) % copies) * m + a;
      for (Index b = 0; b < m; ++b) d.set(k * m + b, k * m + a, u.d()(b, a));
    }
  }
  const FpMatrix cyc = FpMatrix::permutation(p, shift);

  // Equivariant automorphism: sum over k of cyc^k (1 ⊗ M_k), M_k graded.
  FpMatrix a(p, n, n);
  while (true) {
    a = FpMatrix::zero(p, n, n);
    FpMatrix power = FpMatrix::identity(p, n);
    for (Index k = 0; k < copies; ++k) {
      const FpMatrix mk = (k == 0) ? random_graded_automorphism(rng, p, u.degree_list())
                                   : random_matrix(rng, p, m, m);
      FpMatrix lifted(p, n, n);
      for (Index c = 0; c < copies; ++c)
        for (Index j = 0; j < m; ++j)
          for (Index i = 0; i < m; ++i)
            if (u.generator(i).degree == u.generator(j).degree)
              lifted.set(c * m + i, c * m + j, mk(i, j));
      a = a + power * lifted;
      power = power * cyc;
    }
    if (rank(a) == static_cast<std::size_t>(n)) break;
  }
  const FpMatrix d1 = a * d * inverse(a);
  const FpMatrix b = random_graded_automorphism(rng, p, degrees);
  const FpMatrix b_inv = inverse(b);
  return {p, std::move(gens), b * d1 * b_inv, b * cyc * b_inv};
}

FpMatrix random_order_p(Rng& rng, Prime p, const std::vector<std::size_t>& blocks) {
  const FpMatrix t = jordan_nilpotent(p, blocks);
  const FpMatrix g = random_invertible(rng, p, t.rows());
  return g * (FpMatrix::identity(p, t.rows()) + t) * inverse(g);
}

std::vector<std::size_t> random_partition(Rng& rng, Prime p, std::size_t max_dim) {
  const std::size_t target = 1 + uniform(rng, max_dim);
  std::vector<std::size_t> parts;
  std::size_t total = 0;
  while (total < target) {
    const std::size_t part =
        1 + uniform(rng, std::min<std::size_t>(p.value(), target - total));
    parts.push_back(part);
    total += part;
  }
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

EquivariantComplex random_module(Rng& rng, Prime p, std::size_t max_dim) {
  const auto blocks = random_partition(rng, p, max_dim);
  const FpMatrix sigma = random_order_p(rng, p, blocks);
  std::vector<Generator> gens;
  for (Index i = 0; i < sigma.rows(); ++i) gens.push_back({"e" + std::to_string(i), 0, Rational(0)});
  return {p, std::move(gens), FpMatrix(p, sigma.rows(), sigma.rows()), sigma};
}

EquivariantComplex random_equivariant(Rng& rng, Prime p, Index max_filtered) {
  ComplexShape shape;
  shape.max_size = max_filtered;
  EquivariantComplex c = random_filtered_complex(rng, p, shape);
  c = direct_sum(c, random_free_module(rng, p, 2 * p.residue()));
  return direct_sum(c, random_module(rng, p, 5));
}

FpMatrix random_twist(Rng& rng, const EquivariantComplex& base) {
  const Prime p = base.modulus();
  const Index n = base.size();
  auto total_degree = [&](Index j) { return base.generator(j % n).degree + (j >= n ? 1 : 0); };
  FpMatrix a(p, 2 * n, 2 * n);
  for (Index c = 0; c < 2 * n; ++c)
    for (Index r = 0; r < 2 * n; ++r)
      if (total_degree(r) == total_degree(c) - 2 && uniform(rng, 2) == 0)
        a.set(r, c, static_cast<std::int64_t>(uniform(rng, p.value())));
  return a;
}

}  // namespace smith::gen
