#include "smith/tate.hpp"

#include <algorithm>
#include <random>

namespace smith {

RpElement RpElement::monomial(Prime p, std::int64_t c, int u_exp, int theta_exp) {
  RpElement out(p);
  out.add_term(u_exp, theta_exp, PrimeField(p).reduce(c));
  return out;
}

void RpElement::add_term(int u_exp, int theta_exp, Residue c) {
  if (theta_exp < 0 || theta_exp > 1) throw MalformedInput("theta exponent must be 0 or 1");
  const PrimeField f(p_);
  const Key key{u_exp, theta_exp};
  const Residue v = f.add(coefficient(u_exp, theta_exp), f.reduce(c));
  if (v == 0) {
    terms_.erase(key);
  } else {
    terms_[key] = v;
  }
}

Residue RpElement::coefficient(int u_exp, int theta_exp) const {
  const auto it = terms_.find({u_exp, theta_exp});
  return it == terms_.end() ? 0 : it->second;
}

std::optional<int> RpElement::degree() const {
  std::optional<int> deg;
  for (const auto& [key, c] : terms_) {
    const int k = 2 * key.first + key.second;
    if (deg && *deg != k) return std::nullopt;
    deg = k;
  }
  return deg;
}

RpElement RpElement::operator+(const RpElement& o) const {
  if (!(p_ == o.p_)) throw ModulusMismatch("R_p elements over different primes");
  RpElement out = *this;
  for (const auto& [key, c] : o.terms_) out.add_term(key.first, key.second, c);
  return out;
}

RpElement RpElement::operator*(const RpElement& o) const {
  if (!(p_ == o.p_)) throw ModulusMismatch("R_p elements over different primes");
  const PrimeField f(p_);
  RpElement out(p_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      if (a.second + b.second > 1) continue;  // θ² = 0
      out.add_term(a.first + b.first, a.second + b.second, f.mul(ca, cb));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

FpMatrix norm_map(const FpMatrix& sigma) {
  const Prime p = sigma.modulus();
  FpMatrix out = FpMatrix::zero(p, sigma.rows(), sigma.cols());
  FpMatrix power = FpMatrix::identity(p, sigma.rows());
  for (std::uint32_t k = 0; k < p.value(); ++k) {
    out = out + power;
    power = power * sigma;
  }
  return out;
}

namespace {
int parity_of(int degree) { return ((degree % 2) + 2) % 2; }
}  // namespace

TateComplexView::TateComplexView(const EquivariantComplex& v)
    : source_(v),
      one_minus_sigma_(FpMatrix::identity(v.modulus(), v.size()) - v.sigma()),
      norm_(norm_map(v.sigma())),
      dhat_(v.modulus(), 2 * v.size(), 2 * v.size()) {
  require_valid(v, false, "Tate complex");
  const Index n = v.size();
  const RatFunField& field = dhat_.field();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (v.d()(i, j) != 0) {
        dhat_.set(i, j, field.constant(v.d()(i, j)));
        dhat_.set(n + i, n + j, field.constant(-v.d()(i, j)));
      }
      if (one_minus_sigma_(i, j) != 0) dhat_.set(n + i, j, field.constant(one_minus_sigma_(i, j)));
      if (norm_(i, j) != 0) dhat_.set(i, n + j, field.laurent_monomial(norm_(i, j), 1));
    }
  }
  parity_.resize(static_cast<std::size_t>(2 * n));
  for (Index j = 0; j < n; ++j) {
    parity_[static_cast<std::size_t>(j)] = parity_of(v.generator(j).degree);
    parity_[static_cast<std::size_t>(n + j)] = parity_of(v.generator(j).degree + 1);
  }
}

bool TateComplexView::squares_to_zero() const { return (dhat_ * dhat_).is_zero(); }

TateDims TateComplexView::dims() const { return parity_homology_dims(dhat_, parity_); }

TateDims parity_homology_dims(const RatFunMatrix& d, const std::vector<int>& parity) {
  std::vector<Index> all(static_cast<std::size_t>(d.rows()));
  for (Index i = 0; i < d.rows(); ++i) all[static_cast<std::size_t>(i)] = i;
  std::vector<Index> even, odd;
  for (std::size_t j = 0; j < parity.size(); ++j) {
    (parity[j] == 0 ? even : odd).push_back(static_cast<Index>(j));
  }
  const std::size_t r_even = ratfun_rank(d.select(all, even));
  const std::size_t r_odd = ratfun_rank(d.select(all, odd));
  return {even.size() - r_even - r_odd, odd.size() - r_odd - r_even};
}

TateDims tate_cohomology_dims(const EquivariantComplex& v) { return TateComplexView(v).dims(); }

// ---------------------------------------------------------------------------

int default_max_degree(const EquivariantComplex& v) {
  const auto degs = v.degrees();
  if (degs.empty()) return 4;
  return 2 * (degs.back() - degs.front()) + 4;
}

std::map<int, std::size_t> group_cohomology_dims(const EquivariantComplex& v,
                                                 std::optional<int> max_degree) {
  require_valid(v, false, "group cohomology");
  const int top = max_degree.value_or(default_max_degree(v));
  if (top < 0) throw MalformedInput("max_degree must be non-negative");

  const auto degs = v.degrees();
  const int lo = degs.empty() ? 0 : degs.front();
  std::map<int, std::size_t> out;
  for (int k = std::min(0, lo); k <= top; ++k) out[k] = 0;
  if (degs.empty()) return out;

  // Summands i = 0..copies-1 cover every C^k with k <= top + 1.
  const Prime p = v.modulus();
  const Index n = v.size();
  const int copies = top + 2 - lo;
  const FpMatrix one_minus_sigma = FpMatrix::identity(p, n) - v.sigma();
  const FpMatrix norm = norm_map(v.sigma());

  const Index total = n * copies;
  FpMatrix d(p, total, total);
  std::vector<int> degrees(static_cast<std::size_t>(total));
  for (int i = 0; i < copies; ++i) {
    const int sign = (i % 2 == 0) ? 1 : -1;
    const FpMatrix& dagger = (i % 2 == 0) ? one_minus_sigma : norm;
    for (Index c = 0; c < n; ++c) {
      const Index col = i * n + c;
      degrees[static_cast<std::size_t>(col)] = v.generator(c).degree + i;
      for (Index r = 0; r < n; ++r) {
        if (v.d()(r, c) != 0) d.set(i * n + r, col, sign * v.d()(r, c));
        if (i + 1 < copies && dagger(r, c) != 0) d.set((i + 1) * n + r, col, dagger(r, c));
      }
    }
  }
  for (const auto& [k, dim] : graded_homology_dims(degrees, d)) {
    if (k <= top) out[k] = dim;
  }
  return out;
}

// ---------------------------------------------------------------------------

EquivariantComplex mapping_cone(const EquivariantComplex& v, const EquivariantComplex& w,
                                const FpMatrix& f) {
  const Prime p = v.modulus();
  if (!(w.modulus() == p) || !(f.modulus() == p)) throw ModulusMismatch("mapping cone over mixed primes");
  if (f.rows() != w.size() || f.cols() != v.size()) {
    throw DimensionMismatch("chain map must be " + std::to_string(w.size()) + "x" +
                            std::to_string(v.size()));
  }
  for (Index j = 0; j < f.cols(); ++j) {
    for (Index i = 0; i < f.rows(); ++i) {
      if (f(i, j) != 0 && w.generator(i).degree != v.generator(j).degree) {
        throw NotChainMap("f(" + v.generator(j).id + ") has a component in degree " +
                          std::to_string(w.generator(i).degree));
      }
    }
  }
  if (!(f * v.d() == w.d() * f)) throw NotChainMap("f d_V != d_W f");
  if (!(f * v.sigma() == w.sigma() * f)) throw NotEquivariant("f sigma_V != sigma_W f");

  const Index nv = v.size();
  const Index nw = w.size();
  std::vector<Generator> gens;
  for (const auto& g : v.generators()) gens.push_back({"v:" + g.id, g.degree - 1, g.action});
  for (const auto& g : w.generators()) gens.push_back({"w:" + g.id, g.degree, g.action});

  ResidueMatrix d = ResidueMatrix::Zero(nv + nw, nv + nw);
  d.topLeftCorner(nv, nv) = -v.d().entries();
  d.bottomLeftCorner(nw, nv) = f.entries();
  d.bottomRightCorner(nw, nw) = w.d().entries();
  ResidueMatrix s = ResidueMatrix::Zero(nv + nw, nv + nw);
  s.topLeftCorner(nv, nv) = v.sigma().entries();
  s.bottomRightCorner(nw, nw) = w.sigma().entries();
  return {p, std::move(gens), FpMatrix(p, d), FpMatrix(p, s)};
}

bool cone_triangle_holds(const TateDims& v, const TateDims& w, const TateDims& cone) {
  const auto a = static_cast<long long>(v.total());
  const auto b = static_cast<long long>(w.total());
  const auto c = static_cast<long long>(cone.total());
  return std::llabs(b - a) <= c && c <= a + b;
}

// ---------------------------------------------------------------------------

namespace {

constexpr Index kMaxFrobeniusDim = Index{1} << 20;

// Dense vectors on the basis of V^{⊗p}, indexed lexicographically.
class TensorSpace {
 public:
  TensorSpace(const EquivariantComplex& v, std::uint32_t factors)
      : v_(v), f_(v.modulus()), n_(v.size()), factors_(factors) {
    dim_ = 1;
    for (std::uint32_t k = 0; k < factors; ++k) {
      if (n_ != 0 && dim_ > kMaxFrobeniusDim / n_) {
        throw DimensionMismatch("tensor power too large for the quasi-Frobenius check");
      }
      dim_ *= n_;
    }
    if (n_ == 0) dim_ = 0;
  }

  Index dim() const { return dim_; }

  std::vector<Index> digits(Index code) const {
    std::vector<Index> out(factors_);
    for (std::uint32_t k = factors_; k-- > 0;) {
      out[k] = code % n_;
      code /= n_;
    }
    return out;
  }
  Index code(const std::vector<Index>& digits) const {
    Index c = 0;
    for (Index x : digits) c = c * n_ + x;
    return c;
  }
  bool is_constant(Index code) const {
    const auto d = digits(code);
    return std::all_of(d.begin(), d.end(), [&](Index x) { return x == d[0]; });
  }

  ResidueVector pure_power(const ResidueVector& x) const {
    ResidueVector out = ResidueVector::Zero(dim_);
    std::vector<Index> support;
    for (Index i = 0; i < n_; ++i)
      if (x(i) != 0) support.push_back(i);
    if (support.empty()) return out;
    // odometer over support^factors
    std::vector<std::size_t> pos(factors_, 0);
    while (true) {
      Residue c = 1;
      std::vector<Index> dig(factors_);
      for (std::uint32_t k = 0; k < factors_; ++k) {
        dig[k] = support[pos[k]];
        c = f_.mul(c, x(dig[k]));
      }
      out(code(dig)) = f_.add(out(code(dig)), c);
      std::uint32_t k = factors_;
      while (k > 0 && ++pos[k - 1] == support.size()) pos[--k] = 0;
      if (k == 0) break;
    }
    return out;
  }

  // (shifted code, sign) for the cyclic shift of one basis tensor
  std::pair<Index, int> shift(Index code) const {
    const auto dig = digits(code);
    std::vector<int> degs(factors_);
    for (std::uint32_t k = 0; k < factors_; ++k) degs[k] = v_.generator(dig[k]).degree;
    std::vector<Index> out(factors_);
    out[0] = dig[factors_ - 1];
    for (std::uint32_t k = 1; k < factors_; ++k) out[k] = dig[k - 1];
    return {this->code(out), cyclic_shift_sign(degs)};
  }

  ResidueVector sigma(const ResidueVector& z) const {
    ResidueVector out = ResidueVector::Zero(dim_);
    for (Index c = 0; c < dim_; ++c) {
      if (z(c) == 0) continue;
      const auto [t, s] = shift(c);
      out(t) = f_.add(out(t), f_.reduce(s * z(c)));
    }
    return out;
  }

  ResidueVector norm(const ResidueVector& z) const {
    ResidueVector out = ResidueVector::Zero(dim_);
    ResidueVector power = z;
    for (std::uint32_t k = 0; k < factors_; ++k) {
      for (Index c = 0; c < dim_; ++c) out(c) = f_.add(out(c), power(c));
      power = sigma(power);
    }
    return out;
  }

  ResidueVector differential(const ResidueVector& z) const {
    ResidueVector out = ResidueVector::Zero(dim_);
    for (Index c = 0; c < dim_; ++c) {
      if (z(c) == 0) continue;
      const auto dig = digits(c);
      int prefix = 0;
      for (std::uint32_t k = 0; k < factors_; ++k) {
        const Residue sign = (prefix % 2 == 0) ? 1 : f_.neg(1);
        for (Index r = 0; r < n_; ++r) {
          const Residue coef = v_.d()(r, dig[k]);
          if (coef == 0) continue;
          auto target = dig;
          target[k] = r;
          const Index t = code(target);
          out(t) = f_.add(out(t), f_.mul(f_.mul(sign, coef), z(c)));
        }
        prefix += v_.generator(dig[k]).degree;
      }
    }
    return out;
  }

  /// Solves N z = c orbit by orbit; z is supported on non-constant tensors.
  std::optional<ResidueVector> norm_preimage(const ResidueVector& c) const {
    ResidueVector z = ResidueVector::Zero(dim_);
    std::vector<bool> done(static_cast<std::size_t>(dim_), false);
    const Prime p = f_.modulus();
    for (Index start = 0; start < dim_; ++start) {
      if (done[static_cast<std::size_t>(start)]) continue;
      // orbit codes o_0..o_{m-1} with sigma e_{o_k} = s_k e_{o_{k+1}}
      std::vector<Index> orbit{start};
      std::vector<int> signs;
      Index cur = start;
      while (true) {
        const auto [next, s] = shift(cur);
        signs.push_back(s);
        if (next == start) break;
        orbit.push_back(next);
        cur = next;
      }
      for (Index o : orbit) done[static_cast<std::size_t>(o)] = true;
      const auto m = static_cast<Index>(orbit.size());
      if (m == 1) {
        if (c(start) != 0) return std::nullopt;
        continue;
      }
      // Matrix of N on the orbit span.
      FpMatrix sigma_local(p, m, m);
      for (Index k = 0; k < m; ++k) sigma_local.set((k + 1) % m, k, signs[static_cast<std::size_t>(k)]);
      const FpMatrix n_local = norm_map(sigma_local);
      ResidueVector rhs(m);
      for (Index k = 0; k < m; ++k) rhs(k) = c(orbit[static_cast<std::size_t>(k)]);
      const auto x = solve(n_local, rhs);
      if (!x) return std::nullopt;
      for (Index k = 0; k < m; ++k) z(orbit[static_cast<std::size_t>(k)]) = (*x)(k);
    }
    return z;
  }

 private:
  const EquivariantComplex& v_;
  PrimeField f_;
  Index n_;
  std::uint32_t factors_;
  Index dim_ = 0;
};

// Chain retraction r: V -> H(V) with r(reps_i) = e_i and r(im d) = 0.
FpMatrix homology_retraction(const EquivariantComplex& v, const HomologyBasis& basis) {
  const Prime p = v.modulus();
  const auto h = static_cast<Index>(basis.size());
  FpMatrix r(p, h, v.size());
  for (int k : v.degrees()) {
    const auto cols = v.indices_in_degree(k);
    const auto size = static_cast<Index>(cols.size());
    const auto below = v.indices_in_degree(k - 1);

    std::vector<ResidueVector> frame = rref(v.d().select(cols, below)).image_basis;
    const auto boundaries = static_cast<Index>(frame.size());
    std::vector<Index> rep_ids;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis.degrees[i] != k) continue;
      rep_ids.push_back(static_cast<Index>(i));
      ResidueVector local(size);
      for (Index t = 0; t < size; ++t) local(t) = basis.reps[i](cols[static_cast<std::size_t>(t)]);
      frame.push_back(std::move(local));
    }
    // complete to a basis with standard vectors
    for (Index t = 0; t < size && static_cast<Index>(frame.size()) < size; ++t) {
      ResidueVector e = ResidueVector::Zero(size);
      e(t) = 1;
      auto trial = frame;
      trial.push_back(e);
      if (rank(from_columns(p, size, trial)) == trial.size()) frame = std::move(trial);
    }
    const FpMatrix m = from_columns(p, size, frame);
    for (Index t = 0; t < size; ++t) {
      ResidueVector e = ResidueVector::Zero(size);
      e(t) = 1;
      const ResidueVector x = *solve(m, e);  // column t of m^{-1}
      for (std::size_t q = 0; q < rep_ids.size(); ++q) {
        r.set(rep_ids[q], cols[static_cast<std::size_t>(t)], x(boundaries + static_cast<Index>(q)));
      }
    }
  }
  return r;
}

// Tate dims of H^{⊗p} with zero differential, from the signed orbits of the
// cyclic shift: free orbits contribute nothing, fixed tensors are trivial
// modules.
TateDims orbit_model_dims(const std::vector<int>& degrees, std::uint32_t factors) {
  const auto h = static_cast<Index>(degrees.size());
  TateDims out;
  if (h == 0) return out;
  Index total = 1;
  for (std::uint32_t k = 0; k < factors; ++k) total *= h;
  std::vector<bool> done(static_cast<std::size_t>(total), false);
  auto digits = [&](Index code) {
    std::vector<Index> d(factors);
    for (std::uint32_t k = factors; k-- > 0;) {
      d[k] = code % h;
      code /= h;
    }
    return d;
  };
  for (Index start = 0; start < total; ++start) {
    if (done[static_cast<std::size_t>(start)]) continue;
    Index cur = start;
    int orbit_sign = 1;
    Index length = 0;
    int degree = 0;
    do {
      done[static_cast<std::size_t>(cur)] = true;
      const auto d = digits(cur);
      std::vector<int> degs(factors);
      degree = 0;
      for (std::uint32_t k = 0; k < factors; ++k) {
        degs[k] = degrees[static_cast<std::size_t>(d[k])];
        degree += degs[k];
      }
      orbit_sign *= cyclic_shift_sign(degs);
      std::vector<Index> s(factors);
      s[0] = d[factors - 1];
      for (std::uint32_t k = 1; k < factors; ++k) s[k] = d[k - 1];
      cur = 0;
      for (Index x : s) cur = cur * h + x;
      ++length;
    } while (cur != start);
    if (orbit_sign != 1 && factors != 2) {
      throw InvalidComplex("cyclic shift of order other than p");
    }
    if (length == 1) {
      (parity_of(degree) == 0 ? out.even : out.odd) += 1;
      (parity_of(degree + 1) == 0 ? out.even : out.odd) += 1;
    }
  }
  return out;
}

}  // namespace

bool QuasiFrobeniusResult::ok() const {
  const bool images_ok = std::all_of(images.begin(), images.end(), [](const FrobeniusImage& im) {
    return im.cocycle && im.invariant;
  });
  const bool certs_ok = std::all_of(certificates.begin(), certificates.end(),
                                    [](const AdditivityCertificate& c) { return c.ok(); });
  const bool dims_ok = domain_dims.even == homology_dim && domain_dims.odd == homology_dim &&
                       target_dims == domain_dims &&
                       (!direct_target_dims || *direct_target_dims == target_dims);
  return images_ok && certs_ok && dims_ok && is_bijective;
}

QuasiFrobeniusResult quasi_frobenius(const EquivariantComplex& v,
                                     const QuasiFrobeniusOptions& options) {
  const Prime p = v.modulus();
  if (!(v.d() * v.d()).is_zero()) throw InvalidComplex("quasi_frobenius: d squared nonzero");
  for (Index j = 0; j < v.size(); ++j) {
    for (Index i = 0; i < v.size(); ++i) {
      if (v.d()(i, j) != 0 && v.generator(i).degree != v.generator(j).degree + 1) {
        throw InvalidComplex("quasi_frobenius: d not of degree +1");
      }
    }
  }
  const EquivariantComplex plain = v.with_sigma(FpMatrix::identity(p, v.size()));
  const std::uint32_t factors = p.value();
  const TensorSpace space(plain, factors);
  const HomologyBasis basis = homology_basis(plain);
  const auto h = static_cast<Index>(basis.size());
  const FpMatrix r = homology_retraction(plain, basis);
  const PrimeField f(p);

  QuasiFrobeniusResult out{
      static_cast<std::size_t>(h), {}, {}, {}, std::nullopt, FpMatrix(p, 2 * h, 2 * h),
      FpMatrix(p, 0, 0), FpMatrix(p, 0, 0), false, {}};

  for (Index i = 0; i < h; ++i) {
    const ResidueVector& rep = basis.reps[static_cast<std::size_t>(i)];
    const ResidueVector t = space.pure_power(rep);
    FrobeniusImage im;
    im.label = plain.generator(basis.anchors[static_cast<std::size_t>(i)]).id;
    im.degree = basis.degrees[static_cast<std::size_t>(i)];
    im.cocycle = (space.differential(t).array() == 0).all();
    im.invariant = space.sigma(t) == t;
    // Class in the orbit model: apply r^{⊗p} and keep constant tensors.
    im.constant_coefficients = ResidueVector::Zero(h);
    for (Index c = 0; c < space.dim(); ++c) {
      if (t(c) == 0) continue;
      const auto dig = space.digits(c);
      for (Index j = 0; j < h; ++j) {
        Residue prod = t(c);
        for (Index x : dig) prod = f.mul(prod, r(j, x));
        im.constant_coefficients(j) = f.add(im.constant_coefficients(j), prod);
      }
    }
    for (Index j = 0; j < h; ++j) {
      out.matrix.set(j, i, im.constant_coefficients(j));
      out.matrix.set(h + j, h + i, im.constant_coefficients(j));
    }
    out.images.push_back(std::move(im));
  }

  // Parities of the domain basis h_i⊗1, h_i⊗θ and target basis c_j⊗1, c_j⊗θ.
  std::vector<int> domain_parity(static_cast<std::size_t>(2 * h));
  std::vector<int> target_parity(static_cast<std::size_t>(2 * h));
  for (Index i = 0; i < h; ++i) {
    const int deg = basis.degrees[static_cast<std::size_t>(i)];
    domain_parity[static_cast<std::size_t>(i)] = parity_of(deg);
    domain_parity[static_cast<std::size_t>(h + i)] = parity_of(deg + 1);
    target_parity[static_cast<std::size_t>(i)] = parity_of(static_cast<int>(factors) * deg);
    target_parity[static_cast<std::size_t>(h + i)] = parity_of(static_cast<int>(factors) * deg + 1);
  }
  auto block = [&](int parity) {
    std::vector<Index> rows, cols;
    for (Index i = 0; i < 2 * h; ++i) {
      if (target_parity[static_cast<std::size_t>(i)] == parity) rows.push_back(i);
      if (domain_parity[static_cast<std::size_t>(i)] == parity) cols.push_back(i);
    }
    return out.matrix.select(rows, cols);
  };
  out.matrix_even = block(0);
  out.matrix_odd = block(1);
  auto invertible = [](const FpMatrix& m) {
    return m.square() && rank(m) == static_cast<std::size_t>(m.rows());
  };
  out.is_bijective = rank(out.matrix) == static_cast<std::size_t>(2 * h) &&
                     (factors == 2 || (invertible(out.matrix_even) && invertible(out.matrix_odd)));

  out.domain_dims = tate_cohomology_dims(homology_complex(plain));
  out.target_dims = orbit_model_dims(basis.degrees, factors);
  if (space.dim() <= options.direct_check_limit && space.dim() > 0) {
    out.direct_target_dims = tate_cohomology_dims(tensor_power(plain, p));
  }

  // Additivity certificates on random cocycles of a common degree.
  std::vector<std::pair<int, std::vector<ResidueVector>>> cocycles;
  for (int k : plain.degrees()) {
    const auto cols = plain.indices_in_degree(k);
    const auto ker = kernel(plain.d().select(plain.indices_in_degree(k + 1), cols));
    if (ker.empty()) continue;
    std::vector<ResidueVector> full;
    for (const auto& z : ker) {
      ResidueVector w = ResidueVector::Zero(plain.size());
      for (std::size_t t = 0; t < cols.size(); ++t) w(cols[t]) = z(static_cast<Index>(t));
      full.push_back(std::move(w));
    }
    cocycles.emplace_back(k, std::move(full));
  }
  std::mt19937_64 rng(options.seed);
  for (std::size_t n = 0; n < options.certificates && !cocycles.empty(); ++n) {
    const auto& [k, span] = cocycles[rng() % cocycles.size()];
    auto random_cocycle = [&, &span = span] {
      ResidueVector z = ResidueVector::Zero(plain.size());
      for (const auto& b : span) {
        const auto c = static_cast<Residue>(rng() % p.value());
        for (Index i = 0; i < z.size(); ++i) z(i) = f.add(z(i), f.mul(c, b(i)));
      }
      return z;
    };
    const ResidueVector x = random_cocycle();
    const ResidueVector y = random_cocycle();
    ResidueVector sum = x + y;
    for (Index i = 0; i < sum.size(); ++i) sum(i) = f.reduce(sum(i));
    ResidueVector c = space.pure_power(sum) - space.pure_power(x) - space.pure_power(y);
    for (Index i = 0; i < c.size(); ++i) c(i) = f.reduce(c(i));

    AdditivityCertificate cert;
    cert.degree = k;
    cert.invariant = space.sigma(c) == c;
    cert.norm_zero = (space.norm(c).array() == 0).all();
    cert.nonconstant = true;
    for (Index code = 0; code < space.dim(); ++code) {
      if (c(code) != 0 && space.is_constant(code)) cert.nonconstant = false;
    }
    if (const auto z = space.norm_preimage(c)) {
      cert.preimage_found = true;
      cert.preimage_verified = space.norm(*z) == c;
    }
    out.certificates.push_back(cert);
  }
  return out;
}

}  // namespace smith
