#include "smith/spectral.hpp"

#include <algorithm>

namespace smith {

std::size_t Page::total() const {
  std::size_t out = 0;
  for (const auto& [k, per_s] : dims)
    for (auto v : per_s) out += v;
  return out;
}

std::map<int, std::size_t> Page::total_by_degree() const {
  std::map<int, std::size_t> out;
  for (const auto& [k, per_s] : dims) {
    std::size_t sum = 0;
    for (auto v : per_s) sum += v;
    out[k] = sum;
  }
  return out;
}

namespace {

int parity_of(int k) { return ((k % 2) + 2) % 2; }

std::size_t span_dim(Prime p, Index n, const std::vector<ResidueVector>& vs) {
  if (vs.empty()) return 0;
  return rank(from_columns(p, n, vs));
}

// Z_r^s and the pieces of E_r^s for one filtered complex.
class ActionFiltration {
 public:
  ActionFiltration(const EquivariantComplex& c, std::vector<int> s_of, int levels)
      : c_(c), s_of_(std::move(s_of)), levels_(levels) {}

  // {x ∈ F^s in degree k : dx ∈ F^{s+r}}
  std::vector<ResidueVector> z(int r, int s, int k) const {
    if (s >= levels_) return {};
    const int s0 = std::max(s, 0);
    std::vector<Index> cols, rows;
    for (Index i : c_.indices_in_degree(k))
      if (s_of_[static_cast<std::size_t>(i)] >= s0) cols.push_back(i);
    for (Index i : c_.indices_in_degree(k + 1))
      if (s_of_[static_cast<std::size_t>(i)] < s + r) rows.push_back(i);
    const Index n = c_.size();
    std::vector<ResidueVector> out;
    auto embed = [&](const ResidueVector& local) {
      ResidueVector v = ResidueVector::Zero(n);
      for (std::size_t q = 0; q < cols.size(); ++q) v(cols[q]) = local(static_cast<Index>(q));
      out.push_back(std::move(v));
    };
    if (rows.empty()) {
      for (std::size_t q = 0; q < cols.size(); ++q) {
        ResidueVector e = ResidueVector::Zero(static_cast<Index>(cols.size()));
        e(static_cast<Index>(q)) = 1;
        embed(e);
      }
      return out;
    }
    for (const auto& v : kernel(c_.d().select(rows, cols))) embed(v);
    return out;
  }

  std::vector<ResidueVector> dz(int r, int s, int k) const {
    auto vs = z(r, s, k);
    for (auto& v : vs) v = c_.d().apply(v);
    return vs;
  }

  // Z_{r-1}^{s+1} + d Z_{r-1}^{s-r+1}, inside degree k
  std::vector<ResidueVector> boundary(int r, int s, int k) const {
    auto out = z(r - 1, s + 1, k);
    for (auto& v : dz(r - 1, s - r + 1, k - 1)) out.push_back(std::move(v));
    return out;
  }

  std::size_t e_dim(int r, int s, int k) const {
    return z(r, s, k).size() - span_dim(c_.modulus(), c_.size(), boundary(r, s, k));
  }

  std::size_t d_rank(int r, int s, int k) const {
    if (s + r >= levels_) return 0;
    const auto target = boundary(r, s + r, k + 1);
    auto with_image = target;
    for (auto& v : dz(r, s, k)) with_image.push_back(std::move(v));
    const Prime p = c_.modulus();
    return span_dim(p, c_.size(), with_image) - span_dim(p, c_.size(), target);
  }

 private:
  const EquivariantComplex& c_;
  std::vector<int> s_of_;
  int levels_;
};

}  // namespace

SpectralSequencePages action_ss_pages(const EquivariantComplex& c, bool strict) {
  require_action_filtration(c, strict);

  SpectralSequencePages out;
  for (const auto& g : c.generators()) out.levels.push_back(g.action);
  std::sort(out.levels.begin(), out.levels.end());
  out.levels.erase(std::unique(out.levels.begin(), out.levels.end()), out.levels.end());
  const int levels = static_cast<int>(out.levels.size());

  std::vector<int> s_of;
  for (const auto& g : c.generators()) {
    const auto it = std::lower_bound(out.levels.begin(), out.levels.end(), g.action);
    s_of.push_back(levels - 1 - static_cast<int>(it - out.levels.begin()));
  }
  const ActionFiltration filt(c, std::move(s_of), levels);

  for (int r = 0; r <= levels; ++r) {
    Page page;
    page.r = r;
    for (int k : c.degrees()) {
      auto& dims = page.dims[k];
      auto& ranks = page.ranks[k];
      for (int s = 0; s < levels; ++s) {
        dims.push_back(filt.e_dim(r, s, k));
        ranks.push_back(filt.d_rank(r, s, k));
      }
    }
    out.pages.push_back(std::move(page));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string term_name(int i, int alpha) {
  return "d^" + std::to_string(i) + "_" + std::to_string(alpha);
}

}  // namespace

void check_model_shape(const EquivariantFloerModel& m) {
  const EquivariantComplex& v = m.base;
  const Index n = v.size();
  if (m.i_max < 0) throw MalformedInput("i_max must be non-negative");
  std::vector<std::pair<int, int>> seen;
  for (const auto& t : m.terms) {
    const std::string name = term_name(t.i, t.alpha);
    if (t.alpha != 0 && t.alpha != 1) throw MalformedInput(name + ": alpha must be 0 or 1");
    if (t.i == 0) throw MalformedInput(name + ": d^0_0 is the base differential and d^0_1 does not occur");
    if (t.i < 0 || t.i > m.i_max)
      throw MalformedInput(name + ": i outside [1, " + std::to_string(m.i_max) + "]");
    if (std::find(seen.begin(), seen.end(), std::make_pair(t.i, t.alpha)) != seen.end())
      throw MalformedInput(name + " given twice");
    seen.emplace_back(t.i, t.alpha);
    if (!(t.matrix.modulus() == v.modulus())) throw ModulusMismatch(name + ": field differs from the base");
    if (t.matrix.rows() != n || t.matrix.cols() != n)
      throw DimensionMismatch(name + ": expected " + std::to_string(n) + "x" + std::to_string(n));
    for (Index c = 0; c < n; ++c) {
      for (Index r = 0; r < n; ++r) {
        if (t.matrix(r, c) == 0) continue;
        if (v.generator(r).degree != v.generator(c).degree + 1 - t.i + t.alpha)
          throw MalformedInput(name + ": entry " + v.generator(c).id + " -> " + v.generator(r).id +
                               " breaks |d^i_a x| = |x| + 1 - i + a");
      }
    }
    if (t.i == 1 && t.alpha == 1 && !(t.matrix == -v.d()))
      throw MalformedInput("d^1_1 must equal -d^0_0");
  }
}

std::map<std::pair<int, int>, FpMatrix> effective_terms(const EquivariantFloerModel& m) {
  const EquivariantComplex& v = m.base;
  std::map<std::pair<int, int>, FpMatrix> out;
  out.emplace(std::make_pair(0, 0), v.d());
  out.emplace(std::make_pair(1, 1), -v.d());
  out.emplace(std::make_pair(1, 0), FpMatrix::identity(v.modulus(), v.size()) - v.sigma());
  out.emplace(std::make_pair(2, 1), norm_map(v.sigma()));
  for (const auto& t : m.terms) out.insert_or_assign(std::make_pair(t.i, t.alpha), t.matrix);
  return out;
}

ValidationReport validate_model_actions(const EquivariantFloerModel& m) {
  ValidationReport report;
  const EquivariantComplex& v = m.base;
  for (const auto& [key, mat] : effective_terms(m)) {
    const bool strict = (key == std::make_pair(0, 0)) || (key == std::make_pair(1, 1));
    for (Index c = 0; c < v.size(); ++c) {
      for (Index r = 0; r < v.size(); ++r) {
        if (mat(r, c) == 0) continue;
        const Rational& from = v.generator(c).action;
        const Rational& to = v.generator(r).action;
        if (strict ? !(to < from) : (from < to)) {
          report.violations.push_back(
              {strict ? invariant::kActionDecrease : "action increased",
               term_name(key.first, key.second) + ": " + v.generator(c).id + " -> " +
                   v.generator(r).id});
        }
      }
    }
  }
  return report;
}

RatFunMatrix assemble_differential(const EquivariantFloerModel& m) {
  const Index n = m.base.size();
  RatFunMatrix out(m.base.modulus(), 2 * n, 2 * n);
  for (const auto& [key, mat] : effective_terms(m)) {
    const auto [i, alpha] = key;
    const int k = i / 2;
    Index row0 = 0, col0 = 0;
    if (alpha == 0) {
      row0 = (i % 2 == 0) ? 0 : n;
    } else {
      if (i == 0) continue;
      row0 = (i % 2 == 0) ? 0 : n;
      col0 = n;
    }
    for (Index c = 0; c < n; ++c)
      for (Index r = 0; r < n; ++r)
        if (mat(r, c) != 0) out.add_monomial(row0 + r, col0 + c, mat(r, c), k);
  }
  return out;
}

namespace {

std::vector<int> model_parity(const EquivariantComplex& v) {
  const Index n = v.size();
  std::vector<int> parity(static_cast<std::size_t>(2 * n));
  for (Index j = 0; j < n; ++j) {
    parity[static_cast<std::size_t>(j)] = parity_of(v.generator(j).degree);
    parity[static_cast<std::size_t>(n + j)] = parity_of(v.generator(j).degree + 1);
  }
  return parity;
}

}  // namespace

AlgebraicPages algebraic_ss_pages(const EquivariantFloerModel& m, std::optional<int> max_degree) {
  check_model_shape(m);
  const EquivariantComplex& v = m.base;
  require_valid(v, false, "equivariant model");
  const Prime p = v.modulus();

  const RatFunMatrix dhat = assemble_differential(m);
  if (!(dhat * dhat).is_zero()) throw NotSquareZero("assembled equivariant differential");

  const auto terms = effective_terms(m);
  const HomologyBasis basis = homology_basis(v);
  const auto h = static_cast<Index>(basis.size());

  AlgebraicPages out;
  out.homology_dim = basis.size();
  out.homology_degrees = basis.degrees;
  out.d10_induced = induced_on_homology(basis, terms.at({1, 0}));
  out.d21_induced = induced_on_homology(basis, terms.at({2, 1}));

  const FpMatrix sigma_star = induced_on_homology(basis, v.sigma());
  out.matches_sigma = out.d10_induced == FpMatrix::identity(p, h) - sigma_star &&
                      out.d21_induced == norm_map(sigma_star);

  std::vector<Generator> hgens;
  for (Index i = 0; i < h; ++i)
    hgens.push_back({"h" + std::to_string(i), basis.degrees[static_cast<std::size_t>(i)], Rational(0)});
  const EquivariantComplex hcomplex(p, hgens, FpMatrix(p, h, h));
  const int top = max_degree.value_or(default_max_degree(hcomplex));
  if (top < 0) throw MalformedInput("max_degree must be non-negative");

  // E_2 at u-filtration a, homology degree g:
  //   a = 0: ker[d10];  a odd: ker[d21] / im[d10];  a even > 0: ker[d10] / im[d21]
  const auto hdegs = hcomplex.degrees();
  const int lo = hdegs.empty() ? 0 : hdegs.front();
  for (int k = std::min(0, lo); k <= top; ++k) out.e2_by_degree[k] = 0;
  for (int g : hdegs) {
    const auto idx = hcomplex.indices_in_degree(g);
    const std::size_t dim = idx.size();
    const std::size_t r10 = rank(out.d10_induced.select(idx, idx));
    const std::size_t r21 = rank(out.d21_induced.select(idx, idx));
    for (int a = 0; g + a <= top; ++a) {
      std::size_t e = 0;
      if (a == 0) e = dim - r10;
      else if (a % 2 == 1) e = dim - r21 - r10;
      else e = dim - r10 - r21;
      out.e2_by_degree[g + a] += e;
    }
  }

  RatFunMatrix e1(p, 2 * h, 2 * h);
  for (Index c = 0; c < h; ++c) {
    for (Index r = 0; r < h; ++r) {
      if (out.d10_induced(r, c) != 0) e1.add_monomial(h + r, c, out.d10_induced(r, c), 0);
      if (out.d21_induced(r, c) != 0) e1.add_monomial(r, h + c, out.d21_induced(r, c), 1);
    }
  }
  out.e2_tate = parity_homology_dims(e1, model_parity(hcomplex));
  out.e_infinity = parity_homology_dims(dhat, model_parity(v));
  out.tate_bound_holds =
      out.e_infinity.even <= out.e2_tate.even && out.e_infinity.odd <= out.e2_tate.odd;

  const FpMatrix sigma_prime = FpMatrix::identity(p, h) - out.d10_induced;
  if (pow(sigma_prime, p.value()) == FpMatrix::identity(p, h)) {
    out.matches_group_cohomology =
        group_cohomology_dims(hcomplex.with_sigma(sigma_prime), top) == out.e2_by_degree;
  }
  return out;
}

EquivariantFloerModel conjugated_model(const EquivariantComplex& base, const FpMatrix& a) {
  require_valid(base, false, "conjugated model");
  const Prime p = base.modulus();
  const Index n = base.size();
  if (a.rows() != 2 * n || a.cols() != 2 * n)
    throw DimensionMismatch("twist must act on V<1, θ>");
  auto total_degree = [&](Index j) {
    return base.generator(j % n).degree + (j >= n ? 1 : 0);
  };
  for (Index c = 0; c < 2 * n; ++c)
    for (Index r = 0; r < 2 * n; ++r)
      if (a(r, c) != 0 && total_degree(r) != total_degree(c) - 2)
        throw MalformedInput("twist must lower total degree by 2");

  using PolyMatrix = std::vector<FpMatrix>;  // coefficient of u^k at position k
  auto multiply = [&](const PolyMatrix& x, const PolyMatrix& y) {
    PolyMatrix out(x.size() + y.size() - 1, FpMatrix(p, 2 * n, 2 * n));
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) out[i + j] = out[i + j] + x[i] * y[j];
    return out;
  };

  const TateComplexView tate(base);
  PolyMatrix dhat(2, FpMatrix(p, 2 * n, 2 * n));
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) {
      dhat[0].set(r, c, base.d()(r, c));
      dhat[0].set(n + r, n + c, -base.d()(r, c));
      dhat[0].set(n + r, c, tate.one_minus_sigma()(r, c));
      dhat[1].set(r, n + c, tate.norm()(r, c));
    }
  }
  const FpMatrix id = FpMatrix::identity(p, 2 * n);
  const PolyMatrix phi{id, a};
  PolyMatrix phi_inv{id};
  FpMatrix power = id;
  for (Index k = 1; k <= 2 * n + 1; ++k) {
    power = power * (-a);
    if (power.is_zero()) break;
    phi_inv.push_back(power);
  }
  const PolyMatrix twisted = multiply(multiply(phi, dhat), phi_inv);

  EquivariantFloerModel out{base, {}, 2};
  auto push = [&](int i, int alpha, const FpMatrix& block) {
    const bool structural = (i == 1) || (i == 2 && alpha == 1);
    if (!structural && block.is_zero()) return;
    out.terms.push_back({i, alpha, block});
    out.i_max = std::max(out.i_max, i);
  };
  for (std::size_t k = 0; k < twisted.size(); ++k) {
    const int ki = static_cast<int>(k);
    const FpMatrix& t = twisted[k];
    if (k == 0) {
      if (!t.block(0, n, n, n).is_zero()) throw std::logic_error("twist produced a u^0 θ -> 1 term");
    } else {
      push(2 * ki, 0, t.block(0, 0, n, n));
      push(2 * ki, 1, t.block(0, n, n, n));
    }
    push(2 * ki + 1, 0, t.block(n, 0, n, n));
    push(2 * ki + 1, 1, t.block(n, n, n, n));
  }
  return out;
}

}  // namespace smith
