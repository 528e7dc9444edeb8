#include "smith/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace smith {

EquivariantComplex::EquivariantComplex(Prime p, std::vector<Generator> generators, FpMatrix d,
                                       std::optional<FpMatrix> sigma)
    : p_(p),
      gens_(std::move(generators)),
      d_(std::move(d)),
      sigma_(sigma ? std::move(*sigma) : FpMatrix::identity(p, static_cast<Index>(gens_.size()))) {
  const auto n = static_cast<Index>(gens_.size());
  if (!(d_.modulus() == p) || !(sigma_.modulus() == p)) {
    throw ModulusMismatch("complex matrices must be over F_" + std::to_string(p.value()));
  }
  if (d_.rows() != n || d_.cols() != n || sigma_.rows() != n || sigma_.cols() != n) {
    throw DimensionMismatch("complex with " + std::to_string(n) +
                            " generators needs square matrices of that size");
  }
}

EquivariantComplex EquivariantComplex::zero(Prime p) { return {p, {}, FpMatrix(p, 0, 0)}; }

std::optional<Index> EquivariantComplex::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].id == id) return static_cast<Index>(i);
  }
  return std::nullopt;
}

std::vector<int> EquivariantComplex::degrees() const {
  std::set<int> s;
  for (const auto& g : gens_) s.insert(g.degree);
  return {s.begin(), s.end()};
}

std::vector<Index> EquivariantComplex::indices_in_degree(int k) const {
  return indices_where(*this, [k](const Generator& g) { return g.degree == k; });
}

std::vector<int> EquivariantComplex::degree_list() const {
  std::vector<int> out;
  out.reserve(gens_.size());
  for (const auto& g : gens_) out.push_back(g.degree);
  return out;
}

EquivariantComplex EquivariantComplex::with_sigma(FpMatrix sigma) const {
  return {p_, gens_, d_, std::move(sigma)};
}

std::vector<Index> indices_where(const EquivariantComplex& c,
                                 const std::function<bool(const Generator&)>& keep) {
  std::vector<Index> out;
  for (Index i = 0; i < c.size(); ++i) {
    if (keep(c.generator(i))) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

bool ValidationReport::has(const std::string& inv) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.invariant == inv; });
}

namespace {

// Reports at most a few entries per invariant to keep reports readable.
constexpr int kMaxEntriesPerInvariant = 8;

void check_entries(const EquivariantComplex& c, const FpMatrix& m, const char* inv,
                   const std::string& what, ValidationReport& report) {
  int listed = 0;
  for (Index j = 0; j < m.cols() && listed < kMaxEntriesPerInvariant; ++j) {
    for (Index i = 0; i < m.rows() && listed < kMaxEntriesPerInvariant; ++i) {
      if (m(i, j) == 0) continue;
      report.violations.push_back(
          {inv, what + " has entry " + std::to_string(m(i, j)) + " at (" + c.generator(i).id +
                    ", " + c.generator(j).id + ")"});
      ++listed;
    }
  }
}

}  // namespace

ValidationReport validate(const EquivariantComplex& c, bool check_action) {
  ValidationReport report;
  const Prime p = c.modulus();
  const Index n = c.size();

  std::unordered_set<std::string> seen;
  for (const auto& g : c.generators()) {
    if (!seen.insert(g.id).second) report.violations.push_back({invariant::kDuplicateId, g.id});
  }

  check_entries(c, c.d() * c.d(), invariant::kSquareZero, "d*d", report);

  const FpMatrix sp = pow(c.sigma(), p.value());
  check_entries(c, sp - FpMatrix::identity(p, n), invariant::kOrder, "sigma^p - 1", report);
  check_entries(c, c.sigma() * c.d() - c.d() * c.sigma(), invariant::kCommutes,
                "sigma*d - d*sigma", report);

  for (Index j = 0; j < n; ++j) {
    const Generator& src = c.generator(j);
    for (Index i = 0; i < n; ++i) {
      const Generator& dst = c.generator(i);
      if (c.d()(i, j) != 0) {
        if (dst.degree != src.degree + 1) {
          report.violations.push_back({invariant::kDegree, "d(" + src.id + ") hits " + dst.id});
        }
        if (check_action && !(dst.action < src.action)) {
          report.violations.push_back(
              {invariant::kActionDecrease, "d(" + src.id + ") hits " + dst.id + " at action " +
                                               format_rational(dst.action) + " >= " +
                                               format_rational(src.action)});
        }
      }
      if (c.sigma()(i, j) != 0) {
        if (dst.degree != src.degree) {
          report.violations.push_back(
              {invariant::kSigmaDegree, "sigma(" + src.id + ") hits " + dst.id});
        }
        if (check_action && dst.action != src.action) {
          report.violations.push_back(
              {invariant::kSigmaAction, "sigma(" + src.id + ") hits " + dst.id});
        }
      }
    }
  }
  return report;
}

void require_valid(const EquivariantComplex& c, bool check_action, const std::string& context) {
  const auto report = validate(c, check_action);
  if (report.valid()) return;
  std::ostringstream os;
  os << context << ": invalid complex";
  for (const auto& v : report.violations) os << "; " << v.invariant << " (" << v.detail << ")";
  throw InvalidComplex(os.str());
}

// ---------------------------------------------------------------------------

namespace {

std::map<int, std::vector<Index>> group_by_degree(const std::vector<int>& degrees) {
  std::map<int, std::vector<Index>> out;
  for (std::size_t i = 0; i < degrees.size(); ++i) out[degrees[i]].push_back(static_cast<Index>(i));
  return out;
}

const std::vector<Index>& or_empty(const std::map<int, std::vector<Index>>& m, int k) {
  static const std::vector<Index> empty;
  const auto it = m.find(k);
  return it == m.end() ? empty : it->second;
}

}  // namespace

void require_action_filtration(const EquivariantComplex& c, bool strict) {
  const Index n = c.size();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (c.d()(i, j) == 0) continue;
      const Rational& from = c.generator(j).action;
      const Rational& to = c.generator(i).action;
      if (strict ? !(to < from) : (from < to)) {
        std::ostringstream msg;
        msg << "d(" << c.generator(j).id << ") has a component on " << c.generator(i).id
            << " of action " << format_rational(to) << " against " << format_rational(from);
        throw FiltrationViolation(msg.str());
      }
    }
  }
}

std::map<int, std::size_t> graded_homology_dims(const std::vector<int>& degrees,
                                                const FpMatrix& d) {
  const auto by_degree = group_by_degree(degrees);
  std::map<int, std::size_t> rank_out;  // rank of d leaving degree k
  for (const auto& [k, cols] : by_degree) {
    rank_out[k] = rank(d.select(or_empty(by_degree, k + 1), cols));
  }
  std::map<int, std::size_t> out;
  for (const auto& [k, cols] : by_degree) {
    const auto in = rank_out.find(k - 1);
    out[k] = cols.size() - rank_out[k] - (in == rank_out.end() ? 0 : in->second);
  }
  return out;
}

std::map<int, std::size_t> homology_dims(const EquivariantComplex& c) {
  return graded_homology_dims(c.degree_list(), c.d());
}

std::size_t total_homology_dim(const EquivariantComplex& c) {
  std::size_t total = 0;
  for (const auto& [k, v] : homology_dims(c)) total += v;
  return total;
}

// ---------------------------------------------------------------------------

ResidueVector HomologyBasis::coordinates(const ResidueVector& z) const {
  if (!(d.apply(z).array() == 0).all()) throw InvalidComplex("class of a non-cocycle");
  std::vector<FpMatrix> parts{d};
  parts.push_back(from_columns(d.modulus(), d.rows(), reps));
  const auto x = solve(hconcat(parts), z);
  if (!x) throw InvalidComplex("cocycle outside the span of the homology basis");
  return x->tail(static_cast<Index>(reps.size()));
}

HomologyBasis homology_basis(const EquivariantComplex& c) {
  const Prime p = c.modulus();
  HomologyBasis out{{}, {}, {}, c.d()};
  for (int k : c.degrees()) {
    std::vector<Index> cols = c.indices_in_degree(k);
    std::stable_sort(cols.begin(), cols.end(),
                     [&](Index a, Index b) { return c.generator(a).id < c.generator(b).id; });
    const auto above = c.indices_in_degree(k + 1);
    const auto below = c.indices_in_degree(k - 1);

    // Cocycles in degree k, one per free column, in id order.
    const auto ech = rref(c.d().select(above, cols));
    const auto& kernel_vectors = ech.kernel_basis;
    std::vector<Index> free_cols;
    {
      std::vector<bool> is_pivot(cols.size(), false);
      for (Index q : ech.pivot_columns) is_pivot[static_cast<std::size_t>(q)] = true;
      for (std::size_t q = 0; q < cols.size(); ++q)
        if (!is_pivot[q]) free_cols.push_back(cols[q]);
    }

    // Span of coboundaries, restricted to degree-k coordinates.
    FpMatrix span = c.d().select(cols, below);
    std::size_t span_rank = rank(span);
    for (std::size_t q = 0; q < kernel_vectors.size(); ++q) {
      ResidueVector local = kernel_vectors[q];
      FpMatrix candidate = hconcat({span, from_columns(p, static_cast<Index>(cols.size()), {local})});
      const std::size_t r = rank(candidate);
      if (r == span_rank) continue;
      span = std::move(candidate);
      span_rank = r;
      ResidueVector full = ResidueVector::Zero(c.size());
      for (std::size_t t = 0; t < cols.size(); ++t) full(cols[t]) = local(static_cast<Index>(t));
      out.reps.push_back(std::move(full));
      out.degrees.push_back(k);
      out.anchors.push_back(free_cols[q]);
    }
  }
  return out;
}

FpMatrix induced_on_homology(const HomologyBasis& basis, const FpMatrix& f) {
  const auto h = static_cast<Index>(basis.size());
  FpMatrix out(f.modulus(), h, h);
  for (Index j = 0; j < h; ++j) {
    const ResidueVector coords = basis.coordinates(f.apply(basis.reps[static_cast<std::size_t>(j)]));
    for (Index i = 0; i < h; ++i) out.set(i, j, coords(i));
  }
  return out;
}

EquivariantComplex homology_complex(const EquivariantComplex& c) {
  const auto basis = homology_basis(c);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Generator& anchor = c.generator(basis.anchors[i]);
    gens.push_back({"[" + anchor.id + "]", basis.degrees[i], anchor.action});
  }
  const auto h = static_cast<Index>(basis.size());
  return {c.modulus(), std::move(gens), FpMatrix(c.modulus(), h, h),
          induced_on_homology(basis, c.sigma())};
}

// ---------------------------------------------------------------------------

int cyclic_shift_sign(const std::vector<int>& factor_degrees) {
  if (factor_degrees.empty()) return 1;
  long long head = 0;
  for (std::size_t i = 0; i + 1 < factor_degrees.size(); ++i) head += factor_degrees[i];
  const long long last = factor_degrees.back();
  return ((last % 2 != 0) && (head % 2 != 0)) ? -1 : 1;
}

EquivariantComplex tensor_power(const EquivariantComplex& v, Prime p) {
  if (!(v.modulus() == p)) throw ModulusMismatch("tensor power order must equal the field characteristic");
  if (!(v.d() * v.d()).is_zero()) throw InvalidComplex("tensor_power: d squared nonzero");
  const Index n = v.size();
  const std::uint32_t factors = p.value();

  Index total = 1;
  for (std::uint32_t k = 0; k < factors; ++k) {
    if (n != 0 && total > kMaxTensorDim / std::max<Index>(n, 1)) {
      throw DimensionMismatch("tensor power of dimension " + std::to_string(n) + "^" +
                              std::to_string(factors) + " is too large");
    }
    total *= n;
  }
  if (n == 0) return EquivariantComplex::zero(p);

  auto digits_of = [&](Index code) {
    std::vector<Index> digits(factors);
    for (std::uint32_t k = factors; k-- > 0;) {
      digits[k] = code % n;
      code /= n;
    }
    return digits;
  };
  auto code_of = [&](const std::vector<Index>& digits) {
    Index code = 0;
    for (Index x : digits) code = code * n + x;
    return code;
  };

  std::vector<Generator> gens;
  gens.reserve(static_cast<std::size_t>(total));
  for (Index code = 0; code < total; ++code) {
    const auto digits = digits_of(code);
    Generator g{"", 0, Rational(0)};
    for (std::uint32_t k = 0; k < factors; ++k) {
      const Generator& x = v.generator(digits[k]);
      if (k) g.id += "⊗";
      g.id += x.id;
      g.degree += x.degree;
      g.action += x.action;
    }
    gens.push_back(std::move(g));
  }

  FpMatrix d(p, total, total);
  FpMatrix sigma(p, total, total);
  for (Index code = 0; code < total; ++code) {
    const auto digits = digits_of(code);
    std::vector<int> degs(factors);
    for (std::uint32_t k = 0; k < factors; ++k) degs[k] = v.generator(digits[k]).degree;

    int prefix = 0;
    for (std::uint32_t k = 0; k < factors; ++k) {
      const int sign = (prefix % 2 == 0) ? 1 : -1;
      for (Index r = 0; r < n; ++r) {
        const Residue coef = v.d()(r, digits[k]);
        if (coef == 0) continue;
        auto target = digits;
        target[k] = r;
        d.add_to(code_of(target), code, sign * coef);
      }
      prefix += degs[k];
    }

    std::vector<Index> shifted(factors);
    shifted[0] = digits[factors - 1];
    for (std::uint32_t k = 1; k < factors; ++k) shifted[k] = digits[k - 1];
    sigma.set(code_of(shifted), code, cyclic_shift_sign(degs));
  }
  return {p, std::move(gens), std::move(d), std::move(sigma)};
}

// ---------------------------------------------------------------------------

InvariantDims invariants_coinvariants(const EquivariantComplex& c) {
  require_valid(c, false, "invariants_coinvariants");
  const FpMatrix t = FpMatrix::identity(c.modulus(), c.size()) - c.sigma();
  InvariantDims out;
  for (int k : c.degrees()) {
    const auto idx = c.indices_in_degree(k);
    const std::size_t r = rank(t.select(idx, idx));
    out.invariants[k] = idx.size() - r;
    out.coinvariants[k] = idx.size() - r;
  }
  return out;
}

EquivariantComplex window_truncate(const EquivariantComplex& c, const ActionWindow& w) {
  for (const auto& g : c.generators()) {
    if ((w.lower && *w.lower == g.action) || (w.upper && *w.upper == g.action)) {
      throw InadmissibleWindow("window " + format_window(w) + " has an endpoint at the action of " +
                               g.id);
    }
  }
  const auto keep = indices_where(c, [&](const Generator& g) { return w.contains(g.action); });
  std::vector<Generator> gens;
  for (Index i : keep) gens.push_back(c.generator(i));
  return {c.modulus(), std::move(gens), c.d().select(keep, keep), c.sigma().select(keep, keep)};
}

EquivariantComplex module_complex(const FpMatrix& sigma) {
  std::vector<Generator> gens;
  for (Index i = 0; i < sigma.rows(); ++i) gens.push_back({"e" + std::to_string(i), 0, Rational(0)});
  return {sigma.modulus(), gens, FpMatrix(sigma.modulus(), sigma.rows(), sigma.rows()), sigma};
}

EquivariantComplex direct_sum(const EquivariantComplex& a, const EquivariantComplex& b) {
  if (!(a.modulus() == b.modulus())) throw ModulusMismatch("direct sum over different primes");
  std::vector<Generator> gens = a.generators();
  std::unordered_set<std::string> taken;
  for (const auto& g : gens) taken.insert(g.id);
  for (Generator g : b.generators()) {
    while (taken.count(g.id)) g.id += "'";
    taken.insert(g.id);
    gens.push_back(std::move(g));
  }
  return {a.modulus(), std::move(gens), block_diagonal({a.d(), b.d()}),
          block_diagonal({a.sigma(), b.sigma()})};
}

}  // namespace smith
