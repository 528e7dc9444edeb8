#include "smith/persistence.hpp"

#include <algorithm>
#include <numeric>

namespace smith {

namespace {

bool bar_less(const Bar& a, const Bar& b) {
  if (a.start != b.start) return a.start < b.start;
  if (a.end.has_value() != b.end.has_value()) return a.end.has_value();
  return a.end && *a.end < *b.end;
}

bool same_interval(const Bar& a, const Bar& b) { return a.start == b.start && a.end == b.end; }

Rational rational_pow(std::int64_t base, std::size_t e) {
  Rational out(1);
  for (std::size_t i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

Barcode::Barcode(Prime p, std::vector<Bar> bars) : p_(p) {
  for (const auto& bar : bars) {
    if (bar.mult == 0) throw MalformedInput("bar multiplicity must be positive");
    if (bar.end && !(bar.start < *bar.end))
      throw MalformedInput("bar (" + format_rational(bar.start) + ", " + format_rational(*bar.end) +
                           "] is empty");
  }
  std::sort(bars.begin(), bars.end(), bar_less);
  for (auto& bar : bars) {
    if (!bars_.empty() && same_interval(bars_.back(), bar)) {
      bars_.back().mult += bar.mult;
    } else {
      bars_.push_back(std::move(bar));
    }
  }
}

std::vector<Rational> Barcode::endpoints() const {
  std::vector<Rational> out;
  for (const auto& bar : bars_) {
    out.push_back(bar.start);
    if (bar.end) out.push_back(*bar.end);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Barcode barcode_from_filtered(const EquivariantComplex& c) {
  require_action_filtration(c, true);
  const Index n = c.size();
  const PrimeField f(c.modulus());
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const auto& ga = c.generator(a);
    const auto& gb = c.generator(b);
    return ga.action != gb.action ? ga.action < gb.action : ga.id < gb.id;
  });

  std::vector<ResidueVector> reduced;
  std::vector<Index> owner(static_cast<std::size_t>(n), -1);  // column whose low is this row
  std::vector<bool> zero_column(static_cast<std::size_t>(n), false);
  std::vector<Bar> bars;
  for (Index j = 0; j < n; ++j) {
    ResidueVector col(n);
    for (Index i = 0; i < n; ++i) col(i) = c.d()(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    auto low = [&]() -> Index {
      for (Index i = n - 1; i >= 0; --i)
        if (col(i) != 0) return i;
      return -1;
    };
    Index l = low();
    while (l >= 0 && owner[static_cast<std::size_t>(l)] >= 0) {
      const ResidueVector& other = reduced[static_cast<std::size_t>(owner[static_cast<std::size_t>(l)])];
      const Residue factor = f.mul(col(l), f.inv(other(l)));
      for (Index i = 0; i <= l; ++i) col(i) = f.sub(col(i), f.mul(factor, other(i)));
      l = low();
    }
    if (l >= 0) {
      owner[static_cast<std::size_t>(l)] = j;
      bars.push_back({c.generator(order[static_cast<std::size_t>(l)]).action,
                      c.generator(order[static_cast<std::size_t>(j)]).action, 1});
    } else {
      zero_column[static_cast<std::size_t>(j)] = true;
    }
    reduced.push_back(std::move(col));
  }
  for (Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (zero_column[ui] && owner[ui] < 0)
      bars.push_back({c.generator(order[ui]).action, std::nullopt, 1});
  }
  return {c.modulus(), std::move(bars)};
}

EquivariantComplex realize_barcode(const Barcode& b) {
  std::vector<Generator> gens;
  std::vector<std::pair<Index, Index>> arrows;  // (y, x): d x = y
  int label = 0;
  for (const auto& bar : b.bars()) {
    for (std::size_t m = 0; m < bar.mult; ++m, ++label) {
      const std::string stem = "b" + std::to_string(label);
      if (bar.end) {
        gens.push_back({stem + ".x", 0, *bar.end});
        gens.push_back({stem + ".y", 1, bar.start});
        const auto x = static_cast<Index>(gens.size()) - 2;
        arrows.emplace_back(x + 1, x);
      } else {
        gens.push_back({stem + ".z", 0, bar.start});
      }
    }
  }
  const auto n = static_cast<Index>(gens.size());
  FpMatrix d(b.modulus(), n, n);
  for (const auto& [y, x] : arrows) d.set(y, x, 1);
  return {b.modulus(), std::move(gens), std::move(d)};
}

std::size_t window_dim(const Barcode& b, const ActionWindow& w) {
  for (const Rational& e : b.endpoints()) {
    if ((w.lower && *w.lower == e) || (w.upper && *w.upper == e))
      throw SpectralEndpoint("window " + format_window(w) + " has an endpoint at the bar endpoint " +
                             format_rational(e));
  }
  if (!w.is_nonempty()) return 0;
  std::size_t out = 0;
  for (const auto& bar : b.bars()) {
    bool counts = false;
    if (!w.lower && !w.upper) {
      counts = !bar.finite();
    } else if (!w.lower) {
      counts = bar.contains(*w.upper);
    } else if (!w.upper) {
      counts = bar.finite() ? bar.contains(*w.lower) : !bar.contains(*w.lower);
    } else {
      counts = bar.contains(*w.upper) != bar.contains(*w.lower);
    }
    if (counts) out += bar.mult;
  }
  return out;
}

BarStats bar_stats(const Barcode& b) {
  BarStats s;
  for (const auto& bar : b.bars()) {
    if (bar.finite()) {
      s.finite_count += bar.mult;
      const Rational len = *bar.end - bar.start;
      s.beta_tot += len * static_cast<std::int64_t>(bar.mult);
      s.beta_max = std::max(s.beta_max, len);
    } else {
      s.infinite_count += bar.mult;
      if (!s.c_plus || *s.c_plus < bar.start) s.c_plus = bar.start;
      if (!s.c_minus || bar.start < *s.c_minus) s.c_minus = bar.start;
    }
  }
  s.generator_count = 2 * s.finite_count + s.infinite_count;
  return s;
}

Rational c_plus(const Barcode& b) {
  const auto s = bar_stats(b);
  if (!s.c_plus) throw EmptyBarcode("c_+ needs an infinite bar");
  return *s.c_plus;
}

Rational c_minus(const Barcode& b) {
  const auto s = bar_stats(b);
  if (!s.c_minus) throw EmptyBarcode("c_- needs an infinite bar");
  return *s.c_minus;
}

std::size_t finite_bars_containing(const Barcode& b, const Rational& t) {
  std::size_t out = 0;
  for (const auto& bar : b.bars())
    if (bar.finite() && bar.contains(t)) out += bar.mult;
  return out;
}

std::vector<Rational> generic_points(std::vector<Rational> events) {
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  if (events.empty()) return {Rational(0)};
  std::vector<Rational> out{events.front() - 1};
  for (std::size_t i = 0; i + 1 < events.size(); ++i)
    out.push_back((events[i] + events[i + 1]) / 2);
  out.push_back(events.back() + 1);
  return out;
}

Rational integrate_finite_bars(const Barcode& b) {
  const auto events = b.endpoints();
  Rational out(0);
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    const Rational mid = (events[i] + events[i + 1]) / 2;
    out += (events[i + 1] - events[i]) * static_cast<std::int64_t>(finite_bars_containing(b, mid));
  }
  return out;
}

SmithBarcodeReport smith_barcode_check(const Barcode& b1, const Barcode& bp, Prime p) {
  const auto scale = static_cast<std::int64_t>(p.value());
  std::vector<Rational> events = b1.endpoints();
  for (const Rational& e : bp.endpoints()) events.push_back(e / scale);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  SmithBarcodeReport r;
  r.test_points = generic_points(events);
  for (const Rational& t : r.test_points) {
    const std::size_t lhs = finite_bars_containing(b1, t);
    const std::size_t rhs = finite_bars_containing(bp, t * scale);
    if (lhs > rhs) r.m_violations.push_back({t, lhs, rhs});
  }

  // ∫ m(t, b1) dt and ∫ m(pt, bp) dt over the joint arrangement
  Rational lhs_integral(0), rhs_integral(0);
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    const Rational mid = (events[i] + events[i + 1]) / 2;
    const Rational len = events[i + 1] - events[i];
    lhs_integral += len * static_cast<std::int64_t>(finite_bars_containing(b1, mid));
    rhs_integral += len * static_cast<std::int64_t>(finite_bars_containing(bp, mid * scale));
  }
  r.beta_tot_1 = bar_stats(b1).beta_tot;
  r.beta_tot_p = bar_stats(bp).beta_tot;
  r.integral_matches = lhs_integral == r.beta_tot_1 && rhs_integral * scale == r.beta_tot_p;
  r.scale_holds = r.beta_tot_p >= r.beta_tot_1 * scale;

  auto compare = [&](const ActionWindow& w) {
    ActionWindow scaled;
    if (w.lower) scaled.lower = *w.lower * scale;
    if (w.upper) scaled.upper = *w.upper * scale;
    const std::size_t lhs = window_dim(b1, w);
    const std::size_t rhs = window_dim(bp, scaled);
    ++r.windows_checked;
    if (lhs > rhs) r.window_violations.push_back({w, lhs, rhs});
  };
  for (const Rational& t : r.test_points) {
    compare({std::nullopt, t});
    compare({t, std::nullopt});
  }
  for (std::size_t i = 0; i < r.test_points.size(); ++i)
    for (std::size_t j = i + 1; j < r.test_points.size(); ++j)
      compare({r.test_points[i], r.test_points[j]});
  return r;
}

std::optional<ActionWindow> torsion_witness(const Barcode& b) {
  if (b.empty()) throw EmptyBarcode("torsion witness of an empty barcode");
  std::vector<Rational> events = b.endpoints();
  events.push_back(Rational(0));
  const auto pts = generic_points(events);
  const Rational zero(0);
  // narrowest bounded windows first
  for (std::size_t gap = 1; gap < pts.size(); ++gap) {
    for (std::size_t i = 0; i + gap < pts.size(); ++i) {
      const Rational& s = pts[i];
      const Rational& t = pts[i + gap];
      if (!(t < zero || zero < s)) continue;
      const ActionWindow w{s, t};
      if (window_dim(b, w) > 0) return w;
    }
  }
  for (const Rational& t : pts) {
    if (!(t < zero)) continue;
    const ActionWindow w{std::nullopt, t};
    if (window_dim(b, w) > 0) return w;
  }
  for (const Rational& s : pts) {
    if (!(zero < s)) continue;
    const ActionWindow w{s, std::nullopt};
    if (window_dim(b, w) > 0) return w;
  }
  return std::nullopt;
}

Barcode generate_iterated_barcode(const Barcode& b1, Prime p, std::size_t extra_bars,
                                  std::uint64_t seed) {
  const auto scale = static_cast<std::int64_t>(p.value());
  std::vector<Bar> bars;
  for (const auto& bar : b1.bars()) {
    Bar scaled{bar.start * scale, std::nullopt, bar.mult};
    if (bar.end) scaled.end = *bar.end * scale;
    bars.push_back(scaled);
  }
  gen::Rng rng(seed);
  for (std::size_t k = 0; k < extra_bars; ++k) {
    const Rational start(gen::uniform_in(rng, -32, 31), 4);
    const Rational length(gen::uniform_in(rng, 1, 16), 4);
    bars.push_back({start, start + length, 1});
  }
  return {p, std::move(bars)};
}

Barcode random_barcode(gen::Rng& rng, Prime p, std::size_t max_bars) {
  const auto count = gen::uniform(rng, max_bars + 1);
  std::vector<Bar> bars;
  for (std::uint64_t k = 0; k < count; ++k) {
    const Rational start(gen::uniform_in(rng, -16, 15), 4);
    const auto mult = static_cast<std::size_t>(gen::uniform_in(rng, 1, 2));
    if (gen::uniform(rng, 3) == 0) {
      bars.push_back({start, std::nullopt, mult});
    } else {
      bars.push_back({start, start + Rational(gen::uniform_in(rng, 1, 8), 4), mult});
    }
  }
  return {p, std::move(bars)};
}

bool gamma_dominates_beta(const Barcode& b, const Rational& gamma) {
  return gamma >= bar_stats(b).beta_max;
}

std::vector<GrowthStep> growth_chain_check(const std::vector<Barcode>& barcodes, Prime p,
                                           std::size_t k0, const std::vector<Rational>& gammas) {
  if (k0 >= barcodes.size()) throw MalformedInput("k0 beyond the supplied barcodes");
  if (!gammas.empty() && gammas.size() != barcodes.size())
    throw MalformedInput("one spectral norm per barcode expected");
  const Rational base = bar_stats(barcodes[k0]).beta_tot;
  std::vector<GrowthStep> out;
  for (std::size_t k = k0; k < barcodes.size(); ++k) {
    const BarStats s = bar_stats(barcodes[k]);
    GrowthStep step;
    step.k = static_cast<int>(k);
    step.beta_tot = s.beta_tot;
    step.bound = rational_pow(p.value(), k - k0) * base;
    step.scale_holds = s.beta_tot >= step.bound;
    const auto finite = static_cast<std::int64_t>(s.finite_count);
    step.count_holds = s.beta_max * finite >= step.bound;
    if (!gammas.empty())
      step.count_holds = step.count_holds && gammas[k] * (2 * finite) >= step.bound * 2;
    out.push_back(step);
  }
  return out;
}

}  // namespace smith
