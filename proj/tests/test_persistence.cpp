#include "smith/generators.hpp"
#include "smith/persistence.hpp"

#include "support.hpp"

#include <doctest.h>

#include <numeric>

using namespace smith;
using namespace smith::testing;

namespace {

Bar fin(std::int64_t a, std::int64_t b, std::size_t m = 1) { return {Rational(a), Rational(b), m}; }
Bar inf(std::int64_t a, std::size_t m = 1) { return {Rational(a), std::nullopt, m}; }

ActionWindow below(Rational t) { return {std::nullopt, t}; }
ActionWindow above(Rational t) { return {t, std::nullopt}; }

std::size_t total(const std::map<int, std::size_t>& dims) {
  std::size_t out = 0;
  for (const auto& [k, v] : dims) out += v;
  return out;
}

// dim of window homology for one bar, decided by which of its two generators
// the window keeps; this is the subquotient computation done by hand
std::size_t bar_window_oracle(const Bar& bar, const ActionWindow& w) {
  if (!bar.finite()) return w.contains(bar.start) ? bar.mult : 0;
  const bool keeps_x = w.contains(*bar.end);
  const bool keeps_y = w.contains(bar.start);
  return keeps_x != keeps_y ? bar.mult : 0;
}

}  // namespace

TEST_CASE("barcode canonical form") {
  const Barcode b(Prime(3), {inf(0), fin(1, 2), fin(0, 2), fin(0, 2), fin(0, 1)});
  REQUIRE(b.bars().size() == 4);
  CHECK(b.bars()[0] == fin(0, 1));
  CHECK(b.bars()[1] == fin(0, 2, 2));
  CHECK(b.bars()[2] == inf(0));
  CHECK(b.bars()[3] == fin(1, 2));
  CHECK(b.endpoints() == std::vector<Rational>{0, 1, 2});
  CHECK_THROWS_AS(Barcode(Prime(3), {fin(1, 1)}), MalformedInput);
  CHECK_THROWS_AS(Barcode(Prime(3), {fin(2, 1)}), MalformedInput);
  CHECK_THROWS_AS(Barcode(Prime(3), {fin(0, 1, 0)}), MalformedInput);
}

TEST_CASE("barcode from filtered examples") {
  const auto free = make_complex(3, {{"a", 0, 2}, {"b", 1, 5}, {"c", 0, 2}}, {});
  CHECK(barcode_from_filtered(free) == Barcode(Prime(3), {inf(2, 2), inf(5)}));

  const auto pair = make_complex(3, {{"x", 0, 1}, {"y", 1, 0}}, {{"y", "x", 2}});
  CHECK(barcode_from_filtered(pair) == Barcode(Prime(3), {fin(0, 1)}));

  const Barcode planted(Prime(5), {fin(0, 2), inf(1)});
  gen::Rng rng(3);
  const auto c = realize_barcode(planted);
  CHECK(c.size() == 3);
  std::vector<Rational> actions;
  for (const auto& g : c.generators()) actions.push_back(g.action);
  const FpMatrix b = gen::random_graded_automorphism(rng, Prime(5), c.degree_list(), &actions);
  const EquivariantComplex twisted(Prime(5), c.generators(), b * c.d() * gen::inverse(b));
  CHECK(barcode_from_filtered(twisted) == planted);

  const auto up = make_complex(3, {{"x", 0, 0}, {"y", 1, 1}}, {{"y", "x", 1}});
  CHECK_THROWS_AS(barcode_from_filtered(up), FiltrationViolation);
}

TEST_CASE("planted barcodes survive filtered changes of basis") {
  gen::Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5});
    const Barcode planted = random_barcode(rng, p, 6);
    const auto c = realize_barcode(planted);
    std::vector<Rational> actions;
    for (const auto& g : c.generators()) actions.push_back(g.action);
    const FpMatrix b = gen::random_graded_automorphism(rng, p, c.degree_list(), &actions);
    const EquivariantComplex twisted(p, c.generators(), b * c.d() * gen::inverse(b));
    CHECK(barcode_from_filtered(twisted) == planted);
  }
}

TEST_CASE("barcode does not depend on generator order for distinct actions") {
  gen::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5});
    gen::ComplexShape shape;
    shape.max_size = 8;
    shape.levels = 40;
    auto c = gen::random_filtered_complex(rng, p, shape);
    auto gens = c.generators();
    std::vector<Rational> seen;
    bool distinct = true;
    for (const auto& g : gens) {
      distinct = distinct && std::find(seen.begin(), seen.end(), g.action) == seen.end();
      seen.push_back(g.action);
    }
    if (!distinct) continue;
    // reverse the id order, which only matters for ties
    for (std::size_t i = 0; i < gens.size(); ++i) gens[i].id = "z" + std::to_string(100 - i);
    const EquivariantComplex renamed(p, gens, c.d());
    CHECK(barcode_from_filtered(renamed) == barcode_from_filtered(c));
  }
}

TEST_CASE("window_dim examples") {
  const Prime p(3);
  CHECK(window_dim(Barcode(p, {inf(0)}), below(1)) == 1);
  CHECK(window_dim(Barcode(p, {fin(0, 2)}), {Rational(1), Rational(3)}) == 1);
  CHECK(window_dim(Barcode(p, {}), {Rational(1), Rational(3)}) == 0);
  CHECK(window_dim(Barcode(p, {}), ActionWindow::everything()) == 0);
  CHECK(window_dim(Barcode(p, {inf(0, 2), fin(1, 2)}), ActionWindow::everything()) == 2);
  // (t, ∞): finite bars containing t, infinite bars not containing t
  const Barcode b(p, {fin(0, 2), inf(1), inf(-1)});
  CHECK(window_dim(b, above(Rational(1, 2))) == 2);
  CHECK(window_dim(b, above(Rational(3))) == 0);
  CHECK(window_dim(b, above(Rational(-2))) == 2);
  CHECK(window_dim(b, {Rational(3), Rational(1, 2)}) == 0);
  CHECK_THROWS_AS(window_dim(b, below(Rational(2))), SpectralEndpoint);
  CHECK_THROWS_AS(window_dim(b, {Rational(-1), Rational(5)}), SpectralEndpoint);
}

TEST_CASE("window formulas agree with the per-bar subquotient count") {
  gen::Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const Barcode b = random_barcode(rng, Prime(3), 6);
    const auto pts = generic_points(b.endpoints());
    std::vector<ActionWindow> windows{ActionWindow::everything()};
    for (const auto& t : pts) {
      windows.push_back(below(t));
      windows.push_back(above(t));
      for (const auto& s : pts)
        if (s < t) windows.push_back({s, t});
    }
    for (const auto& w : windows) {
      std::size_t expected = 0;
      for (const auto& bar : b.bars()) expected += bar_window_oracle(bar, w);
      CHECK(window_dim(b, w) == expected);
    }
  }
}

TEST_CASE("structure theorem round trip") {
  gen::Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5});
    gen::ComplexShape shape;
    shape.max_size = 12;
    const auto c = gen::random_filtered_complex(rng, p, shape);
    const Barcode b = barcode_from_filtered(c);
    const BarStats s = bar_stats(b);
    CHECK(s.generator_count == static_cast<std::size_t>(c.size()));
    CHECK(s.infinite_count == total(homology_dims(c)));
    for (int k = 0; k < 20; ++k) {
      ActionWindow w;
      const auto kind = gen::uniform(rng, 4);
      const Rational lo(2 * gen::uniform_in(rng, -1, shape.levels) - 1, 2);
      const Rational hi = lo + gen::uniform_in(rng, 1, shape.levels);
      if (kind != 0) w.lower = lo;
      if (kind != 1) w.upper = hi;
      const auto sub = window_truncate(c, w);
      INFO(format_window(w));
      const std::size_t expected =
          p.value() == 2 && sub.size() <= 12 ? total(brute_homology_dims(sub)) : total(homology_dims(sub));
      CHECK(window_dim(b, w) == expected);
    }
  }
}

TEST_CASE("bar statistics") {
  const Prime p(3);
  auto s = bar_stats(Barcode(p, {inf(0, 3)}));
  CHECK(s.finite_count == 0);
  CHECK(s.infinite_count == 3);
  CHECK(s.generator_count == 3);
  CHECK(s.beta_tot == Rational(0));
  CHECK(*s.c_plus == Rational(0));
  CHECK(*s.c_minus == Rational(0));

  s = bar_stats(Barcode(p, {fin(0, 1), inf(0)}));
  CHECK(s.finite_count == 1);
  CHECK(s.infinite_count == 1);
  CHECK(s.generator_count == 3);
  CHECK(s.beta_tot == Rational(1));
  CHECK(s.beta_max == Rational(1));

  // lengths 2, 2, 2
  const Barcode three(p, {fin(0, 2, 2), fin(1, 3)});
  s = bar_stats(three);
  CHECK(s.beta_tot == Rational(6));
  CHECK(s.beta_max == Rational(2));
  CHECK_FALSE(s.c_plus.has_value());
  CHECK_THROWS_AS(c_plus(three), EmptyBarcode);
  CHECK_THROWS_AS(c_minus(Barcode(p, {})), EmptyBarcode);
  CHECK(c_plus(Barcode(p, {inf(-1), inf(4)})) == Rational(4));
  CHECK(c_minus(Barcode(p, {inf(-1), inf(4)})) == Rational(-1));
}

TEST_CASE("integrating m recovers beta_tot") {
  gen::Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const Barcode b = random_barcode(rng, Prime(5), 8);
    Rational by_hand(0);
    for (const auto& bar : b.bars())
      if (bar.finite()) by_hand += (*bar.end - bar.start) * static_cast<std::int64_t>(bar.mult);
    CHECK(integrate_finite_bars(b) == by_hand);
    CHECK(bar_stats(b).beta_tot == by_hand);
  }
}

TEST_CASE("smith barcode check examples") {
  const Prime p(3);
  auto r = smith_barcode_check(Barcode(p, {fin(0, 1)}), Barcode(p, {fin(0, 3)}), p);
  CHECK(r.all_hold());
  CHECK(r.beta_tot_p == Rational(3));
  CHECK(r.beta_tot_1 == Rational(1));

  r = smith_barcode_check(Barcode(p, {fin(0, 1)}), Barcode(p, {}), p);
  CHECK_FALSE(r.m_holds());
  CHECK(std::any_of(r.m_violations.begin(), r.m_violations.end(),
                    [](const MViolation& v) { return v.t == Rational(1, 2); }));
  CHECK_FALSE(r.scale_holds);

  r = smith_barcode_check(Barcode(Prime(5), {inf(0)}), Barcode(Prime(5), {inf(0)}), Prime(5));
  CHECK(r.all_hold());
  CHECK(r.beta_tot_1 == Rational(0));
}

TEST_CASE("iterated barcodes pass and deletions are caught") {
  CHECK(generate_iterated_barcode(Barcode(Prime(3), {fin(0, 1)}), Prime(3), 0, 1) ==
        Barcode(Prime(3), {fin(0, 3)}));
  const auto five = generate_iterated_barcode(Barcode(Prime(3), {}), Prime(3), 5, 11);
  std::size_t count = 0;
  for (const auto& bar : five.bars()) count += bar.mult;
  CHECK(count == 5);
  CHECK(smith_barcode_check(Barcode(Prime(3), {}), five, Prime(3)).all_hold());
  const Barcode seeded(Prime(3), {fin(0, 2), inf(1)});
  CHECK(generate_iterated_barcode(seeded, Prime(3), 2, 42) ==
        generate_iterated_barcode(seeded, Prime(3), 2, 42));

  gen::Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5, 7});
    const Barcode b1 = random_barcode(rng, p, 6);
    const Barcode bp = generate_iterated_barcode(b1, p, gen::uniform(rng, 4), rng());
    CHECK(smith_barcode_check(b1, bp, p).all_hold());

    if (b1.empty()) continue;
    const Barcode scaled = generate_iterated_barcode(b1, p, 0, 0);
    std::vector<Bar> bars = scaled.bars();
    auto& victim = bars[gen::uniform(rng, bars.size())];
    if (--victim.mult == 0) bars.erase(std::find(bars.begin(), bars.end(), victim));
    const auto r = smith_barcode_check(b1, Barcode(p, bars), p);
    CHECK_FALSE(r.all_hold());
    CHECK(!r.window_violations.empty());
  }
}

TEST_CASE("torsion witness") {
  const Prime p(3);
  CHECK_FALSE(torsion_witness(Barcode(p, {inf(0, 4)})).has_value());
  CHECK_THROWS_AS(torsion_witness(Barcode(p, {})), EmptyBarcode);

  const Barcode shifted(p, {inf(0), inf(1)});
  const auto w = torsion_witness(shifted);
  REQUIRE(w.has_value());
  CHECK(w->contains(Rational(1)));
  CHECK_FALSE(w->closure_contains(Rational(0)));
  CHECK(window_dim(shifted, *w) >= 1);

  const Barcode both(p, {inf(-1), inf(1)});
  const auto v = torsion_witness(both);
  REQUIRE(v.has_value());
  CHECK_FALSE(v->closure_contains(Rational(0)));
  CHECK(window_dim(both, *v) >= 1);

  gen::Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const Barcode b = random_barcode(rng, p, 5);
    if (b.empty()) continue;
    const BarStats s = bar_stats(b);
    const auto found = torsion_witness(b);
    const bool identity_like = s.finite_count == 0 && *s.c_plus == 0 && *s.c_minus == 0;
    CHECK(found.has_value() == !identity_like);
    if (s.c_plus && *s.c_minus < *s.c_plus) CHECK(found.has_value());
    if (found) {
      CHECK_FALSE(found->closure_contains(Rational(0)));
      CHECK(window_dim(b, *found) >= 1);
    }
  }
}

TEST_CASE("growth chain and gamma") {
  const Prime p(2);
  std::vector<Barcode> chain{Barcode(p, {fin(0, 1), inf(0)})};
  for (int k = 1; k < 5; ++k)
    chain.push_back(generate_iterated_barcode(chain.back(), p, 1, static_cast<std::uint64_t>(k)));
  std::vector<Rational> gammas;
  for (const auto& b : chain) gammas.push_back(bar_stats(b).beta_max);
  for (const auto& step : growth_chain_check(chain, p, 0, gammas)) {
    CHECK(step.scale_holds);
    CHECK(step.count_holds);
  }
  CHECK(growth_chain_check(chain, p, 2).size() == 3);
  CHECK(gamma_dominates_beta(chain[0], Rational(1)));
  CHECK_FALSE(gamma_dominates_beta(chain[0], Rational(1, 2)));
  std::vector<Barcode> shrinking{Barcode(p, {fin(0, 4)}), Barcode(p, {fin(0, 1)})};
  CHECK_FALSE(growth_chain_check(shrinking, p, 0)[1].scale_holds);
  CHECK_THROWS_AS(growth_chain_check(shrinking, p, 2), MalformedInput);
  CHECK_THROWS_AS(growth_chain_check(shrinking, p, 0, {Rational(1)}), MalformedInput);
}
