// Acceptance gate: one PASS/FAIL line per criterion, with counts and timings.

#include "smith/cli.hpp"
#include "smith/fuzz.hpp"
#include "smith/generators.hpp"
#include "smith/module_decomp.hpp"
#include "smith/morse.hpp"
#include "smith/persistence.hpp"
#include "smith/spectral.hpp"
#include "smith/tate.hpp"

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace smith;
using namespace smith::testing;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int number, const std::string& title, double limit_s, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_s <= 0 || s < limit_s;
  const bool ok = v.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s  [%2d] %s: %s; %.3f s", ok ? "PASS" : "FAIL", number, title.c_str(), v.detail.c_str(), s);
  if (limit_s > 0) std::printf(" (limit %.0f s%s)", limit_s, in_time ? "" : ", exceeded");
  std::printf("\n");
  std::fflush(stdout);
}

std::size_t total(const std::map<int, std::size_t>& dims) {
  std::size_t s = 0;
  for (const auto& [k, v] : dims) s += v;
  return s;
}

std::string count(std::size_t good, std::size_t all) {
  return std::to_string(good) + "/" + std::to_string(all);
}

Verdict tate_free() {
  gen::Rng rng(101);
  std::size_t good = 0, free_checked = 0;
  const std::size_t n = 500;
  for (std::size_t i = 0; i < n; ++i) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5, 7});
    const auto v = gen::random_free_module(rng, p, 21);
    const auto d = decompose(v.sigma());
    if (validate(v, false).valid() && d.multiplicity(p.value()) * p.value() == d.dim() && v.size() <= 21)
      ++free_checked;
    if (tate_cohomology_dims(v) == TateDims{0, 0}) ++good;
  }
  return {good == n && free_checked == n,
          count(good, n) + " Tate dims (0,0), " + count(free_checked, n) + " verified free, exact"};
}

Verdict quasi_frobenius_suite() {
  gen::Rng rng(202);
  const std::size_t n = 200;
  std::size_t good = 0, certs = 0, cert_total = 0, max_h = 0, max_v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Prime p = gen::pick_prime(rng, {3, 5});
    gen::ComplexShape shape;
    shape.max_size = 6;
    shape.min_degree = -1;
    const auto v = gen::random_filtered_complex(rng, p, shape);
    const auto r = quasi_frobenius(v, {1, i});
    const std::size_t h = r.homology_dim;
    max_h = std::max(max_h, h);
    max_v = std::max(max_v, static_cast<std::size_t>(v.size()));
    const bool per_parity = rank(r.matrix_even) == h && r.matrix_even.rows() == static_cast<Index>(h) &&
                            r.matrix_even.cols() == static_cast<Index>(h) && rank(r.matrix_odd) == h &&
                            r.matrix_odd.rows() == static_cast<Index>(h) &&
                            r.matrix_odd.cols() == static_cast<Index>(h);
    if (r.ok() && r.is_bijective && per_parity && r.target_dims.even == h && r.target_dims.odd == h) ++good;
    for (const auto& c : r.certificates) {
      ++cert_total;
      if (c.ok()) ++certs;
    }
  }
  return {good == n && certs == cert_total && certs >= n,
          count(good, n) + " bijective per parity with |even| = |odd| = dim H, " + count(certs, cert_total) +
              " additivity certificates with verified norm preimage (dim V <= " + std::to_string(max_v) +
              ", dim H <= " + std::to_string(max_h) + "), exact"};
}

Verdict module_bookkeeping() {
  gen::Rng rng(303);
  const std::size_t n = 500;
  std::size_t good = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5, 7});
    const FpMatrix sigma = gen::random_order_p(rng, p, gen::random_partition(rng, p, 14));
    const auto d = decompose(sigma);
    const auto closed = tate_and_invariant_dims(d);
    const auto direct_tate = tate_cohomology_dims(module_complex(sigma)).total();
    const auto direct_inv = kernel(sigma - FpMatrix::identity(p, sigma.rows())).size();
    if (closed.tate_dim == direct_tate && closed.invariant_dim == direct_inv) ++good;
  }
  return {good == n, count(good, n) + " closed forms equal direct Tate and ker(sigma - 1) dims, exact"};
}

Verdict sharpened_vs_classical() {
  gen::Rng rng(404);
  std::size_t planted_good = 0, plain_good = 0;
  const std::size_t n = 250;
  for (std::size_t i = 0; i < n; ++i) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5, 7});
    auto blocks = gen::random_partition(rng, p, 10);
    std::vector<std::size_t> no_free;
    for (auto b : blocks) {
      if (b == p.value()) {
        no_free.push_back(b - 1);
        no_free.push_back(1);
      } else {
        no_free.push_back(b);
      }
    }
    auto planted = no_free;
    planted.push_back(p.value());

    auto run = [&](const std::vector<std::size_t>& type) {
      const FpMatrix sigma = gen::random_order_p(rng, p, type);
      std::size_t sharpened = 0;
      for (auto b : type)
        if (b < p.value()) ++sharpened;
      const auto hf = static_cast<std::size_t>(gen::uniform_in(rng, 0, static_cast<std::int64_t>(sharpened)));
      return smith_chain_check(hf, sigma);
    };
    const auto a = run(planted);
    if (a.all_hold() && a.strictly_stronger() && a.decomposition.multiplicity(p.value()) > 0) ++planted_good;
    const auto b = run(no_free);
    if (b.all_hold() && !b.strictly_stronger() && b.sharpened == b.invariants) ++plain_good;
  }
  return {planted_good == n && plain_good == n,
          count(planted_good, n) + " planted m_p > 0 strictly sharper, " + count(plain_good, n) +
              " m_p = 0 bounds coincide, exact"};
}

Verdict spectral_convergence() {
  gen::Rng rng(505);
  const std::size_t n = 200;
  std::size_t conv = 0;
  std::size_t max_gens = 0, max_levels = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Prime p = gen::pick_prime(rng, {2, 3});
    gen::ComplexShape shape;
    shape.max_size = 15;
    shape.max_degree = 3;
    shape.levels = 6;
    const auto c = gen::random_filtered_complex(rng, p, shape);
    const auto ss = action_ss_pages(c);
    max_gens = std::max(max_gens, static_cast<std::size_t>(c.size()));
    max_levels = std::max(max_levels, ss.levels.size());
    if (ss.infinity().total_by_degree() == brute_homology_dims(c)) ++conv;
  }
  std::size_t alg = 0, bound = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5});
    const auto v = gen::random_equivariant(rng, p, 4);
    const auto m = conjugated_model(v, gen::random_twist(rng, v));
    const auto r = algebraic_ss_pages(m);
    const auto h = homology_complex(v);
    if (r.matches_sigma && r.matches_group_cohomology == true &&
        r.e2_by_degree == group_cohomology_dims(h, default_max_degree(h)) &&
        r.e2_tate == tate_cohomology_dims(h) && r.e_infinity == tate_cohomology_dims(v))
      ++alg;
    if (r.tate_bound_holds) ++bound;
  }
  std::ostringstream os;
  os << count(conv, n) << " action E_inf = brute-force homology (<= " << max_gens << " generators, <= "
     << max_levels << " levels), " << count(alg, n) << " twisted models with E_1 = (1 - sigma*, uN*) and E_2 = "
     << "H*(G; H), " << count(bound, n) << " dim-Tate bound, exact";
  return {conv == n && alg == n && bound == n && max_levels <= 6 && max_gens <= 15, os.str()};
}

Verdict barcode_structure() {
  gen::Rng rng(606);
  const std::size_t n = 300, windows = 20;
  std::size_t good = 0, brute = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5});
    gen::ComplexShape shape;
    shape.max_size = 12;
    const auto c = gen::random_filtered_complex(rng, p, shape);
    const Barcode b = barcode_from_filtered(c);
    for (std::size_t k = 0; k < windows; ++k) {
      ActionWindow w;
      const auto kind = gen::uniform(rng, 4);
      const Rational lo(2 * gen::uniform_in(rng, -1, shape.levels) - 1, 2);
      const Rational hi = lo + gen::uniform_in(rng, 1, shape.levels);
      if (kind != 0) w.lower = lo;
      if (kind != 1) w.upper = hi;
      const auto sub = window_truncate(c, w);
      std::size_t expected;
      if (p.value() == 2) {
        expected = total(brute_homology_dims(sub));
        ++brute;
      } else {
        expected = total_homology_dim(sub);
      }
      if (window_dim(b, w) == expected) ++good;
    }
  }
  return {good == n * windows, count(good, n * windows) + " window dims equal subquotient homology (" +
                                   std::to_string(brute) + " against brute-force counting), exact"};
}

Verdict barcode_smith() {
  gen::Rng rng(707);
  const std::size_t n = 1000, adversarial = 100;
  std::size_t good = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5, 7});
    const Barcode b1 = random_barcode(rng, p, 6);
    const Barcode bp = generate_iterated_barcode(b1, p, gen::uniform(rng, 4), rng());
    if (smith_barcode_check(b1, bp, p).all_hold()) ++good;
  }
  std::size_t caught = 0, made = 0;
  while (made < adversarial) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5, 7});
    const Barcode b1 = random_barcode(rng, p, 6);
    if (b1.empty()) continue;
    std::vector<Bar> bars = generate_iterated_barcode(b1, p, 0, 0).bars();
    auto& victim = bars[gen::uniform(rng, bars.size())];
    if (--victim.mult == 0) bars.erase(std::find(bars.begin(), bars.end(), victim));
    ++made;
    const auto r = smith_barcode_check(b1, Barcode(p, bars), p);
    if (!r.m_holds() || !r.window_holds() || !r.scale_holds || !r.integral_matches) ++caught;
  }
  return {good == n && caught == adversarial,
          count(good, n) + " iterated pairs pass (m, scaling, window), " + count(caught, adversarial) +
              " bar deletions flagged, exact"};
}

Verdict torsion_detector() {
  gen::Rng rng(808);
  const std::size_t n = 200;
  std::size_t identity = 0, identity_good = 0, shifted = 0, shifted_good = 0, good = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5});
    Barcode b(p, {});
    if (i % 4 == 0) {
      b = Barcode(p, {Bar{Rational(0), std::nullopt, static_cast<std::size_t>(gen::uniform_in(rng, 1, 4))}});
    } else {
      do b = random_barcode(rng, p, 5);
      while (b.empty());
    }
    const BarStats s = bar_stats(b);
    const auto w = torsion_witness(b);
    const bool identity_like = s.finite_count == 0 && s.c_plus && *s.c_plus == Rational(0) &&
                               *s.c_minus == Rational(0);
    bool ok = true;
    if (identity_like) {
      ++identity;
      if (!w) ++identity_good;
      ok = !w;
    }
    if (s.c_plus && *s.c_minus < *s.c_plus) {
      ++shifted;
      const bool valid = w && window_dim(b, *w) >= 1 && !w->closure_contains(Rational(0));
      if (valid) ++shifted_good;
      ok = ok && valid;
    }
    if (w) ok = ok && window_dim(b, *w) >= 1 && !w->closure_contains(Rational(0));
    if (ok) ++good;
  }
  return {good == n && identity_good == identity && shifted_good == shifted && identity > 0 && shifted > 0,
          count(identity_good, identity) + " identity-normalized without witness, " +
              count(shifted_good, shifted) + " with c+ > c- have a witness of dim >= 1 avoiding 0, " +
              count(good, n) + " consistent, exact"};
}

Verdict constants() {
  std::size_t wilson = 0, wilson_all = 0, sign = 0, sign_all = 0, res = 0;
  for (int p = 2; p <= 97; ++p) {
    if (!is_prime(p)) continue;
    ++wilson_all;
    if (wilson_constant(Prime(p)) == FpScalar(p - 1, Prime(p))) ++wilson;
  }
  for (int p = 2; p <= 31; ++p) {
    if (!is_prime(p)) continue;
    for (int n = 0; n <= 20; ++n) {
      ++sign_all;
      const auto e = local_euler_constant(n, Prime(p));
      if (e.sign == FpScalar(n % 2 == 0 ? 1 : -1, Prime(p)) && e.u_exponent == n * (p - 1)) ++sign;
    }
  }
  for (int p : {2, 3, 5, 7})
    if (resolution_homology(Prime(p), 10).matches_point()) ++res;
  return {wilson == wilson_all && sign == sign_all && res == 4,
          "wilson " + count(wilson, wilson_all) + ", euler sign " + count(sign, sign_all) +
              ", resolution (1,0,...,0) " + count(res, 4) + ", exact"};
}

Verdict cli_determinism() {
  auto run = [](const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = cli::dispatch(args, out, err);
    auto j = io::Json::parse(out.str());
    j.erase("timing_ms");
    return j.dump();
  };
  std::size_t same = 0, props = 0;
  for (const auto& prop : fuzz::registry()) {
    ++props;
    const std::vector<std::string> args = {"fuzz", "--op", prop.name, "--seed", "2024", "--count", "20", "--json"};
    int c1 = 0, c2 = 0;
    if (run(args, c1) == run(args, c2) && c1 == c2) ++same;
  }
  // every reproducer from a failing run must fail again on replay
  std::size_t replays = 0, refail = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    fuzz::Options opt;
    opt.op = "planted-acyclic";
    opt.seed = seed;
    opt.count = 20;
    opt.max_reported = 20;
    for (const auto& f : fuzz::run(opt).failures) {
      ++replays;
      const auto o = fuzz::replay(io::Json::parse(f.reproducer.dump()));
      if (o.applicable && !o.passed() && o.failed() == f.failed_checks) ++refail;
    }
  }
  // adversarial barcode pairs fed through the real property and minimized
  gen::Rng rng(909);
  const auto& prop = fuzz::find_property("barcode-smith");
  std::size_t adv = 0, adv_refail = 0;
  while (adv < 50) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5});
    const Barcode b1 = random_barcode(rng, p, 5);
    if (b1.empty()) continue;
    std::vector<Bar> bars = generate_iterated_barcode(b1, p, 0, 0).bars();
    auto& victim = bars[gen::uniform(rng, bars.size())];
    if (--victim.mult == 0) bars.erase(std::find(bars.begin(), bars.end(), victim));
    const io::Json inst = {{"p", p.value()},
                           {"b1", io::barcode_to_json(b1)},
                           {"bp", io::barcode_to_json(Barcode(p, bars))}};
    const auto o = prop.check(inst);
    ++adv;
    if (o.passed()) continue;
    const io::Json reproducer = {{"op", prop.name}, {"seed", 0}, {"index", adv},
                                 {"instance", fuzz::minimize(prop, inst, o.failed())}};
    const auto again = fuzz::replay(io::Json::parse(reproducer.dump()));
    if (!again.passed() && again.failed() == o.failed()) ++adv_refail;
  }
  return {same == props && replays > 0 && refail == replays && adv_refail == adv,
          count(same, props) + " properties byte-identical on rerun, " + count(refail, replays) +
              " planted reproducers re-fail, " + count(adv_refail, adv) + " minimized adversarial reproducers re-fail"};
}

}  // namespace

int main() {
  criterion(1, "Tate vanishing on free modules", 10, tate_free);
  criterion(2, "quasi-Frobenius bijectivity and additivity", 30, quasi_frobenius_suite);
  criterion(3, "module-structure bookkeeping", 0, module_bookkeeping);
  criterion(4, "sharpened vs classical bound", 0, sharpened_vs_classical);
  criterion(5, "spectral sequence convergence", 60, spectral_convergence);
  criterion(6, "barcode structure theorem", 0, barcode_structure);
  criterion(7, "barcode Smith suite", 0, barcode_smith);
  criterion(8, "torsion witness detector", 0, torsion_detector);
  criterion(9, "Wilson, Euler and resolution constants", 1, constants);
  criterion(10, "CLI determinism and replay", 0, cli_determinism);
  std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
