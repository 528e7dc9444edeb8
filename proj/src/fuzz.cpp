#include "smith/fuzz.hpp"

#include "smith/module_decomp.hpp"
#include "smith/persistence.hpp"
#include "smith/spectral.hpp"
#include "smith/tate.hpp"

#include <algorithm>
#include <sstream>

namespace smith::fuzz {

bool Outcome::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<std::string> Outcome::failed() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.pass) out.push_back(c.name);
  return out;
}

Json outcome_to_json(const Outcome& o) {
  Json out;
  out["applicable"] = o.applicable;
  if (!o.note.empty()) out["note"] = o.note;
  Json checks = Json::array();
  for (const auto& c : o.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}});
  out["checks"] = checks;
  out["pass"] = o.passed();
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Outcome not_applicable(const std::string& why) {
  Outcome o;
  o.applicable = false;
  o.note = why;
  return o;
}

// Input that cannot be built, or that breaks the hypotheses of a property,
// is not a counterexample.
template <class F>
Outcome guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return not_applicable(e.what());
  } catch (const nlohmann::json::exception& e) {
    return not_applicable(e.what());
  }
}

// -- shrinking on the JSON forms ----------------------------------------------

Json delete_generator(const Json& c, std::size_t k) {
  Json out = c;
  const std::string id = c["generators"][k]["id"].get<std::string>();
  out["generators"].erase(k);
  auto filter = [&](Json& list) {
    Json kept = Json::array();
    for (const auto& t : list)
      if (t[0] != id && t[1] != id) kept.push_back(t);
    list = kept;
  };
  if (out.contains("d")) filter(out["d"]);
  if (out.contains("sigma")) filter(out["sigma"]);
  if (out.contains("d_terms"))
    for (auto& t : out["d_terms"]) filter(t["matrix"]);
  return out;
}

std::vector<Json> generator_deletions(const Json& c) {
  std::vector<Json> out;
  if (!c.contains("generators")) return out;
  for (std::size_t k = 0; k < c["generators"].size(); ++k) out.push_back(delete_generator(c, k));
  return out;
}

std::vector<Json> bar_deletions(const Json& b) {
  std::vector<Json> out;
  if (!b.contains("bars")) return out;
  for (std::size_t k = 0; k < b["bars"].size(); ++k) {
    Json next = b;
    Json& bar = next["bars"][k];
    const auto mult = bar.value("mult", std::int64_t{1});
    if (mult > 1)
      bar["mult"] = mult - 1;
    else
      next["bars"].erase(k);
    out.push_back(next);
  }
  return out;
}

/// Shrinks of the member `key`, each placed back into a copy of j.
std::vector<Json> nested(const Json& j, const std::string& key,
                         const std::function<std::vector<Json>(const Json&)>& f) {
  std::vector<Json> out;
  if (!j.contains(key)) return out;
  for (auto& part : f(j[key])) {
    Json next = j;
    next[key] = std::move(part);
    out.push_back(std::move(next));
  }
  return out;
}

std::size_t generator_count(const Json& c) {
  return c.contains("generators") ? c["generators"].size() : 0;
}

std::size_t bar_count(const Json& b) {
  std::size_t n = 0;
  if (b.contains("bars"))
    for (const auto& bar : b["bars"]) n += static_cast<std::size_t>(bar.value("mult", std::int64_t{1}));
  return n;
}

EquivariantComplex valid_complex(const Json& j, bool check_action) {
  EquivariantComplex c = io::complex_from_json(j);
  require_valid(c, check_action, "instance");
  return c;
}

// -- properties ---------------------------------------------------------------

Property tate_free() {
  Property prop;
  prop.name = "tate-free";
  prop.description = "free F_p[Z/pZ]-complexes have Tate dims (0, 0)";
  prop.primes = {2, 3, 5, 7};
  prop.generate = [](gen::Rng& rng, Prime p, const SizeBounds& b) {
    return io::complex_to_json(gen::random_free_module(rng, p, b.max_size ? b.max_size : 21));
  };
  prop.check = [](const Json& j) {
    return guarded([&] {
      const auto v = valid_complex(j, false);
      const auto d = decompose(v.sigma());
      if (d.multiplicity(v.modulus().value()) * v.modulus().value() != d.dim())
        return not_applicable("sigma is not free");
      const TateDims t = tate_cohomology_dims(v);
      Outcome o;
      o.checks = {{"tate even vanishes", t.even == 0}, {"tate odd vanishes", t.odd == 0}};
      return o;
    });
  };
  prop.shrink = generator_deletions;
  prop.size = generator_count;
  return prop;
}

Property quasi_frobenius_prop() {
  Property prop;
  prop.name = "quasi-frobenius";
  prop.description = "the quasi-Frobenius map is bijective per parity, with additivity certificates";
  prop.primes = {3, 5};
  prop.generate = [](gen::Rng& rng, Prime p, const SizeBounds& b) {
    gen::ComplexShape shape;
    shape.min_degree = -1;
    shape.max_size = b.max_size ? b.max_size : 6;
    Json out;
    out["complex"] = io::complex_to_json(gen::random_filtered_complex(rng, p, shape));
    out["certificate_seed"] = rng() >> 11;
    return out;
  };
  prop.check = [](const Json& j) {
    return guarded([&] {
      const auto v = valid_complex(j.at("complex"), false);
      QuasiFrobeniusOptions opt;
      opt.certificates = 1;
      opt.seed = j.value("certificate_seed", std::uint64_t{0});
      const auto r = quasi_frobenius(v, opt);
      const bool certs = !r.certificates.empty() &&
                         std::all_of(r.certificates.begin(), r.certificates.end(),
                                     [](const AdditivityCertificate& c) { return c.ok(); });
      Outcome o;
      o.checks = {{"bijective", r.is_bijective},
                  {"even dim = dim H", r.target_dims.even == r.homology_dim},
                  {"odd dim = dim H", r.target_dims.odd == r.homology_dim},
                  {"direct target dims",
                   !r.direct_target_dims || *r.direct_target_dims == r.target_dims},
                  {"additivity certificate", certs},
                  {"all", r.ok()}};
      return o;
    });
  };
  prop.shrink = [](const Json& j) { return nested(j, "complex", generator_deletions); };
  prop.size = [](const Json& j) { return j.contains("complex") ? generator_count(j["complex"]) : 0; };
  return prop;
}

Property module_bookkeeping() {
  Property prop;
  prop.name = "module-bookkeeping";
  prop.description = "Jordan multiplicities give the Tate and invariant dimensions";
  prop.primes = {2, 3, 5, 7};
  prop.generate = [](gen::Rng& rng, Prime p, const SizeBounds& b) {
    const auto max = static_cast<std::size_t>(b.max_size ? b.max_size : 12);
    const auto blocks = gen::random_partition(rng, p, max);
    return io::complex_to_json(module_complex(gen::random_order_p(rng, p, blocks)));
  };
  prop.check = [](const Json& j) {
    return guarded([&] {
      const auto v = valid_complex(j, false);
      if (!v.d().is_zero()) return not_applicable("differential is not zero");
      const Prime p = v.modulus();
      const auto d = decompose(v.sigma());
      const auto closed = tate_and_invariant_dims(d);
      const auto n = v.size();
      Outcome o;
      o.checks = {
          {"dimension", d.dim() == static_cast<std::size_t>(n)},
          {"tate closed form", closed.tate_dim == tate_cohomology_dims(v).total()},
          {"invariant closed form",
           closed.invariant_dim == kernel(v.sigma() - FpMatrix::identity(p, n)).size()}};
      return o;
    });
  };
  prop.shrink = generator_deletions;
  prop.size = generator_count;
  return prop;
}

Property sharpened_bound() {
  Property prop;
  prop.name = "sharpened-bound";
  prop.description = "the sharpened middle term is below dim H^G exactly when m_p > 0";
  prop.primes = {2, 3, 5, 7};
  prop.generate = [](gen::Rng& rng, Prime p, const SizeBounds& b) {
    const auto max = static_cast<std::size_t>(b.max_size ? b.max_size : 12);
    auto blocks = gen::random_partition(rng, p, max);
    if (gen::uniform(rng, 2) == 0) blocks.push_back(p.value());
    const FpMatrix sigma = gen::random_order_p(rng, p, blocks);
    std::size_t sharpened = 0;
    for (auto k : blocks)
      if (k < p.value()) ++sharpened;
    Json out;
    out["hf_dim"] = gen::uniform_in(rng, 0, static_cast<std::int64_t>(sharpened));
    out["module"] = io::complex_to_json(module_complex(sigma));
    return out;
  };
  prop.check = [](const Json& j) {
    return guarded([&] {
      const auto v = valid_complex(j.at("module"), false);
      const auto hf = j.at("hf_dim").get<std::int64_t>();
      if (hf < 0) return not_applicable("negative hf_dim");
      const auto r = smith_chain_check(static_cast<std::size_t>(hf), v.sigma());
      if (!r.sharpened_bound()) return not_applicable("hf_dim above the sharpened term");
      const bool free_part = r.decomposition.multiplicity(v.modulus().value()) > 0;
      Outcome o;
      o.checks = {{"middle", r.middle()},
                  {"upper", r.upper()},
                  {"classical", r.classical_bound()},
                  {"strict iff m_p > 0", r.strictly_stronger() == free_part}};
      return o;
    });
  };
  prop.shrink = [](const Json& j) { return nested(j, "module", generator_deletions); };
  prop.size = [](const Json& j) { return j.contains("module") ? generator_count(j["module"]) : 0; };
  return prop;
}

Property spectral_convergence() {
  Property prop;
  prop.name = "spectral-convergence";
  prop.description = "the action spectral sequence converges to total homology";
  prop.primes = {2, 3};
  prop.generate = [](gen::Rng& rng, Prime p, const SizeBounds& b) {
    gen::ComplexShape shape;
    shape.max_size = b.max_size ? b.max_size : 15;
    shape.max_degree = 3;
    return io::complex_to_json(gen::random_filtered_complex(rng, p, shape));
  };
  prop.check = [](const Json& j) {
    return guarded([&] {
      const auto c = valid_complex(j, true);
      const auto ss = action_ss_pages(c);
      bool shrinking = true;
      for (std::size_t r = 0; r + 1 < ss.pages.size(); ++r)
        shrinking = shrinking && ss.pages[r + 1].total() <= ss.pages[r].total();
      Outcome o;
      o.checks = {{"E_inf = H", ss.infinity().total_by_degree() == homology_dims(c)},
                  {"pages shrink", shrinking}};
      return o;
    });
  };
  prop.shrink = generator_deletions;
  prop.size = generator_count;
  return prop;
}

Property algebraic_ss() {
  Property prop;
  prop.name = "algebraic-ss";
  prop.description = "E_2 of a twisted genuine model is group cohomology of H, E_inf is Tate(V)";
  prop.primes = {2, 3, 5};
  prop.generate = [](gen::Rng& rng, Prime p, const SizeBounds& b) {
    const auto v = gen::random_equivariant(rng, p, b.max_size ? b.max_size : 4);
    return io::model_to_json(conjugated_model(v, gen::random_twist(rng, v)));
  };
  prop.check = [](const Json& j) {
    return guarded([&] {
      const auto m = io::model_from_json(j);
      require_valid(m.base, false, "instance");
      check_model_shape(m);
      const auto r = algebraic_ss_pages(m);
      const auto h = homology_complex(m.base);
      Outcome o;
      o.checks = {{"tate bound", r.tate_bound_holds},
                  {"E_1 differential is 1 - sigma, N", r.matches_sigma},
                  {"E_2 = H*(G; H)", r.matches_group_cohomology == true},
                  {"E_2 = group cohomology of H(V)",
                   r.e2_by_degree == group_cohomology_dims(h, default_max_degree(h))},
                  {"E_inf = Tate(V)", r.e_infinity == tate_cohomology_dims(m.base)}};
      return o;
    });
  };
  prop.shrink = generator_deletions;
  prop.size = generator_count;
  return prop;
}

Property barcode_roundtrip() {
  Property prop;
  prop.name = "barcode-roundtrip";
  prop.description = "window dims read off the barcode equal subquotient homology";
  prop.primes = {2, 3, 5};
  prop.generate = [](gen::Rng& rng, Prime p, const SizeBounds& b) {
    gen::ComplexShape shape;
    shape.max_size = b.max_size ? b.max_size : 12;
    Json out;
    out["complex"] = io::complex_to_json(gen::random_filtered_complex(rng, p, shape));
    Json windows = Json::array();
    for (int k = 0; k < 20; ++k) {
      ActionWindow w;
      const auto kind = gen::uniform(rng, 4);
      const Rational lo(2 * gen::uniform_in(rng, -1, shape.levels) - 1, 2);
      const Rational hi = lo + gen::uniform_in(rng, 1, shape.levels);
      if (kind != 0) w.lower = lo;
      if (kind != 1) w.upper = hi;
      windows.push_back(io::window_to_json(w));
    }
    out["windows"] = windows;
    return out;
  };
  prop.check = [](const Json& j) {
    return guarded([&] {
      const auto c = valid_complex(j.at("complex"), true);
      const Barcode b = barcode_from_filtered(c);
      const BarStats s = bar_stats(b);
      bool windows_ok = true;
      std::ostringstream note;
      const Json& ws = j.at("windows");
      for (std::size_t k = 0; k < ws.size(); ++k) {
        const ActionWindow w = io::window_from_json(ws[k], "windows[" + std::to_string(k) + "]");
        const auto from_bars = window_dim(b, w);
        const auto direct = total_homology_dim(window_truncate(c, w));
        if (from_bars != direct) {
          windows_ok = false;
          note << format_window(w) << ": " << from_bars << " vs " << direct << "; ";
        }
      }
      Outcome o;
      o.note = note.str();
      o.checks = {{"generator count", s.generator_count == static_cast<std::size_t>(c.size())},
                  {"infinite bars = dim H", s.infinite_count == total_homology_dim(c)},
                  {"window dims", windows_ok}};
      return o;
    });
  };
  prop.shrink = [](const Json& j) {
    auto out = nested(j, "complex", generator_deletions);
    if (j.contains("windows"))
      for (std::size_t k = 0; k < j["windows"].size(); ++k) {
        Json next = j;
        next["windows"].erase(k);
        out.push_back(next);
      }
    return out;
  };
  prop.size = [](const Json& j) { return j.contains("complex") ? generator_count(j["complex"]) : 0; };
  return prop;
}

Property barcode_smith() {
  Property prop;
  prop.name = "barcode-smith";
  prop.description = "iterated barcodes satisfy the m, scaling and window inequalities";
  prop.primes = {2, 3, 5, 7};
  prop.generate = [](gen::Rng& rng, Prime p, const SizeBounds& b) {
    const Barcode b1 = random_barcode(rng, p, b.max_bars ? b.max_bars : 6);
    const auto extra = gen::uniform(rng, 4);
    const Barcode bp = generate_iterated_barcode(b1, p, extra, rng());
    Json out;
    out["p"] = p.value();
    out["b1"] = io::barcode_to_json(b1);
    out["bp"] = io::barcode_to_json(bp);
    return out;
  };
  prop.check = [](const Json& j) {
    return guarded([&] {
      const Prime p(j.at("p").get<std::int64_t>());
      const auto r = smith_barcode_check(io::barcode_from_json(j.at("b1")),
                                         io::barcode_from_json(j.at("bp")), p);
      Outcome o;
      o.checks = {{"m inequality", r.m_holds()},
                  {"integral", r.integral_matches},
                  {"beta_tot scaling", r.scale_holds},
                  {"window inequality", r.window_holds()}};
      return o;
    });
  };
  prop.shrink = [](const Json& j) {
    auto out = nested(j, "b1", bar_deletions);
    for (auto& next : nested(j, "bp", bar_deletions)) out.push_back(std::move(next));
    return out;
  };
  prop.size = [](const Json& j) {
    return (j.contains("b1") ? bar_count(j["b1"]) : 0) + (j.contains("bp") ? bar_count(j["bp"]) : 0);
  };
  return prop;
}

Property torsion_witness_prop() {
  Property prop;
  prop.name = "torsion-witness";
  prop.description = "a witness window exists exactly off identity-normalized barcodes";
  prop.primes = {2, 3, 5};
  prop.generate = [](gen::Rng& rng, Prime p, const SizeBounds& b) {
    if (gen::uniform(rng, 4) == 0) {
      Bar bar{Rational(0), std::nullopt, static_cast<std::size_t>(gen::uniform_in(rng, 1, 3))};
      return io::barcode_to_json(Barcode(p, {bar}));
    }
    while (true) {
      const Barcode out = random_barcode(rng, p, b.max_bars ? b.max_bars : 5);
      if (!out.empty()) return io::barcode_to_json(out);
    }
  };
  prop.check = [](const Json& j) {
    return guarded([&] {
      const Barcode b = io::barcode_from_json(j);
      if (b.empty()) return not_applicable("no bars");
      const BarStats s = bar_stats(b);
      const auto w = torsion_witness(b);
      const bool identity_like = s.finite_count == 0 && s.c_plus && *s.c_plus == Rational(0) &&
                                 *s.c_minus == Rational(0);
      Outcome o;
      o.checks = {{"identity has no witness", !identity_like || !w},
                  {"witness when c+ > c-", !(s.c_plus && *s.c_minus < *s.c_plus) || w.has_value()},
                  {"closure avoids 0", !w || !w->closure_contains(Rational(0))},
                  {"window dim >= 1", !w || window_dim(b, *w) >= 1}};
      if (w) o.note = "witness " + format_window(*w);
      return o;
    });
  };
  prop.shrink = bar_deletions;
  prop.size = bar_count;
  return prop;
}

// Deliberately false, so that failure reports and replay can be exercised.
Property planted_false() {
  Property prop;
  prop.name = "planted-acyclic";
  prop.description = "false on purpose: claims every random complex is acyclic";
  prop.primes = {2, 3};
  prop.generate = [](gen::Rng& rng, Prime p, const SizeBounds& b) {
    gen::ComplexShape shape;
    shape.max_size = b.max_size ? b.max_size : 6;
    return io::complex_to_json(gen::random_filtered_complex(rng, p, shape));
  };
  prop.check = [](const Json& j) {
    return guarded([&] {
      const auto c = valid_complex(j, true);
      Outcome o;
      o.checks = {{"homology vanishes", total_homology_dim(c) == 0}};
      return o;
    });
  };
  prop.shrink = generator_deletions;
  prop.size = generator_count;
  prop.expected_to_fail = true;
  return prop;
}

}  // namespace

const std::vector<Property>& registry() {
  static const std::vector<Property> all = {
      tate_free(),          quasi_frobenius_prop(), module_bookkeeping(), sharpened_bound(),
      spectral_convergence(), algebraic_ss(),        barcode_roundtrip(),  barcode_smith(),
      torsion_witness_prop(), planted_false()};
  return all;
}

const Property& find_property(const std::string& name) {
  for (const auto& p : registry())
    if (p.name == name) return p;
  std::string known;
  for (const auto& p : registry()) known += (known.empty() ? "" : ", ") + p.name;
  throw UnknownProperty("unknown property \"" + name + "\" (known: " + known + ")");
}

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

Json draw_instance(const Property& prop, std::uint64_t seed, std::uint64_t index,
                   std::optional<int> p, const SizeBounds& bounds) {
  gen::Rng rng(instance_seed(seed, index));
  const Prime prime = p ? Prime(*p) : gen::pick_prime(rng, prop.primes);
  return prop.generate(rng, prime, bounds);
}

Json minimize(const Property& prop, Json instance, const std::vector<std::string>& failed) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto& candidate : prop.shrink(instance)) {
      const Outcome o = prop.check(candidate);
      if (o.applicable && o.failed() == failed) {
        instance = std::move(candidate);
        progress = true;
        break;
      }
    }
  }
  return instance;
}

RunSummary run(const Options& options) {
  const Property& prop = find_property(options.op);
  if (options.p) static_cast<void>(Prime(*options.p));
  RunSummary out;
  for (std::size_t i = 0; i < options.count; ++i) {
    const Json instance = draw_instance(prop, options.seed, i, options.p, options.bounds);
    const Outcome o = prop.check(instance);
    if (!o.applicable) {
      ++out.skipped;
    } else if (o.passed()) {
      ++out.passed;
    } else {
      ++out.failed;
      if (out.failures.size() < options.max_reported) {
        Failure f;
        f.index = i;
        f.failed_checks = o.failed();
        f.original_size = prop.size(instance);
        const Json small = minimize(prop, instance, f.failed_checks);
        f.minimized_size = prop.size(small);
        f.reproducer = {{"op", prop.name}, {"seed", options.seed}, {"index", i}, {"instance", small}};
        out.failures.push_back(std::move(f));
      }
    }
  }
  return out;
}

Outcome replay(const Json& reproducer) {
  if (!reproducer.is_object()) throw MalformedInput("reproducer: expected an object");
  if (!reproducer.contains("op") || !reproducer["op"].is_string())
    throw MalformedInput("reproducer.op: missing or not a string");
  if (!reproducer.contains("instance")) throw MalformedInput("reproducer.instance: missing");
  const Property& prop = find_property(reproducer["op"].get<std::string>());
  return prop.check(reproducer["instance"]);
}

}  // namespace smith::fuzz
