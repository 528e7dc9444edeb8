#include "smith/cli.hpp"

#include "smith/module_decomp.hpp"
#include "smith/morse.hpp"
#include "smith/persistence.hpp"
#include "smith/spectral.hpp"
#include "smith/tate.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace smith::cli {

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const fuzz::Check& c) { return c.pass; });
}

Json Report::to_json() const {
  Json out;
  out["command"] = command;
  out["input_digest"] = input_digest;
  out["results"] = results;
  Json cs = Json::array();
  for (const auto& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}});
  out["checks"] = cs;
  out["pass"] = pass();
  out["timing_ms"] = std::round(timing_ms * 1000.0) / 1000.0;
  return out;
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

}  // namespace

std::string Report::to_table() const {
  std::ostringstream os;
  os << "command  " << command << "\n";
  os << "input    sha256:" << input_digest << "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(results, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) os << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
  for (const auto& c : checks) os << (c.pass ? "PASS  " : "FAIL  ") << c.name << "\n";
  os << (pass() ? "result   pass" : "result   FAIL") << "\n";
  os << "time     " << std::fixed << std::setprecision(3) << timing_ms << " ms\n";
  return os.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

namespace {

const std::vector<std::string> kCommands = {
    "tate",     "group-cohomology", "quasi-frobenius", "decompose", "smith-check",     "spectral",
    "barcode",  "barcode-smith",    "torsion",         "morse-constants", "fuzz"};

struct Args {
  bool json = false;
  std::string input, sigma, b1, bp, replay, out_path, op, mode;
  std::int64_t hf_dim = 0;
  std::optional<int> max_degree;
  std::size_t certificates = 1;
  std::uint64_t seed = 0;
  std::size_t count = 100;
  std::optional<int> p;
  int n = 1;
  int length = 10;
  int levels = 2;
  Index max_size = 0;
  std::size_t max_bars = 0;
  bool non_strict = false;
  bool list = false;
  std::vector<std::string> windows;
};

struct Loaded {
  std::string raw;
  Json json;
};

Loaded load(const std::string& path) {
  Loaded l;
  l.raw = io::read_file(path);
  l.json = io::parse_json(l.raw, path);
  return l;
}

std::string error_kind(const Error& e) {
#define SMITH_KIND(T) \
  if (dynamic_cast<const T*>(&e)) return #T;
  SMITH_KIND(NotPrime)
  SMITH_KIND(ModulusMismatch)
  SMITH_KIND(DimensionMismatch)
  SMITH_KIND(NotNilpotent)
  SMITH_KIND(NotOrderP)
  SMITH_KIND(InvalidComplex)
  SMITH_KIND(InadmissibleWindow)
  SMITH_KIND(NotChainMap)
  SMITH_KIND(NotEquivariant)
  SMITH_KIND(NotSquareZero)
  SMITH_KIND(FiltrationViolation)
  SMITH_KIND(SpectralEndpoint)
  SMITH_KIND(EmptyBarcode)
  SMITH_KIND(MalformedInput)
  SMITH_KIND(UnknownCommand)
  SMITH_KIND(UnknownProperty)
#undef SMITH_KIND
  return "Error";
}

Json rational_or_null(const std::optional<Rational>& r) {
  return r ? Json(format_rational(*r)) : Json(nullptr);
}

EquivariantComplex load_complex(const std::string& path, std::string& raw, bool check_action) {
  Loaded l = load(path);
  raw += l.raw;
  EquivariantComplex c = io::complex_from_json(l.json);
  require_valid(c, check_action, path);
  return c;
}

/// "lo:hi" with either side empty for an infinite end.
ActionWindow parse_window(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw MalformedInput("--window \"" + s + "\": expected lo:hi");
  ActionWindow w;
  const std::string lo = s.substr(0, colon), hi = s.substr(colon + 1);
  if (!lo.empty()) w.lower = parse_rational(lo);
  if (!hi.empty()) w.upper = parse_rational(hi);
  if (!w.is_nonempty()) throw MalformedInput("--window \"" + s + "\": empty window");
  return w;
}

Json stats_to_json(const BarStats& s) {
  return Json{{"finite_bars", s.finite_count},
              {"infinite_bars", s.infinite_count},
              {"generators", s.generator_count},
              {"beta_tot", format_rational(s.beta_tot)},
              {"beta_max", format_rational(s.beta_max)},
              {"c_plus", rational_or_null(s.c_plus)},
              {"c_minus", rational_or_null(s.c_minus)}};
}

// -- commands -----------------------------------------------------------------

Report cmd_tate(const Args& a) {
  Report r;
  std::string raw;
  const auto v = load_complex(a.input, raw, false);
  r.input_digest = sha256_hex(raw);
  const TateComplexView view(v);
  r.results["p"] = v.modulus().value();
  r.results["generators"] = v.size();
  r.results["homology"] = io::degree_map_to_json(homology_dims(v));
  r.results["tate"] = io::tate_dims_to_json(view.dims());
  r.checks = {{"Tate differential squares to zero", view.squares_to_zero()}};
  return r;
}

Report cmd_group_cohomology(const Args& a) {
  Report r;
  std::string raw;
  const auto v = load_complex(a.input, raw, false);
  r.input_digest = sha256_hex(raw);
  const auto dims = group_cohomology_dims(v, a.max_degree);
  const auto tate = tate_cohomology_dims(v);
  r.results["p"] = v.modulus().value();
  r.results["group_cohomology"] = io::degree_map_to_json(dims);
  r.results["tate"] = io::tate_dims_to_json(tate);
  const auto degs = v.degrees();
  bool periodic = true;
  if (!degs.empty())
    for (const auto& [k, dim] : dims)
      if (k > degs.back()) periodic = periodic && dim == (k % 2 == 0 ? tate.even : tate.odd);
  r.checks = {{"periodic with the Tate dims above the top degree", periodic}};
  return r;
}

Report cmd_quasi_frobenius(const Args& a) {
  Report r;
  std::string raw;
  const auto v = load_complex(a.input, raw, false);
  r.input_digest = sha256_hex(raw);
  QuasiFrobeniusOptions opt;
  opt.certificates = a.certificates;
  opt.seed = a.seed;
  const auto q = quasi_frobenius(v, opt);
  r.results["p"] = v.modulus().value();
  r.results["homology_dim"] = q.homology_dim;
  r.results["domain"] = io::tate_dims_to_json(q.domain_dims);
  r.results["target"] = io::tate_dims_to_json(q.target_dims);
  r.results["direct_target"] = q.direct_target_dims ? io::tate_dims_to_json(*q.direct_target_dims) : Json(nullptr);
  r.results["bijective"] = q.is_bijective;
  Json images = Json::array();
  bool cocycles = true, invariant = true;
  for (const auto& im : q.images) {
    images.push_back({{"anchor", im.label}, {"degree", im.degree}, {"cocycle", im.cocycle}, {"invariant", im.invariant}});
    cocycles = cocycles && im.cocycle;
    invariant = invariant && im.invariant;
  }
  r.results["images"] = images;
  Json certs = Json::array();
  bool certs_ok = true;
  for (const auto& c : q.certificates) {
    certs.push_back({{"degree", c.degree}, {"norm_preimage", c.preimage_verified}, {"ok", c.ok()}});
    certs_ok = certs_ok && c.ok();
  }
  r.results["certificates"] = certs;
  r.checks = {{"images are cocycles", cocycles},
              {"images are invariant", invariant},
              {"bijective", q.is_bijective},
              {"even dim = dim H", q.target_dims.even == q.homology_dim},
              {"odd dim = dim H", q.target_dims.odd == q.homology_dim},
              {"direct target dims agree", !q.direct_target_dims || *q.direct_target_dims == q.target_dims},
              {"additivity certificates", certs_ok}};
  return r;
}

Report cmd_decompose(const Args& a) {
  Report r;
  std::string raw;
  const auto v = load_complex(a.input, raw, false);
  r.input_digest = sha256_hex(raw);
  const auto d = decompose(v.sigma());
  const auto closed = tate_and_invariant_dims(d);
  const auto module = module_complex(v.sigma());
  const Prime p = v.modulus();
  r.results["p"] = p.value();
  r.results["dim"] = d.dim();
  r.results["multiplicities"] = d.m;
  r.results["tate_dim"] = closed.tate_dim;
  r.results["invariant_dim"] = closed.invariant_dim;
  r.checks = {{"Tate closed form", closed.tate_dim == tate_cohomology_dims(module).total()},
              {"invariant closed form",
               closed.invariant_dim == kernel(v.sigma() - FpMatrix::identity(p, v.size())).size()}};
  return r;
}

Report cmd_smith_check(const Args& a) {
  Report r;
  std::string raw;
  const auto v = load_complex(a.sigma, raw, false);
  r.input_digest = sha256_hex(raw);
  if (a.hf_dim < 0) throw MalformedInput("--hf-dim: must be non-negative");
  const auto c = smith_chain_check(static_cast<std::size_t>(a.hf_dim), v.sigma());
  r.results["p"] = v.modulus().value();
  r.results["hf_dim"] = c.hf_dim;
  r.results["multiplicities"] = c.decomposition.m;
  r.results["sharpened"] = c.sharpened;
  r.results["invariants"] = c.invariants;
  r.results["total"] = c.total;
  r.results["strictly_stronger"] = c.strictly_stronger();
  r.checks = {{"sharpened bound hf <= m_1 + ... + m_(p-1)", c.sharpened_bound()},
              {"m_1 + ... + m_(p-1) <= dim H^G", c.middle()},
              {"dim H^G <= dim H", c.upper()},
              {"classical bound hf <= dim H^G", c.classical_bound()}};
  return r;
}

Report cmd_spectral(const Args& a) {
  Report r;
  if (a.mode == "action") {
    std::string raw;
    const auto c = load_complex(a.input, raw, false);
    r.input_digest = sha256_hex(raw);
    const auto ss = action_ss_pages(c, !a.non_strict);
    Json levels = Json::array();
    for (const auto& l : ss.levels) levels.push_back(format_rational(l));
    r.results["levels"] = levels;
    Json pages = Json::array();
    for (const auto& pg : ss.pages)
      pages.push_back({{"r", pg.r}, {"total", pg.total()}, {"by_degree", io::degree_map_to_json(pg.total_by_degree())}});
    r.results["pages"] = pages;
    const auto h = homology_dims(c);
    r.results["e_infinity"] = io::degree_map_to_json(ss.infinity().total_by_degree());
    r.results["homology"] = io::degree_map_to_json(h);
    r.checks = {{"E_inf = H", ss.infinity().total_by_degree() == h}};
    return r;
  }
  const Loaded l = load(a.input);
  r.input_digest = sha256_hex(l.raw);
  const auto m = io::model_from_json(l.json);
  require_valid(m.base, false, a.input);
  check_model_shape(m);
  const auto pages = algebraic_ss_pages(m, a.max_degree);
  const auto actions = validate_model_actions(m);
  r.results["p"] = m.base.modulus().value();
  r.results["homology_dim"] = pages.homology_dim;
  r.results["e2_by_degree"] = io::degree_map_to_json(pages.e2_by_degree);
  r.results["e2_tate"] = io::tate_dims_to_json(pages.e2_tate);
  r.results["e_infinity"] = io::tate_dims_to_json(pages.e_infinity);
  r.results["matches_sigma"] = pages.matches_sigma;
  r.results["matches_group_cohomology"] =
      pages.matches_group_cohomology ? Json(*pages.matches_group_cohomology) : Json(nullptr);
  Json violations = Json::array();
  for (const auto& v : actions.violations) violations.push_back(v.invariant + ": " + v.detail);
  r.results["action_violations"] = violations;
  r.checks = {{"E_inf <= Tate part of E_2", pages.tate_bound_holds}};
  return r;
}

Report cmd_barcode(const Args& a) {
  Report r;
  std::string raw;
  const auto c = load_complex(a.input, raw, false);
  r.input_digest = sha256_hex(raw);
  const Barcode b = barcode_from_filtered(c);
  const BarStats s = bar_stats(b);
  r.results["barcode"] = io::barcode_to_json(b);
  r.results["stats"] = stats_to_json(s);
  r.checks = {{"N = 2K + B", s.generator_count == static_cast<std::size_t>(c.size())},
              {"infinite bars = dim H", s.infinite_count == total_homology_dim(c)}};
  if (!a.windows.empty()) {
    Json ws = Json::array();
    bool agree = true;
    for (const auto& text : a.windows) {
      const ActionWindow w = parse_window(text);
      const auto from_bars = window_dim(b, w);
      const auto direct = total_homology_dim(window_truncate(c, w));
      agree = agree && from_bars == direct;
      ws.push_back({{"window", format_window(w)}, {"from_barcode", from_bars}, {"subquotient", direct}});
    }
    r.results["windows"] = ws;
    r.checks.push_back({"window dims agree with subquotient homology", agree});
  }
  return r;
}

Report cmd_barcode_smith(const Args& a) {
  Report r;
  const Loaded l1 = load(a.b1), lp = load(a.bp);
  r.input_digest = sha256_hex(l1.raw + lp.raw);
  const Barcode b1 = io::barcode_from_json(l1.json);
  const Barcode bp = io::barcode_from_json(lp.json);
  if (!(b1.modulus() == bp.modulus())) throw ModulusMismatch("--b1 and --bp have different p");
  const Prime p = b1.modulus();
  const auto rep = smith_barcode_check(b1, bp, p);
  r.results["p"] = p.value();
  r.results["beta_tot_1"] = format_rational(rep.beta_tot_1);
  r.results["beta_tot_p"] = format_rational(rep.beta_tot_p);
  r.results["test_points"] = rep.test_points.size();
  r.results["windows_checked"] = rep.windows_checked;
  Json mv = Json::array();
  for (std::size_t i = 0; i < rep.m_violations.size() && i < 10; ++i) {
    const auto& v = rep.m_violations[i];
    mv.push_back({{"t", format_rational(v.t)}, {"m_1", v.lhs}, {"m_p", v.rhs}});
  }
  r.results["m_violations"] = mv;
  r.results["m_violation_count"] = rep.m_violations.size();
  Json wv = Json::array();
  for (std::size_t i = 0; i < rep.window_violations.size() && i < 10; ++i) {
    const auto& v = rep.window_violations[i];
    wv.push_back({{"window", format_window(v.window)}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  r.results["window_violations"] = wv;
  r.results["window_violation_count"] = rep.window_violations.size();
  r.checks = {{"m(t, b1) <= m(pt, bp)", rep.m_holds()},
              {"integral of m recovers beta_tot", rep.integral_matches},
              {"beta_tot(bp) >= p beta_tot(b1)", rep.scale_holds},
              {"window inequality", rep.window_holds()}};
  return r;
}

Report cmd_torsion(const Args& a) {
  Report r;
  const Loaded l = load(a.input);
  r.input_digest = sha256_hex(l.raw);
  const Barcode b = io::barcode_from_json(l.json);
  const auto w = torsion_witness(b);
  const BarStats s = bar_stats(b);
  r.results["stats"] = stats_to_json(s);
  r.results["witness"] = w ? io::window_to_json(*w) : Json(nullptr);
  r.results["witness_dim"] = w ? Json(window_dim(b, *w)) : Json(nullptr);
  const bool identity_like =
      s.finite_count == 0 && s.c_plus && *s.c_plus == Rational(0) && *s.c_minus == Rational(0);
  r.results["identity_normalized"] = identity_like;
  r.checks = {{"identity-normalized barcodes have no witness", !identity_like || !w},
              {"a witness exists when c+ > c-", !(s.c_plus && *s.c_minus < *s.c_plus) || w.has_value()},
              {"witness closure avoids 0", !w || !w->closure_contains(Rational(0))},
              {"witness window dim >= 1", !w || window_dim(b, *w) >= 1}};
  return r;
}

Report cmd_morse(const Args& a) {
  Report r;
  if (!a.p) throw MalformedInput("-p is required");
  const Prime p(*a.p);
  if (a.n < 0) throw MalformedInput("-n: must be non-negative");
  if (a.length < 1) throw MalformedInput("--length: must be positive");
  if (a.levels < 0) throw MalformedInput("--levels: must be non-negative");
  r.input_digest = sha256_hex("morse-constants p=" + std::to_string(p.value()) + ";n=" + std::to_string(a.n) +
                              ";length=" + std::to_string(a.length) + ";levels=" + std::to_string(a.levels));
  const FpScalar w = wilson_constant(p);
  const EulerConstant e = local_euler_constant(a.n, p);
  const auto res = resolution_homology(p, a.length);
  r.results["p"] = p.value();
  r.results["wilson"] = w.value();
  r.results["euler"] = {{"n", a.n}, {"sign", e.sign.value()}, {"u_exponent", e.u_exponent}};
  r.results["resolution_homology"] = res.dims;
  r.results["critical_points"] = enumerate_critical_points(p, a.levels).size();
  const FpScalar expected_sign = FpScalar(a.n % 2 == 0 ? 1 : -1, p);
  r.checks = {{"(p-1)! = -1 mod p", w == FpScalar(-1, p)},
              {"sign = (-1)^n", e.sign == expected_sign},
              {"u exponent = n(p-1)", e.u_exponent == static_cast<std::int64_t>(a.n) * (p.residue() - 1)},
              {"resolution has the homology of a point", res.matches_point()}};
  return r;
}

Report cmd_fuzz(const Args& a) {
  Report r;
  if (a.list) {
    r.input_digest = sha256_hex("fuzz --list");
    Json props = Json::array();
    for (const auto& p : fuzz::registry())
      props.push_back({{"name", p.name}, {"description", p.description}, {"primes", p.primes},
                       {"expected_to_fail", p.expected_to_fail}});
    r.results["properties"] = props;
    return r;
  }
  if (!a.replay.empty()) {
    const Loaded l = load(a.replay);
    r.input_digest = sha256_hex(l.raw);
    const fuzz::Outcome o = fuzz::replay(l.json);
    r.results["op"] = l.json["op"];
    r.results["seed"] = l.json.value("seed", Json(nullptr));
    r.results["index"] = l.json.value("index", Json(nullptr));
    r.results["applicable"] = o.applicable;
    if (!o.note.empty()) r.results["note"] = o.note;
    r.checks = o.checks;
    return r;
  }
  if (a.op.empty()) throw MalformedInput("fuzz: --op, --replay or --list is required");
  fuzz::Options opt;
  opt.op = a.op;
  opt.seed = a.seed;
  opt.count = a.count;
  opt.p = a.p;
  opt.bounds.max_size = a.max_size;
  opt.bounds.max_bars = a.max_bars;
  r.input_digest = sha256_hex("fuzz op=" + a.op + ";seed=" + std::to_string(a.seed) + ";count=" +
                              std::to_string(a.count) + ";p=" + (a.p ? std::to_string(*a.p) : "any") +
                              ";max-size=" + std::to_string(a.max_size) +
                              ";max-bars=" + std::to_string(a.max_bars));
  const fuzz::RunSummary s = fuzz::run(opt);
  r.results["op"] = a.op;
  r.results["seed"] = a.seed;
  r.results["count"] = a.count;
  r.results["p"] = a.p ? Json(*a.p) : Json(nullptr);
  r.results["passed"] = s.passed;
  r.results["failed"] = s.failed;
  r.results["skipped"] = s.skipped;
  Json failures = Json::array();
  for (const auto& f : s.failures)
    failures.push_back({{"index", f.index},
                        {"failed_checks", f.failed_checks},
                        {"original_size", f.original_size},
                        {"minimized_size", f.minimized_size},
                        {"reproducer", f.reproducer}});
  r.results["failures"] = failures;
  if (!a.out_path.empty()) {
    r.results["reproducer_written"] = !s.failures.empty();
    if (!s.failures.empty()) {
      std::ofstream out(a.out_path, std::ios::binary);
      if (!out) throw MalformedInput(a.out_path + ": cannot write file");
      out << s.failures.front().reproducer.dump(2) << "\n";
    }
  }
  r.checks = {{"all instances pass", s.failed == 0}};
  return r;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("SMITH_TATE_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw MalformedInput(std::string("SMITH_TATE_SEED: not an integer: ") + env);
  return v;
}

void print_error(std::ostream& out, std::ostream& err, bool json, const std::string& command,
                 const std::string& kind, const std::string& message) {
  err << "error: " << kind << ": " << message << "\n";
  if (json) {
    Json j;
    j["command"] = command;
    j["error"] = {{"kind", kind}, {"message", message}};
    j["pass"] = false;
    out << j.dump(2) << "\n";
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Args a;
  bool json_requested = std::find(args.begin(), args.end(), "--json") != args.end();
  const std::string command = args.empty() ? "" : args.front();

  CLI::App app{"Exact Smith-theory computations over F_p", "smith_tate"};
  app.require_subcommand(1);
  try {
    a.seed = default_seed();
  } catch (const Error& e) {
    print_error(out, err, json_requested, command, error_kind(e), e.what());
    return 2;
  }

  auto common = [&](CLI::App* sub) { sub->add_flag("--json", a.json, "JSON report on stdout"); };
  auto with_input = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("--input", a.input, what)->required();
    common(sub);
  };

  with_input(app.add_subcommand("tate", "Tate cohomology dims of a complex"), "complex JSON");
  auto* gc = app.add_subcommand("group-cohomology", "H^k(Z/pZ; V) per degree");
  with_input(gc, "complex JSON");
  gc->add_option("--max-degree", a.max_degree, "highest degree");
  auto* qf = app.add_subcommand("quasi-frobenius", "the quasi-Frobenius map and its certificates");
  with_input(qf, "complex JSON");
  qf->add_option("--certificates", a.certificates, "additivity certificates to draw");
  qf->add_option("--seed", a.seed, "seed for the certificates");
  with_input(app.add_subcommand("decompose", "Jordan type of sigma"), "complex JSON (sigma is used)");
  auto* sc = app.add_subcommand("smith-check", "the Smith inequality chain");
  sc->add_option("--hf-dim", a.hf_dim, "dim HF(phi)")->required();
  sc->add_option("--sigma", a.sigma, "complex JSON carrying sigma on HF(phi^p)")->required();
  common(sc);
  auto* sp = app.add_subcommand("spectral", "action or algebraic spectral sequence");
  sp->add_option("mode", a.mode, "action | algebraic")->required()->check(CLI::IsMember({"action", "algebraic"}));
  with_input(sp, "complex JSON (action) or model JSON (algebraic)");
  sp->add_flag("--non-strict", a.non_strict, "allow d to preserve action");
  sp->add_option("--max-degree", a.max_degree, "highest E_2 degree");
  auto* bc = app.add_subcommand("barcode", "barcode of a filtered complex");
  with_input(bc, "complex JSON");
  bc->add_option("--window", a.windows, "lo:hi, either side empty for infinity");
  auto* bs = app.add_subcommand("barcode-smith", "barcode Smith inequalities");
  bs->add_option("--b1", a.b1, "barcode of phi")->required();
  bs->add_option("--bp", a.bp, "barcode of phi^p")->required();
  common(bs);
  with_input(app.add_subcommand("torsion", "torsion witness window of a barcode"), "barcode JSON");
  auto* mc = app.add_subcommand("morse-constants", "Wilson, Euler and resolution constants");
  mc->add_option("-p", a.p, "prime")->required();
  mc->add_option("-n", a.n, "exponent n");
  mc->add_option("--length", a.length, "resolution length");
  mc->add_option("--levels", a.levels, "critical point levels");
  common(mc);
  auto* fz = app.add_subcommand("fuzz", "randomized property checks");
  fz->add_option("--op", a.op, "property name");
  fz->add_option("--seed", a.seed, "run seed (default SMITH_TATE_SEED or 0)");
  fz->add_option("--count", a.count, "instances");
  fz->add_option("-p", a.p, "fix the prime");
  fz->add_option("--max-size", a.max_size, "generator bound");
  fz->add_option("--max-bars", a.max_bars, "bar bound");
  fz->add_option("--replay", a.replay, "reproducer JSON to run again");
  fz->add_option("--out", a.out_path, "write the first reproducer here");
  fz->add_flag("--list", a.list, "list properties");
  common(fz);

  if (args.empty()) {
    err << app.help();
    print_error(out, err, false, "", "UnknownCommand", "no command given");
    return 2;
  }
  if (command != "-h" && command != "--help" &&
      std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
    print_error(out, err, json_requested, command, "UnknownCommand", "unknown command \"" + command + "\"");
    return 2;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(out, err, json_requested, command, "MalformedInput", std::string("usage: ") + e.what());
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Report r;
  try {
    if (command == "tate") r = cmd_tate(a);
    else if (command == "group-cohomology") r = cmd_group_cohomology(a);
    else if (command == "quasi-frobenius") r = cmd_quasi_frobenius(a);
    else if (command == "decompose") r = cmd_decompose(a);
    else if (command == "smith-check") r = cmd_smith_check(a);
    else if (command == "spectral") r = cmd_spectral(a);
    else if (command == "barcode") r = cmd_barcode(a);
    else if (command == "barcode-smith") r = cmd_barcode_smith(a);
    else if (command == "torsion") r = cmd_torsion(a);
    else if (command == "morse-constants") r = cmd_morse(a);
    else r = cmd_fuzz(a);
  } catch (const Error& e) {
    print_error(out, err, a.json, command, error_kind(e), e.what());
    return 2;
  }
  r.command = command == "spectral" ? "spectral " + a.mode : command;
  r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out << (a.json ? r.to_json().dump(2) + "\n" : r.to_table());
  return r.pass() ? 0 : 1;
}

}  // namespace smith::cli
