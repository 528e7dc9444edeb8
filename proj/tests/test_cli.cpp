#include "smith/cli.hpp"
#include "smith/fuzz.hpp"
#include "smith/io.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace smith;
using namespace smith::testing;
using io::Json;

namespace {

std::string fixture(const std::string& name) { return std::string(SMITH_FIXTURES) + "/" + name; }

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

Json run_json(std::vector<std::string> args, int expected_code = 0) {
  args.push_back("--json");
  const Run r = run(args);
  INFO(r.err);
  CHECK(r.code == expected_code);
  return Json::parse(r.out);
}

Json without_timing(Json j) {
  j.erase("timing_ms");
  return j;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("smith_test_" + name)).string();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("complex JSON round trip") {
  gen::Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5});
    auto c = gen::random_equivariant(rng, p);
    auto gens = c.generators();
    for (auto& g : gens) g.action = Rational(static_cast<std::int64_t>(gen::uniform_in(rng, -9, 9)), 4);
    c = EquivariantComplex(p, gens, c.d(), c.sigma());
    const Json j = io::complex_to_json(c);
    const auto back = io::complex_from_json(Json::parse(j.dump()));
    CHECK(back.generators().size() == c.generators().size());
    for (Index i = 0; i < c.size(); ++i) {
      CHECK(back.generator(i).id == c.generator(i).id);
      CHECK(back.generator(i).degree == c.generator(i).degree);
      CHECK(back.generator(i).action == c.generator(i).action);
    }
    CHECK(back.d() == c.d());
    CHECK(back.sigma() == c.sigma());
  }
}

TEST_CASE("model and barcode JSON round trip") {
  gen::Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Prime p = gen::pick_prime(rng, {2, 3, 5});
    const auto v = gen::random_equivariant(rng, p, 3);
    const auto m = conjugated_model(v, gen::random_twist(rng, v));
    const auto back = io::model_from_json(io::model_to_json(m));
    CHECK(back.i_max == m.i_max);
    CHECK(effective_terms(back) == effective_terms(m));

    const Barcode b = random_barcode(rng, p, 6);
    CHECK(io::barcode_from_json(io::barcode_to_json(b)) == b);
  }
}

TEST_CASE("malformed input names the place") {
  auto message = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const MalformedInput& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string text = "{\n  \"p\": 3,\n  \"generators\": [\n    {\"id\": \"x\" \"degree\": 0}\n  ]\n}\n";
  CHECK(message([&] { io::parse_json(text, "in.json"); }).rfind("in.json:4:23: ", 0) == 0);

  auto complex_error = [&](const std::string& s) {
    return message([&] { io::complex_from_json(Json::parse(s)); });
  };
  CHECK(complex_error(R"({"generators": []})") == "p: missing");
  CHECK(complex_error(R"({"p": 4, "generators": []})").rfind("p: ", 0) == 0);
  CHECK(complex_error(R"({"p": 3, "generators": [{"id": "x", "degree": "a"}]})") ==
        "generators[0].degree: expected an integer");
  CHECK(complex_error(R"({"p": 3, "generators": [{"id": "x", "degree": 0}, {"id": "x", "degree": 0}]})")
            .rfind("generators[1].id: duplicate", 0) == 0);
  CHECK(complex_error(R"({"p": 3, "generators": [{"id": "x", "degree": 0, "action": "1/0"}]})")
            .rfind("generators[0].action: ", 0) == 0);
  CHECK(complex_error(R"({"p": 3, "generators": [{"id": "x", "degree": 0}], "d": [["x", "y", 1]]})")
            .rfind("d[0][1]: unknown generator id", 0) == 0);
  CHECK(complex_error(R"({"p": 3, "generators": [{"id": "x", "degree": 0}], "d": [["x", "x"]]})") ==
        "d[0]: expected [row_id, col_id, value]");
  CHECK(message([&] { io::model_from_json(Json::parse(R"({"p": 3, "generators": []})")); }) ==
        "i_max: missing");
  CHECK(message([&] { io::barcode_from_json(Json::parse(R"({"p": 3, "bars": [{"start": "1", "end": "1"}]})")); }) ==
        "bars[0]: start must be below end");
  CHECK(message([&] { io::barcode_from_json(Json::parse(R"({"p": 3, "bars": [{"start": "0", "mult": 0}]})")); }) ==
        "bars[0].mult: must be positive");
}

TEST_CASE("documented command examples") {
  Json r = run_json({"tate", "--input", fixture("trivial_f3.json")});
  CHECK(r["results"]["tate"]["even"] == 1);
  CHECK(r["results"]["tate"]["odd"] == 1);

  r = run_json({"smith-check", "--hf-dim", "1", "--sigma", fixture("regular_f3.json")}, 1);
  CHECK(r["pass"] == false);
  CHECK(r["checks"][0]["pass"] == false);
  CHECK(r["checks"][3]["pass"] == true);  // classical bound still holds

  r = run_json({"fuzz", "--op", "quasi-frobenius", "--seed", "7", "--count", "100", "-p", "3"});
  CHECK(r["results"]["passed"] == 100);
  CHECK(r["results"]["failed"] == 0);
  CHECK(r["results"]["skipped"] == 0);
}

TEST_CASE("every command runs on the fixtures") {
  CHECK(run({"group-cohomology", "--input", fixture("regular_f3.json")}).code == 0);
  CHECK(run({"quasi-frobenius", "--input", fixture("filtered_f2.json")}).code == 0);
  Json r = run_json({"decompose", "--input", fixture("regular_f3.json")});
  CHECK(r["results"]["multiplicities"] == Json::array({0, 0, 1}));

  r = run_json({"spectral", "action", "--input", fixture("filtered_f2.json")});
  CHECK(r["command"] == "spectral action");
  CHECK(r["results"]["e_infinity"] == r["results"]["homology"]);
  r = run_json({"spectral", "algebraic", "--input", fixture("regular_model_f3.json")});
  CHECK(r["results"]["e_infinity"]["total"] == 0);
  CHECK(r["results"]["e2_by_degree"]["0"] == 1);

  r = run_json({"barcode", "--input", fixture("filtered_f2.json"), "--window", "1/4:3/2", "--window", ":3/4"});
  CHECK(r["results"]["barcode"]["bars"].size() == 2);
  CHECK(r["results"]["windows"][0]["from_barcode"] == 2);

  CHECK(run({"barcode-smith", "--b1", fixture("bars_f2.json"), "--bp", fixture("bars_f2_iterated.json")}).code == 0);
  r = run_json({"barcode-smith", "--b1", fixture("bars_f2.json"), "--bp", fixture("bars_f2_deleted.json")}, 1);
  CHECK(r["results"]["window_violation_count"] > 0);

  r = run_json({"torsion", "--input", fixture("bars_shifted_f3.json")});
  CHECK(r["results"]["witness"]["lower"] == "1/2");
  CHECK(r["results"]["witness_dim"] == 1);

  r = run_json({"morse-constants", "-p", "7", "-n", "3"});
  CHECK(r["results"]["wilson"] == 6);
  CHECK(r["results"]["euler"]["sign"] == 6);
  CHECK(r["results"]["euler"]["u_exponent"] == 18);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  Run r = run({"frobnicate"});
  CHECK(r.code == 2);
  CHECK(r.err.find("UnknownCommand") != std::string::npos);
  r = run({"fuzz", "--op", "no-such-property"});
  CHECK(r.code == 2);
  CHECK(r.err.find("UnknownProperty") != std::string::npos);
  CHECK(run({"tate"}).code == 2);
  CHECK(run({"tate", "--input", fixture("trivial_f3.json"), "--bogus"}).code == 2);
  CHECK(run({"tate", "--input", "/nonexistent/x.json"}).code == 2);
  CHECK(run({"spectral", "sideways", "--input", fixture("filtered_f2.json")}).code == 2);
  CHECK(run({"morse-constants", "-p", "8"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"tate", "--help"}).code == 0);

  const std::string bad = temp_path("bad.json");
  write(bad, "{\"p\": 3,\n \"generators\": [}\n");
  r = run({"tate", "--input", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find(bad + ":2:") != std::string::npos);

  // filtration violations are input errors for the action spectral sequence
  const std::string up = temp_path("up.json");
  write(up, R"({"p": 2, "generators": [{"id": "x", "degree": 0, "action": "0"},
               {"id": "y", "degree": 1, "action": "1"}], "d": [["y", "x", 1]]})");
  r = run({"spectral", "action", "--input", up, "--json"});
  CHECK(r.code == 2);
  CHECK(Json::parse(r.out)["error"]["kind"] == "FiltrationViolation");
  CHECK(run({"spectral", "action", "--input", up, "--non-strict"}).code == 2);
}

TEST_CASE("identical seeds give identical reports") {
  for (const auto& prop : fuzz::registry()) {
    const std::vector<std::string> args = {"fuzz", "--op", prop.name, "--seed", "11", "--count", "15"};
    const Json a = run_json(args, prop.expected_to_fail ? 1 : 0);
    const Json b = run_json(args, prop.expected_to_fail ? 1 : 0);
    INFO(prop.name);
    CHECK(without_timing(a).dump() == without_timing(b).dump());
    const Json other = run_json({"fuzz", "--op", prop.name, "--seed", "12", "--count", "15"},
                                prop.expected_to_fail ? 1 : 0);
    CHECK(other["input_digest"] != a["input_digest"]);
  }
  const Json t1 = run_json({"tate", "--input", fixture("regular_f3.json")});
  const Json t2 = run_json({"tate", "--input", fixture("regular_f3.json")});
  CHECK(without_timing(t1) == without_timing(t2));
}

TEST_CASE("SMITH_TATE_SEED is the default seed") {
  const std::vector<std::string> base = {"fuzz", "--op", "barcode-smith", "--count", "10"};
  auto with_seed = base;
  with_seed.insert(with_seed.end(), {"--seed", "77"});
  const Json explicit_seed = run_json(with_seed);
  ::setenv("SMITH_TATE_SEED", "77", 1);
  const Json from_env = run_json(base);
  ::setenv("SMITH_TATE_SEED", "not-a-number", 1);
  CHECK(run(base).code == 2);
  ::unsetenv("SMITH_TATE_SEED");
  CHECK(without_timing(explicit_seed) == without_timing(from_env));
}

TEST_CASE("failure reproducers re-fail when replayed") {
  const std::string out = temp_path("reproducer.json");
  std::filesystem::remove(out);
  const Json r = run_json({"fuzz", "--op", "planted-acyclic", "--seed", "5", "--count", "30", "--out", out}, 1);
  REQUIRE(r["results"]["failed"] > 0);
  CHECK(r["results"]["reproducer_written"] == true);
  for (const auto& f : r["results"]["failures"]) {
    CHECK(f["minimized_size"] <= f["original_size"]);
    CHECK(f["minimized_size"] == 1);
    const fuzz::Outcome o = fuzz::replay(f["reproducer"]);
    CHECK(o.applicable);
    CHECK_FALSE(o.passed());
    CHECK(o.failed() == f["failed_checks"].get<std::vector<std::string>>());
  }
  const Json replayed = run_json({"fuzz", "--replay", out}, 1);
  CHECK(replayed["pass"] == false);
  CHECK(replayed["results"]["op"] == "planted-acyclic");

  // a hand-made reproducer for a real property: a bar deleted from the scaled code
  const std::string adversarial = temp_path("adversarial.json");
  write(adversarial, R"({"op": "barcode-smith", "seed": 0, "index": 0, "instance": {"p": 2,
      "b1": {"p": 2, "bars": [{"start": "0", "end": "1", "mult": 1}]},
      "bp": {"p": 2, "bars": []}}})");
  const Json adv = run_json({"fuzz", "--replay", adversarial}, 1);
  CHECK(adv["pass"] == false);

  const std::string broken = temp_path("broken.json");
  write(broken, R"({"seed": 0})");
  CHECK(run({"fuzz", "--replay", broken}).code == 2);
}

TEST_CASE("minimization keeps the failure") {
  const auto& prop = fuzz::find_property("barcode-smith");
  // scaled barcode with one bar deleted, plus unrelated bars
  Json inst = {{"p", 3},
               {"b1", io::barcode_to_json(Barcode(Prime(3), {Bar{Rational(0), Rational(1), 1},
                                                             Bar{Rational(2), std::nullopt, 1}}))},
               {"bp", io::barcode_to_json(Barcode(Prime(3), {Bar{Rational(6), std::nullopt, 1},
                                                             Bar{Rational(-4), Rational(-3), 2}}))}};
  const fuzz::Outcome o = prop.check(inst);
  REQUIRE_FALSE(o.passed());
  const Json small = fuzz::minimize(prop, inst, o.failed());
  CHECK(prop.size(small) < prop.size(inst));
  CHECK(prop.check(small).failed() == o.failed());
}

TEST_CASE("instances depend only on seed and index") {
  const auto& prop = fuzz::find_property("spectral-convergence");
  const Json a = fuzz::draw_instance(prop, 9, 4, std::nullopt, {});
  const Json b = fuzz::draw_instance(prop, 9, 4, std::nullopt, {});
  CHECK(a == b);
  CHECK(fuzz::instance_seed(9, 4) != fuzz::instance_seed(9, 5));
  CHECK(fuzz::instance_seed(9, 4) != fuzz::instance_seed(10, 4));
}

TEST_CASE("sha256") {
  CHECK(cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
