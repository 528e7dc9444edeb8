#pragma once

// Registry of randomized properties. Instances are JSON so that any failure
// can be written out, minimized and replayed on its own.

#include "smith/generators.hpp"
#include "smith/io.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace smith::fuzz {

using io::Json;

/// 0 means the property's own default.
struct SizeBounds {
  Index max_size = 0;
  std::size_t max_bars = 0;
};

struct Check {
  std::string name;
  bool pass = false;
};

struct Outcome {
  bool applicable = true;  // false: the instance does not meet the hypotheses
  std::string note;
  std::vector<Check> checks;

  bool passed() const;
  std::vector<std::string> failed() const;
};

struct Property {
  std::string name;
  std::string description;
  std::vector<int> primes;  // drawn from when no p is given
  std::function<Json(gen::Rng&, Prime, const SizeBounds&)> generate;
  std::function<Outcome(const Json&)> check;
  /// Instances one step smaller (a generator, bar or window removed).
  std::function<std::vector<Json>(const Json&)> shrink;
  std::function<std::size_t(const Json&)> size;
  bool expected_to_fail = false;
};

const std::vector<Property>& registry();
/// Throws UnknownProperty.
const Property& find_property(const std::string& name);

/// Seed of instance `index` of a run; a splitmix64 mix of both.
std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index);

/// Instance `index` of a run, exactly as run() draws it.
Json draw_instance(const Property& prop, std::uint64_t seed, std::uint64_t index,
                   std::optional<int> p, const SizeBounds& bounds);

/// Greedy deletion: keeps any one-step shrink that still fails the same
/// checks, until none does.
Json minimize(const Property& prop, Json instance, const std::vector<std::string>& failed);

struct Options {
  std::string op;
  std::uint64_t seed = 0;
  std::size_t count = 100;
  std::optional<int> p;
  SizeBounds bounds;
  std::size_t max_reported = 5;  // failures carried in the summary
};

struct Failure {
  std::uint64_t index = 0;
  std::vector<std::string> failed_checks;
  std::size_t original_size = 0;
  std::size_t minimized_size = 0;
  Json reproducer;  // {op, seed, index, instance}
};

struct RunSummary {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::vector<Failure> failures;
};

RunSummary run(const Options& options);

/// Runs the check stored in a reproducer. Throws MalformedInput for a
/// malformed reproducer and UnknownProperty for an unknown op.
Outcome replay(const Json& reproducer);

Json outcome_to_json(const Outcome& o);

}  // namespace smith::fuzz
