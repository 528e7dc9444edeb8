#pragma once

// The smith_tate command line: subcommands over JSON instances, reports as a
// table or as JSON.

#include "smith/fuzz.hpp"
#include "smith/io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace smith::cli {

using io::Json;

struct Report {
  std::string command;
  std::string input_digest;  // sha256 of the inputs
  Json results = Json::object();
  std::vector<fuzz::Check> checks;
  double timing_ms = 0;

  bool pass() const;
  /// Keys in a fixed order; timing_ms comes last.
  Json to_json() const;
  std::string to_table() const;
};

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

/// args excludes the program name. Exit codes: 0 all checks pass, 1 a check
/// failed, 2 input or usage error (reported on err).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smith::cli
