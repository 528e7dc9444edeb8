#pragma once

// Exact action values. Actions are rationals so that window admissibility and
// bar membership are decidable.

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>

// Boost 1.74's mixed rational == integer recurses forever under C++20
// rewritten comparisons; exact non-template overloads take precedence.
namespace boost {
#define SMITH_RATIONAL_EQ(T)                                                      \
  inline bool operator==(const rational<std::int64_t>& a, T b) {                  \
    return a.denominator() == 1 && a.numerator() == static_cast<std::int64_t>(b); \
  }
SMITH_RATIONAL_EQ(int)
SMITH_RATIONAL_EQ(long)
SMITH_RATIONAL_EQ(long long)
SMITH_RATIONAL_EQ(unsigned)
SMITH_RATIONAL_EQ(unsigned long)
#undef SMITH_RATIONAL_EQ
}  // namespace boost

namespace smith {

using Rational = boost::rational<std::int64_t>;

/// Parses "n", "-n" or "n/d".
Rational parse_rational(const std::string& s);
/// "n" for integers, "n/d" otherwise.
std::string format_rational(const Rational& r);
double to_double(const Rational& r);

/// Open interval (lower, upper); a missing bound is infinite.
struct ActionWindow {
  std::optional<Rational> lower;
  std::optional<Rational> upper;

  static ActionWindow everything() { return {}; }

  bool contains(const Rational& a) const {
    return (!lower || *lower < a) && (!upper || a < *upper);
  }
  /// Same as contains, but also true at the endpoints.
  bool closure_contains(const Rational& a) const {
    return (!lower || *lower <= a) && (!upper || a <= *upper);
  }
  bool is_nonempty() const { return !lower || !upper || *lower < *upper; }
};

std::string format_window(const ActionWindow& w);

}  // namespace smith
