#include "smith/rational.hpp"

#include "smith/errors.hpp"

#include <charconv>

namespace smith {

namespace {
std::int64_t parse_int(std::string_view s, const std::string& whole) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw MalformedInput("not a rational number: \"" + whole + "\"");
  }
  return v;
}
}  // namespace

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s, s));
  const std::string_view view(s);
  const auto num = parse_int(view.substr(0, slash), s);
  const auto den = parse_int(view.substr(slash + 1), s);
  if (den == 0) throw MalformedInput("zero denominator in \"" + s + "\"");
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string format_window(const ActionWindow& w) {
  return "(" + (w.lower ? format_rational(*w.lower) : std::string("-inf")) + ", " +
         (w.upper ? format_rational(*w.upper) : std::string("inf")) + ")";
}

}  // namespace smith
