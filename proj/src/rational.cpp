#include "mclass/rational.hpp"

#include <stdexcept>

namespace mclass {
namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text, bool canonical) {
  auto fail = [&](const char* why) {
    return std::invalid_argument("bad rational '" + std::string(text) + "': " + why);
  };
  bool negative = false;
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_text = body.substr(0, slash);
  const std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!is_digits(num_text)) throw fail("numerator is not a digit string");
  if (!is_digits(den_text)) throw fail("denominator is not a digit string");
  BigInt num{std::string(num_text)};
  BigInt den{std::string(den_text)};
  if (den == 0) throw fail("zero denominator");
  if (canonical && boost::multiprecision::gcd(num, den) != 1) {
    // 0 is canonical only as 0/1
    throw fail("not in lowest terms");
  }
  if (negative) num = -num;
  return Rational(num, den);
}

std::string format_rational(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace mclass
