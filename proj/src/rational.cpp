#include "tinopt/rational.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace tinopt {

namespace {

using Integer = boost::multiprecision::mpz_int;

Integer pow10(unsigned exponent) {
  Integer result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= 10;
  return result;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer decimal_integer(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string_view::npos ? Integer(0) : Integer(std::string(digits.substr(first)));
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("not a decimal or rational number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    Integer d = decimal_integer(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational value(decimal_integer(num), d);
    return negative ? Rational(-value) : value;
  }

  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) bad(text);
    long parsed = 0;
    std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), parsed);
    exponent = exp_negative ? -parsed : parsed;
    s = s.substr(0, e);
  }

  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) bad(text);
  if (!int_part.empty() && !all_digits(int_part)) bad(text);
  if (!frac_part.empty() && !all_digits(frac_part)) bad(text);

  std::string digits = std::string(int_part) + std::string(frac_part);
  exponent -= static_cast<long>(frac_part.size());
  Integer mantissa = decimal_integer(digits);  // boost would read a leading 0 as octal
  Rational value = exponent >= 0
                       ? Rational(mantissa * pow10(static_cast<unsigned>(exponent)))
                       : Rational(mantissa, pow10(static_cast<unsigned>(-exponent)));
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
  Integer num = numerator(value);
  Integer den = denominator(value);
  if (den == 1) return num.str();

  Integer rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return num.str() + "/" + den.str();

  unsigned places = std::max(twos, fives);
  Integer scaled = num * pow10(places) / den;
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buffer.data(), end);
}

}  // namespace tinopt
