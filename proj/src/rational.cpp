#include "sdnd/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace sdnd {

namespace {

BigInt pow10(long exponent) {
  BigInt result = 1;
  for (long i = 0; i < exponent; ++i) result *= 10;
  return result;
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  BigInt digits = 0;
  long scale = 0;
  bool any_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits = digits * 10 + (text[pos] - '0');
    any_digit = true;
    ++pos;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits = digits * 10 + (text[pos] - '0');
      ++scale;
      any_digit = true;
      ++pos;
    }
  }
  if (!any_digit) bad(whole);
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    bool any_exp = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      exponent = exponent * 10 + (text[pos] - '0');
      if (exponent > 4000) bad(whole);
      any_exp = true;
      ++pos;
    }
    if (!any_exp) bad(whole);
    if (exp_negative) exponent = -exponent;
  }
  if (pos != text.size()) bad(whole);

  long net = exponent - scale;
  Rational value = net >= 0 ? Rational(digits * pow10(net))
                            : Rational(digits, pow10(-net));
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text, text);
  Rational num = parse_decimal(text.substr(0, slash), text);
  Rational den = parse_decimal(text.substr(slash + 1), text);
  if (den == 0) bad(text);
  return num / den;
}

std::string to_decimal(const Rational& value, int fractional_digits) {
  BigInt scale = pow10(fractional_digits);
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  bool negative = num < 0;
  if (negative) num = -num;
  // round(|x| * 10^d) with ties away from zero
  BigInt scaled = (2 * num * scale + den) / (2 * den);
  std::string digits = scaled.str();
  if (static_cast<int>(digits.size()) <= fractional_digits) {
    digits.insert(0, fractional_digits + 1 - digits.size(), '0');
  }
  std::string out;
  if (negative && scaled != 0) out.push_back('-');
  out += digits.substr(0, digits.size() - fractional_digits);
  if (fractional_digits > 0) {
    out.push_back('.');
    out += digits.substr(digits.size() - fractional_digits);
  }
  return out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace sdnd
