#include "wmsf/rational.hpp"

#include <cmath>
#include <string>

#include "wmsf/error.hpp"

namespace wmsf {

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  if (i == s.size()) fail(ErrorCode::ParseError, "bad rational '" + std::string(whole) + "'");
  BigInt value = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      fail(ErrorCode::ParseError, "bad rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (s[i] - '0');
  }
  return negative ? BigInt(-value) : value;
}

BigInt pow10(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) fail(ErrorCode::ParseError, "empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(text.substr(0, slash), text);
    const BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  // Decimal with optional fraction and exponent.
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    const BigInt ex = parse_integer(text.substr(e + 1), text);
    if (ex > 4000 || ex < -4000) fail(ErrorCode::ParseError, "exponent out of range");
    exponent = ex.convert_to<long>();
  }
  std::string digits;
  unsigned frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    frac_digits = static_cast<unsigned>(mantissa.size() - dot - 1);
    if (digits.empty() || digits == "-" || digits == "+") {
      fail(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
    }
  } else {
    digits = std::string(mantissa);
  }
  Rational value(parse_integer(digits, text), pow10(frac_digits));
  if (exponent > 0) value *= Rational(pow10(static_cast<unsigned>(exponent)));
  if (exponent < 0) value /= Rational(pow10(static_cast<unsigned>(-exponent)));
  return value;
}

std::string format_rational(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) fail(ErrorCode::ParseError, "non-finite weight");
  int exp = 0;
  const double frac = std::frexp(x, &exp);
  // frac * 2^53 is an exact integer.
  const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
  exp -= 53;
  Rational r{BigInt(mant)};
  if (exp > 0) r *= pow(Rational(2), exp);
  if (exp < 0) r /= pow(Rational(2), -exp);
  return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

double log_of(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  auto log_int = [](const BigInt& v) {
    const auto bits = boost::multiprecision::msb(v);
    if (bits < 1000) return std::log(v.convert_to<double>());
    const auto shift = bits - 900;
    const BigInt top = v >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
  };
  return log_int(num) - log_int(den);
}

Rational pow(const Rational& base, std::int64_t exponent) {
  Rational result = 1;
  Rational b = exponent < 0 ? Rational(1) / base : base;
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-exponent)
                                 : static_cast<std::uint64_t>(exponent);
  while (e) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

}  // namespace wmsf
