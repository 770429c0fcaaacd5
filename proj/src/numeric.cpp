#include "hk/numeric.hpp"

#include <charconv>
#include <stdexcept>

namespace hk {

std::string to_string(NumericMode mode) {
  return mode == NumericMode::exact ? "exact" : "float";
}

NumericMode parse_numeric_mode(std::string_view text) {
  if (text == "exact") return NumericMode::exact;
  if (text == "float") return NumericMode::floating;
  throw std::invalid_argument("unknown numeric policy '" + std::string(text) +
                              "' (expected exact|float)");
}

void NumericPolicy::validate() const {
  if (!(fixed_point_tol >= 0.0) || !(cluster_tol >= 0.0) || !(row_sum_tol >= 0.0)) {
    throw std::invalid_argument("numeric tolerances must be nonnegative");
  }
  if (mode == NumericMode::exact &&
      (fixed_point_tol != 0.0 || cluster_tol != 0.0 || row_sum_tol != 0.0)) {
    throw std::invalid_argument("exact mode requires zero tolerances");
  }
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("malformed number '" + std::string(text) + "'");
}

using Integer = boost::multiprecision::mpz_int;

// mpz treats a leading 0 as an octal prefix.
Integer decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer(std::string(digits));
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) bad_number(whole);
  Integer value = decimal_integer(s);
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view raw) {
  const std::string_view text = strip(raw);
  if (text.empty()) bad_number(raw);

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(text.substr(0, slash), raw);
    const Integer den = parse_integer(text.substr(slash + 1), raw);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(raw) + "'");
    return Rational(num, den);
  }

  std::string_view s = text;
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    const auto* first = exp_text.data();
    const auto* last = first + exp_text.size();
    const auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last || exp_text.empty()) bad_number(raw);
    s = s.substr(0, e);
  }

  std::string digits;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = s.substr(0, dot);
    const std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad_number(raw);
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      bad_number(raw);
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) bad_number(raw);
    digits = std::string(s);
  }

  Integer mantissa = decimal_integer(digits);
  if (negative) mantissa = -mantissa;
  if (exponent > 100000 || exponent < -100000) bad_number(raw);
  const Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
}

double parse_double(std::string_view raw) {
  const std::string_view text = strip(raw);
  if (text.empty()) bad_number(raw);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const double num = parse_double(text.substr(0, slash));
    const double den = parse_double(text.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in '" + std::string(raw) + "'");
    return num / den;
  }
  std::string_view s = text;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    bad_number(raw);
  }
  return value;
}

std::string format_scalar(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_scalar(const Rational& value) { return value.str(); }

Literal::Literal(std::string text) : value_(std::move(text)) {
  // Validate eagerly against the stricter (exact) grammar.
  (void)parse_rational(std::get<std::string>(value_));
}

std::string Literal::text() const {
  if (const auto* d = std::get_if<double>(&value_)) return format_scalar(*d);
  return std::get<std::string>(value_);
}

}  // namespace hk
