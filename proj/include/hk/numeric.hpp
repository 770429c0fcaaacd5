#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace hk {

/// Arbitrary-precision rational backed by GMP. Expression templates are
/// disabled so that Eigen sees a plain value type.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class Scalar>
inline constexpr bool is_exact_v = false;
template <>
inline constexpr bool is_exact_v<Rational> = true;

enum class NumericMode { exact, floating };

std::string to_string(NumericMode mode);
NumericMode parse_numeric_mode(std::string_view text);

/// Arithmetic backend plus the tolerances used by fixed-point detection,
/// equality grouping and row-sum validation. Exact mode carries zero
/// tolerances.
struct NumericPolicy {
  NumericMode mode = NumericMode::floating;
  double fixed_point_tol = 1e-12;
  double cluster_tol = 1e-9;
  double row_sum_tol = 1e-12;

  static NumericPolicy exact() { return {NumericMode::exact, 0.0, 0.0, 0.0}; }
  static NumericPolicy floating() { return {}; }
  static NumericPolicy for_mode(NumericMode mode) {
    return mode == NumericMode::exact ? exact() : floating();
  }

  /// Throws std::invalid_argument on negative tolerances or nonzero
  /// tolerances in exact mode.
  void validate() const;

  bool operator==(const NumericPolicy&) const = default;
};

template <class Scalar>
NumericPolicy default_policy() {
  return is_exact_v<Scalar> ? NumericPolicy::exact() : NumericPolicy::floating();
}

template <class Scalar>
constexpr NumericMode mode_of() {
  return is_exact_v<Scalar> ? NumericMode::exact : NumericMode::floating;
}

/// Tolerance as a scalar. Exact mode always yields zero.
template <class Scalar>
Scalar tolerance(double tol) {
  if constexpr (is_exact_v<Scalar>) {
    return Scalar(0);
  } else {
    return Scalar(tol);
  }
}

Rational parse_rational(std::string_view text);
double parse_double(std::string_view text);

template <class Scalar>
Scalar parse_scalar(std::string_view text) {
  if constexpr (is_exact_v<Scalar>) {
    return parse_rational(text);
  } else {
    return parse_double(text);
  }
}

/// Shortest round-trip text for doubles; "p/q" or "p" for rationals.
std::string format_scalar(double value);
std::string format_scalar(const Rational& value);

inline double to_double(double value) { return value; }
inline double to_double(const Rational& value) { return value.convert_to<double>(); }

template <class Scalar>
bool is_finite(const Scalar& value) {
  if constexpr (is_exact_v<Scalar>) {
    return true;
  } else {
    return std::isfinite(value);
  }
}

/// A real number as it entered the program: either the decimal/"p/q" text
/// the user typed, or a double drawn from the generator. Text is re-parsed
/// per backend so that "0.1" becomes 1/10 in exact mode and the nearest
/// double in float mode; a double is taken at its exact binary value.
class Literal {
 public:
  Literal() : value_(0.0) {}
  explicit Literal(std::string text);
  explicit Literal(double value) : value_(value) {}

  template <class Scalar>
  Scalar as() const {
    if (const auto* d = std::get_if<double>(&value_)) {
      return Scalar(*d);
    }
    return parse_scalar<Scalar>(std::get<std::string>(value_));
  }

  bool is_text() const { return std::holds_alternative<std::string>(value_); }
  /// The original text, or the shortest round-trip rendering of the double.
  std::string text() const;

  bool operator==(const Literal&) const = default;

 private:
  std::variant<double, std::string> value_;
};

}  // namespace hk
