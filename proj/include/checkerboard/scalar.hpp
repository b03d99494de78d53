#ifndef CHECKERBOARD_SCALAR_HPP
#define CHECKERBOARD_SCALAR_HPP

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace checkerboard {

using Rational = mpq_class;

/// Default equality tolerance for floating mode.
inline constexpr double kDefaultTolerance = 1e-10;

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr std::string_view name = "rational";

    static Rational from_int(long v) { return Rational(v); }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
    static double to_double(const Rational& x) { return x.get_d(); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr std::string_view name = "float";

    // Relative pivot threshold used by elimination to declare singularity.
    static constexpr double singular_threshold = 1e-13;

    static double from_int(long v) { return static_cast<double>(v); }
    static bool is_zero(double x) { return x == 0.0; }
    static double magnitude(double x) { return std::abs(x); }
    static double to_double(double x) { return x; }
};

template <typename T>
concept Scalar = requires(const T& a, const T& b) {
    { ScalarTraits<T>::exact } -> std::convertible_to<bool>;
    { a + b };
    { a * b };
    { a - b };
    { a / b };
};

/// Parses "p/q", an integer, or a decimal literal ("-1.25", "3e-2") exactly.
Rational parse_rational(std::string_view text);

/// Parses the same literal forms as parse_rational, rounded to double.
double parse_double(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string format_rational(const Rational& x);

template <Scalar T>
T parse_scalar(std::string_view text);

template <>
inline Rational parse_scalar<Rational>(std::string_view text) { return parse_rational(text); }

template <>
inline double parse_scalar<double>(std::string_view text) { return parse_double(text); }

} // namespace checkerboard

#endif
