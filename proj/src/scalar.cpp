#include "checkerboard/scalar.hpp"

#include <cctype>
#include <string>

#include "checkerboard/errors.hpp"

namespace checkerboard {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw ParseError("not a number: '" + std::string(whole) + "'");
    mpz_class z(std::string(s), 10);
    return Rational(negative ? mpz_class(-z) : z);
}

// Decimal with optional fraction and exponent, converted exactly.
Rational parse_decimal(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        auto exp_text = s.substr(e + 1);
        Rational exp_value = parse_integer(exp_text, whole);
        if (exp_value.get_den() != 1 || !exp_value.get_num().fits_slong_p())
            throw ParseError("bad exponent in '" + std::string(whole) + "'");
        exponent = exp_value.get_num().get_si();
        s = s.substr(0, e);
    }
    std::string digits;
    long fraction_digits = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto int_part = s.substr(0, dot);
        auto frac_part = s.substr(dot + 1);
        if ((!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part)) || (int_part.empty() && frac_part.empty()))
            throw ParseError("not a number: '" + std::string(whole) + "'");
        digits = std::string(int_part) + std::string(frac_part);
        fraction_digits = static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(s)) throw ParseError("not a number: '" + std::string(whole) + "'");
        digits = std::string(s);
    }
    if (digits.empty()) digits = "0";
    Rational value(mpz_class(digits, 10));
    long shift = exponent - fraction_digits;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift < 0)
        value /= Rational(scale);
    else
        value *= Rational(scale);
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    auto s = trim(text);
    if (s.empty()) throw ParseError("empty scalar literal");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational num = parse_integer(trim(s.substr(0, slash)), text);
        Rational den = parse_integer(trim(s.substr(slash + 1)), text);
        if (sgn(den) == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        Rational r = num / den;
        r.canonicalize();
        return r;
    }
    if (s.find_first_of(".eE") != std::string_view::npos) return parse_decimal(s, text);
    return parse_integer(s, text);
}

double parse_double(std::string_view text) { return parse_rational(text).get_d(); }

std::string format_rational(const Rational& x) {
    Rational c(x);
    c.canonicalize();
    return c.get_str();
}

} // namespace checkerboard
