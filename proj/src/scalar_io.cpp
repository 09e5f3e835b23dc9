// Decimal conversion for DoubleDouble and QuadDouble.
//
// Conversion goes through a 512-bit binary float so that parsing rounds the
// decimal value once and printing sees the exact expansion sum.

#include <mpmat/double_double.hpp>
#include <mpmat/errors.hpp>
#include <mpmat/quad_double.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cctype>
#include <cfenv>
#include <cmath>
#include <ios>
#include <string>

namespace mpmat {

namespace {

using WideFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<512, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

// [+-]digits[.digits][(e|E)[+-]digits], also ".5" and "5." forms.
bool is_decimal_literal(std::string_view s)
{
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        ++i;
    }
    std::size_t mantissa_digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        ++i;
        ++mantissa_digits;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            ++i;
            ++mantissa_digits;
        }
    }
    if (mantissa_digits == 0) {
        return false;
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            ++i;
        }
        std::size_t exp_digits = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            ++i;
            ++exp_digits;
        }
        if (exp_digits == 0) {
            return false;
        }
    }
    return i == s.size();
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

WideFloat parse_wide(std::string_view text, const char* type_name)
{
    const std::string_view s = trim(text);
    if (!is_decimal_literal(s)) {
        throw DomainError(std::string("cannot parse ") + type_name + " from '" + std::string(text) +
                          "'");
    }
    return WideFloat(std::string(s));
}

// Nearest double to x, with ties resolved so the remainder is exact.
double peel(WideFloat& x)
{
    double d = static_cast<double>(x);
    if (std::isfinite(d) && d != 0.0) {
        // Guard against a conversion that truncates instead of rounding.
        const WideFloat r = x - WideFloat(d);
        const double up = std::nextafter(d, INFINITY);
        const double down = std::nextafter(d, -INFINITY);
        if (abs(x - WideFloat(up)) < abs(r)) {
            d = up;
        } else if (abs(x - WideFloat(down)) < abs(r)) {
            d = down;
        }
    }
    x -= WideFloat(d);
    return d;
}

std::string format_wide(const WideFloat& x, int digits)
{
    if (digits < 1) {
        digits = 1;
    }
    return x.str(digits - 1, std::ios_base::scientific);
}

std::string format_special(double lead)
{
    if (std::isnan(lead)) {
        return "nan";
    }
    return lead < 0 ? "-inf" : "inf";
}

}  // namespace

void ensure_round_to_nearest()
{
    if (std::fegetround() != FE_TONEAREST) {
        throw std::runtime_error("mpmat requires round-to-nearest floating-point mode");
    }
}

DoubleDouble DoubleDouble::from_string(std::string_view text)
{
    WideFloat x = parse_wide(text, "DoubleDouble");
    const double hi = peel(x);
    const double lo = peel(x);
    double e;
    const double s = eft::quick_two_sum(hi, lo, e);
    return from_parts(s, e);
}

std::string DoubleDouble::to_string(int digits) const
{
    if (!std::isfinite(hi_)) {
        return format_special(hi_);
    }
    return format_wide(WideFloat(hi_) + WideFloat(lo_), digits);
}

QuadDouble QuadDouble::from_string(std::string_view text)
{
    WideFloat x = parse_wide(text, "QuadDouble");
    const double c0 = peel(x);
    const double c1 = peel(x);
    const double c2 = peel(x);
    const double c3 = peel(x);
    const double c4 = peel(x);
    return renormalize(c0, c1, c2, c3, c4);
}

std::string QuadDouble::to_string(int digits) const
{
    if (!std::isfinite(c_[0])) {
        return format_special(c_[0]);
    }
    WideFloat x(c_[0]);
    for (std::size_t i = 1; i < 4; ++i) {
        x += WideFloat(c_[i]);
    }
    return format_wide(x, digits);
}

}  // namespace mpmat
