#include "bes/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace bes {

std::string to_string(const Rational& q)
{
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view s, bool allow_sign)
{
    std::string_view digits = s;
    bool neg = false;
    if (allow_sign && !digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        neg = digits.front() == '-';
        digits.remove_prefix(1);
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw std::invalid_argument("not a rational number: '" + std::string(s) + "'");
    BigInt v{std::string(digits)};
    return neg ? BigInt(-v) : v;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const BigInt num = parse_integer(text.substr(0, slash), true);
        const BigInt den = parse_integer(text.substr(slash + 1), false);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto int_part = text.substr(0, dot);
        const auto frac_part = text.substr(dot + 1);
        bool neg = false;
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
            neg = int_part.front() == '-';
            int_part.remove_prefix(1);
        }
        const BigInt whole = int_part.empty() ? BigInt(0) : parse_integer(int_part, false);
        const BigInt frac = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, false);
        if (int_part.empty() && frac_part.empty())
            throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        Rational v = Rational(whole) + Rational(frac, scale);
        return neg ? Rational(-v) : v;
    }
    return Rational(parse_integer(text, true));
}

} // namespace bes
