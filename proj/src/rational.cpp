#include "iflab/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace iflab {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::optional<boost::multiprecision::cpp_int> parse_integer(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) return std::nullopt;
    // The string constructor reads a leading 0 as an octal prefix.
    while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
    const boost::multiprecision::cpp_int v{std::string(s)};
    return neg ? boost::multiprecision::cpp_int(-v) : v;
}

std::optional<Rational> parse_decimal(std::string_view s) {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        auto ex = parse_integer(s.substr(e + 1));
        if (!ex || boost::multiprecision::abs(*ex) > 4000) return std::nullopt;
        exponent = ex->convert_to<long>();
        s = s.substr(0, e);
    }
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto ip = s.substr(0, dot);
        auto fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
            (!fp.empty() && !all_digits(fp)))
            return std::nullopt;
        digits = std::string(ip) + std::string(fp);
        exponent -= static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) return std::nullopt;
        digits = std::string(s);
    }
    Rational q{*parse_integer(digits)};
    const boost::multiprecision::cpp_int ten = 10;
    const boost::multiprecision::cpp_int scale =
        boost::multiprecision::pow(ten, static_cast<unsigned>(std::abs(exponent)));
    q = exponent >= 0 ? Rational(q * scale) : Rational(q / scale);
    return neg ? Rational(-q) : q;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_integer(text.substr(0, slash));
        auto den = parse_integer(text.substr(slash + 1));
        if (!num || !den || *den == 0) return std::nullopt;
        return Rational(*num, *den);
    }
    return parse_decimal(text);
}

std::string to_string(const Rational& q) {
    if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace iflab
