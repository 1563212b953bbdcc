#pragma once

// Exact rational values for configurations written as "p/q" or decimal
// strings, used wherever an exact-arithmetic mode exists.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace iflab {

using Rational = boost::multiprecision::cpp_rational;

// Accepts "p", "p/q", and decimal literals with an optional exponent
// ("0.3", "-1.25e-2"). Returns nullopt when the text is not one of those.
std::optional<Rational> parse_rational(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

// Exact parameters of one piecewise-linear map (same layout as
// PiecewiseLinearMap) and of a whole system.
struct ExactMap {
    std::vector<Rational> breakpoints;
    std::vector<Rational> slopes;
    Rational tau;
};

using ExactSystem = std::vector<ExactMap>;

}  // namespace iflab
