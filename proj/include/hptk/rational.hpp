#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace hptk {

// Exact rational scalar. cpp_rational keeps lowest terms with positive
// denominator as a class invariant, so every stored coefficient is canonical.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) { return r.str(); }

// Strict canonical coefficient syntax: "p" when the denominator is 1,
// otherwise "p/q" in lowest terms with q >= 2. Anything else is rejected.
std::optional<Rational> parse_rational_canonical(const std::string& text);

} // namespace hptk
