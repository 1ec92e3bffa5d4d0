#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace fitpa {

// Exact arithmetic backbone. Every model parameter is stored as a rational so
// that degeneracy checks, enumeration and conservation identities can be exact;
// doubles are cached views, never the source of truth.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

// Doubles are dyadic rationals, so this conversion is exact.
inline Rat rat_from_double(double v) { return Rat(v); }

// Accepts "3", "-2.5", "9/10". Rejects anything else.
std::optional<Rat> parse_rational(std::string_view text);

// Canonical text form: integer if integral, otherwise "num/den".
std::string rat_to_string(const Rat& r);

BigInt binomial(int n, int k);

}  // namespace fitpa
