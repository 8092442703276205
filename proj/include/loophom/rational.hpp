#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace loophom {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p/q" or "p". Rejects anything not already in lowest terms with q > 0.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& q);

inline int parity_sign(long long exponent) { return (exponent & 1) ? -1 : 1; }

}  // namespace loophom
