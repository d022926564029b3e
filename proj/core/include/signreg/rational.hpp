#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace signreg {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Exact rational, always kept in canonical form (reduced, positive denominator).
using Rational = mpq_class;

/// Raised for malformed input text or violated shape/range preconditions.
class MatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Builds num/den in canonical form. Throws MatrixError when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p" or "p/q" (optional leading sign on p). Rejects q == 0.
Rational parse_rational(std::string_view token);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

/// -1, 0 or +1.
inline int sign(const Rational& value) { return sgn(value); }

/// Exact power x^e for e >= 0.
Rational power(const Rational& base, unsigned exponent);

}  // namespace signreg
