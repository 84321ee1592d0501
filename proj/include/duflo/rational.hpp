#ifndef DUFLO_RATIONAL_HPP
#define DUFLO_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace duflo {

/// Exact rational scalar. GMP keeps every value canonical (lowest terms,
/// positive denominator) after each arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

Rational factorial(unsigned n);

/// Binomial coefficient with a rational upper argument.
Rational binomial(const Rational& top, unsigned k);

} // namespace duflo

#endif
