#ifndef DYNFAIR_RATIONAL_HPP
#define DYNFAIR_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace dynfair {

/// Exact arbitrary-precision rational; always kept in lowest terms with a
/// positive denominator by the backend.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline Int rat_num(const Rat& q) { return numerator(q); }
inline Int rat_den(const Rat& q) { return denominator(q); }

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);

/// Serializes as "p/q", with "/q" omitted when the denominator is 1.
std::string format_rat(const Rat& q);

/// Parses "p" or "p/q". Throws SchemaError on anything else (including q <= 0).
Rat parse_rat(std::string_view text);

/// Deterministic decimal rendering with the given number of significant
/// digits, for CSV output only; exact files always use format_rat.
std::string rat_to_decimal(const Rat& q, int significant_digits = 12);

}  // namespace dynfair

#endif  // DYNFAIR_RATIONAL_HPP
