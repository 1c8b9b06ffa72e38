#ifndef DYNFAIR_ENCLOSURE_HPP
#define DYNFAIR_ENCLOSURE_HPP

#include "dynfair/rational.hpp"

namespace dynfair {

/// Exact rational enclosure lo <= x <= hi of a real quantity.
struct RatInterval {
  Rat lo;
  Rat hi;
};

enum class Cmp { kTrue, kFalse, kInconclusive };

/// Enclosure of ln(x) for rational x > 0, computed with directed rounding at
/// the given mantissa precision (bits).
RatInterval log_enclosure(const Rat& x, unsigned prec);

/// Enclosure of ln(3), cached at 256 bits.
const RatInterval& ln3_enclosure();

/// Fixed rational under-approximation of 1/ln(3), relative error < 2^-120
/// (far below the 1e-30 budget the allocation formulas assume).
const Rat& ln3_inv_lo();

/// floor(2 i (3 + ln i)), with the precision escalated until the enclosure of
/// the argument contains no integer. Throws PrecisionError if 16384 bits do
/// not suffice (the argument is irrational for i >= 2, so this never fires).
long sigma_of(long i);

/// Enclosure of the proportionality bound 2 i (3 + ln i). Cached per i.
RatInterval dfd1_bound_enclosure(long i);

/// Certified comparison f <= scale * ln(3). Escalates the ln(3) precision
/// until decided; returns kInconclusive only past 16384 bits.
Cmp leq_scaled_ln3(const Rat& f, const Rat& scale);

/// Certified comparison f <= 2 i (3 + ln i).
Cmp leq_dfd1_bound(const Rat& f, long i);

}  // namespace dynfair

#endif  // DYNFAIR_ENCLOSURE_HPP
