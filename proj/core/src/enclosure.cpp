#include "dynfair/enclosure.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <map>
#include <mutex>

#include "dynfair/errors.hpp"

namespace dynfair {
namespace {

constexpr unsigned kMaxPrec = 16384;

/// Exact rational value of an mpfr number (mantissa * 2^exp).
Rat mpfr_to_rat(const mpfr_t x) {
  if (mpfr_zero_p(x)) return Rat(0);
  mpz_t mant;
  mpz_init(mant);
  mpfr_exp_t exp = mpfr_get_z_2exp(mant, x);
  Int m(mant);
  mpz_clear(mant);
  Rat r(m);
  if (exp >= 0) {
    r *= Rat(Int(1) << static_cast<unsigned>(exp));
  } else {
    r /= Rat(Int(1) << static_cast<unsigned>(-exp));
  }
  return r;
}

Rat log_directed(const Rat& x, unsigned prec, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_set_q(t, x.backend().data(), rnd);
  mpfr_log(t, t, rnd);
  Rat out = mpfr_to_rat(t);
  mpfr_clear(t);
  return out;
}

std::mutex cache_mutex;

}  // namespace

RatInterval log_enclosure(const Rat& x, unsigned prec) {
  if (x <= 0) throw ParameterError("log_enclosure requires x > 0");
  return {log_directed(x, prec, MPFR_RNDD), log_directed(x, prec, MPFR_RNDU)};
}

const RatInterval& ln3_enclosure() {
  static const RatInterval enc = log_enclosure(Rat(3), 256);
  return enc;
}

const Rat& ln3_inv_lo() {
  // 1 / upper(ln 3) <= 1 / ln 3, with 128-bit relative error.
  static const Rat v = Rat(1) / log_enclosure(Rat(3), 128).hi;
  return v;
}

namespace {

RatInterval dfd1_bound_at(long i, unsigned prec) {
  RatInterval ln_i = log_enclosure(Rat(i), prec);
  Rat two_i(2 * i);
  return {two_i * (Rat(3) + ln_i.lo), two_i * (Rat(3) + ln_i.hi)};
}

}  // namespace

long sigma_of(long i) {
  if (i < 2) throw ParameterError("sigma_of requires i >= 2");
  static std::map<long, long> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(i);
    if (it != cache.end()) return it->second;
  }
  for (unsigned prec = 128; prec <= kMaxPrec; prec *= 2) {
    RatInterval b = dfd1_bound_at(i, prec);
    Int flo = floor_rat(b.lo);
    Int fhi = floor_rat(b.hi);
    if (flo == fhi) {
      long out = static_cast<long>(flo);
      std::lock_guard<std::mutex> lock(cache_mutex);
      cache[i] = out;
      return out;
    }
  }
  throw PrecisionError("sigma_of: enclosure straddles an integer at max precision");
}

RatInterval dfd1_bound_enclosure(long i) {
  static std::map<long, RatInterval> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(i);
    if (it != cache.end()) return it->second;
  }
  RatInterval b = dfd1_bound_at(i, 128);
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(i, b);
  return b;
}

Cmp leq_scaled_ln3(const Rat& f, const Rat& scale) {
  {
    const RatInterval& enc = ln3_enclosure();
    if (f <= scale * enc.lo) return Cmp::kTrue;
    if (f > scale * enc.hi) return Cmp::kFalse;
  }
  for (unsigned prec = 512; prec <= kMaxPrec; prec *= 2) {
    RatInterval enc = log_enclosure(Rat(3), prec);
    if (f <= scale * enc.lo) return Cmp::kTrue;
    if (f > scale * enc.hi) return Cmp::kFalse;
  }
  return Cmp::kInconclusive;
}

Cmp leq_dfd1_bound(const Rat& f, long i) {
  {
    RatInterval b = dfd1_bound_enclosure(i);
    if (f <= b.lo) return Cmp::kTrue;
    if (f > b.hi) return Cmp::kFalse;
  }
  for (unsigned prec = 256; prec <= kMaxPrec; prec *= 2) {
    RatInterval b = dfd1_bound_at(i, prec);
    if (f <= b.lo) return Cmp::kTrue;
    if (f > b.hi) return Cmp::kFalse;
  }
  return Cmp::kInconclusive;
}

}  // namespace dynfair
