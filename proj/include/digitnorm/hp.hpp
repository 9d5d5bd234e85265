#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>

namespace digitnorm {

/*  HPNumber is an arbitrary-precision fixed-point real:
 *
 *      value = scaled * 2^(-scale_bits)
 *
 *  where `scaled` is a signed arbitrary-precision integer and `scale_bits`
 *  counts binary fractional bits (always >= 0). The sign lives inside the
 *  integer; sign() and magnitude() expose the (sign, natural) view. A zero
 *  magnitude always has sign 0.
 *
 *  Values are immutable after construction and safe to share across threads.
 *  Precision policy: callers state how many fractional bits they want, the
 *  kernels work at prec + guard_bits(prec) internally, and every public
 *  boundary truncates toward zero.
 */
class HPNumber {
public:
    HPNumber() : scaled_(0), scale_bits_(0) {}
    explicit HPNumber(long value) : scaled_(value), scale_bits_(0) {}

    static HPNumber from_integer(mpz_class value);
    // value = scaled * 2^(-scale_bits); negative scale_bits is normalized away.
    static HPNumber from_scaled(mpz_class scaled, int64_t scale_bits);
    // num/den truncated toward zero at prec_bits fractional bits.
    static HPNumber from_ratio(const mpz_class& num, const mpz_class& den,
                               int64_t prec_bits);

    int sign() const { return mpz_sgn(scaled_.get_mpz_t()); }
    mpz_class magnitude() const { return abs(scaled_); }
    int64_t scale_bits() const { return scale_bits_; }
    const mpz_class& scaled() const { return scaled_; }

    bool is_zero() const { return sign() == 0; }

    // Truncation toward zero when new_scale < scale_bits; exact otherwise.
    HPNumber truncated(int64_t new_scale) const;
    HPNumber abs_value() const;
    HPNumber negated() const;

    // floor(value), exact.
    mpz_class floor_integer() const;
    // value - floor(value) as a scaled integer at scale_bits(). Requires >= 0.
    mpz_class fractional_scaled() const;

    // Nearest double; loses precision, intended for seeds and diagnostics.
    double to_double() const;

    // floor(log2(|value|)); requires a nonzero value.
    int64_t exponent2() const;

    std::strong_ordering operator<=>(const HPNumber& rhs) const;
    bool operator==(const HPNumber& rhs) const;

private:
    mpz_class scaled_;
    int64_t scale_bits_;
};

// Exact arithmetic (result scale = max of the operand scales).
HPNumber add(const HPNumber& a, const HPNumber& b);
HPNumber sub(const HPNumber& a, const HPNumber& b);
// Exact multiply by a machine integer.
HPNumber mul_small(const HPNumber& a, long v);
// Exact multiply by 2^e (e may be negative only if no set bits are dropped;
// otherwise truncates toward zero).
HPNumber mul_pow2(const HPNumber& a, int64_t e);

// Truncating arithmetic: the result carries exactly prec_bits fractional bits.
HPNumber mul(const HPNumber& a, const HPNumber& b, int64_t prec_bits);
HPNumber div(const HPNumber& a, const HPNumber& b, int64_t prec_bits);

// Guard-bit policy shared by every kernel: 32 + ceil(log2(prec_bits)).
int64_t guard_bits(int64_t prec_bits);

// floor(sqrt(n)) by Newton's method with a hardware-float seed on the top
// bits and precision doubling. Throws std::domain_error for n < 0.
mpz_class isqrt_floor(const mpz_class& n);

// |result^2 - x| <= 2^(-prec_bits) * max(1, x). Domain error for x < 0.
HPNumber hp_sqrt(const HPNumber& x, int64_t prec_bits);

// Common limit of the arithmetic-geometric mean iteration; a, b > 0.
HPNumber hp_agm(const HPNumber& a, const HPNumber& b, int64_t prec_bits);

// pi via the Gauss-Legendre (Brent-Salamin) AGM scheme; prec_bits >= 8.
HPNumber hp_pi(int64_t prec_bits);

// Natural log via the AGM identity ln(s) ~ pi/(2 AGM(1, 4/s)) after scaling
// x by 2^m so that x*2^m exceeds 2^(w/2 + 32); x > 0.
HPNumber hp_ln(const HPNumber& x, int64_t prec_bits);

}  // namespace digitnorm
