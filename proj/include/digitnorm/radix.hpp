#pragma once

#include <cstdint>
#include <string>

#include "digitnorm/hp.hpp"

namespace digitnorm {

// A number rendered in a radix: integer digits, a radix point, and exactly
// length() fractional digits. Letter digits are upper case.
struct DigitString {
    int base = 10;
    std::string integer_part;  // "0" when the value is < 1
    std::string fractional;
    int64_t length() const { return static_cast<int64_t>(fractional.size()); }
};

int digit_value(char c);      // -1 when not a digit in any base <= 36
char digit_char(int value);   // upper case

// First n_digits fractional digits of x >= 0 in `base`, truncated. If the
// residual after the last digit falls within 2^-(slack/2) of a digit
// boundary (slack = spare bits beyond what the digits consume), the digits
// cannot be certified and InsufficientPrecisionError is thrown; the caller
// recomputes x with more bits. A residual of exactly zero is an exact value
// and is emitted.
DigitString emit_digits(const HPNumber& x, int base, int64_t n_digits);

// Value of the digit string, truncated toward zero a little below the digit
// granularity: 0 <= true - result < base^-length for strings produced by
// emit_digits.
HPNumber digits_to_value(const DigitString& d);

// First n_digits of the same value in target_base. The source digits are
// taken at face value (exact); when the exact residual after the last target
// digit sits within 2^-16 of a digit boundary the unseen source tail could
// flip an emitted digit, and InsufficientPrecisionError ("insufficient
// source digits") is thrown. Agreement with direct emission from the
// underlying real is guaranteed by the usual margin
//   source length >= ceil(n_digits * log(target)/log(source)) + 8.
DigitString convert_base(const DigitString& d, int target_base,
                         int64_t n_digits);

namespace detail {

// Digit-block integer <-> digit text in a given base. The fast path splits
// on precomputed powers base^(2^i); the plain path is the quadratic
// repeated-multiply/Horner loop and doubles as the oracle. Blocks below
// kFastPathDigits take the plain path.
inline constexpr int64_t kFastPathDigits = 10000;

std::string block_to_digits_fast(const mpz_class& block, int64_t n_digits, int base);
std::string block_to_digits_slow(const mpz_class& block, int64_t n_digits, int base);
mpz_class digits_to_block_fast(const std::string& digits, int base);
mpz_class digits_to_block_slow(const std::string& digits, int base);

std::string integer_to_digits(const mpz_class& value, int base);
mpz_class pow_int(int base, int64_t e);

}  // namespace detail

}  // namespace digitnorm
