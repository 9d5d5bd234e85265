#include "digitnorm/radix.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "digitnorm/errors.hpp"

namespace digitnorm {

int digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
}

char digit_char(int value) {
    static const char* kDigits = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
    return kDigits[value];
}

namespace detail {

mpz_class pow_int(int base, int64_t e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(e));
    return p;
}

namespace {

// base^(2^i) for 2^i < n_digits
std::vector<mpz_class> power_table(int base, int64_t n_digits) {
    std::vector<mpz_class> pows;
    pows.push_back(mpz_class(base));
    while ((int64_t{1} << pows.size()) < n_digits)
        pows.push_back(pows.back() * pows.back());
    return pows;
}

void to_digits_rec(const mpz_class& block, int64_t n_digits,
                   const std::vector<mpz_class>& pows, std::string& out) {
    if (n_digits <= 32) {
        // small tail: plain divmod loop, least significant first
        std::string tmp(static_cast<size_t>(n_digits), '0');
        mpz_class v = block;
        unsigned long base = mpz_get_ui(pows[0].get_mpz_t());
        for (int64_t i = n_digits - 1; i >= 0; --i) {
            tmp[static_cast<size_t>(i)] =
                digit_char(static_cast<int>(mpz_tdiv_q_ui(
                    v.get_mpz_t(), v.get_mpz_t(), base)));
        }
        out += tmp;
        return;
    }
    int level = 0;
    while ((int64_t{2} << level) < n_digits) ++level;  // 2^level = biggest half
    int64_t lo_digits = int64_t{1} << level;
    mpz_class hi, lo;
    mpz_tdiv_qr(hi.get_mpz_t(), lo.get_mpz_t(), block.get_mpz_t(),
                pows[static_cast<size_t>(level)].get_mpz_t());
    to_digits_rec(hi, n_digits - lo_digits, pows, out);
    to_digits_rec(lo, lo_digits, pows, out);
}

mpz_class from_digits_rec(const char* digits, int64_t n,
                          const std::vector<mpz_class>& pows) {
    if (n <= 32) {
        mpz_class v = 0;
        unsigned long base = mpz_get_ui(pows[0].get_mpz_t());
        for (int64_t i = 0; i < n; ++i) {
            int d = digit_value(digits[i]);
            mpz_mul_ui(v.get_mpz_t(), v.get_mpz_t(), base);
            mpz_add_ui(v.get_mpz_t(), v.get_mpz_t(),
                       static_cast<unsigned long>(d));
        }
        return v;
    }
    int level = 0;
    while ((int64_t{2} << level) < n) ++level;
    int64_t lo_digits = int64_t{1} << level;
    mpz_class hi = from_digits_rec(digits, n - lo_digits, pows);
    mpz_class lo = from_digits_rec(digits + (n - lo_digits), lo_digits, pows);
    return hi * pows[static_cast<size_t>(level)] + lo;
}

}  // namespace

std::string block_to_digits_fast(const mpz_class& block, int64_t n_digits,
                                 int base) {
    std::string out;
    out.reserve(static_cast<size_t>(n_digits));
    to_digits_rec(block, n_digits, power_table(base, n_digits), out);
    return out;
}

std::string block_to_digits_slow(const mpz_class& block, int64_t n_digits,
                                 int base) {
    // repeated multiply of the fraction block/base^n by base
    std::string out;
    out.reserve(static_cast<size_t>(n_digits));
    mpz_class den = pow_int(base, n_digits);
    mpz_class rem = block;
    mpz_class d;
    for (int64_t i = 0; i < n_digits; ++i) {
        rem *= base;
        mpz_tdiv_qr(d.get_mpz_t(), rem.get_mpz_t(), rem.get_mpz_t(),
                    den.get_mpz_t());
        out += digit_char(static_cast<int>(d.get_ui()));
    }
    return out;
}

mpz_class digits_to_block_fast(const std::string& digits, int base) {
    if (digits.empty()) return 0;
    return from_digits_rec(digits.data(), static_cast<int64_t>(digits.size()),
                           power_table(base, static_cast<int64_t>(digits.size())));
}

mpz_class digits_to_block_slow(const std::string& digits, int base) {
    mpz_class v = 0;
    for (char c : digits) v = v * base + digit_value(c);
    return v;
}

std::string integer_to_digits(const mpz_class& value, int base) {
    if (mpz_sgn(value.get_mpz_t()) == 0) return "0";
    std::string out;
    mpz_class v = value;
    while (mpz_sgn(v.get_mpz_t()) != 0) {
        out += digit_char(static_cast<int>(mpz_tdiv_q_ui(
            v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(base))));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

mpz_class block_from_string(const std::string& digits, int base) {
    for (char c : digits) {
        int v = digit_value(c);
        if (v < 0 || v >= base)
            throw ParseError(std::string("invalid digit '") + c + "'");
    }
    return static_cast<int64_t>(digits.size()) >= detail::kFastPathDigits
               ? digits_to_block_fast(digits, base)
               : digits_to_block_slow(digits, base);
}

std::string block_to_string(const mpz_class& block, int64_t n_digits, int base) {
    return n_digits >= detail::kFastPathDigits
               ? block_to_digits_fast(block, n_digits, base)
               : block_to_digits_slow(block, n_digits, base);
}

}  // namespace

}  // namespace detail

DigitString emit_digits(const HPNumber& x, int base, int64_t n_digits) {
    if (base < 2 || base > 36) throw std::invalid_argument("base out of range");
    if (n_digits < 1) throw std::invalid_argument("n_digits must be positive");
    if (x.sign() < 0) throw std::domain_error("emit_digits requires x >= 0");

    mpz_class pow = detail::pow_int(base, n_digits);
    int64_t needed =
        static_cast<int64_t>(mpz_sizeinbase(pow.get_mpz_t(), 2));
    int64_t slack = x.scale_bits() - needed;
    if (slack < 8)
        throw InsufficientPrecisionError(
            "emit_digits: value carries too few bits for " +
            std::to_string(n_digits) + " digits");

    // digit block y and residual r: frac * base^n = y + r/2^scale
    mpz_class t = x.fractional_scaled() * pow;
    mpz_class y, r;
    mpz_tdiv_q_2exp(y.get_mpz_t(), t.get_mpz_t(),
                    static_cast<mp_bitcnt_t>(x.scale_bits()));
    mpz_tdiv_r_2exp(r.get_mpz_t(), t.get_mpz_t(),
                    static_cast<mp_bitcnt_t>(x.scale_bits()));

    if (mpz_sgn(r.get_mpz_t()) != 0) {
        // residual within 2^-(slack/2) of either digit boundary -> the digits
        // cannot be trusted; exactly zero is an exact dyadic and fine.
        int64_t tau = slack / 2;
        mpz_class danger = mpz_class(1) << static_cast<unsigned long>(
                               x.scale_bits() - tau);
        mpz_class upper = (mpz_class(1) << static_cast<unsigned long>(
                               x.scale_bits())) - r;
        if (r < danger || upper < danger)
            throw InsufficientPrecisionError(
                "emit_digits: residual too close to a digit boundary");
    }

    DigitString out;
    out.base = base;
    out.integer_part = detail::integer_to_digits(x.floor_integer(), base);
    out.fractional = detail::block_to_string(y, n_digits, base);
    return out;
}

HPNumber digits_to_value(const DigitString& d) {
    if (d.base < 2 || d.base > 36)
        throw ParseError("digit string base out of range");
    mpz_class ip = d.integer_part.empty()
                       ? mpz_class(0)
                       : detail::block_from_string(d.integer_part, d.base);
    mpz_class frac = detail::block_from_string(d.fractional, d.base);

    mpz_class pow = detail::pow_int(d.base, d.length());
    int64_t scale =
        static_cast<int64_t>(mpz_sizeinbase(pow.get_mpz_t(), 2)) + 64;
    // (ip * base^len + frac) / base^len to the nearest 2^-scale; exact
    // whenever the string's value is a dyadic rational.
    mpz_class num = (ip * pow + frac) << static_cast<unsigned long>(scale);
    mpz_class mag, rem;
    mpz_fdiv_qr(mag.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(),
                pow.get_mpz_t());
    if (2 * rem >= pow) ++mag;
    return HPNumber::from_scaled(std::move(mag), scale);
}

DigitString convert_base(const DigitString& d, int target_base,
                         int64_t n_digits) {
    if (target_base < 2 || target_base > 36)
        throw std::invalid_argument("base out of range");
    if (n_digits < 1) throw std::invalid_argument("n_digits must be positive");

    mpz_class src = detail::block_from_string(d.fractional, d.base);
    mpz_class src_pow = detail::pow_int(d.base, d.length());
    mpz_class tgt_pow = detail::pow_int(target_base, n_digits);

    // exact: frac * target^n = y + r / source^len
    mpz_class t = src * tgt_pow;
    mpz_class y, r;
    mpz_tdiv_qr(y.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(),
                src_pow.get_mpz_t());

    if (mpz_sgn(r.get_mpz_t()) != 0) {
        // Unseen source digits shift the value by up to source^-len; refuse
        // when the exact residual is within 2^-16 of a boundary.
        mpz_class lhs = r << 16;
        mpz_class rhs = (src_pow - r) << 16;
        if (lhs < src_pow || rhs < src_pow)
            throw InsufficientPrecisionError("insufficient source digits");
    }

    DigitString out;
    out.base = target_base;
    mpz_class ip = d.integer_part.empty()
                       ? mpz_class(0)
                       : detail::block_from_string(d.integer_part, d.base);
    out.integer_part = detail::integer_to_digits(ip, target_base);
    out.fractional = detail::block_to_string(y, n_digits, target_base);
    return out;
}

}  // namespace digitnorm
