#include "digitnorm/hp.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace digitnorm {

namespace {

int64_t bit_length(const mpz_class& n) {
    if (mpz_sgn(n.get_mpz_t()) == 0) return 0;
    return static_cast<int64_t>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

// Truncate a scaled integer toward zero by `drop` bits.
mpz_class shift_trunc(const mpz_class& v, int64_t drop) {
    if (drop <= 0) return v << static_cast<unsigned long>(-drop);
    mpz_class r;
    mpz_tdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(),
                    static_cast<mp_bitcnt_t>(drop));
    return r;
}

}  // namespace

HPNumber HPNumber::from_integer(mpz_class value) {
    return from_scaled(std::move(value), 0);
}

HPNumber HPNumber::from_scaled(mpz_class scaled, int64_t scale_bits) {
    HPNumber x;
    if (scale_bits < 0) {
        scaled <<= static_cast<unsigned long>(-scale_bits);
        scale_bits = 0;
    }
    x.scaled_ = std::move(scaled);
    x.scale_bits_ = scale_bits;
    return x;
}

HPNumber HPNumber::from_ratio(const mpz_class& num, const mpz_class& den,
                              int64_t prec_bits) {
    if (mpz_sgn(den.get_mpz_t()) == 0)
        throw std::domain_error("from_ratio: zero denominator");
    if (prec_bits < 0) throw std::invalid_argument("from_ratio: negative precision");
    mpz_class n = num << static_cast<unsigned long>(prec_bits);
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), n.get_mpz_t(), den.get_mpz_t());
    return from_scaled(std::move(q), prec_bits);
}

HPNumber HPNumber::truncated(int64_t new_scale) const {
    if (new_scale < 0) throw std::invalid_argument("truncated: negative scale");
    if (new_scale >= scale_bits_)
        return from_scaled(scaled_ << static_cast<unsigned long>(new_scale - scale_bits_),
                           new_scale);
    return from_scaled(shift_trunc(scaled_, scale_bits_ - new_scale), new_scale);
}

HPNumber HPNumber::abs_value() const {
    return from_scaled(abs(scaled_), scale_bits_);
}

HPNumber HPNumber::negated() const {
    return from_scaled(-scaled_, scale_bits_);
}

mpz_class HPNumber::floor_integer() const {
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), scaled_.get_mpz_t(),
                    static_cast<mp_bitcnt_t>(scale_bits_));
    return q;
}

mpz_class HPNumber::fractional_scaled() const {
    if (sign() < 0)
        throw std::domain_error("fractional_scaled: negative value");
    mpz_class r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), scaled_.get_mpz_t(),
                    static_cast<mp_bitcnt_t>(scale_bits_));
    return r;
}

double HPNumber::to_double() const {
    if (is_zero()) return 0.0;
    // mpz -> double keeps the top 53 bits; fold the scale into the exponent.
    signed long exp2 = 0;
    double m = mpz_get_d_2exp(&exp2, scaled_.get_mpz_t());
    return std::ldexp(m, static_cast<int>(exp2 - scale_bits_));
}

int64_t HPNumber::exponent2() const {
    if (is_zero()) throw std::domain_error("exponent2 of zero");
    return bit_length(scaled_) - 1 - scale_bits_;
}

std::strong_ordering HPNumber::operator<=>(const HPNumber& rhs) const {
    int64_t s = std::max(scale_bits_, rhs.scale_bits_);
    mpz_class a = scaled_ << static_cast<unsigned long>(s - scale_bits_);
    mpz_class b = rhs.scaled_ << static_cast<unsigned long>(s - rhs.scale_bits_);
    int c = cmp(a, b);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool HPNumber::operator==(const HPNumber& rhs) const {
    return (*this <=> rhs) == std::strong_ordering::equal;
}

HPNumber add(const HPNumber& a, const HPNumber& b) {
    int64_t s = std::max(a.scale_bits(), b.scale_bits());
    mpz_class av = a.scaled() << static_cast<unsigned long>(s - a.scale_bits());
    mpz_class bv = b.scaled() << static_cast<unsigned long>(s - b.scale_bits());
    return HPNumber::from_scaled(av + bv, s);
}

HPNumber sub(const HPNumber& a, const HPNumber& b) {
    return add(a, b.negated());
}

HPNumber mul_small(const HPNumber& a, long v) {
    return HPNumber::from_scaled(a.scaled() * v, a.scale_bits());
}

HPNumber mul_pow2(const HPNumber& a, int64_t e) {
    return HPNumber::from_scaled(a.scaled(), a.scale_bits() - e);
}

HPNumber mul(const HPNumber& a, const HPNumber& b, int64_t prec_bits) {
    mpz_class p = a.scaled() * b.scaled();
    int64_t s = a.scale_bits() + b.scale_bits();
    return HPNumber::from_scaled(shift_trunc(p, s - prec_bits), prec_bits);
}

HPNumber div(const HPNumber& a, const HPNumber& b, int64_t prec_bits) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    // result = a.scaled * 2^(prec + b.scale) / (b.scaled * 2^(a.scale))
    mpz_class num = a.scaled()
                    << static_cast<unsigned long>(prec_bits + b.scale_bits());
    mpz_class den = b.scaled() << static_cast<unsigned long>(a.scale_bits());
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return HPNumber::from_scaled(std::move(q), prec_bits);
}

int64_t guard_bits(int64_t prec_bits) {
    if (prec_bits < 1) throw std::invalid_argument("guard_bits: prec_bits < 1");
    int64_t lg = 0;
    while ((int64_t{1} << lg) < prec_bits) ++lg;
    return 32 + lg;
}

namespace {

// Exact floor sqrt for n < 2^54 (double sqrt plus integer fixup).
uint64_t isqrt_u64(uint64_t n) {
    auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

mpz_class isqrt_floor(const mpz_class& n) {
    int sg = mpz_sgn(n.get_mpz_t());
    if (sg < 0) throw std::domain_error("isqrt of negative value");
    if (sg == 0) return 0;

    int64_t bits = bit_length(n);
    if (bits <= 52) return mpz_class(isqrt_u64(n.get_ui()));

    // floor(sqrt(n)) has c+1 bits. The iteration runs over precision levels
    // d = c>>s; each Newton step at most doubles the trusted bit count, and
    // the invariant (a-1)^2 < (n >> 2(c-d)) < (a+1)^2 holds at every level.
    int64_t c = (bits - 1) / 2;
    int seed_s = 0;
    while ((c >> seed_s) > 25) ++seed_s;

    // Hardware seed: exact floor sqrt of the top bits of n.
    int64_t d = c >> seed_s;
    mpz_class top;
    mpz_tdiv_q_2exp(top.get_mpz_t(), n.get_mpz_t(),
                    static_cast<mp_bitcnt_t>(2 * (c - d)));
    mpz_class a(isqrt_u64(top.get_ui()));

    for (int s = seed_s - 1; s >= 0; --s) {
        int64_t e = d;
        d = c >> s;
        // a <- (a << (d-e-1)) + (n >> (2c - e - d + 1)) / a
        mpz_class shifted;
        mpz_tdiv_q_2exp(shifted.get_mpz_t(), n.get_mpz_t(),
                        static_cast<mp_bitcnt_t>(2 * c - e - d + 1));
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), shifted.get_mpz_t(), a.get_mpz_t());
        a = (a << static_cast<unsigned long>(d - e - 1)) + q;
    }

    if (a * a > n) --a;
    return a;
}

HPNumber hp_sqrt(const HPNumber& x, int64_t prec_bits) {
    if (prec_bits < 1) throw std::invalid_argument("hp_sqrt: prec_bits < 1");
    if (x.sign() < 0) throw std::domain_error("hp_sqrt of negative value");
    if (x.is_zero()) return HPNumber();

    int64_t out_scale = prec_bits + 8;
    // r = floor(sqrt(scaled * 2^(2*out_scale - scale)))
    mpz_class n = shift_trunc(x.scaled(), x.scale_bits() - 2 * out_scale);
    return HPNumber::from_scaled(isqrt_floor(n), out_scale);
}

HPNumber hp_agm(const HPNumber& a0, const HPNumber& b0, int64_t prec_bits) {
    if (prec_bits < 1) throw std::invalid_argument("hp_agm: prec_bits < 1");
    if (a0.sign() <= 0 || b0.sign() <= 0)
        throw std::domain_error("hp_agm requires positive operands");

    const int64_t g = guard_bits(prec_bits);
    // A tiny operand needs extra fractional bits to keep its relative
    // precision: the limit's relative error tracks the operands' relative
    // error, not their absolute one.
    int64_t drop = std::min({a0.exponent2(), b0.exponent2(), int64_t{0}});
    const int64_t w = prec_bits + 2 * g - drop;
    const HPNumber stop = HPNumber::from_scaled(1, prec_bits + g);

    HPNumber a = a0.truncated(w);
    HPNumber b = b0.truncated(w);
    // Iteration count is ~log2 of the initial exponent gap plus log2(w);
    // the cap only exists to turn a logic bug into an exception.
    for (int iter = 0; iter < 64 + 2 * static_cast<int>(std::log2(double(w)) + 64);
         ++iter) {
        if (sub(a, b).abs_value() <= stop)
            return mul_pow2(add(a, b), -1).truncated(prec_bits + g);
        HPNumber an = mul_pow2(add(a, b), -1).truncated(w);
        b = hp_sqrt(mul(a, b, 2 * w), w).truncated(w);
        a = an;
    }
    throw std::logic_error("hp_agm failed to converge");
}

namespace {

std::mutex cache_mutex;
std::map<int64_t, HPNumber>& pi_cache() {
    static std::map<int64_t, HPNumber> c;
    return c;
}
std::map<int64_t, HPNumber>& ln2_cache() {
    static std::map<int64_t, HPNumber> c;
    return c;
}

// ln(s) for s >= 2^(w/2 + 32), via pi / (2 AGM(1, 4/s)) at w working bits.
HPNumber ln_large(const HPNumber& s, int64_t w) {
    // 4/s is tiny; carry enough fractional bits for w relative bits.
    HPNumber inv = div(HPNumber(4), s, w + std::max<int64_t>(0, s.exponent2()));
    HPNumber a = hp_agm(HPNumber(1), inv, w);
    return div(hp_pi(w), mul_pow2(a, 1), w);
}

HPNumber ln2_at(int64_t w) {
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = ln2_cache().find(w);
        if (it != ln2_cache().end()) return it->second;
    }
    // ln 2 = ln(2^K) / K with 2^K comfortably inside ln_large's domain.
    int64_t k = w / 2 + 64;
    HPNumber big = HPNumber::from_scaled(1, -k);
    HPNumber value = div(ln_large(big, w), HPNumber(static_cast<long>(k)), w);
    std::lock_guard<std::mutex> lock(cache_mutex);
    ln2_cache().emplace(w, value);
    return value;
}

}  // namespace

HPNumber hp_pi(int64_t prec_bits) {
    if (prec_bits < 8) throw std::invalid_argument("hp_pi: prec_bits < 8");
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = pi_cache().find(prec_bits);
        if (it != pi_cache().end()) return it->second;
    }

    const int64_t g = guard_bits(prec_bits);
    const int64_t w = prec_bits + 2 * g;

    // Gauss-Legendre: a=1, b=1/sqrt(2), t=1/4, p=1;
    //   a' = (a+b)/2, b' = sqrt(ab), t' = t - p (a - a')^2, p' = 2p,
    //   pi ~ (a+b)^2 / (4t). The error is dominated by (a-b)^2.
    HPNumber a = HPNumber(1).truncated(w);
    HPNumber b = hp_sqrt(HPNumber::from_scaled(1, 1), w).truncated(w);
    HPNumber t = HPNumber::from_scaled(1, 2);
    int64_t pow = 0;
    const HPNumber stop = HPNumber::from_scaled(1, (w + 16) / 2);

    while (sub(a, b).abs_value() > stop) {
        HPNumber an = mul_pow2(add(a, b), -1).truncated(w);
        HPNumber c = sub(a, an);
        t = sub(t, mul_pow2(mul(c, c, w + pow + 8), pow)).truncated(w + 8);
        b = hp_sqrt(mul(a, b, 2 * w), w).truncated(w);
        a = an;
        ++pow;
    }

    HPNumber s = add(a, b);
    HPNumber value = div(mul(s, s, w), mul_pow2(t, 2), w).truncated(prec_bits + g);
    std::lock_guard<std::mutex> lock(cache_mutex);
    pi_cache().emplace(prec_bits, value);
    return value;
}

HPNumber hp_ln(const HPNumber& x, int64_t prec_bits) {
    if (prec_bits < 1) throw std::invalid_argument("hp_ln: prec_bits < 1");
    if (x.sign() <= 0) throw std::domain_error("hp_ln requires a positive value");

    const int64_t g = guard_bits(prec_bits);
    const int64_t w = prec_bits + 2 * g;

    int64_t m = (w + 1) / 2 + 32 - x.exponent2();
    if (m < 0) m = 0;
    HPNumber s = mul_pow2(x, m);
    HPNumber ln_s = ln_large(s, w);
    if (m == 0) return ln_s.truncated(prec_bits + g);
    HPNumber correction = mul(HPNumber(static_cast<long>(m)), ln2_at(w), w);
    return sub(ln_s, correction).truncated(prec_bits + g);
}

}  // namespace digitnorm
