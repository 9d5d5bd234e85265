#include "digitnorm/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "digitnorm/errors.hpp"
#include "digitnorm/series.hpp"

namespace digitnorm {

const char* constant_name(ConstantId id) {
    switch (id) {
        case ConstantId::Catalan: return "catalan";
        case ConstantId::LemniscateArc: return "lemniscate-arc";
        case ConstantId::LemniscateL: return "lemniscate-l";
        case ConstantId::LemniscateL1: return "l1";
        case ConstantId::LemniscateL2: return "l2";
        case ConstantId::GaussConstant: return "gauss";
        case ConstantId::GammaQuarter: return "gamma-quarter";
        case ConstantId::Pi: return "pi";
    }
    throw std::logic_error("unknown constant id");
}

ConstantId constant_from_name(const std::string& name) {
    for (ConstantId id : {ConstantId::Catalan, ConstantId::LemniscateArc,
                          ConstantId::LemniscateL, ConstantId::LemniscateL1,
                          ConstantId::LemniscateL2, ConstantId::GaussConstant,
                          ConstantId::GammaQuarter, ConstantId::Pi}) {
        if (name == constant_name(id)) return id;
    }
    throw std::invalid_argument("unknown constant: " + name);
}

int64_t bits_for_digits(int64_t digits, int base) {
    if (digits < 1) throw std::invalid_argument("digits must be positive");
    if (base < 2 || base > 36) throw std::invalid_argument("base out of range");
    long double bits = static_cast<long double>(digits) *
                       std::log2(static_cast<long double>(base));
    return static_cast<int64_t>(bits) + 2;
}

HPNumber catalan_defining_partial(int64_t n_terms, int64_t prec_bits) {
    if (n_terms < 1) throw std::invalid_argument("n_terms must be positive");
    SeriesSpec spec;
    spec.ratio = [](int64_t n, mpz_class& p, mpz_class& q) {
        mpz_class odd = 2 * n + 1;
        p = -(odd * odd);
        odd += 2;
        q = odd * odd;
    };
    spec.last_index = n_terms;
    return binary_split(spec, prec_bits);
}

namespace {

HPNumber catalan_at_bits(int64_t w) {
    HPNumber pi = hp_pi(w);
    HPNumber ln_val = hp_ln(add(HPNumber(2), hp_sqrt(HPNumber(3), w)), w);
    HPNumber log_part = mul_pow2(mul(pi, ln_val, w), -3);

    // The central-binomial sum converges like 4^-n.
    SeriesSpec spec;
    spec.ratio = [](int64_t n, mpz_class& p, mpz_class& q) {
        p = (n + 1) * (2 * n + 1);
        mpz_class d = 2 * n + 3;
        q = 2 * d * d;
    };
    spec.last_index = w / 2 + 16;
    HPNumber sum = binary_split(spec, w);
    return add(log_part, mul_pow2(mul_small(sum, 3), -3));
}

}  // namespace

ConstantValue catalan(int64_t digits) {
    if (digits < 1) throw std::invalid_argument("digits must be positive");
    const int64_t needed = bits_for_digits(digits, 10);
    const int64_t g = guard_bits(needed);
    const int64_t w = needed + 2 * g;

    HPNumber value = catalan_at_bits(w);
    if (digits >= 1000) {
        // Dual computation: repeat with extra bits and require agreement.
        HPNumber check = catalan_at_bits(w + 64);
        if (sub(value, check).abs_value() >
            HPNumber::from_scaled(1, needed + g))
            throw ValidationError("catalan: recomputation mismatch");
    }
    return {ConstantId::Catalan, value.truncated(needed + g), digits,
            "pi/8 ln(2+sqrt3) + 3/8 central-binomial sum"};
}

std::vector<ConstantValue> lemniscate_family(int64_t digits) {
    if (digits < 1) throw std::invalid_argument("digits must be positive");
    const int64_t needed = bits_for_digits(digits, 10);
    const int64_t g = guard_bits(needed);
    const int64_t w = needed + 2 * g;

    HPNumber sqrt2 = hp_sqrt(HPNumber(2), w);
    HPNumber agm = hp_agm(HPNumber(1), sqrt2, w);
    HPNumber two_pi = mul_pow2(hp_pi(w), 1);

    HPNumber s = div(two_pi, agm, w);
    if (sub(mul(s, agm, w), two_pi).abs_value() >
        HPNumber::from_scaled(16, needed + g))
        throw ValidationError("lemniscate: s * AGM(1, sqrt2) != 2 pi");

    // L and L1 are defined ratios of s; halving is exact, so the published
    // values satisfy 2L = s and 2L1 = L bit-for-bit.
    HPNumber s_out = s.truncated(needed + g);
    HPNumber l_out = mul_pow2(s_out, -1);
    HPNumber l1_out = mul_pow2(l_out, -1);
    HPNumber gauss_out = div(HPNumber(1), agm, w).truncated(needed + g);
    HPNumber l2 = div(HPNumber(1), mul_pow2(gauss_out, 1), w);
    HPNumber gamma_q = hp_sqrt(mul(s, hp_sqrt(two_pi, w), w), w);

    auto out = [&](ConstantId id, HPNumber v, const char* how) {
        return ConstantValue{id, std::move(v), digits, how};
    };
    return {
        out(ConstantId::LemniscateArc, s_out, "2 pi / AGM(1, sqrt2)"),
        out(ConstantId::LemniscateL, l_out, "s/2"),
        out(ConstantId::LemniscateL1, l1_out, "L/2"),
        out(ConstantId::LemniscateL2, l2.truncated(needed + g), "1/(2 gauss)"),
        out(ConstantId::GaussConstant, gauss_out, "1/AGM(1, sqrt2)"),
        out(ConstantId::GammaQuarter, gamma_q.truncated(needed + g),
            "sqrt(s sqrt(2 pi))"),
    };
}

namespace {

// exp by Newton inversion of the AGM log: y <- y (1 + u - ln y), precision
// doubling from a hardware-float seed. Good for |u| < ~700.
HPNumber hp_exp(const HPNumber& u, int64_t prec_bits) {
    double seed = std::exp(u.to_double());
    int e = 0;
    double m = std::frexp(seed, &e);
    HPNumber y = mul_pow2(HPNumber(static_cast<long>(std::ldexp(m, 52))), e - 52)
                     .truncated(prec_bits + 16);
    int64_t have = 48;
    while (have < prec_bits + 8) {
        have = std::min<int64_t>(2 * have, prec_bits + 8);
        int64_t p = have + 16;
        HPNumber delta = sub(u, hp_ln(y, p));
        y = add(y, mul(y, delta, p)).truncated(p);
    }
    return y;
}

}  // namespace

HPNumber lemniscate_integral_oracle(int digits) {
    if (digits < 1 || digits > 30)
        throw std::invalid_argument("integral oracle supports 1..30 digits");
    const int64_t w = bits_for_digits(30, 10) + 96;
    const HPNumber pi = hp_pi(w);
    const HPNumber half_pi = mul_pow2(pi, -1);
    const HPNumber one(1);
    const HPNumber cutoff = HPNumber::from_scaled(1, w - 8);
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(digits) + 2);
    const HPNumber target = HPNumber::from_ratio(1, pow10, w);

    // Integrand over (-1,1) after t = (x+1)/2:
    //   (1/2) / sqrt((1-t)(1+t)(1+t^2))
    // with 1-x taken from 1 - tanh(z) = 2 / (e^{2z} + 1) so the endpoint
    // singularity never suffers cancellation. Quantities like 1-x shrink as
    // e^{-2z}; divisions and square roots get extra fractional bits to keep
    // their relative precision.
    auto f_of = [&](const HPNumber& one_minus_x) {
        HPNumber one_minus_t = mul_pow2(one_minus_x, -1);
        int64_t extra = std::max<int64_t>(0, -one_minus_t.exponent2());
        HPNumber one_plus_t = sub(HPNumber(2), one_minus_t);
        HPNumber t = sub(one, one_minus_t);
        HPNumber one_plus_t2 = add(one, mul(t, t, w));
        HPNumber prod =
            mul(mul(one_minus_t, one_plus_t, w + extra), one_plus_t2, w + extra);
        return div(one, mul_pow2(hp_sqrt(prod, w + extra), 1), w);
    };
    auto half_integrand_pair = [&](const HPNumber& e2z, HPNumber& f_pos,
                                   HPNumber& f_neg) {
        HPNumber denom = add(e2z, one);
        int64_t extra = std::max<int64_t>(0, denom.exponent2());
        HPNumber one_minus_x = div(HPNumber(2), denom, w + extra);  // x > 0 side
        HPNumber one_plus_x = div(mul_pow2(e2z, 1), denom, w);
        f_pos = f_of(one_minus_x);
        f_neg = f_of(one_plus_x);
    };

    auto level_sum = [&](int level) {
        // h = 2^-level; nodes at j h, j = 0, 1, 2, ...
        // j = 0: cosh = 1, z = 0, t = 1/2, integrand/2 = 2/sqrt(15).
        HPNumber total = mul(half_pi, div(HPNumber(2), hp_sqrt(HPNumber(15), w), w), w);
        for (int64_t j = 1;; ++j) {
            HPNumber u = HPNumber::from_scaled(j, level);  // j * 2^-level
            HPNumber eu = hp_exp(u, w);
            HPNumber eu_inv = div(one, eu, w);
            HPNumber sinh_u = mul_pow2(sub(eu, eu_inv), -1);
            HPNumber cosh_u = mul_pow2(add(eu, eu_inv), -1);
            HPNumber z = mul(half_pi, sinh_u, w);
            HPNumber ez = hp_exp(z, w);
            HPNumber ez_inv = div(one, ez, w + std::max<int64_t>(0, ez.exponent2()));
            HPNumber cosh_z = mul_pow2(add(ez, ez_inv), -1);
            HPNumber cosh_z2 = mul(cosh_z, cosh_z, w);
            HPNumber sech2 =
                div(one, cosh_z2, w + std::max<int64_t>(0, cosh_z2.exponent2()));
            HPNumber weight = mul(mul(half_pi, cosh_u, w), sech2,
                                  w + std::max<int64_t>(0, -sech2.exponent2()));

            HPNumber f_pos, f_neg;
            half_integrand_pair(mul(ez, ez, w), f_pos, f_neg);
            HPNumber term = mul(weight, add(f_pos, f_neg), w);
            total = add(total, term);
            if (term.abs_value() < cutoff && j > 4) break;
            if (j > 20000) throw std::logic_error("quadrature failed to truncate");
        }
        return mul_pow2(total, -level).truncated(w);  // factor h
    };

    HPNumber prev = level_sum(2);
    for (int level = 3; level <= 10; ++level) {
        HPNumber cur = level_sum(level);
        if (sub(cur, prev).abs_value() < target) return cur.truncated(w);
        prev = cur;
    }
    throw std::logic_error("quadrature did not reach the requested digits");
}

ConstantValue compute_constant(ConstantId id, int64_t digits) {
    switch (id) {
        case ConstantId::Catalan:
            return catalan(digits);
        case ConstantId::Pi: {
            const int64_t needed = bits_for_digits(digits, 10);
            const int64_t g = guard_bits(needed);
            return {ConstantId::Pi, hp_pi(needed + g), digits,
                    "gauss-legendre agm"};
        }
        default:
            for (ConstantValue& v : lemniscate_family(digits))
                if (v.id == id) return std::move(v);
            throw std::logic_error("unreachable");
    }
}

}  // namespace digitnorm
