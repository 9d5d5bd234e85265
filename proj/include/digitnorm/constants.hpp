#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "digitnorm/hp.hpp"

namespace digitnorm {

enum class ConstantId {
    Catalan,
    LemniscateArc,   // s, arc length of the lemniscate with a = 1
    LemniscateL,     // L  = s/2
    LemniscateL1,    // L1 = L/2
    LemniscateL2,    // L2 = 1/(2 * Gauss's constant)
    GaussConstant,   // 1/AGM(1, sqrt 2)
    GammaQuarter,    // Gamma(1/4) = sqrt(s * sqrt(2 pi))
    Pi,
};

const char* constant_name(ConstantId id);
ConstantId constant_from_name(const std::string& name);

struct ConstantValue {
    ConstantId id;
    HPNumber value;
    int64_t requested_digits = 0;  // base-10-equivalent precision
    std::string method;
};

// ceil(digits * log2(base)) plus a little slack; the bit budget needed to
// emit `digits` digits in `base`.
int64_t bits_for_digits(int64_t digits, int base);

// Exact partial sum of the defining series sum (-1)^n / (2n+1)^2, truncated
// at prec_bits. |G - result| <= 1/(2 n_terms + 1)^2.
HPNumber catalan_defining_partial(int64_t n_terms, int64_t prec_bits = 256);

// Catalan's constant to >= `digits` correct decimal digits via
//   G = (pi/8) ln(2 + sqrt 3) + (3/8) sum 1/(binom(2n,n) (2n+1)^2),
// the sum evaluated by binary splitting (term ratio (n+1)(2n+1) / 2(2n+3)^2).
// Calls at >= 1000 digits re-run at +64 bits and compare.
ConstantValue catalan(int64_t digits);

// s = 2 pi / AGM(1, sqrt 2) and the values derived from it: L, L1, L2,
// Gauss's constant, Gamma(1/4). All to >= `digits` correct decimal digits.
std::vector<ConstantValue> lemniscate_family(int64_t digits);

// Numerical evaluation of the singular integral over (0,1) of dt/sqrt(1-t^4)
// by tanh-sinh quadrature; oracle-scale only (digits in [1, 30]). The value
// equals s/4.
HPNumber lemniscate_integral_oracle(int digits);

// Routing helper for the CLI: evaluates any ConstantId at `digits` decimal
// digits of precision.
ConstantValue compute_constant(ConstantId id, int64_t digits);

}  // namespace digitnorm
