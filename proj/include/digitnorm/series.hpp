#pragma once

#include <cstdint>
#include <functional>

#include "digitnorm/hp.hpp"

namespace digitnorm {

/*  A series with an exactly rational term ratio:
 *
 *      term(n+1) / term(n) = p(n) / q(n)
 *
 *  summed over the index range [first_index, last_index). term(first_index)
 *  is given as the exact rational first_num/first_den. All coefficients are
 *  exact integers; q(n) must be nonzero on the range.
 */
struct SeriesSpec {
    std::function<void(int64_t n, mpz_class& p, mpz_class& q)> ratio;
    mpz_class first_num = 1;
    mpz_class first_den = 1;
    int64_t first_index = 0;
    int64_t last_index = 0;
};

// Exact rational sum of the truncated series, truncated toward zero at
// prec_bits. Divide-and-conquer over the index range; the P/Q/T merge is
// associative, so the result is bit-identical for any split choice or
// thread count.
HPNumber binary_split(const SeriesSpec& spec, int64_t prec_bits);

namespace detail {

struct SeriesParts {
    mpz_class p;  // product of p(n) over the range
    mpz_class q;  // product of q(n) over the range
    mpz_class t;  // q * (sum of the range's terms relative to its first term)
};

// Evaluates [lo, hi) with a caller-supplied split choice (used by tests to
// check split-point independence). choose_split(lo, hi) must return a point
// strictly inside the range.
SeriesParts split_range(const SeriesSpec& spec, int64_t lo, int64_t hi,
                        const std::function<int64_t(int64_t, int64_t)>& choose_split,
                        int parallel_depth);

}  // namespace detail

}  // namespace digitnorm
