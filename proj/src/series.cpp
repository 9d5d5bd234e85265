#include "digitnorm/series.hpp"

#include <future>
#include <stdexcept>
#include <thread>

#include "digitnorm/errors.hpp"

namespace digitnorm {

namespace detail {

namespace {

// Left-to-right accumulation over a short block. Associativity of the merge
// makes this identical to any other split of the same range.
SeriesParts leaf_block(const SeriesSpec& spec, int64_t lo, int64_t hi) {
    SeriesParts acc;
    acc.p = 1;
    acc.q = 1;
    acc.t = 0;
    mpz_class p, q;
    for (int64_t n = lo; n < hi; ++n) {
        spec.ratio(n, p, q);
        if (mpz_sgn(q.get_mpz_t()) == 0)
            throw MalformedSeriesError("series ratio denominator is zero at index " +
                                       std::to_string(n));
        // merge acc with the single-index parts (P=p, Q=q, T=q)
        acc.t = acc.t * q + acc.p * q;
        acc.p *= p;
        acc.q *= q;
    }
    return acc;
}

}  // namespace

SeriesParts split_range(const SeriesSpec& spec, int64_t lo, int64_t hi,
                        const std::function<int64_t(int64_t, int64_t)>& choose_split,
                        int parallel_depth) {
    if (hi - lo <= 16) return leaf_block(spec, lo, hi);

    int64_t mid = choose_split ? choose_split(lo, hi) : lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi)
        throw std::invalid_argument("split choice outside the open range");

    SeriesParts left, right;
    if (parallel_depth > 0) {
        auto rf = std::async(std::launch::async, [&] {
            return split_range(spec, mid, hi, choose_split, parallel_depth - 1);
        });
        left = split_range(spec, lo, mid, choose_split, parallel_depth - 1);
        right = rf.get();
    } else {
        left = split_range(spec, lo, mid, choose_split, 0);
        right = split_range(spec, mid, hi, choose_split, 0);
    }

    SeriesParts out;
    out.t = left.t * right.q + left.p * right.t;
    out.p = left.p * right.p;
    out.q = left.q * right.q;
    return out;
}

}  // namespace detail

HPNumber binary_split(const SeriesSpec& spec, int64_t prec_bits) {
    if (spec.last_index <= spec.first_index)
        throw std::invalid_argument("binary_split: empty index range");
    if (!spec.ratio) throw std::invalid_argument("binary_split: missing ratio");
    if (mpz_sgn(spec.first_den.get_mpz_t()) == 0)
        throw MalformedSeriesError("binary_split: zero first-term denominator");

    int depth = 0;
    unsigned hc = std::thread::hardware_concurrency();
    while ((1u << depth) < hc && depth < 3) ++depth;
    if (spec.last_index - spec.first_index < 1024) depth = 0;

    detail::SeriesParts parts = detail::split_range(
        spec, spec.first_index, spec.last_index, nullptr, depth);
    // sum = first_term * (1 + p0/q0 + p0 p1/(q0 q1) + ...) = first * T/Q
    return HPNumber::from_ratio(spec.first_num * parts.t,
                                spec.first_den * parts.q, prec_bits);
}

}  // namespace digitnorm
