#include "digitnorm/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace digitnorm {

std::vector<double> frequencies(const KGramCounts& c) {
    if (c.total_positions == 0)
        throw std::invalid_argument("frequencies: no window positions");
    std::vector<double> f(c.counts.size());
    const auto positions = static_cast<double>(c.total_positions);
    // direct division: uniform counts then give exactly f == 1/m
    for (size_t i = 0; i < c.counts.size(); ++i)
        f[i] = static_cast<double>(c.counts[i]) / positions;
    return f;
}

double predicted_variance(int base, int k, uint64_t n_digits) {
    uint64_t m = table_size(base, k);
    if (n_digits < static_cast<uint64_t>(k))
        throw std::invalid_argument("predicted_variance: N < k");
    uint64_t positions = n_digits - static_cast<uint64_t>(k) + 1;
    double p = 1.0 / static_cast<double>(m);
    return p * (1.0 - p) / static_cast<double>(positions);
}

double predicted_error(double variance, uint64_t m) {
    if (m < 2) throw std::invalid_argument("predicted_error: m < 2");
    return variance * std::sqrt(2.0 / static_cast<double>(m - 1));
}

double actual_variance(const KGramCounts& c) {
    if (c.counts.size() < 2)
        throw std::invalid_argument("actual_variance: m < 2");
    std::vector<double> f = frequencies(c);
    const double mean = 1.0 / static_cast<double>(f.size());
    double acc = 0;
    for (double v : f) {
        double d = v - mean;
        acc += d * d;
    }
    return acc / static_cast<double>(f.size() - 1);
}

double deviation(double predicted, double error, double actual) {
    if (!(error > 0)) throw std::invalid_argument("deviation: error <= 0");
    return (predicted - actual) / error;
}

std::vector<double> per_gram_z(const KGramCounts& c) {
    std::vector<double> f = frequencies(c);
    const double p = 1.0 / static_cast<double>(f.size());
    const double sigma =
        std::sqrt(p * (1.0 - p) / static_cast<double>(c.total_positions));
    for (double& v : f) v = (v - p) / sigma;
    return f;
}

HistogramData histogram(const KGramCounts& c, int bins) {
    if (bins < 2) throw std::invalid_argument("histogram: bins < 2");
    std::vector<double> f = frequencies(c);

    HistogramData h;
    h.base = c.base;
    h.k = c.k;
    h.p = 1.0 / static_cast<double>(f.size());
    h.sigma = std::sqrt(h.p * (1.0 - h.p) /
                        static_cast<double>(c.total_positions));
    const double lo = h.p - 4.0 * h.sigma;
    const double hi = h.p + 4.0 * h.sigma;
    h.edges.resize(static_cast<size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i)
        h.edges[static_cast<size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / bins;
    h.occupancy.assign(static_cast<size_t>(bins) + 2, 0);
    const double width = (hi - lo) / bins;
    for (double v : f) {
        size_t slot;
        if (v < lo) {
            slot = 0;
        } else if (v >= hi) {
            slot = static_cast<size_t>(bins) + 1;
        } else {
            auto b = static_cast<int>((v - lo) / width);
            if (b >= bins) b = bins - 1;  // edge rounding
            slot = static_cast<size_t>(b) + 1;
        }
        ++h.occupancy[slot];
    }
    h.guides = {h.p - 2.0 * h.sigma, h.p - h.sigma, h.p + h.sigma,
                h.p + 2.0 * h.sigma};
    return h;
}

FrequencyStats frequency_stats(const KGramCounts& c) {
    FrequencyStats s;
    s.base = c.base;
    s.k = c.k;
    s.m = c.counts.size();
    s.positions = c.total_positions;
    s.p = 1.0 / static_cast<double>(s.m);
    uint64_t n_digits = c.total_positions + static_cast<uint64_t>(c.k) - 1;
    s.predicted_variance = predicted_variance(c.base, c.k, n_digits);
    s.predicted_error = predicted_error(s.predicted_variance, s.m);
    s.actual_variance = actual_variance(c);
    s.deviation_sigma =
        deviation(s.predicted_variance, s.predicted_error, s.actual_variance);

    std::vector<double> f = frequencies(c);
    size_t min_i = 0, max_i = 0;
    for (size_t i = 1; i < f.size(); ++i) {
        if (f[i] < f[min_i]) min_i = i;
        if (f[i] > f[max_i]) max_i = i;
    }
    s.min_frequency = f[min_i];
    s.max_frequency = f[max_i];
    s.min_label = gram_label(min_i, c.base, c.k);
    s.max_label = gram_label(max_i, c.base, c.k);
    return s;
}

}  // namespace digitnorm
