#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "digitnorm/counts.hpp"

namespace digitnorm {

// One table row: the binomial-model prediction against the measured spread
// of k-gram frequencies.
struct FrequencyStats {
    int base = 10;
    int k = 1;
    uint64_t m = 0;          // category count b^k
    uint64_t positions = 0;  // M = N - k + 1
    double p = 0;            // limiting frequency b^-k
    double predicted_variance = 0;
    double predicted_error = 0;
    double actual_variance = 0;
    double deviation_sigma = 0;  // (predicted - actual) / error
    double min_frequency = 0;
    double max_frequency = 0;
    std::string min_label;
    std::string max_label;
};

struct HistogramData {
    int base = 10;
    int k = 1;
    double p = 0;
    double sigma = 0;                 // sqrt(predicted variance)
    std::vector<double> edges;        // bins + 1 edges over [p-4s, p+4s]
    std::vector<uint64_t> occupancy;  // bins + 2: [0] under, [last] over
    std::array<double, 4> guides{};   // p-2s, p-s, p+s, p+2s
};

// f_v = counts_v / M.
std::vector<double> frequencies(const KGramCounts& c);

// p(1-p)/M with p = b^-k and M = N - k + 1 window positions.
double predicted_variance(int base, int k, uint64_t n_digits);

// Expected sampling fluctuation of a variance over m categories:
// variance * sqrt(2/(m-1)).
double predicted_error(double variance, uint64_t m);

// sum (f_v - 1/m)^2 / (m-1); the mean frequency is exactly 1/m.
double actual_variance(const KGramCounts& c);

// (predicted - actual) / error, in sigma units.
double deviation(double predicted, double error, double actual);

// z_v = (f_v - p) / sqrt(p(1-p)/M).
std::vector<double> per_gram_z(const KGramCounts& c);

// Equal-width bins over [p - 4 sigma, p + 4 sigma] plus two overflow bins;
// guide lines at p +- sigma and p +- 2 sigma.
HistogramData histogram(const KGramCounts& c, int bins);

// Bundles the above into one table row.
FrequencyStats frequency_stats(const KGramCounts& c);

}  // namespace digitnorm
