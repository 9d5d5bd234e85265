#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "digitnorm/constants.hpp"
#include "digitnorm/stats.hpp"
#include "digitnorm/stream.hpp"

namespace digitnorm {

inline constexpr const char* kToolVersion = "0.1.0";

// One analyzed digit expansion: a (source, base) pair with its stats rows
// and histograms for k = 1..K.
struct BaseRun {
    int base = 10;
    uint64_t digit_count = 0;  // N, fractional digits analyzed
    std::string input_checksum;
    std::vector<FrequencyStats> stats;      // one per k
    std::vector<HistogramData> histograms;  // one per k
};

struct AnalysisReport {
    std::string label;
    std::string tool_version = kToolVersion;
    std::vector<BaseRun> runs;
};

enum class TableFormat { Csv, Markdown };

// One row per (base, k). Values display as d.ddd x 10^e (4 significant
// figures) with the error scaled to the variance's exponent, matching the
// familiar "(1.500 +- 0.707) x 10^-13" layout.
std::string render_table(const AnalysisReport& r, TableFormat format);

// Histogram rows (bin_lo, bin_hi, occupancy) with overflow bins first/last,
// then a trailer block with the four guide-line abscissae.
std::string render_histogram_csv(const HistogramData& h);

// Machine-readable document: the full report, double values at full
// round-trip precision.
std::string render_structured(const AnalysisReport& r);

// "d.ddde+ee"-style scientific formatting used by the tables.
std::string format_sci(double value, int significant);

// FNV-1a 64-bit checksum, "fnv1a64:" + 16 hex digits.
std::string fnv1a64(const void* data, size_t size);
std::string fnv1a64_file(const std::string& path);

struct PipelineConfig {
    std::optional<ConstantId> constant;      // compute this...
    std::optional<std::string> input_file;   // ...or read this
    int64_t digits = 0;                      // digits per base when computing
    std::vector<int> bases = {10};
    int max_k = 3;
    int bins = 32;
    int workers = 1;
    ParseMode parse_mode = ParseMode::Lenient;
    std::string label;                       // defaults to constant/file name
};

// compute -> emit -> count -> stats in one deterministic pass. When several
// bases are requested from a computed constant, every base's digits come
// from the same binary value. Nothing is emitted on failure.
AnalysisReport run_pipeline(const PipelineConfig& config);

}  // namespace digitnorm
