#include "digitnorm/report.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "digitnorm/errors.hpp"

namespace digitnorm {

std::string format_sci(double value, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*e", significant - 1, value);
    return buf;
}

namespace {

// "(1.500±0.707)×10^-13": error rescaled to the variance's exponent.
std::string predicted_cell(double variance, double error, bool markdown) {
    char buf[96];
    double exp10 = std::floor(std::log10(std::fabs(variance)));
    double mant = variance / std::pow(10.0, exp10);
    double err_scaled = error / std::pow(10.0, exp10);
    const char* times = markdown ? "\xC3\x97" "10^" : "e";
    if (markdown)
        std::snprintf(buf, sizeof(buf), "(%.3f\xC2\xB1%.3f)%s%d", mant,
                      err_scaled, times, static_cast<int>(exp10));
    else
        std::snprintf(buf, sizeof(buf), "(%.3f+-%.3f)%s%d", mant, err_scaled,
                      times, static_cast<int>(exp10));
    return buf;
}

std::string sci_markdown(double value) {
    std::string s = format_sci(value, 4);
    size_t e = s.find('e');
    int exp10 = std::atoi(s.c_str() + e + 1);
    return s.substr(0, e) + "\xC3\x97" "10^" + std::to_string(exp10);
}

std::string deviation_cell(double dev) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", dev);
    return buf;
}

}  // namespace

std::string render_table(const AnalysisReport& r, TableFormat format) {
    size_t rows = 0;
    for (const BaseRun& run : r.runs) rows += run.stats.size();
    if (rows == 0) throw std::invalid_argument("render_table: empty report");

    std::ostringstream out;
    if (format == TableFormat::Markdown) {
        out << "| Base | Length of Sequence | Predicted Variance and Error of "
               "Frequencies | Actual Variance of Frequencies | Deviation "
               "[\xCF\x83] |\n";
        out << "|---|---|---|---|---|\n";
        for (const BaseRun& run : r.runs)
            for (const FrequencyStats& s : run.stats)
                out << "| " << s.base << " | " << s.k << " | "
                    << predicted_cell(s.predicted_variance, s.predicted_error,
                                      true)
                    << " | " << sci_markdown(s.actual_variance) << " | "
                    << deviation_cell(s.deviation_sigma) << " |\n";
        return out.str();
    }

    out << "label,base,k,digits,positions,p,predicted_variance,"
           "predicted_error,actual_variance,deviation_sigma,min_frequency,"
           "min_gram,max_frequency,max_gram\n";
    for (const BaseRun& run : r.runs) {
        for (const FrequencyStats& s : run.stats) {
            out << r.label << ',' << s.base << ',' << s.k << ','
                << run.digit_count << ',' << s.positions << ','
                << format_sci(s.p, 4) << ','
                << format_sci(s.predicted_variance, 4) << ','
                << format_sci(s.predicted_error, 3) << ','
                << format_sci(s.actual_variance, 4) << ','
                << deviation_cell(s.deviation_sigma) << ','
                << format_sci(s.min_frequency, 6) << ',' << s.min_label << ','
                << format_sci(s.max_frequency, 6) << ',' << s.max_label
                << '\n';
        }
    }
    return out.str();
}

std::string render_histogram_csv(const HistogramData& h) {
    std::ostringstream out;
    out << "bin_lo,bin_hi,occupancy\n";
    const size_t bins = h.edges.size() - 1;
    out << "-inf," << format_sci(h.edges.front(), 9) << ','
        << h.occupancy.front() << '\n';
    for (size_t i = 0; i < bins; ++i)
        out << format_sci(h.edges[i], 9) << ',' << format_sci(h.edges[i + 1], 9)
            << ',' << h.occupancy[i + 1] << '\n';
    out << format_sci(h.edges.back(), 9) << ",+inf," << h.occupancy.back()
        << '\n';
    out << "guide,p-2sigma," << format_sci(h.guides[0], 9) << '\n';
    out << "guide,p-sigma," << format_sci(h.guides[1], 9) << '\n';
    out << "guide,p+sigma," << format_sci(h.guides[2], 9) << '\n';
    out << "guide,p+2sigma," << format_sci(h.guides[3], 9) << '\n';
    return out.str();
}

namespace {

nlohmann::ordered_json stats_json(const FrequencyStats& s) {
    nlohmann::ordered_json j;
    j["base"] = s.base;
    j["k"] = s.k;
    j["m"] = s.m;
    j["positions"] = s.positions;
    j["p"] = s.p;
    j["predicted_variance"] = s.predicted_variance;
    j["predicted_error"] = s.predicted_error;
    j["actual_variance"] = s.actual_variance;
    j["deviation_sigma"] = s.deviation_sigma;
    j["min_frequency"] = s.min_frequency;
    j["min_gram"] = s.min_label;
    j["max_frequency"] = s.max_frequency;
    j["max_gram"] = s.max_label;
    return j;
}

nlohmann::ordered_json histogram_json(const HistogramData& h) {
    nlohmann::ordered_json j;
    j["base"] = h.base;
    j["k"] = h.k;
    j["p"] = h.p;
    j["sigma"] = h.sigma;
    j["edges"] = h.edges;
    j["occupancy"] = h.occupancy;
    j["guides"] = h.guides;
    return j;
}

}  // namespace

std::string render_structured(const AnalysisReport& r) {
    nlohmann::ordered_json doc;
    doc["label"] = r.label;
    doc["tool_version"] = r.tool_version;
    doc["runs"] = nlohmann::ordered_json::array();
    for (const BaseRun& run : r.runs) {
        nlohmann::ordered_json jr;
        jr["base"] = run.base;
        jr["digit_count"] = run.digit_count;
        jr["input_checksum"] = run.input_checksum;
        jr["stats"] = nlohmann::ordered_json::array();
        for (const FrequencyStats& s : run.stats) jr["stats"].push_back(stats_json(s));
        jr["histograms"] = nlohmann::ordered_json::array();
        for (const HistogramData& h : run.histograms)
            jr["histograms"].push_back(histogram_json(h));
        doc["runs"].push_back(std::move(jr));
    }
    return doc.dump(1) + "\n";
}

std::string fnv1a64(const void* data, size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    uint64_t h = 0xcbf29ce484222325ull;
    for (size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016" PRIx64, h);
    return buf;
}

std::string fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    uint64_t h = 0xcbf29ce484222325ull;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
    }
    char out[32];
    std::snprintf(out, sizeof(out), "fnv1a64:%016" PRIx64, h);
    return out;
}

namespace {

BaseRun analyze_source(ChunkSource& source, int base, const PipelineConfig& cfg,
                       std::string checksum) {
    BaseRun run;
    run.base = base;
    run.input_checksum = std::move(checksum);
    std::vector<KGramCounts> tables =
        count_all(source, base, cfg.max_k, cfg.workers);
    for (KGramCounts& c : tables) {
        c.source_label = cfg.label;
        run.stats.push_back(frequency_stats(c));
        run.histograms.push_back(histogram(c, cfg.bins));
    }
    run.digit_count =
        tables.front().total_positions;  // k = 1: M = N
    return run;
}

}  // namespace

AnalysisReport run_pipeline(const PipelineConfig& config) {
    if (config.constant.has_value() == config.input_file.has_value())
        throw std::invalid_argument(
            "pipeline config needs exactly one of constant/input_file");
    if (config.bases.empty())
        throw std::invalid_argument("pipeline config: no bases");

    AnalysisReport report;
    report.label = config.label;

    if (config.constant) {
        if (config.digits < 1)
            throw std::invalid_argument("pipeline config: digits must be >= 1");
        if (report.label.empty()) report.label = constant_name(*config.constant);

        // One binary value serves every requested base.
        int max_base = 2;
        for (int b : config.bases) max_base = std::max(max_base, b);
        int64_t dec_equiv = static_cast<int64_t>(
                                std::ceil(static_cast<double>(config.digits) *
                                          std::log10(double(max_base)))) +
                            4;
        ConstantValue value =
            compute_constant(*config.constant, std::max(config.digits, dec_equiv));

        for (int base : config.bases) {
            DigitString digits = emit_digits(value.value, base, config.digits);
            std::string text = (digits.integer_part.empty() ? "0" : digits.integer_part) +
                               "." + digits.fractional;
            std::string checksum = fnv1a64(text.data(), text.size());
            std::vector<uint8_t> vals(digits.fractional.size());
            for (size_t i = 0; i < vals.size(); ++i)
                vals[i] = static_cast<uint8_t>(digit_value(digits.fractional[i]));
            MemoryDigitSource source(std::move(vals));
            report.runs.push_back(
                analyze_source(source, base, config, std::move(checksum)));
        }
        return report;
    }

    if (config.bases.size() != 1)
        throw std::invalid_argument("file input: exactly one base");
    if (report.label.empty()) report.label = *config.input_file;
    int base = config.bases.front();
    DigitStreamReader reader(*config.input_file, base, config.parse_mode);
    report.runs.push_back(analyze_source(reader, base, config,
                                         fnv1a64_file(*config.input_file)));
    return report;
}

}  // namespace digitnorm
