// Command-line frontend: compute constants to digit files, count k-grams,
// run the statistical analysis, verify counters against the naive oracle,
// and convert digit files between bases.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "digitnorm/constants.hpp"
#include "digitnorm/counts.hpp"
#include "digitnorm/errors.hpp"
#include "digitnorm/radix.hpp"
#include "digitnorm/report.hpp"
#include "digitnorm/stats.hpp"
#include "digitnorm/stream.hpp"

namespace {

using namespace digitnorm;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInsufficientPrecision = 3;

int default_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

int run_compute(const std::string& name, int64_t digits, int base,
                const std::string& out_path, uint64_t line_width) {
    ConstantId id = constant_from_name(name);
    // decimal-equivalent precision for `digits` digits in `base`
    int64_t dec_digits = static_cast<int64_t>(std::ceil(
                             static_cast<double>(digits) *
                             std::log10(static_cast<double>(base)))) +
                         4;
    for (int attempt = 0;; ++attempt) {
        ConstantValue value = compute_constant(id, dec_digits);
        try {
            DigitString d = emit_digits(value.value, base, digits);
            uint64_t written = write_stream(d, out_path, line_width);
            std::cout << "wrote " << written << " base-" << base
                      << " digits of " << name << " to " << out_path << " ("
                      << value.method << ")\n";
            return kExitOk;
        } catch (const InsufficientPrecisionError&) {
            // refuse-and-recompute: retry with more bits
            if (attempt >= 2) throw;
            dec_digits += 64;
        }
    }
}

int run_count(const std::string& in_path, int base, int max_k,
              const std::string& out_path, int workers, bool strict) {
    DigitStreamReader reader(in_path, base,
                             strict ? ParseMode::Strict : ParseMode::Lenient);
    std::vector<KGramCounts> tables = count_all(reader, base, max_k, workers);
    for (KGramCounts& c : tables) c.source_label = in_path;
    write_counts_file(out_path, tables);
    std::cout << "counted " << reader.digits_yielded() << " digits, k=1.."
              << max_k << " -> " << out_path << "\n";
    return kExitOk;
}

int run_analyze(const std::vector<std::string>& counts_paths,
                const std::string& out_path, const std::string& format,
                int bins) {
    AnalysisReport report;
    for (const std::string& path : counts_paths) {
        std::vector<KGramCounts> tables = read_counts_file(path);
        if (tables.empty()) throw ValidationError(path + ": no count tables");
        BaseRun run;
        run.base = tables.front().base;
        run.input_checksum = fnv1a64_file(path);
        uint64_t n = 0;
        for (const KGramCounts& c : tables) {
            if (c.base != run.base)
                throw ValidationError(path + ": mixed bases in one file");
            uint64_t this_n =
                c.total_positions + static_cast<uint64_t>(c.k) - 1;
            if (n == 0) n = this_n;
            if (this_n != n)
                throw ValidationError(path + ": inconsistent digit counts");
            run.stats.push_back(frequency_stats(c));
            run.histograms.push_back(histogram(c, bins));
        }
        run.digit_count = n;
        if (report.label.empty()) report.label = tables.front().source_label;
        report.runs.push_back(std::move(run));
    }

    std::string text;
    if (format == "structured") {
        text = render_structured(report);
    } else if (format == "markdown") {
        text = render_table(report, TableFormat::Markdown);
    } else {
        text = render_table(report, TableFormat::Csv);
        for (const BaseRun& run : report.runs)
            for (const HistogramData& h : run.histograms)
                text += "\n# histogram base=" + std::to_string(h.base) +
                        " k=" + std::to_string(h.k) + "\n" +
                        render_histogram_csv(h);
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot create " + out_path);
    out << text;
    std::cout << "report (" << format << ") -> " << out_path << "\n";
    return kExitOk;
}

int run_verify(const std::string& in_path, int base, int max_k, int workers,
               bool strict) {
    ParseMode mode = strict ? ParseMode::Strict : ParseMode::Lenient;
    bool all_ok = true;
    for (int k = 1; k <= max_k; ++k) {
        DigitStreamReader fast_reader(in_path, base, mode);
        KGramCounts fast = count_kgrams(fast_reader, base, k, workers);
        DigitStreamReader naive_reader(in_path, base, mode);
        KGramCounts naive = count_naive(naive_reader, base, k);
        bool ok = fast.counts == naive.counts &&
                  fast.total_positions == naive.total_positions;
        uint64_t sum = 0;
        for (uint64_t v : fast.counts) sum += v;
        ok = ok && sum == fast.total_positions;
        std::cout << "k=" << k << ": " << (ok ? "ok" : "MISMATCH") << " ("
                  << fast.total_positions << " windows)\n";
        all_ok = all_ok && ok;
    }
    if (!all_ok) {
        std::cerr << "verification failed: counters disagree\n";
        return kExitValidation;
    }
    return kExitOk;
}

int run_convert(const std::string& in_path, int from_base, int to_base,
                int64_t digits, const std::string& out_path) {
    DigitStreamReader reader(in_path, from_base, ParseMode::Lenient);
    std::vector<uint8_t> values = read_all_digits(reader);
    DigitString source;
    source.base = from_base;
    source.integer_part =
        reader.integer_part().empty() ? "0" : reader.integer_part();
    source.fractional.reserve(values.size());
    for (uint8_t v : values) source.fractional += digit_char(v);

    DigitString converted = convert_base(source, to_base, digits);
    uint64_t written = write_stream(converted, out_path, 0);
    std::cout << "converted " << source.length() << " base-" << from_base
              << " digits to " << written << " base-" << to_base
              << " digits -> " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"digit-expansion statistics for Catalan and lemniscate "
                 "constants"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    // compute
    auto* compute = app.add_subcommand(
        "compute", "compute a constant and write its digit expansion");
    std::string constant_name_arg;
    int64_t digits = 0;
    int base = 10;
    std::string out_path, in_path;
    uint64_t line_width = 0;
    compute->add_option("--constant", constant_name_arg, "constant to compute")
        ->required()
        ->check(CLI::IsMember({"catalan", "lemniscate-arc", "lemniscate-l",
                               "l1", "l2", "gauss", "pi"}));
    compute->add_option("--digits", digits, "fractional digits to emit")
        ->required()
        ->check(CLI::PositiveNumber);
    compute->add_option("--base", base, "output base")
        ->check(CLI::IsMember({10, 16}));
    compute->add_option("--out", out_path, "output digit file")->required();
    compute->add_option("--line-width", line_width,
                        "wrap after this many digits (0 = one line)");

    // count
    auto* count = app.add_subcommand("count", "count k-gram occurrences");
    int max_k = 3;
    int workers = default_workers();
    bool strict = false;
    std::string counts_out;
    count->add_option("--in", in_path, "digit file")->required();
    count->add_option("--base", base, "digit base")->check(CLI::Range(2, 36));
    count->add_option("--max-k", max_k, "count lengths 1..K")
        ->check(CLI::Range(1, 8));
    count->add_option("--out", counts_out, "counts document")->required();
    count->add_option("--workers", workers, "counting threads")
        ->check(CLI::PositiveNumber);
    count->add_flag("--strict", strict, "reject whitespace");

    // analyze
    auto* analyze = app.add_subcommand(
        "analyze", "statistics and histograms from counts documents");
    std::vector<std::string> counts_paths;
    std::string report_path;
    std::string format = "csv";
    int bins = 32;
    analyze->add_option("--counts", counts_paths, "counts documents")
        ->required()
        ->expected(-1);
    analyze->add_option("--out-report", report_path, "report file")->required();
    analyze->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"csv", "markdown", "structured"}));
    analyze->add_option("--bins", bins, "histogram bins")
        ->check(CLI::Range(2, 100000));

    // verify
    auto* verify = app.add_subcommand(
        "verify", "run the naive and optimized counters and compare");
    verify->add_option("--in", in_path, "digit file")->required();
    verify->add_option("--base", base, "digit base")->check(CLI::Range(2, 36));
    verify->add_option("--max-k", max_k, "verify lengths 1..K")
        ->check(CLI::Range(1, 8));
    verify->add_option("--workers", workers, "counting threads")
        ->check(CLI::PositiveNumber);
    verify->add_flag("--strict", strict, "reject whitespace");

    // convert
    auto* convert = app.add_subcommand(
        "convert", "re-express a digit file in another base");
    int from_base = 10, to_base = 16;
    convert->add_option("--in", in_path, "source digit file")->required();
    convert->add_option("--from-base", from_base, "source base")
        ->required()
        ->check(CLI::Range(2, 36));
    convert->add_option("--to-base", to_base, "target base")
        ->required()
        ->check(CLI::Range(2, 36));
    convert->add_option("--digits", digits, "target digits to emit")
        ->required()
        ->check(CLI::PositiveNumber);
    convert->add_option("--out", out_path, "output digit file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (compute->parsed())
            return run_compute(constant_name_arg, digits, base, out_path,
                               line_width);
        if (count->parsed())
            return run_count(in_path, base, max_k, counts_out, workers, strict);
        if (analyze->parsed())
            return run_analyze(counts_paths, report_path, format, bins);
        if (verify->parsed())
            return run_verify(in_path, base, max_k, workers, strict);
        if (convert->parsed())
            return run_convert(in_path, from_base, to_base, digits, out_path);
    } catch (const InsufficientPrecisionError& e) {
        std::cerr << "insufficient precision: " << e.what() << "\n";
        return kExitInsufficientPrecision;
    } catch (const ValidationError& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}
