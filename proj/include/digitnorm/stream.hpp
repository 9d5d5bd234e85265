#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "digitnorm/radix.hpp"

namespace digitnorm {

enum class ParseMode { Lenient, Strict };

struct DigitStreamHeader {
    int base = 10;
    std::optional<uint64_t> declared_fractional_count;
    std::string source_label;
    ParseMode parse_mode = ParseMode::Lenient;
};

// A contiguous block of fractional digit values; offset 0 is the first digit
// after the radix point.
struct DigitChunk {
    std::vector<uint8_t> digits;
    uint64_t offset = 0;
};

inline constexpr size_t kDefaultChunkDigits = size_t{1} << 20;

// Anything that yields consecutive DigitChunks.
class ChunkSource {
public:
    virtual ~ChunkSource() = default;
    virtual std::optional<DigitChunk> next() = 0;
};

/*  Streams the fractional digits of a digit file:
 *
 *      [integer digits] ['.'] fractional digits
 *
 *  Digits before the first '.' are the integer part and are skipped; a file
 *  with no '.' is all fractional digits (the grammar cannot express an
 *  integer part without the point). Because the reader is single pass, the
 *  radix point must occur within the first chunk; beyond that the leading
 *  digits have already been committed as fractional and a late '.' is a
 *  ParseError.
 *
 *  Lenient mode ignores space, tab, CR and LF; strict mode rejects any byte
 *  that is not a digit or the single radix point. Hex letters are accepted
 *  in either case. No other bytes are permitted in either mode.
 */
class DigitStreamReader : public ChunkSource {
public:
    DigitStreamReader(std::istream& in, int base, ParseMode mode,
                      size_t chunk_digits = kDefaultChunkDigits);
    // Convenience constructor owning the file stream.
    DigitStreamReader(const std::string& path, int base, ParseMode mode,
                      size_t chunk_digits = kDefaultChunkDigits);

    std::optional<DigitChunk> next() override;

    // Integer-part digits seen before the radix point (empty if none).
    const std::string& integer_part() const { return integer_part_; }
    uint64_t digits_yielded() const { return yielded_; }

private:
    std::optional<DigitChunk> fill_chunk();

    std::unique_ptr<std::ifstream> owned_;
    std::istream* in_;
    int base_;
    ParseMode mode_;
    size_t chunk_digits_;
    bool committed_ = false;   // leading token resolved (saw '.' or overflow/EOF)
    bool saw_point_ = false;
    std::string integer_part_;
    std::vector<uint8_t> pending_;  // digits buffered before commitment
    uint64_t yielded_ = 0;
    bool eof_ = false;
};

// In-memory chunk source (tests and synthetic pipelines).
class MemoryDigitSource : public ChunkSource {
public:
    MemoryDigitSource(std::vector<uint8_t> digits,
                      size_t chunk_digits = kDefaultChunkDigits)
        : digits_(std::move(digits)), chunk_digits_(chunk_digits) {}
    std::optional<DigitChunk> next() override;

private:
    std::vector<uint8_t> digits_;
    size_t chunk_digits_;
    size_t pos_ = 0;
};

// Writes "<integer part>.<fractional digits>" with a newline after every
// line_width fractional digits (0 = no wrapping). Returns the number of
// fractional digits written.
uint64_t write_stream(const DigitString& d, const std::string& path,
                      uint64_t line_width);

struct ValidationReport {
    bool passed = true;
    uint64_t digit_count = 0;
    std::string first_digits;  // up to 32
    std::string last_digits;   // up to 32
    std::string message;
};

// Counts fractional digits, checks the declared count when present, and
// reports the boundary digits for manual comparison.
ValidationReport validate_stream(const std::string& path,
                                 const DigitStreamHeader& header);

// Drains a source into a single digit vector.
std::vector<uint8_t> read_all_digits(ChunkSource& source);

}  // namespace digitnorm
