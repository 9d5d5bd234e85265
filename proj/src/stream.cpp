#include "digitnorm/stream.hpp"

#include <fstream>

#include "digitnorm/errors.hpp"

namespace digitnorm {

DigitStreamReader::DigitStreamReader(std::istream& in, int base, ParseMode mode,
                                     size_t chunk_digits)
    : in_(&in), base_(base), mode_(mode), chunk_digits_(chunk_digits) {
    if (base < 2 || base > 36) throw std::invalid_argument("base out of range");
    if (chunk_digits == 0) throw std::invalid_argument("chunk size must be > 0");
}

DigitStreamReader::DigitStreamReader(const std::string& path, int base,
                                     ParseMode mode, size_t chunk_digits)
    : owned_(std::make_unique<std::ifstream>(path, std::ios::binary)),
      in_(owned_.get()),
      base_(base),
      mode_(mode),
      chunk_digits_(chunk_digits) {
    if (base < 2 || base > 36) throw std::invalid_argument("base out of range");
    if (chunk_digits == 0) throw std::invalid_argument("chunk size must be > 0");
    if (!*owned_) throw ParseError("cannot open " + path);
}

std::optional<DigitChunk> DigitStreamReader::next() {
    return fill_chunk();
}

std::optional<DigitChunk> DigitStreamReader::fill_chunk() {
    std::vector<uint8_t> out;
    out.reserve(chunk_digits_);
    char buf[65536];

    auto commit_fractional = [&] {
        // No radix point in the leading token: the whole stream is
        // fractional digits.
        committed_ = true;
        out = std::move(pending_);
        pending_.clear();
    };

    while (out.size() < chunk_digits_ && !eof_) {
        in_->read(buf, sizeof(buf));
        std::streamsize got = in_->gcount();
        if (got <= 0) {
            if (in_->bad()) throw ParseError("I/O failure while reading digits");
            eof_ = true;
            break;
        }
        for (std::streamsize i = 0; i < got; ++i) {
            char c = buf[i];
            if (c == '.') {
                if (saw_point_) throw ParseError("second radix point");
                if (committed_)
                    throw ParseError(
                        "radix point after the leading chunk; integer parts "
                        "longer than one chunk are not supported");
                saw_point_ = true;
                committed_ = true;
                integer_part_.reserve(pending_.size());
                for (uint8_t d : pending_) integer_part_ += digit_char(d);
                pending_.clear();
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                if (mode_ == ParseMode::Strict)
                    throw ParseError("whitespace rejected in strict mode");
                continue;
            }
            int v = digit_value(c);
            if (v < 0)
                throw ParseError(std::string("invalid character '") + c + "'");
            if (v >= base_)
                throw ParseError(std::string("digit '") + c +
                                 "' out of range for base " +
                                 std::to_string(base_));
            if (committed_) {
                out.push_back(static_cast<uint8_t>(v));
            } else {
                pending_.push_back(static_cast<uint8_t>(v));
                // single-pass reader: past this many digits with no '.',
                // the stream is committed as fractional-only
                if (pending_.size() >= kDefaultChunkDigits) commit_fractional();
            }
        }
        // keep pulling until the chunk is full or EOF
        if (out.size() >= chunk_digits_) break;
    }

    if (!committed_ && eof_) commit_fractional();

    if (out.empty()) return std::nullopt;
    DigitChunk chunk;
    chunk.offset = yielded_;
    chunk.digits = std::move(out);
    yielded_ += chunk.digits.size();
    return chunk;
}

std::optional<DigitChunk> MemoryDigitSource::next() {
    if (pos_ >= digits_.size()) return std::nullopt;
    size_t n = std::min(chunk_digits_, digits_.size() - pos_);
    DigitChunk chunk;
    chunk.offset = pos_;
    chunk.digits.assign(digits_.begin() + static_cast<ptrdiff_t>(pos_),
                        digits_.begin() + static_cast<ptrdiff_t>(pos_ + n));
    pos_ += n;
    return chunk;
}

uint64_t write_stream(const DigitString& d, const std::string& path,
                      uint64_t line_width) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot create " + path);
    out << (d.integer_part.empty() ? "0" : d.integer_part) << '.';
    uint64_t written = 0;
    for (char c : d.fractional) {
        out.put(c);
        ++written;
        if (line_width > 0 && written % line_width == 0 &&
            written < d.fractional.size())
            out.put('\n');
    }
    out.put('\n');
    if (!out) throw ParseError("I/O failure while writing " + path);
    return written;
}

ValidationReport validate_stream(const std::string& path,
                                 const DigitStreamHeader& header) {
    DigitStreamReader reader(path, header.base, header.parse_mode);
    ValidationReport report;
    std::string tail;
    while (auto chunk = reader.next()) {
        for (uint8_t d : chunk->digits) {
            if (report.first_digits.size() < 32)
                report.first_digits += digit_char(d);
            tail += digit_char(d);
            if (tail.size() > 32) tail.erase(0, tail.size() - 32);
        }
        report.digit_count += chunk->digits.size();
    }
    report.last_digits = tail;
    if (header.declared_fractional_count &&
        *header.declared_fractional_count != report.digit_count) {
        report.passed = false;
        report.message = "declared " +
                         std::to_string(*header.declared_fractional_count) +
                         " fractional digits, found " +
                         std::to_string(report.digit_count);
    }
    return report;
}

std::vector<uint8_t> read_all_digits(ChunkSource& source) {
    std::vector<uint8_t> all;
    while (auto chunk = source.next())
        all.insert(all.end(), chunk->digits.begin(), chunk->digits.end());
    return all;
}

}  // namespace digitnorm
