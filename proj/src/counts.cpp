#include "digitnorm/counts.hpp"

#include <condition_variable>
#include <deque>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "digitnorm/errors.hpp"

namespace digitnorm {

uint64_t table_size(int base, int k) {
    if (base < 2 || base > 36) throw std::invalid_argument("base out of range");
    if (k < 1 || k > 8)
        throw std::invalid_argument("k must be in 1..8 (b^k table memory)");
    uint64_t m = 1;
    for (int i = 0; i < k; ++i) m *= static_cast<uint64_t>(base);
    return m;
}

namespace {

// One unit of work: count windows that *start* inside [0, limit) of this
// digit block. The block already carries up to (max_k - 1) lookahead digits
// from the next chunk, so boundary-spanning windows are counted exactly once.
struct WorkItem {
    std::vector<uint8_t> digits;
    size_t limit = 0;
};

struct Tables {
    // tables[k-1] has base^k entries
    std::vector<std::vector<uint64_t>> t;
    explicit Tables(int base, int max_k) {
        for (int k = 1; k <= max_k; ++k)
            t.emplace_back(table_size(base, k), 0);
    }
    void accumulate(const Tables& other) {
        for (size_t k = 0; k < t.size(); ++k)
            for (size_t v = 0; v < t[k].size(); ++v) t[k][v] += other.t[k][v];
    }
};

void count_item(const WorkItem& item, int base, int max_k, Tables& tables) {
    const uint8_t* d = item.digits.data();
    const size_t n = item.digits.size();
    for (int k = 1; k <= max_k; ++k) {
        auto& table = tables.t[static_cast<size_t>(k) - 1];
        const uint64_t modulus = table.size() / static_cast<uint64_t>(base);
        size_t end = std::min(item.limit, n >= static_cast<size_t>(k)
                                              ? n - static_cast<size_t>(k) + 1
                                              : size_t{0});
        if (end == 0) continue;
        uint64_t v = 0;
        for (int i = 0; i < k - 1; ++i)
            v = v * static_cast<uint64_t>(base) + d[i];
        for (size_t i = 0; i < end; ++i) {
            v = (v % modulus) * static_cast<uint64_t>(base) +
                d[i + static_cast<size_t>(k) - 1];
            ++table[v];
        }
    }
}

// Bounded queue feeding the counting workers.
class WorkQueue {
public:
    explicit WorkQueue(size_t cap) : cap_(cap) {}

    void push(WorkItem item) {
        std::unique_lock<std::mutex> lock(mu_);
        not_full_.wait(lock, [&] { return items_.size() < cap_; });
        items_.push_back(std::move(item));
        not_empty_.notify_one();
    }
    void close() {
        std::lock_guard<std::mutex> lock(mu_);
        closed_ = true;
        not_empty_.notify_all();
    }
    bool pop(WorkItem& out) {
        std::unique_lock<std::mutex> lock(mu_);
        not_empty_.wait(lock, [&] { return closed_ || !items_.empty(); });
        if (items_.empty()) return false;
        out = std::move(items_.front());
        items_.pop_front();
        not_full_.notify_one();
        return true;
    }

private:
    std::mutex mu_;
    std::condition_variable not_full_, not_empty_;
    std::deque<WorkItem> items_;
    size_t cap_;
    bool closed_ = false;
};

std::vector<KGramCounts> count_all_impl(ChunkSource& source, int base,
                                        int max_k, int workers,
                                        const std::string& label) {
    for (int k = 1; k <= max_k; ++k) table_size(base, k);  // validate early
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");

    Tables total(base, max_k);
    uint64_t n_digits = 0;
    const size_t carry = static_cast<size_t>(max_k) - 1;

    WorkQueue queue(static_cast<size_t>(workers) * 2 + 2);
    std::vector<Tables> partial(static_cast<size_t>(workers),
                                Tables(base, max_k));
    std::vector<std::thread> pool;
    std::exception_ptr worker_error;
    std::mutex error_mu;

    for (int wi = 0; wi < workers; ++wi) {
        pool.emplace_back([&, wi] {
            WorkItem item;
            try {
                while (queue.pop(item))
                    count_item(item, base, max_k, partial[static_cast<size_t>(wi)]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!worker_error) worker_error = std::current_exception();
            }
        });
    }

    try {
        // Re-buffer into fixed blocks so every work item carries its full
        // (max_k - 1)-digit lookahead no matter how the source chunks.
        const size_t block = kDefaultChunkDigits;
        std::vector<uint8_t> buf;
        auto flush = [&](bool final) {
            while (buf.size() >= block + carry || (final && !buf.empty())) {
                size_t take = std::min(block, buf.size());
                size_t extra = std::min(carry, buf.size() - take);
                WorkItem item;
                item.limit = take;
                item.digits.assign(buf.begin(),
                                   buf.begin() + static_cast<ptrdiff_t>(take + extra));
                n_digits += take;
                queue.push(std::move(item));
                buf.erase(buf.begin(), buf.begin() + static_cast<ptrdiff_t>(take));
            }
        };
        while (auto chunk = source.next()) {
            buf.insert(buf.end(), chunk->digits.begin(), chunk->digits.end());
            flush(false);
        }
        flush(true);
    } catch (...) {
        queue.close();
        for (auto& t : pool) t.join();
        throw;
    }
    queue.close();
    for (auto& t : pool) t.join();
    if (worker_error) std::rethrow_exception(worker_error);

    if (n_digits < static_cast<uint64_t>(max_k))
        throw ValidationError("stream shorter than k (" +
                              std::to_string(n_digits) + " digits, k = " +
                              std::to_string(max_k) + ")");

    for (auto& p : partial) total.accumulate(p);

    std::vector<KGramCounts> out;
    for (int k = 1; k <= max_k; ++k) {
        KGramCounts c;
        c.base = base;
        c.k = k;
        c.total_positions = n_digits - static_cast<uint64_t>(k) + 1;
        c.counts = std::move(total.t[static_cast<size_t>(k) - 1]);
        c.source_label = label;
        uint64_t sum = 0;
        for (uint64_t v : c.counts) sum += v;
        if (sum != c.total_positions)
            throw std::logic_error("window count mismatch");
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

KGramCounts count_kgrams(ChunkSource& source, int base, int k, int workers) {
    return count_all_impl(source, base, k, workers, "").back();
}

std::vector<KGramCounts> count_all(ChunkSource& source, int base, int max_k,
                                   int workers) {
    return count_all_impl(source, base, max_k, workers, "");
}

KGramCounts count_naive(ChunkSource& source, int base, int k) {
    table_size(base, k);
    std::vector<uint8_t> digits = read_all_digits(source);
    if (digits.size() < static_cast<size_t>(k))
        throw ValidationError("stream shorter than k");

    KGramCounts c;
    c.base = base;
    c.k = k;
    c.counts.assign(table_size(base, k), 0);
    for (size_t i = 0; i + static_cast<size_t>(k) <= digits.size(); ++i) {
        uint64_t v = 0;
        for (int j = 0; j < k; ++j)
            v = v * static_cast<uint64_t>(base) + digits[i + static_cast<size_t>(j)];
        ++c.counts[v];
        ++c.total_positions;
    }
    return c;
}

KGramCounts merge_counts(const KGramCounts& a, const KGramCounts& b) {
    if (a.base != b.base || a.k != b.k || a.counts.size() != b.counts.size())
        throw std::invalid_argument("merge_counts: shape mismatch");
    KGramCounts out = a;
    for (size_t i = 0; i < out.counts.size(); ++i) out.counts[i] += b.counts[i];
    out.total_positions += b.total_positions;
    return out;
}

KGramCounts marginalize(const KGramCounts& c, Marginal position) {
    if (c.k < 2) throw std::invalid_argument("marginalize requires k >= 2");
    KGramCounts out;
    out.base = c.base;
    out.k = c.k - 1;
    out.total_positions = c.total_positions;
    out.source_label = c.source_label;
    out.counts.assign(table_size(c.base, c.k - 1), 0);
    const uint64_t b = static_cast<uint64_t>(c.base);
    const uint64_t low = out.counts.size();  // b^(k-1)
    for (uint64_t v = 0; v < c.counts.size(); ++v) {
        uint64_t idx = position == Marginal::First ? v % low : v / b;
        out.counts[idx] += c.counts[v];
    }
    return out;
}

std::string gram_label(uint64_t value, int base, int k) {
    std::string out(static_cast<size_t>(k), '0');
    for (int i = k - 1; i >= 0; --i) {
        out[static_cast<size_t>(i)] =
            digit_char(static_cast<int>(value % static_cast<uint64_t>(base)));
        value /= static_cast<uint64_t>(base);
    }
    return out;
}

std::string counts_to_json(const std::vector<KGramCounts>& tables) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const KGramCounts& c : tables) {
        nlohmann::ordered_json doc;
        doc["source_label"] = c.source_label;
        doc["base"] = c.base;
        doc["k"] = c.k;
        doc["total_positions"] = c.total_positions;
        doc["counts"] = c.counts;
        arr.push_back(std::move(doc));
    }
    return arr.dump(1) + "\n";
}

std::vector<KGramCounts> counts_from_json(const std::string& text) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("counts document: ") + e.what());
    }
    if (parsed.is_object()) parsed = nlohmann::json::array({parsed});
    std::vector<KGramCounts> out;
    try {
        for (const auto& doc : parsed) {
            KGramCounts c;
            c.source_label = doc.at("source_label").get<std::string>();
            c.base = doc.at("base").get<int>();
            c.k = doc.at("k").get<int>();
            c.total_positions = doc.at("total_positions").get<uint64_t>();
            c.counts = doc.at("counts").get<std::vector<uint64_t>>();
            if (c.counts.size() != table_size(c.base, c.k))
                throw ParseError("counts array has the wrong size");
            out.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("counts document: ") + e.what());
    }
    return out;
}

void write_counts_file(const std::string& path,
                       const std::vector<KGramCounts>& tables) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot create " + path);
    out << counts_to_json(tables);
    if (!out) throw ParseError("I/O failure while writing " + path);
}

std::vector<KGramCounts> read_counts_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return counts_from_json(text);
}

}  // namespace digitnorm
