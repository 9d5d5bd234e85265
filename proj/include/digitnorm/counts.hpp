#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "digitnorm/stream.hpp"

namespace digitnorm {

/*  Exact occurrence counts of every length-k digit sequence over a stream,
 *  windows overlapping. counts[v] indexes k-grams by their base-b value in
 *  big-endian digit order (v = sum d_i b^(k-1-i)), so index order matches
 *  the lexicographic "000..FFF" axis. total_positions = N - k + 1.
 */
struct KGramCounts {
    int base = 10;
    int k = 1;
    uint64_t total_positions = 0;
    std::vector<uint64_t> counts;  // size base^k
    std::string source_label;
};

enum class Marginal { First, Last };

// Number of table entries b^k; rejects k outside 1..8.
uint64_t table_size(int base, int k);

// Chunked counter with (k-1)-digit carry across chunk boundaries; exactly
// one pass over the source. workers > 1 splits chunks across threads (the
// merge is an elementwise sum, so any worker count gives identical output).
KGramCounts count_kgrams(ChunkSource& source, int base, int k,
                         int workers = 1);

// All lengths 1..max_k in the same single pass.
std::vector<KGramCounts> count_all(ChunkSource& source, int base, int max_k,
                                   int workers = 1);

// Verification oracle: materializes the digits and counts windows in the
// most literal way possible. No chunk logic, no rolling state.
KGramCounts count_naive(ChunkSource& source, int base, int k);

// Elementwise sum of two compatible tables.
KGramCounts merge_counts(const KGramCounts& a, const KGramCounts& b);

// Sums out the first or last digit, giving (k-1)-gram counts over the
// matching window positions.
KGramCounts marginalize(const KGramCounts& c, Marginal position);

std::string gram_label(uint64_t value, int base, int k);

// Plain-text persistence: a JSON array of
//   {source_label, base, k, total_positions, counts}
// documents, exact integers only.
std::string counts_to_json(const std::vector<KGramCounts>& tables);
std::vector<KGramCounts> counts_from_json(const std::string& text);
void write_counts_file(const std::string& path,
                       const std::vector<KGramCounts>& tables);
std::vector<KGramCounts> read_counts_file(const std::string& path);

}  // namespace digitnorm
