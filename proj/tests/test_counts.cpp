#include <doctest.h>

#include <cstdio>
#include <random>

#include "digitnorm/counts.hpp"
#include "digitnorm/errors.hpp"

using namespace digitnorm;

namespace {

std::vector<uint8_t> random_digits(std::mt19937_64& rng, int base, size_t n) {
    std::vector<uint8_t> d(n);
    for (auto& v : d) v = static_cast<uint8_t>(rng() % static_cast<uint64_t>(base));
    return d;
}

KGramCounts count_mem(const std::vector<uint8_t>& digits, int base, int k,
                      int workers = 1, size_t chunk = kDefaultChunkDigits) {
    MemoryDigitSource src(digits, chunk);
    return count_kgrams(src, base, k, workers);
}

KGramCounts naive_mem(const std::vector<uint8_t>& digits, int base, int k) {
    MemoryDigitSource src(digits);
    return count_naive(src, base, k);
}

std::vector<uint8_t> from_text(const std::string& text) {
    std::vector<uint8_t> d;
    for (char c : text) d.push_back(static_cast<uint8_t>(digit_value(c)));
    return d;
}

}  // namespace

TEST_CASE("count examples") {
    auto c = count_mem(from_text("0123456789"), 10, 1);
    CHECK(c.total_positions == 10);
    for (uint64_t v : c.counts) CHECK(v == 1);

    c = count_mem(from_text("111"), 10, 2);
    CHECK(c.total_positions == 2);
    CHECK(c.counts[11] == 2);
    uint64_t sum = 0;
    for (uint64_t v : c.counts) sum += v;
    CHECK(sum == 2);

    auto n = naive_mem(from_text("0123456789"), 10, 2);
    CHECK(n.total_positions == 9);
    CHECK(n.counts[1] == 1);   // "01"
    CHECK(n.counts[89] == 1);  // "89"
    CHECK(n.counts[10] == 0);  // "10" never occurs

    n = naive_mem(from_text("00"), 10, 2);
    CHECK(n.total_positions == 1);
    CHECK(n.counts[0] == 1);

    CHECK_THROWS_AS(count_mem(from_text("12"), 10, 3), ValidationError);
    CHECK_THROWS_AS(naive_mem(from_text("12"), 10, 3), ValidationError);
    CHECK_THROWS_AS(table_size(10, 9), std::invalid_argument);
}

TEST_CASE("optimized counter equals the naive oracle") {
    std::mt19937_64 rng(0xc0de);
    for (int trial = 0; trial < 1000; ++trial) {
        int base = (trial % 2) ? 10 : 16;
        int k = 1 + static_cast<int>(rng() % 3);
        size_t n = static_cast<size_t>(k) +
                   static_cast<size_t>(rng() % 10000);
        auto digits = random_digits(rng, base, n);
        auto fast = count_mem(digits, base, k, 1 + static_cast<int>(rng() % 3),
                              1 + rng() % 8192);
        auto naive = naive_mem(digits, base, k);
        REQUIRE(fast.counts == naive.counts);
        CHECK(fast.total_positions == n - static_cast<size_t>(k) + 1);
    }
}

TEST_CASE("invariance under chunk size and worker count") {
    std::mt19937_64 rng(0xfeed);
    auto digits = random_digits(rng, 16, 100000);
    auto reference = count_mem(digits, 16, 3);
    for (size_t chunk : {size_t{1}, size_t{7}, size_t{4096}, size_t{1} << 20})
        for (int workers : {1, 2, 8})
            CHECK(count_mem(digits, 16, 3, workers, chunk).counts ==
                  reference.counts);
}

TEST_CASE("count_all matches per-k counting") {
    std::mt19937_64 rng(0x9999);
    auto digits = random_digits(rng, 10, 5000);
    MemoryDigitSource src(digits);
    auto all = count_all(src, 10, 3, 2);
    REQUIRE(all.size() == 3);
    for (int k = 1; k <= 3; ++k) {
        CHECK(all[static_cast<size_t>(k) - 1].counts ==
              naive_mem(digits, 10, k).counts);
        CHECK(all[static_cast<size_t>(k) - 1].total_positions ==
              5000 - static_cast<uint64_t>(k) + 1);
    }
}

TEST_CASE("merge_counts") {
    std::mt19937_64 rng(0x1111);
    auto a = count_mem(random_digits(rng, 10, 300), 10, 2);
    auto b = count_mem(random_digits(rng, 10, 500), 10, 2);

    KGramCounts zero;
    zero.base = 10;
    zero.k = 2;
    zero.counts.assign(100, 0);
    auto same = merge_counts(a, zero);
    CHECK(same.counts == a.counts);
    CHECK(same.total_positions == a.total_positions);

    auto ab = merge_counts(a, b);
    auto ba = merge_counts(b, a);
    CHECK(ab.counts == ba.counts);
    CHECK(ab.total_positions == a.total_positions + b.total_positions);

    KGramCounts wrong;
    wrong.base = 16;
    wrong.k = 2;
    wrong.counts.assign(256, 0);
    CHECK_THROWS_AS(merge_counts(a, wrong), std::invalid_argument);
}

TEST_CASE("segmented counting equals unsegmented") {
    // split-with-overlap by hand, any segmentation
    std::mt19937_64 rng(0xdead);
    auto digits = random_digits(rng, 10, 100000);
    const int k = 3;
    auto whole = count_mem(digits, 10, k);

    for (size_t seg : {size_t{977}, size_t{10000}, size_t{99999}}) {
        KGramCounts acc;
        acc.base = 10;
        acc.k = k;
        acc.counts.assign(1000, 0);
        for (size_t start = 0; start < digits.size(); start += seg) {
            size_t stop = std::min(digits.size(), start + seg);
            size_t ext = std::min(digits.size(), stop + k - 1);
            std::vector<uint8_t> piece(digits.begin() + static_cast<ptrdiff_t>(start),
                                       digits.begin() + static_cast<ptrdiff_t>(ext));
            if (piece.size() < k) break;  // final positions are not windows
            auto c = naive_mem(piece, 10, k);
            // windows starting beyond the segment belong to the next one
            if (stop < digits.size()) {
                c.total_positions =
                    std::min(stop - start, piece.size() - k + 1);
                // counted extension windows: remove those starting past seg end
                for (size_t i = stop - start; i + k <= piece.size(); ++i) {
                    uint64_t v = 0;
                    for (int j = 0; j < k; ++j)
                        v = v * 10 + piece[i + static_cast<size_t>(j)];
                    --c.counts[v];
                }
            }
            acc = merge_counts(acc, c);
        }
        CHECK(acc.counts == whole.counts);
        CHECK(acc.total_positions == whole.total_positions);
    }
}

TEST_CASE("marginalize") {
    auto c2 = count_mem(from_text("0123456789"), 10, 2);
    auto last = marginalize(c2, Marginal::Last);
    CHECK(last.k == 1);
    CHECK(last.total_positions == 9);
    for (int d = 0; d <= 8; ++d) CHECK(last.counts[static_cast<size_t>(d)] == 1);
    CHECK(last.counts[9] == 0);

    auto first = marginalize(c2, Marginal::First);
    uint64_t mass_first = 0, mass_last = 0;
    for (uint64_t v : first.counts) mass_first += v;
    for (uint64_t v : last.counts) mass_last += v;
    CHECK(mass_first == c2.total_positions);
    CHECK(mass_last == c2.total_positions);

    CHECK_THROWS_AS(marginalize(last, Marginal::Last), std::invalid_argument);

    // oracle comparison on a random stream
    std::mt19937_64 rng(0x3333);
    auto digits = random_digits(rng, 10, 4000);
    auto c3 = count_mem(digits, 10, 3);
    auto m = marginalize(c3, Marginal::Last);
    std::vector<uint8_t> head(digits.begin(), digits.end() - 1);
    CHECK(m.counts == naive_mem(head, 10, 2).counts);
    auto mf = marginalize(c3, Marginal::First);
    std::vector<uint8_t> tail(digits.begin() + 1, digits.end());
    CHECK(mf.counts == naive_mem(tail, 10, 2).counts);
}

TEST_CASE("gram labels follow big-endian digit order") {
    CHECK(gram_label(0, 10, 3) == "000");
    CHECK(gram_label(42, 10, 3) == "042");
    CHECK(gram_label(255, 16, 2) == "FF");
    CHECK(gram_label(4095, 16, 3) == "FFF");
}

TEST_CASE("counts persistence") {
    std::mt19937_64 rng(0x4444);
    auto digits = random_digits(rng, 16, 3000);
    MemoryDigitSource src(digits);
    auto tables = count_all(src, 16, 3, 2);
    for (auto& t : tables) t.source_label = "unit-test";

    std::string text = counts_to_json(tables);
    auto back = counts_from_json(text);
    REQUIRE(back.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(back[i].counts == tables[i].counts);
        CHECK(back[i].total_positions == tables[i].total_positions);
        CHECK(back[i].base == 16);
        CHECK(back[i].source_label == "unit-test");
    }

    const char* path = "test_tmp_counts.json";
    write_counts_file(path, tables);
    auto reread = read_counts_file(path);
    CHECK(reread.size() == 3);
    CHECK(reread[2].counts == tables[2].counts);
    std::remove(path);

    CHECK_THROWS_AS(counts_from_json("{not json"), ParseError);
    CHECK_THROWS_AS(counts_from_json("{\"base\": 10}"), ParseError);
}
