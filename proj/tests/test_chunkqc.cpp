#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "genpip/chunkqc.hpp"
#include "genpip/error.hpp"
#include "test_util.hpp"

using namespace genpip;

namespace {

std::vector<size_t> lengths(const std::vector<Chunk>& chunks) {
    std::vector<size_t> out;
    for (const Chunk& c : chunks) {
        out.push_back(c.length());
    }
    return out;
}

Read read_with_quals(const std::vector<uint8_t>& q) {
    Read r;
    r.id = "r";
    r.bases.assign(q.size(), 'A');
    r.quals = q;
    return r;
}

uint64_t sum_quals(const Read& r) {
    return std::accumulate(r.quals.begin(), r.quals.end(), uint64_t{0});
}

} // namespace

TEST_CASE("split: chunk counts and lengths") {
    std::mt19937_64 rng(1);
    CHECK(lengths(split_into_chunks(testutil::random_read(rng, "a", 1200), 300)) ==
          std::vector<size_t>{300, 300, 300, 300});
    CHECK(lengths(split_into_chunks(testutil::random_read(rng, "b", 250), 300)) == std::vector<size_t>{250});
    CHECK(lengths(split_into_chunks(testutil::random_read(rng, "c", 301), 300)) == std::vector<size_t>{300, 1});
}

TEST_CASE("split: chunk views carry offsets and indices") {
    std::mt19937_64 rng(2);
    Read r = testutil::random_read(rng, "a", 1000);
    auto chunks = split_into_chunks(r, 300);
    REQUIRE(chunks.size() == 4);
    for (uint32_t i = 0; i < chunks.size(); ++i) {
        CHECK(chunks[i].index == i);
        CHECK(chunks[i].offset == 300 * i);
        CHECK(chunks[i].bases == std::string_view(r.bases).substr(300 * i, chunks[i].length()));
        CHECK(chunks[i].read_id == "a");
    }
}

TEST_CASE("split: zero chunk size is rejected") {
    std::mt19937_64 rng(3);
    CHECK_THROWS_AS(split_into_chunks(testutil::random_read(rng, "a", 10), 0), ConfigError);
}

TEST_CASE("sqs: sums qualities") {
    Read r = read_with_quals({7, 7, 7});
    CHECK(chunk_sqs(split_into_chunks(r, 300)[0]) == 21);
    Read z = read_with_quals(std::vector<uint8_t>(300, 0));
    CHECK(chunk_sqs(split_into_chunks(z, 300)[0]) == 0);
}

TEST_CASE("merge: adds sum and bases") {
    SqsAccumulator acc;
    acc.merge(21, 3);
    Read r = read_with_quals({9, 9, 9});
    acc = merge_aqs(acc, split_into_chunks(r, 300)[0]);
    CHECK(acc.sum_q() == 48);
    CHECK(acc.n_bases() == 6);
    CHECK(acc.average().value() == 8.0);
}

TEST_CASE("read_aqs: values") {
    CHECK(read_aqs(read_with_quals({6, 8})).value() == 7.0);
    CHECK(read_aqs(read_with_quals(std::vector<uint8_t>(977, 10))).value() == 10.0);
    Read empty;
    empty.id = "e";
    CHECK_THROWS(read_aqs(empty));
}

TEST_CASE("sample indices") {
    CHECK(qsr_sample_indices(4, 2) == std::vector<uint32_t>{0, 3});
    CHECK(qsr_sample_indices(10, 5) == std::vector<uint32_t>{0, 2, 4, 7, 9});
    CHECK(qsr_sample_indices(2, 5) == std::vector<uint32_t>{0, 1});
    CHECK(qsr_sample_indices(7, 1) == std::vector<uint32_t>{0});
    CHECK(qsr_sample_indices(1, 2) == std::vector<uint32_t>{0});
}

TEST_CASE("qsr_decide: per-base average against theta") {
    std::vector<uint8_t> q(600, 8);
    std::fill(q.begin() + 300, q.end(), 2);
    Read r = read_with_quals(q);
    auto chunks = split_into_chunks(r, 300);
    QsrConfig cfg{2, 7.0};
    QsrDecision d = qsr_decide(chunks, cfg);
    CHECK(d.sampled.value() == 5.0);
    CHECK(d.reject);

    Read r7 = read_with_quals(std::vector<uint8_t>(600, 7));
    auto c7 = split_into_chunks(r7, 300);
    CHECK_FALSE(qsr_decide(c7, cfg).reject);
}

TEST_CASE("qsr config validation") {
    CHECK_THROWS_AS((QsrConfig{0, 7.0}.validate()), ConfigError);
    CHECK_THROWS_AS((QsrConfig{2, -1.0}.validate()), ConfigError);
}

TEST_CASE("property: telescoping merge equals read_aqs for any chunk size") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        const size_t n = 1 + rng() % 3000;
        Read r = testutil::random_read(rng, "r", n);
        const QualityAverage whole = read_aqs(r);
        CHECK(whole.sum_q == sum_quals(r));
        for (size_t c : {size_t{1}, size_t{7}, size_t{300}, 1 + rng() % 1000}) {
            auto chunks = split_into_chunks(r, c);
            SqsAccumulator fwd, rev;
            for (const Chunk& ch : chunks) {
                fwd = merge_aqs(fwd, ch);
            }
            for (auto it = chunks.rbegin(); it != chunks.rend(); ++it) {
                rev.merge(*it);
            }
            CHECK(fwd.average() == whole);
            CHECK(rev == fwd);
        }
    }
}

TEST_CASE("property: sample indices are bounded, increasing and keep the ends") {
    for (uint32_t m = 1; m <= 60; ++m) {
        for (uint32_t n = 1; n <= 12; ++n) {
            auto idx = qsr_sample_indices(m, n);
            REQUIRE_FALSE(idx.empty());
            CHECK(idx.size() <= std::min(m, n));
            CHECK(idx.front() == 0);
            CHECK(std::adjacent_find(idx.begin(), idx.end(), std::greater_equal<>()) == idx.end());
            CHECK(idx.back() < m);
            if (n >= 2) {
                CHECK(idx.back() == m - 1);
            }
            if (n >= m) {
                CHECK(idx.size() == m);
            }
        }
    }
}

TEST_CASE("property: rejection is monotone in theta") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 100; ++t) {
        Read r = testutil::random_read(rng, "r", 300 * (1 + rng() % 8), 0, 20);
        auto chunks = split_into_chunks(r, 300);
        bool rejected_before = false;
        for (double theta = 0; theta <= 21; theta += 0.5) {
            bool rej = qsr_decide(chunks, QsrConfig{2, theta}).reject;
            CHECK((!rejected_before || rej));
            rejected_before = rej;
        }
        CHECK_FALSE(qsr_decide(chunks, QsrConfig{2, 0.0}).reject);
    }
}

TEST_CASE("property: full coverage decision equals whole-read decision") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 300; ++t) {
        const uint32_t m = 1 + static_cast<uint32_t>(rng() % 10);
        Read r = testutil::random_read(rng, "r", 50 * m, static_cast<int>(rng() % 8), 12);
        auto chunks = split_into_chunks(r, 50);
        auto idx = qsr_sample_indices(m, m + static_cast<uint32_t>(rng() % 3));
        std::vector<Chunk> sampled;
        for (uint32_t i : idx) {
            sampled.push_back(chunks[i]);
        }
        const double theta = static_cast<double>(rng() % 13);
        CHECK(qsr_decide(sampled, QsrConfig{m, theta}).reject == read_aqs(r).below(theta));
    }
}
