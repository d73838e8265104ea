#include <doctest.h>

#include <sstream>

#include "genpip/chunkqc.hpp"
#include "genpip/dna.hpp"
#include "genpip/error.hpp"
#include "genpip/refindex.hpp"
#include "oracles/minimizer_oracle.hpp"
#include "test_util.hpp"

using namespace genpip;

namespace {

std::string serialize(const MinimizerIndex& idx) {
    std::ostringstream os;
    write_index(os, idx);
    return os.str();
}

MinimizerIndex deserialize(const std::string& bytes) {
    std::istringstream in(bytes);
    return read_index(in);
}

MinimizerIndex small_index(const std::string& seq, IndexParams p) {
    std::vector<Reference> refs{{"r", seq}};
    return build_index(refs, p);
}

} // namespace

TEST_CASE("minimizers: small forward example") {
    auto m = minimizers("ACGGT", IndexParams{3, 2, false});
    REQUIRE(m.size() == 2);
    CHECK(m[0] == Minimizer{pack_kmer("ACG"), 0, Strand::forward});
    CHECK(m[1] == Minimizer{pack_kmer("CGG"), 1, Strand::forward});
}

TEST_CASE("minimizers: window of one selects every k-mer") {
    std::mt19937_64 rng(1);
    std::string s = testutil::random_bases(rng, 200);
    auto m = minimizers(s, IndexParams{7, 1, true});
    REQUIRE(m.size() == s.size() - 6);
    for (uint32_t i = 0; i < m.size(); ++i) {
        CHECK(m[i].pos == i);
    }
}

TEST_CASE("minimizers: too short sequence") {
    CHECK(minimizers("ACGTACGTACGT", IndexParams{5, 9, true}).empty());
    CHECK_FALSE(minimizers("ACGTACGTACGTA", IndexParams{5, 9, true}).empty());
}

TEST_CASE("minimizers: parameter validation") {
    CHECK_THROWS_AS(minimizers("ACGT", IndexParams{0, 1, true}), ConfigError);
    CHECK_THROWS_AS(minimizers("ACGT", IndexParams{32, 1, true}), ConfigError);
    CHECK_THROWS_AS(minimizers("ACGT", IndexParams{3, 0, true}), ConfigError);
}

TEST_CASE("index: table of the small example") {
    MinimizerIndex idx = small_index("ACGGT", IndexParams{3, 2, false});
    CHECK(idx.num_codes() == 2);
    auto a = idx.lookup(pack_kmer("ACG"));
    REQUIRE(a.size() == 1);
    CHECK(a[0] == Location{0, 0, Strand::forward});
    auto c = idx.lookup(pack_kmer("CGG"));
    REQUIRE(c.size() == 1);
    CHECK(c[0] == Location{0, 1, Strand::forward});
    CHECK(idx.lookup(pack_kmer("TTT")).empty());
}

TEST_CASE("index: repeated k-mer keeps sorted locations") {
    MinimizerIndex idx = small_index("ACGGTACGGT", IndexParams{3, 2, false});
    auto a = idx.lookup(pack_kmer("ACG"));
    REQUIRE(a.size() == 2);
    CHECK(a[0].pos == 0);
    CHECK(a[1].pos == 5);
}

TEST_CASE("index: two references get distinct ids") {
    std::vector<Reference> refs{{"a", "ACGGT"}, {"b", "ACGGT"}};
    MinimizerIndex idx = build_index(refs, IndexParams{3, 2, false});
    auto a = idx.lookup(pack_kmer("ACG"));
    REQUIRE(a.size() == 2);
    CHECK(a[0].ref_id == 0);
    CHECK(a[1].ref_id == 1);
    CHECK(idx.refs() == std::vector<RefMeta>{{"a", 5}, {"b", 5}});
}

TEST_CASE("index io: round trip") {
    MinimizerIndex idx = small_index("ACGGT", IndexParams{3, 2, false});
    CHECK(deserialize(serialize(idx)) == idx);
    std::mt19937_64 rng(2);
    std::vector<Reference> refs{{"x", testutil::random_bases(rng, 5000)}, {"y", testutil::random_bases(rng, 300)}};
    MinimizerIndex big = build_index(refs, IndexParams{11, 5, true});
    const auto path = testutil::tmp_dir() / "rt.idx";
    save_index(path, big);
    MinimizerIndex back = load_index(path);
    CHECK(back == big);
    CHECK(serialize(back) == serialize(big));
}

TEST_CASE("index io: bad magic, truncation, checksum") {
    CHECK_THROWS_WITH_AS(deserialize("hello world, not an index"), doctest::Contains("not a genpip index"),
                         FormatError);
    std::mt19937_64 rng(3);
    std::vector<Reference> refs{{"x", testutil::random_bases(rng, 2000)}};
    const std::string bytes = serialize(build_index(refs, IndexParams{9, 4, true}));
    CHECK_THROWS_AS(deserialize(bytes.substr(0, bytes.size() / 2)), FormatError);
    std::string flipped = bytes;
    flipped.back() = static_cast<char>(flipped.back() ^ 0x5a);
    CHECK_THROWS_WITH_AS(deserialize(flipped), doctest::Contains("checksum"), FormatError);
    CHECK_THROWS_AS(load_index("/nonexistent/dir/x.idx"), IoError);
}

TEST_CASE("seeding: parameters must match the index") {
    MinimizerIndex idx = small_index("ACGGTACGGTTTGACA", IndexParams{5, 3, true});
    Read r = testutil::make_read("q", "ACGGTACGG", 10);
    auto chunks = split_into_chunks(r, 300);
    CHECK_THROWS_AS(seed_chunk(chunks[0], idx, SeedConfig{IndexParams{15, 10, true}, 500}), ConfigError);
    CHECK_NOTHROW(seed_chunk(chunks[0], idx, SeedConfig{IndexParams{5, 3, true}, 500}));
}

TEST_CASE("seeding: exact substring shares one diagonal") {
    std::mt19937_64 rng(4);
    Reference ref{"r", testutil::random_bases(rng, 100000)};
    std::vector<Reference> refs{ref};
    IndexParams ip{15, 10, true};
    MinimizerIndex idx = build_index(refs, ip);
    Read r = testutil::make_read("q", ref.bases.substr(100, 900), 10);
    auto chunks = split_into_chunks(r, 300);
    size_t total = 0;
    for (const Chunk& c : chunks) {
        for (const Anchor& a : seed_chunk(c, idx, SeedConfig{ip, 500})) {
            CHECK(a.strand == Strand::forward);
            CHECK(static_cast<int64_t>(a.ref_pos) - static_cast<int64_t>(a.read_pos) == 100);
            ++total;
        }
    }
    CHECK(total > 0);
}

TEST_CASE("seeding: random chunk against a 1 Mbp reference") {
    std::mt19937_64 rng(5);
    std::vector<Reference> refs{{"r", testutil::random_bases(rng, 1'000'000)}};
    IndexParams ip{15, 10, true};
    MinimizerIndex idx = build_index(refs, ip);
    for (int t = 0; t < 5; ++t) {
        Read r = testutil::make_read("q", testutil::random_bases(rng, 300), 10);
        CHECK(seed_chunk(split_into_chunks(r, 300)[0], idx, SeedConfig{ip, 500}).size() <= 2);
    }
    Read tiny = testutil::make_read("t", "ACGTACGTAC", 10);
    CHECK(seed_chunk(split_into_chunks(tiny, 300)[0], idx, SeedConfig{ip, 500}).empty());
}

TEST_CASE("property: minimizers equal the window-scan oracle") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 400; ++t) {
        const int k = 1 + static_cast<int>(rng() % 15);
        const int w = 1 + static_cast<int>(rng() % 12);
        const bool canonical = rng() & 1;
        std::string s = testutil::random_bases(rng, rng() % 201);
        if (t % 4 == 0) {
            s = std::string(s.size(), 'A') + s.substr(0, s.size() / 2);
        }
        IndexParams p{k, w, canonical};
        CHECK(minimizers(s, p) == oracle::minimizers(s, p));
    }
}

TEST_CASE("property: every reference minimizer is retrievable") {
    std::mt19937_64 rng(7);
    std::vector<Reference> refs{{"a", testutil::random_bases(rng, 3000)}, {"b", testutil::random_bases(rng, 1200)}};
    IndexParams ip{13, 6, true};
    MinimizerIndex idx = build_index(refs, ip);
    for (uint32_t id = 0; id < refs.size(); ++id) {
        for (const Minimizer& m : minimizers(refs[id].bases, ip)) {
            auto hits = idx.lookup(m.code);
            CHECK(std::find(hits.begin(), hits.end(), Location{id, m.pos, m.strand}) != hits.end());
        }
    }
}
