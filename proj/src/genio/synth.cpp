#include "genpip/genio.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "genpip/dna.hpp"
#include "genpip/error.hpp"

namespace genpip {

namespace {

constexpr double kQualSigma = 2.0;

enum class ReadKind : uint8_t { normal, junk, lowq };

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

// Separate streams so a reference and reads drawn from the same seed are
// unrelated.
constexpr uint32_t kReferenceStream = 1;
constexpr uint32_t kReadStream = 2;

std::mt19937_64 seeded_rng(uint64_t seed, uint32_t stream) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), stream};
    return std::mt19937_64(seq);
}

char random_base(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 3);
    return kCodeBase[pick(rng)];
}

char substitute(char b, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(1, 3);
    return kCodeBase[(kBaseCode[static_cast<uint8_t>(b)] + pick(rng)) & 3];
}

std::vector<uint8_t> draw_quals(size_t n, double mean, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(mean, kQualSigma);
    std::vector<uint8_t> q(n);
    for (auto& v : q) {
        double x = std::round(dist(rng));
        v = static_cast<uint8_t>(std::clamp(x, 0.0, static_cast<double>(kMaxPhred)));
    }
    return q;
}

} // namespace

void SynthParams::validate() const {
    if (!in_unit(sub_rate) || !in_unit(ins_rate) || !in_unit(del_rate)) {
        throw ConfigError("error rates must lie in [0,1]");
    }
    if (!in_unit(junk_frac) || !in_unit(lowq_frac) || junk_frac + lowq_frac > 1.0) {
        throw ConfigError("junk_frac and lowq_frac must lie in [0,1] and sum to at most 1");
    }
    if (len_min < 1 || len_min > len_max) {
        throw ConfigError("read length range must satisfy 1 <= len_min <= len_max");
    }
    if (qual_high_mean < 0 || qual_low_mean < 0) {
        throw ConfigError("quality means must be non-negative");
    }
}

SynthOutput synth_reads(const Reference& ref, const SynthParams& p) {
    p.validate();
    if (p.len_max > ref.length()) {
        throw ConfigError("len_max (" + std::to_string(p.len_max) +
                          ") exceeds reference length (" + std::to_string(ref.length()) + ")");
    }
    std::mt19937_64 rng = seeded_rng(p.rng_seed, kReadStream);

    // Exact class counts, shuffled so classes interleave.
    auto n_junk = static_cast<uint64_t>(std::llround(p.junk_frac * static_cast<double>(p.num_reads)));
    auto n_lowq = static_cast<uint64_t>(std::llround(p.lowq_frac * static_cast<double>(p.num_reads)));
    n_junk = std::min(n_junk, p.num_reads);
    n_lowq = std::min(n_lowq, p.num_reads - n_junk);
    std::vector<ReadKind> kinds(p.num_reads, ReadKind::normal);
    std::fill_n(kinds.begin(), n_junk, ReadKind::junk);
    std::fill_n(kinds.begin() + static_cast<std::ptrdiff_t>(n_junk), n_lowq, ReadKind::lowq);
    std::shuffle(kinds.begin(), kinds.end(), rng);

    std::uniform_int_distribution<uint64_t> len_dist(p.len_min, p.len_max);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    SynthOutput out;
    out.reads.reserve(p.num_reads);
    out.truth.reserve(p.num_reads);
    const size_t width = std::to_string(p.num_reads).size();

    for (uint64_t i = 0; i < p.num_reads; ++i) {
        std::string num = std::to_string(i + 1);
        Read read;
        read.id = "synth_" + std::string(width - num.size(), '0') + num;
        GroundTruth gt{read.id, std::nullopt, '*', kinds[i] == ReadKind::lowq, 0};

        uint64_t len = len_dist(rng);
        if (kinds[i] == ReadKind::junk) {
            read.bases.resize(len);
            for (char& b : read.bases) {
                b = random_base(rng);
            }
        } else {
            std::uniform_int_distribution<uint64_t> start_dist(0, ref.length() - len);
            uint64_t start = start_dist(rng);
            bool reverse = !p.forward_only && unit(rng) < 0.5;
            std::string segment = ref.bases.substr(start, len);
            if (reverse) {
                segment = reverse_complement(segment);
            }
            read.bases.reserve(len + len / 8);
            for (char b : segment) {
                if (unit(rng) < p.del_rate) {
                    continue;
                }
                if (unit(rng) < p.ins_rate) {
                    read.bases.push_back(random_base(rng));
                }
                read.bases.push_back(unit(rng) < p.sub_rate ? substitute(b, rng) : b);
            }
            if (read.bases.empty()) {
                read.bases.push_back(random_base(rng));
            }
            gt.origin = start;
            gt.origin_end = start + len;
            gt.strand = reverse ? '-' : '+';
        }
        double qmean = kinds[i] == ReadKind::lowq ? p.qual_low_mean : p.qual_high_mean;
        read.quals = draw_quals(read.bases.size(), qmean, rng);
        out.reads.push_back(std::move(read));
        out.truth.push_back(std::move(gt));
    }
    return out;
}

Reference random_reference(std::string name, uint64_t length, uint64_t seed) {
    std::mt19937_64 rng = seeded_rng(seed, kReferenceStream);
    Reference ref{std::move(name), std::string(length, 'A')};
    for (char& b : ref.bases) {
        b = random_base(rng);
    }
    return ref;
}

void write_truth_jsonl(std::ostream& out, std::span<const GroundTruth> truth) {
    for (const GroundTruth& gt : truth) {
        nlohmann::ordered_json j;
        j["id"] = gt.id;
        if (gt.origin) {
            j["origin"] = *gt.origin;
        } else {
            j["origin"] = "JUNK";
        }
        j["strand"] = std::string(1, gt.strand);
        j["is_lowq"] = gt.is_lowq;
        out << j.dump() << '\n';
    }
}

void write_truth_jsonl(const std::filesystem::path& path, std::span<const GroundTruth> truth) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    write_truth_jsonl(out, truth);
}

} // namespace genpip
