#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "genpip/genio.hpp"

namespace genpip {

/// A contiguous slice of a read. Views into the owning Read, which must
/// outlive the chunk.
struct Chunk {
    std::string_view read_id;
    uint32_t index = 0;
    uint32_t offset = 0;
    std::string_view bases;
    std::span<const uint8_t> quals;

    size_t length() const { return bases.size(); }
};

/// Splits `read` into ceil(N/C) chunks; only the last may be shorter than C.
std::vector<Chunk> split_into_chunks(const Read& read, size_t chunk_size);

/// Sum of the chunk's base qualities.
uint64_t chunk_sqs(const Chunk& chunk);

/// Exact (integer) average of a quality sum over a base count. Threshold
/// comparisons go through below() so every rejection rule uses the same
/// arithmetic.
struct QualityAverage {
    uint64_t sum_q = 0;
    uint64_t n_bases = 0;

    double value() const {
        return n_bases == 0 ? 0.0 : static_cast<double>(sum_q) / static_cast<double>(n_bases);
    }
    bool below(double threshold) const { return value() < threshold; }

    friend bool operator==(const QualityAverage&, const QualityAverage&) = default;
};

/// Running chunk-quality accumulator: merging a chunk adds its SQS and its
/// length, so folding over all chunks of a read reproduces read_aqs exactly.
class SqsAccumulator {
public:
    void merge(const Chunk& chunk);
    void merge(uint64_t sqs, uint64_t n_bases);

    uint64_t sum_q() const { return avg_.sum_q; }
    uint64_t n_bases() const { return avg_.n_bases; }
    bool empty() const { return avg_.n_bases == 0; }
    const QualityAverage& average() const { return avg_; }

    friend bool operator==(const SqsAccumulator&, const SqsAccumulator&) = default;

private:
    QualityAverage avg_;
};

SqsAccumulator merge_aqs(SqsAccumulator acc, const Chunk& chunk);

/// Average per-base quality of the whole read. Throws on an empty read.
QualityAverage read_aqs(const Read& read);

struct QsrConfig {
    uint32_t n_qs = 2;
    double theta_qs = 7.0;

    void validate() const;
};

/// Evenly spaced sample of chunk indices. First and last chunk are always
/// included when n_qs >= 2; n_qs >= num_chunks selects every chunk.
std::vector<uint32_t> qsr_sample_indices(uint32_t num_chunks, uint32_t n_qs);

struct QsrDecision {
    bool reject = false;
    QualityAverage sampled;
};

/// Rejects when the per-base average over the sampled chunks is strictly
/// below theta_qs.
QsrDecision qsr_decide(std::span<const Chunk> sampled, const QsrConfig& cfg);

} // namespace genpip
