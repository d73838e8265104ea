#include "genpip/chunkqc.hpp"

#include <numeric>

#include "genpip/error.hpp"

namespace genpip {

std::vector<Chunk> split_into_chunks(const Read& read, size_t chunk_size) {
    if (chunk_size == 0) {
        throw ConfigError("chunk size must be at least 1");
    }
    if (read.bases.empty()) {
        throw Error("cannot split empty read " + read.id);
    }
    if (read.quals.size() != read.bases.size()) {
        throw Error("read " + read.id + " has mismatched base and quality lengths");
    }
    const size_t n = read.bases.size();
    std::vector<Chunk> chunks;
    chunks.reserve((n + chunk_size - 1) / chunk_size);
    std::string_view bases = read.bases;
    std::span<const uint8_t> quals = read.quals;
    for (size_t off = 0, idx = 0; off < n; off += chunk_size, ++idx) {
        size_t len = std::min(chunk_size, n - off);
        chunks.push_back(Chunk{read.id, static_cast<uint32_t>(idx), static_cast<uint32_t>(off),
                               bases.substr(off, len), quals.subspan(off, len)});
    }
    return chunks;
}

uint64_t chunk_sqs(const Chunk& chunk) {
    return std::accumulate(chunk.quals.begin(), chunk.quals.end(), uint64_t{0});
}

void SqsAccumulator::merge(const Chunk& chunk) { merge(chunk_sqs(chunk), chunk.length()); }

void SqsAccumulator::merge(uint64_t sqs, uint64_t n_bases) {
    avg_.sum_q += sqs;
    avg_.n_bases += n_bases;
}

SqsAccumulator merge_aqs(SqsAccumulator acc, const Chunk& chunk) {
    acc.merge(chunk);
    return acc;
}

QualityAverage read_aqs(const Read& read) {
    if (read.quals.empty()) {
        throw Error("read_aqs: empty read " + read.id);
    }
    return QualityAverage{std::accumulate(read.quals.begin(), read.quals.end(), uint64_t{0}),
                          read.quals.size()};
}

void QsrConfig::validate() const {
    if (n_qs < 1) {
        throw ConfigError("n_qs must be at least 1");
    }
    if (!(theta_qs >= 0)) {
        throw ConfigError("theta_qs must be non-negative");
    }
}

std::vector<uint32_t> qsr_sample_indices(uint32_t num_chunks, uint32_t n_qs) {
    if (num_chunks == 0 || n_qs == 0) {
        return {};
    }
    std::vector<uint32_t> out;
    if (n_qs == 1) {
        out.push_back(0);
        return out;
    }
    if (n_qs >= num_chunks) {
        out.resize(num_chunks);
        std::iota(out.begin(), out.end(), 0u);
        return out;
    }
    // idx_i = round(i * (num_chunks - 1) / (n_qs - 1)), ties to even, in
    // integer arithmetic.
    const uint64_t span = num_chunks - 1;
    const uint64_t den = n_qs - 1;
    for (uint64_t i = 0; i < n_qs; ++i) {
        uint64_t num = i * span;
        uint64_t q = num / den;
        uint64_t r2 = 2 * (num % den);
        if (r2 > den || (r2 == den && (q & 1u))) {
            ++q;
        }
        auto idx = static_cast<uint32_t>(q);
        if (out.empty() || out.back() != idx) {
            out.push_back(idx);
        }
    }
    return out;
}

QsrDecision qsr_decide(std::span<const Chunk> sampled, const QsrConfig& cfg) {
    if (sampled.empty()) {
        throw Error("qsr_decide: no sampled chunks");
    }
    SqsAccumulator acc;
    for (const Chunk& c : sampled) {
        acc.merge(c);
    }
    return QsrDecision{acc.average().below(cfg.theta_qs), acc.average()};
}

} // namespace genpip
