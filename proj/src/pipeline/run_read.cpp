#include <algorithm>

#include "genpip/error.hpp"
#include "genpip/pipeline.hpp"

namespace genpip {

void ErConfig::validate() const {
    qsr.validate();
    if (cmr_enabled && n_cm < 1) {
        throw ConfigError("n_cm must be at least 1");
    }
    if (!(theta_cm >= 0)) {
        throw ConfigError("theta_cm must be non-negative");
    }
}

void PipelineConfig::validate() const {
    if (chunk_size == 0) {
        throw ConfigError("chunk size must be positive");
    }
    er.validate();
    seed.params.validate();
    chain.validate();
    align.validate();
    if (static_cast<uint32_t>(seed.params.k) != chain.seed_len) {
        throw ConfigError("chain seed length must equal the index k");
    }
    if (read_gate_theta && !(*read_gate_theta >= 0)) {
        throw ConfigError("read gate threshold must be non-negative");
    }
}

namespace {

class ReadRunner {
public:
    ReadRunner(const Read& read, const MinimizerIndex& index, std::span<const Reference> refs,
               const PipelineConfig& cfg)
        : read_(read), index_(index), refs_(refs), cfg_(cfg) {
        if (read.length() > 0) {
            chunks_ = split_into_chunks(read, cfg.chunk_size);
        }
        anchors_.resize(chunks_.size());
        tail_.assign(chunks_.size(), -1);
        out_.result.read_id = read.id;
        out_.result.read_len = static_cast<uint32_t>(read.length());
    }

    ReadRun run(Mode mode) {
        if (chunks_.empty()) {
            return finish(ReadStatus::qc_fail);
        }
        switch (mode) {
        case Mode::cp: return run_cp();
        case Mode::cp_er: return run_cp_er();
        case Mode::sequential: return run_read_level(false);
        case Mode::decoupled: return run_read_level(true);
        }
        throw Error("unknown mode");
    }

private:
    uint32_t emit(int32_t chunk, Stage stage, uint64_t work, std::vector<uint32_t> deps) {
        out_.jobs.push_back(StageJob{0, chunk, stage, work, std::move(deps)});
        const auto id = static_cast<uint32_t>(out_.jobs.size() - 1);
        if (chunk >= 0) {
            tail_[chunk] = static_cast<int32_t>(id);
        }
        return id;
    }

    std::vector<uint32_t> tail_deps(uint32_t chunk, const std::vector<uint32_t>& extra = {}) const {
        std::vector<uint32_t> deps = extra;
        if (tail_[chunk] >= 0) {
            deps.push_back(static_cast<uint32_t>(tail_[chunk]));
        }
        return deps;
    }

    std::vector<uint32_t> all_tails() const {
        std::vector<uint32_t> deps;
        for (int32_t t : tail_) {
            if (t >= 0) {
                deps.push_back(static_cast<uint32_t>(t));
            }
        }
        return deps;
    }

    void basecall(uint32_t i, std::vector<uint32_t> deps = {}) {
        emit(static_cast<int32_t>(i), Stage::bc, chunks_[i].length(), std::move(deps));
        ++out_.work.chunks_basecalled;
    }

    void score_quality(uint32_t i, std::vector<uint32_t> extra = {}) {
        emit(static_cast<int32_t>(i), Stage::cqs, chunks_[i].length(), tail_deps(i, extra));
        aqs_.merge(chunks_[i]);
        ++out_.work.chunks_cqs;
    }

    void seed(uint32_t i, std::vector<uint32_t> extra = {}) {
        emit(static_cast<int32_t>(i), Stage::seed, chunks_[i].length(), tail_deps(i, extra));
        anchors_[i] = seed_chunk(chunks_[i], index_, cfg_.seed);
        ++out_.work.chunks_seeded;
    }

    void chain_chunk(uint32_t i) {
        emit(static_cast<int32_t>(i), Stage::chain, chunks_[i].length(), tail_deps(i));
        ++out_.work.chunks_chained;
    }

    void full_chunk(uint32_t i, const std::vector<uint32_t>& gate) {
        basecall(i, gate);
        score_quality(i);
        seed(i);
        chain_chunk(i);
    }

    std::vector<Anchor> anchors_of(std::span<const uint32_t> which) const {
        std::vector<Anchor> all;
        for (uint32_t i : which) {
            all.insert(all.end(), anchors_[i].begin(), anchors_[i].end());
        }
        sort_anchors(all);
        return all;
    }

    bool whole_read_qc_fails() {
        out_.read_aqs = aqs_.average();
        return aqs_.average().below(cfg_.er.qsr.theta_qs);
    }

    ReadRun finish(ReadStatus status) {
        out_.result.status = status;
        switch (status) {
        case ReadStatus::rej_qsr: ++out_.work.reads_rejected_qsr; break;
        case ReadStatus::rej_cmr: ++out_.work.reads_rejected_cmr; break;
        case ReadStatus::qc_fail: ++out_.work.reads_qc_failed; break;
        case ReadStatus::unmapped: ++out_.work.reads_unmapped; break;
        case ReadStatus::mapped: ++out_.work.reads_mapped; break;
        }
        return std::move(out_);
    }

    // Read-level chaining, gate and alignment once every chunk is seeded.
    ReadRun map_read() {
        std::vector<uint32_t> every(chunks_.size());
        for (uint32_t i = 0; i < every.size(); ++i) {
            every[i] = i;
        }
        const std::vector<Chain> chains = chain(anchors_of(every), cfg_.chain);
        if (chains.empty()) {
            return finish(ReadStatus::unmapped);
        }
        const Chain& best = chains.front();
        out_.result.best_chain_score = best.score;
        if (cfg_.read_gate && read_gate(best.score, read_.length(), cfg_.gate_theta()) == GateOutcome::stop) {
            return finish(ReadStatus::unmapped);
        }
        emit(kReadLevel, Stage::align, read_.length(), all_tails());
        ++out_.work.reads_aligned;
        out_.work.aligned_bases += read_.length();

        const AlignmentResult aln = align(read_, best, refs_[best.ref_id], cfg_.align);
        if (aln.score <= 0) {
            return finish(ReadStatus::unmapped);
        }
        MappingResult& r = out_.result;
        r.alignment_score = aln.score;
        r.region = MappedRegion{best.ref_id, aln.ref_start, aln.ref_end, best.strand};
        const auto len = static_cast<uint32_t>(read_.length());
        if (best.strand == Strand::forward) {
            r.read_start = aln.read_start;
            r.read_end = aln.read_end;
        } else {
            r.read_start = len - aln.read_end;
            r.read_end = len - aln.read_start;
        }
        r.matches = aln.matches;
        r.block_len = aln.block_len;
        return finish(ReadStatus::mapped);
    }

    ReadRun run_cp() {
        for (uint32_t i = 0; i < chunks_.size(); ++i) {
            full_chunk(i, {});
        }
        if (whole_read_qc_fails()) {
            return finish(ReadStatus::qc_fail);
        }
        return map_read();
    }

    ReadRun run_cp_er() {
        const auto n = static_cast<uint32_t>(chunks_.size());
        std::vector<bool> done(n, false);
        std::vector<uint32_t> processed;
        std::vector<uint32_t> gate; // jobs the next decision waits on

        if (cfg_.er.qsr_enabled) {
            const std::vector<uint32_t> sample = qsr_sample_indices(n, cfg_.er.qsr.n_qs);
            std::vector<Chunk> sampled;
            for (uint32_t i : sample) {
                basecall(i);
                score_quality(i);
                sampled.push_back(chunks_[i]);
                gate.push_back(static_cast<uint32_t>(tail_[i]));
            }
            if (qsr_decide(sampled, cfg_.er.qsr).reject) {
                return finish(ReadStatus::rej_qsr);
            }
            for (uint32_t i : sample) {
                seed(i);
                chain_chunk(i);
                done[i] = true;
                processed.push_back(i);
            }
        }

        if (cfg_.er.cmr_enabled) {
            std::vector<uint32_t> large;
            for (uint32_t i = 0; i < n && large.size() < cfg_.er.n_cm; ++i) {
                if (!done[i]) {
                    full_chunk(i, gate);
                    done[i] = true;
                    large.push_back(i);
                    processed.push_back(i);
                }
            }
            std::sort(processed.begin(), processed.end());
            const std::vector<uint32_t>& scored = cfg_.er.strict_large_chunk ? large : processed;
            uint64_t bases = 0;
            for (uint32_t i : scored) {
                bases += chunks_[i].length();
            }
            if (bases > 0) {
                const std::vector<Chain> chains = chain(anchors_of(scored), cfg_.chain);
                const double best = chains.empty() ? 0.0 : chains.front().score;
                if (cmr_decide(best, bases, cfg_.er.theta_cm).reject) {
                    out_.result.best_chain_score = best;
                    return finish(ReadStatus::rej_cmr);
                }
            }
            gate = all_tails();
        }

        for (uint32_t i = 0; i < n; ++i) {
            if (!done[i]) {
                full_chunk(i, gate);
            }
        }
        if (whole_read_qc_fails()) {
            return finish(ReadStatus::qc_fail);
        }
        return map_read();
    }

    ReadRun run_read_level(bool transfer) {
        const auto n = static_cast<uint32_t>(chunks_.size());
        for (uint32_t i = 0; i < n; ++i) {
            basecall(i);
        }
        std::vector<uint32_t> after_bc;
        if (transfer) {
            const uint64_t bytes = 2 * static_cast<uint64_t>(read_.length());
            after_bc.push_back(emit(kReadLevel, Stage::xfer, bytes, all_tails()));
            ++out_.work.reads_transferred;
            out_.work.bytes_transferred += bytes;
        }
        for (uint32_t i = 0; i < n; ++i) {
            score_quality(i, after_bc);
        }
        if (whole_read_qc_fails()) {
            return finish(ReadStatus::qc_fail);
        }
        const std::vector<uint32_t> qc = all_tails();
        for (uint32_t i = 0; i < n; ++i) {
            seed(i, qc);
            chain_chunk(i);
        }
        return map_read();
    }

    const Read& read_;
    const MinimizerIndex& index_;
    std::span<const Reference> refs_;
    const PipelineConfig& cfg_;
    std::vector<Chunk> chunks_;
    std::vector<std::vector<Anchor>> anchors_;
    std::vector<int32_t> tail_; // last job emitted for each chunk
    SqsAccumulator aqs_;
    ReadRun out_;
};

} // namespace

ReadRun run_read(const Read& read, const MinimizerIndex& index, std::span<const Reference> refs,
                 const PipelineConfig& cfg, Mode mode) {
    if (cfg.seed.params != index.params()) {
        throw ConfigError("index was built with different k/w/canonical settings");
    }
    return ReadRunner(read, index, refs, cfg).run(mode);
}

} // namespace genpip
