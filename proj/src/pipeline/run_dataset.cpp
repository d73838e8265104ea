#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "genpip/error.hpp"
#include "genpip/pipeline.hpp"

namespace genpip {

void check_references(const MinimizerIndex& index, std::span<const Reference> refs) {
    const std::vector<RefMeta>& meta = index.refs();
    if (meta.size() != refs.size()) {
        throw ConfigError("reference set has " + std::to_string(refs.size()) + " records, index has " +
                          std::to_string(meta.size()));
    }
    for (size_t i = 0; i < refs.size(); ++i) {
        if (meta[i].name != refs[i].name || meta[i].length != refs[i].length()) {
            throw ConfigError("reference " + refs[i].name + " does not match the index");
        }
    }
}

DatasetRun run_dataset(std::span<const Read> reads, const MinimizerIndex& index, std::span<const Reference> refs,
                       const PipelineConfig& cfg, Mode mode, unsigned threads) {
    cfg.validate();
    check_references(index, refs);

    DatasetRun out;
    out.mode = mode;
    out.reads.resize(reads.size());

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(reads.size(), 1)));

    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (size_t i = next++; i < reads.size(); i = next++) {
            try {
                out.reads[i] = run_read(reads[i], index, refs, cfg, mode);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = reads.size();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    for (size_t i = 0; i < out.reads.size(); ++i) {
        for (StageJob& job : out.reads[i].jobs) {
            job.read = static_cast<uint32_t>(i);
        }
        out.work += out.reads[i].work;
    }
    return out;
}

} // namespace genpip
