#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "genpip/chunkqc.hpp"
#include "genpip/costmodel.hpp"
#include "genpip/genio.hpp"
#include "genpip/mapdp.hpp"
#include "genpip/refindex.hpp"
#include "genpip/work.hpp"

namespace genpip {

struct ErConfig {
    QsrConfig qsr;
    uint32_t n_cm = 5;
    double theta_cm = 0.075; // 0.005 * default match weight
    bool qsr_enabled = true;
    bool cmr_enabled = true;
    /// Normalize the CMR score by the N_cm consecutive chunks only instead of
    /// every chunk processed so far.
    bool strict_large_chunk = false;

    void validate() const;
};

struct PipelineConfig {
    uint32_t chunk_size = 300;
    ErConfig er;
    SeedConfig seed;
    ChainParams chain;
    AlignParams align;
    bool read_gate = true;
    /// Defaults to er.theta_cm.
    std::optional<double> read_gate_theta;

    double gate_theta() const { return read_gate_theta.value_or(er.theta_cm); }
    void validate() const;
};

inline constexpr int32_t kReadLevel = -1;

/// One unit of simulated work. `work` is the number of bases (or bytes for
/// XFER) the job handles; `deps` are indices into the same read's job list.
struct StageJob {
    uint32_t read = 0;
    int32_t chunk = kReadLevel;
    Stage stage = Stage::bc;
    uint64_t work = 0;
    std::vector<uint32_t> deps;
};

struct ReadRun {
    MappingResult result;
    std::vector<StageJob> jobs;
    WorkCounts work;
    /// Whole-read average quality, present whenever every chunk was scored.
    std::optional<QualityAverage> read_aqs;
};

/// Processes one read in the given mode. `refs` must be the sequences the
/// index was built from.
ReadRun run_read(const Read& read, const MinimizerIndex& index, std::span<const Reference> refs,
                 const PipelineConfig& cfg, Mode mode);

/// Functional results of a whole dataset, in input order.
struct DatasetRun {
    Mode mode = Mode::cp;
    std::vector<ReadRun> reads;
    WorkCounts work;
};

/// Runs reads on `threads` workers (0 = hardware concurrency). The result
/// does not depend on the thread count.
DatasetRun run_dataset(std::span<const Read> reads, const MinimizerIndex& index,
                       std::span<const Reference> refs, const PipelineConfig& cfg, Mode mode,
                       unsigned threads = 1);

/// Checks that `refs` match the index's reference table.
void check_references(const MinimizerIndex& index, std::span<const Reference> refs);

struct TimingEvent {
    int64_t start_ns = 0;
    int64_t finish_ns = 0;
    Stage stage = Stage::bc;
    uint32_t read = 0;
    uint32_t job = 0;
};

struct StageTiming {
    uint64_t jobs = 0;
    int64_t busy_ns = 0;
    uint32_t servers = 1;
    double utilization = 0;
};

struct TimingResult {
    int64_t makespan_ns = 0;
    std::array<StageTiming, kNumStages> stages{};
    std::vector<TimingEvent> events; // filled when requested, in start order
};

struct TimingOptions {
    /// Block chunk basecalling while the chunk buffer is full (CP and CP_ER).
    /// Otherwise buffer capacities are only checked per read.
    bool model_buffer_stalls = false;
    bool record_events = false;
};

/// Service time of a job under the cost model.
int64_t service_time_ns(const StageJob& job, const CostModel& cost);

/// Event-driven simulation of the staged machine. `jobs[r]` is read r's job
/// list as produced by run_read.
TimingResult simulate_timing(std::span<const std::vector<StageJob>> jobs, const CostModel& cost, Mode mode,
                             const TimingOptions& opts = {});

struct RejectionMetrics {
    double rejection_ratio = 0;
    std::optional<double> fn_ratio_qsr; // need an oracle run
    std::optional<double> fn_ratio_cmr;
    uint64_t fn_qsr = 0;
    uint64_t fn_cmr = 0;
};

/// Oracle is a CP run on the same reads. Without one only the rejection
/// ratio is filled.
RejectionMetrics rejection_metrics(const DatasetRun& run, const DatasetRun* oracle, double theta_qs);

struct RunReport {
    Mode mode = Mode::cp;
    PipelineConfig config;
    uint64_t num_reads = 0;
    TimingResult timing;
    WorkCounts work;
    int64_t energy_pj = 0;
    RejectionMetrics metrics;
    std::vector<MappingResult> reads;

    RunSummary summary() const { return {num_reads, timing.makespan_ns, energy_pj, work.chunks_basecalled}; }
};

struct EvaluateOptions {
    unsigned threads = 1;
    bool oracle = false;
    TimingOptions timing;
};

/// run_dataset + simulate_timing + energy + metrics. When `oracle_run` is
/// given it is used instead of computing a fresh CP run.
RunReport evaluate(std::span<const Read> reads, const MinimizerIndex& index, std::span<const Reference> refs,
                   const PipelineConfig& cfg, Mode mode, const CostModel& cost, const EvaluateOptions& opts = {},
                   DatasetRun* run_out = nullptr, const DatasetRun* oracle_run = nullptr);

inline constexpr int kReportSchemaVersion = 1;

/// Stable JSON text (2-space indent, trailing newline).
std::string report_to_json(const RunReport& report, bool per_read);
/// Reads the fields compare() needs from a report produced above.
RunSummary summary_from_json(const std::string& text);

} // namespace genpip
