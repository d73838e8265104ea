#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace genpip {

/// Execution regime of a run.
///  - sequential: everything serialized (basecall all, then QC, then map)
///  - decoupled: separate basecalling and mapping machines with a transfer
///    between them, overlapping across reads
///  - cp: chunk-granularity pipeline
///  - cp_er: chunk pipeline with early rejection
enum class Mode : uint8_t { sequential, decoupled, cp, cp_er };

std::string_view mode_name(Mode m);
/// Accepts "sequential", "decoupled", "cp", "cp-er" / "cp_er".
std::optional<Mode> parse_mode(std::string_view s);

enum class Stage : uint8_t { bc, cqs, xfer, seed, chain, align };

inline constexpr size_t kNumStages = 6;
inline constexpr std::array<Stage, kNumStages> kAllStages = {
    Stage::bc, Stage::cqs, Stage::xfer, Stage::seed, Stage::chain, Stage::align};

std::string_view stage_name(Stage s);
std::optional<Stage> parse_stage(std::string_view s);

/// What a run actually computed.
struct WorkCounts {
    uint64_t chunks_basecalled = 0;
    uint64_t chunks_cqs = 0;
    uint64_t chunks_seeded = 0;
    uint64_t chunks_chained = 0;
    uint64_t reads_aligned = 0;
    uint64_t aligned_bases = 0;
    uint64_t reads_rejected_qsr = 0;
    uint64_t reads_rejected_cmr = 0;
    uint64_t reads_qc_failed = 0;
    uint64_t reads_unmapped = 0;
    uint64_t reads_mapped = 0;
    uint64_t reads_transferred = 0;
    uint64_t bytes_transferred = 0;

    uint64_t num_reads() const {
        return reads_rejected_qsr + reads_rejected_cmr + reads_qc_failed + reads_unmapped + reads_mapped;
    }

    WorkCounts& operator+=(const WorkCounts& o);
    friend bool operator==(const WorkCounts&, const WorkCounts&) = default;
};

} // namespace genpip
