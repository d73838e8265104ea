#include "genpip/work.hpp"

namespace genpip {

std::string_view mode_name(Mode m) {
    switch (m) {
    case Mode::sequential: return "sequential";
    case Mode::decoupled: return "decoupled";
    case Mode::cp: return "cp";
    case Mode::cp_er: return "cp-er";
    }
    return "unknown";
}

std::optional<Mode> parse_mode(std::string_view s) {
    if (s == "sequential") return Mode::sequential;
    if (s == "decoupled") return Mode::decoupled;
    if (s == "cp") return Mode::cp;
    if (s == "cp-er" || s == "cp_er") return Mode::cp_er;
    return std::nullopt;
}

std::string_view stage_name(Stage s) {
    switch (s) {
    case Stage::bc: return "BC";
    case Stage::cqs: return "CQS";
    case Stage::xfer: return "XFER";
    case Stage::seed: return "SEED";
    case Stage::chain: return "CHAIN";
    case Stage::align: return "ALIGN";
    }
    return "UNKNOWN";
}

std::optional<Stage> parse_stage(std::string_view s) {
    for (Stage st : kAllStages) {
        if (stage_name(st) == s) {
            return st;
        }
    }
    return std::nullopt;
}

WorkCounts& WorkCounts::operator+=(const WorkCounts& o) {
    chunks_basecalled += o.chunks_basecalled;
    chunks_cqs += o.chunks_cqs;
    chunks_seeded += o.chunks_seeded;
    chunks_chained += o.chunks_chained;
    reads_aligned += o.reads_aligned;
    aligned_bases += o.aligned_bases;
    reads_rejected_qsr += o.reads_rejected_qsr;
    reads_rejected_cmr += o.reads_rejected_cmr;
    reads_qc_failed += o.reads_qc_failed;
    reads_unmapped += o.reads_unmapped;
    reads_mapped += o.reads_mapped;
    reads_transferred += o.reads_transferred;
    bytes_transferred += o.bytes_transferred;
    return *this;
}

} // namespace genpip
