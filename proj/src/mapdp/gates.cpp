#include "genpip/mapdp.hpp"

#include "genpip/error.hpp"

namespace genpip {

CmrDecision cmr_decide(double large_chunk_chain_score, uint64_t bases_so_far, double theta_cm) {
    if (bases_so_far == 0) {
        throw Error("cmr_decide: no bases examined");
    }
    const double per_base = large_chunk_chain_score / static_cast<double>(bases_so_far);
    return CmrDecision{per_base < theta_cm, per_base};
}

GateOutcome read_gate(double read_chain_best, uint64_t read_len, double theta_cm) {
    return cmr_decide(read_chain_best, read_len, theta_cm).reject ? GateOutcome::stop
                                                                  : GateOutcome::pass;
}

std::string_view status_name(ReadStatus s) {
    switch (s) {
    case ReadStatus::rej_qsr: return "REJ_QSR";
    case ReadStatus::rej_cmr: return "REJ_CMR";
    case ReadStatus::qc_fail: return "QC_FAIL";
    case ReadStatus::unmapped: return "UNMAPPED";
    case ReadStatus::mapped: return "MAPPED";
    }
    return "UNKNOWN";
}

} // namespace genpip
