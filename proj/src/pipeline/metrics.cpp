#include "genpip/error.hpp"
#include "genpip/pipeline.hpp"

namespace genpip {

RejectionMetrics rejection_metrics(const DatasetRun& run, const DatasetRun* oracle, double theta_qs) {
    RejectionMetrics m;
    const uint64_t n = run.reads.size();
    const uint64_t rej_qsr = run.work.reads_rejected_qsr;
    const uint64_t rej_cmr = run.work.reads_rejected_cmr;
    m.rejection_ratio = n == 0 ? 0.0 : static_cast<double>(rej_qsr + rej_cmr) / static_cast<double>(n);
    if (!oracle) {
        return m;
    }
    if (oracle->reads.size() != run.reads.size()) {
        throw Error("oracle run covers a different read set");
    }
    for (size_t i = 0; i < run.reads.size(); ++i) {
        const ReadRun& r = run.reads[i];
        const ReadRun& o = oracle->reads[i];
        if (r.result.read_id != o.result.read_id) {
            throw Error("oracle run covers a different read set (" + r.result.read_id + " vs " +
                        o.result.read_id + ")");
        }
        if (r.result.status == ReadStatus::rej_qsr) {
            if (!o.read_aqs) {
                throw Error("oracle run has no quality for " + o.result.read_id);
            }
            if (!o.read_aqs->below(theta_qs)) {
                ++m.fn_qsr;
            }
        } else if (r.result.status == ReadStatus::rej_cmr && o.result.status == ReadStatus::mapped) {
            ++m.fn_cmr;
        }
    }
    m.fn_ratio_qsr = rej_qsr == 0 ? 0.0 : static_cast<double>(m.fn_qsr) / static_cast<double>(rej_qsr);
    m.fn_ratio_cmr = rej_cmr == 0 ? 0.0 : static_cast<double>(m.fn_cmr) / static_cast<double>(rej_cmr);
    return m;
}

} // namespace genpip
