#include "genpip/refindex.hpp"

#include <algorithm>
#include <limits>

#include "genpip/error.hpp"

namespace genpip {

std::span<const Location> MinimizerIndex::lookup(uint64_t code) const {
    auto it = slot_of_.find(code);
    if (it == slot_of_.end()) {
        return {};
    }
    const uint32_t slot = it->second;
    return std::span<const Location>(locations_).subspan(offsets_[slot],
                                                         offsets_[slot + 1] - offsets_[slot]);
}

void MinimizerIndex::finalize_lookup() {
    slot_of_.clear();
    slot_of_.reserve(codes_.size());
    for (uint32_t i = 0; i < codes_.size(); ++i) {
        slot_of_.emplace(codes_[i], i);
    }
}

bool operator==(const MinimizerIndex& a, const MinimizerIndex& b) {
    return a.params_ == b.params_ && a.refs_ == b.refs_ && a.codes_ == b.codes_ &&
           a.offsets_ == b.offsets_ && a.locations_ == b.locations_;
}

MinimizerIndex build_index(std::span<const Reference> refs, const IndexParams& params) {
    params.validate();
    if (refs.empty()) {
        throw Error("build_index: no references");
    }
    if (refs.size() > std::numeric_limits<uint32_t>::max()) {
        throw Error("build_index: too many references");
    }
    struct Hit {
        uint64_t code;
        Location loc;
    };
    std::vector<Hit> hits;
    MinimizerIndex idx;
    idx.params_ = params;
    bool any_indexable = false;
    for (uint32_t rid = 0; rid < refs.size(); ++rid) {
        const Reference& ref = refs[rid];
        if (ref.length() > std::numeric_limits<uint32_t>::max()) {
            throw Error("build_index: reference " + ref.name + " exceeds 4 Gbp");
        }
        idx.refs_.push_back(RefMeta{ref.name, ref.length()});
        auto mins = minimizers(ref.bases, params);
        any_indexable = any_indexable || !mins.empty();
        for (const Minimizer& m : mins) {
            hits.push_back(Hit{m.code, Location{rid, m.pos, m.strand}});
        }
    }
    if (!any_indexable) {
        throw Error("build_index: every reference is shorter than k + w - 1");
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        if (a.code != b.code) return a.code < b.code;
        if (a.loc.ref_id != b.loc.ref_id) return a.loc.ref_id < b.loc.ref_id;
        return a.loc.pos < b.loc.pos;
    });
    idx.locations_.reserve(hits.size());
    for (const Hit& h : hits) {
        if (idx.codes_.empty() || idx.codes_.back() != h.code) {
            idx.codes_.push_back(h.code);
            idx.offsets_.push_back(static_cast<uint32_t>(idx.locations_.size()));
        }
        idx.locations_.push_back(h.loc);
    }
    idx.offsets_.push_back(static_cast<uint32_t>(idx.locations_.size()));
    idx.finalize_lookup();
    return idx;
}

} // namespace genpip
