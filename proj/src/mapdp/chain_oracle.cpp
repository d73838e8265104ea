#include "genpip/mapdp.hpp"

#include <algorithm>
#include <cmath>

#include "genpip/error.hpp"

namespace genpip {

// Enumerates every subset of the anchors; deliberately shares no code with
// chain().
double chain_bruteforce(std::span<const Anchor> anchors, const ChainParams& p) {
    if (anchors.size() > kBruteforceMaxAnchors) {
        throw Error("chain_bruteforce: at most " + std::to_string(kBruteforceMaxAnchors) +
                    " anchors supported, got " + std::to_string(anchors.size()));
    }
    std::vector<Anchor> a(anchors.begin(), anchors.end());
    std::sort(a.begin(), a.end(), [](const Anchor& x, const Anchor& y) {
        if (x.strand != y.strand) return x.strand < y.strand;
        if (x.ref_id != y.ref_id) return x.ref_id < y.ref_id;
        if (x.ref_pos != y.ref_pos) return x.ref_pos < y.ref_pos;
        return x.read_pos < y.read_pos;
    });
    const auto g = static_cast<double>(p.max_gap);
    double best = 0.0;
    const uint32_t n = static_cast<uint32_t>(a.size());
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        double score = 0.0;
        int prev = -1;
        bool ok = true;
        for (uint32_t i = 0; i < n && ok; ++i) {
            if (!(mask & (1u << i))) {
                continue;
            }
            if (prev < 0) {
                score = p.match_weight;
                prev = static_cast<int>(i);
                continue;
            }
            const Anchor& x = a[static_cast<size_t>(prev)];
            const Anchor& y = a[i];
            if (x.strand != y.strand || x.ref_id != y.ref_id) {
                ok = false;
                break;
            }
            const double dref = static_cast<double>(y.ref_pos) - static_cast<double>(x.ref_pos);
            double dread = static_cast<double>(y.read_pos) - static_cast<double>(x.read_pos);
            if (y.strand == Strand::reverse) {
                dread = -dread;
            }
            if (dref <= 0 || dread <= 0 || dref > g || dread > g) {
                ok = false;
                break;
            }
            score = score + std::min(std::min(p.match_weight, dread), dref) -
                    p.gap_coef * std::fabs(dref - dread);
            prev = static_cast<int>(i);
        }
        if (ok && score > best) {
            best = score;
        }
    }
    return best;
}

} // namespace genpip
