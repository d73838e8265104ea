#include "genpip/refindex.hpp"

#include <algorithm>
#include <tuple>

#include "genpip/error.hpp"

namespace genpip {

bool anchor_less(const Anchor& a, const Anchor& b) {
    return std::tie(a.strand, a.ref_id, a.ref_pos, a.read_pos) <
           std::tie(b.strand, b.ref_id, b.ref_pos, b.read_pos);
}

void sort_anchors(std::vector<Anchor>& anchors) {
    std::sort(anchors.begin(), anchors.end(), anchor_less);
}

std::vector<Anchor> seed_chunk(const Chunk& chunk, const MinimizerIndex& index, const SeedConfig& cfg) {
    if (!(cfg.params == index.params())) {
        throw ConfigError("seeding parameters (k=" + std::to_string(cfg.params.k) +
                          ", w=" + std::to_string(cfg.params.w) +
                          ") do not match the index (k=" + std::to_string(index.params().k) +
                          ", w=" + std::to_string(index.params().w) + ")");
    }
    std::vector<Anchor> anchors;
    for (const Minimizer& m : minimizers(chunk.bases, cfg.params)) {
        auto hits = index.lookup(m.code);
        if (hits.empty() || hits.size() > cfg.max_occ) {
            continue;
        }
        for (const Location& loc : hits) {
            anchors.push_back(Anchor{chunk.offset + m.pos, loc.ref_id, loc.pos, loc.strand ^ m.strand});
        }
    }
    sort_anchors(anchors);
    return anchors;
}

} // namespace genpip
