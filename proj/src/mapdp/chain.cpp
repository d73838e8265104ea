#include "genpip/mapdp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "genpip/error.hpp"

namespace genpip {

namespace {

// Read coordinate along which a chain increases: reverse-strand anchors run
// backwards on the read.
int64_t chain_read_coord(const Anchor& a) {
    return a.strand == Strand::forward ? static_cast<int64_t>(a.read_pos)
                                       : -static_cast<int64_t>(a.read_pos);
}

// score + min(w, dread, dref) - gap_coef * |dref - dread|, evaluated left to
// right; monotone in `score`, so the DP maximum equals the best path score.
double extend(double score, const Anchor& from, const Anchor& to, const ChainParams& p) {
    const double dref = static_cast<double>(to.ref_pos) - static_cast<double>(from.ref_pos);
    const double dread = static_cast<double>(chain_read_coord(to) - chain_read_coord(from));
    return score + std::min({p.match_weight, dread, dref}) - p.gap_coef * std::fabs(dref - dread);
}

Chain make_chain(std::vector<Anchor> path, const ChainParams& p) {
    Chain c;
    c.strand = path.front().strand;
    c.ref_id = path.front().ref_id;
    c.score = p.match_weight;
    for (size_t i = 1; i < path.size(); ++i) {
        c.score = extend(c.score, path[i - 1], path[i], p);
    }
    c.ref_start = path.front().ref_pos;
    c.ref_end = path.back().ref_pos + p.seed_len;
    auto [lo, hi] = std::minmax_element(path.begin(), path.end(), [](const Anchor& a, const Anchor& b) {
        return a.read_pos < b.read_pos;
    });
    c.read_start = lo->read_pos;
    c.read_end = hi->read_pos + p.seed_len;
    c.seed_len = p.seed_len;
    c.anchors = std::move(path);
    return c;
}

} // namespace

void ChainParams::validate() const {
    if (!(match_weight > 0)) {
        throw ConfigError("match_weight must be positive");
    }
    if (!(gap_coef >= 0)) {
        throw ConfigError("gap_coef must be non-negative");
    }
    if (max_gap < 1) {
        throw ConfigError("max_gap must be at least 1");
    }
}

std::vector<Chain> chain(std::span<const Anchor> input, const ChainParams& p) {
    p.validate();
    std::vector<Anchor> a(input.begin(), input.end());
    sort_anchors(a);
    const size_t n = a.size();
    std::vector<double> f(n, 0.0);
    std::vector<int64_t> pred(n, -1);

    for (size_t lo = 0; lo < n;) {
        size_t hi = lo;
        while (hi < n && a[hi].strand == a[lo].strand && a[hi].ref_id == a[lo].ref_id) {
            ++hi;
        }
        for (size_t i = lo; i < hi; ++i) {
            f[i] = p.match_weight;
            for (size_t j = i; j-- > lo;) {
                const uint32_t dref = a[i].ref_pos - a[j].ref_pos;
                if (dref > p.max_gap) {
                    break;
                }
                if (dref == 0) {
                    continue;
                }
                const int64_t dread = chain_read_coord(a[i]) - chain_read_coord(a[j]);
                if (dread <= 0 || dread > p.max_gap) {
                    continue;
                }
                const double cand = extend(f[j], a[j], a[i], p);
                if (cand > f[i]) {
                    f[i] = cand;
                    pred[i] = static_cast<int64_t>(j);
                }
            }
        }
        lo = hi;
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return f[x] > f[y]; });

    std::vector<char> used(n, 0);
    std::vector<Chain> chains;
    for (size_t end : order) {
        if (used[end]) {
            continue;
        }
        std::vector<Anchor> path;
        for (int64_t cur = static_cast<int64_t>(end); cur >= 0 && !used[static_cast<size_t>(cur)];
             cur = pred[static_cast<size_t>(cur)]) {
            used[static_cast<size_t>(cur)] = 1;
            path.push_back(a[static_cast<size_t>(cur)]);
        }
        if (path.size() < std::max<uint32_t>(p.min_chain_anchors, 1)) {
            continue;
        }
        std::reverse(path.begin(), path.end());
        chains.push_back(make_chain(std::move(path), p));
    }
    std::stable_sort(chains.begin(), chains.end(), [](const Chain& x, const Chain& y) {
        if (x.score != y.score) return x.score > y.score;
        return std::tie(x.ref_id, x.ref_start, x.read_start) < std::tie(y.ref_id, y.ref_start, y.read_start);
    });
    return chains;
}

std::vector<Anchor> merge_chunk_anchors(std::span<const ChunkAnchors> chunks) {
    std::vector<Anchor> merged;
    for (const ChunkAnchors& c : chunks) {
        if (c.read_id != chunks.front().read_id) {
            throw Error("merge_chunk_anchors: chunks from different reads (" +
                        chunks.front().read_id + ", " + c.read_id + ")");
        }
        merged.insert(merged.end(), c.anchors.begin(), c.anchors.end());
    }
    sort_anchors(merged);
    return merged;
}

} // namespace genpip
