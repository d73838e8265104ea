#include "genpip/mapdp.hpp"

#include <algorithm>
#include <limits>
#include <type_traits>

#include "genpip/dna.hpp"
#include "genpip/error.hpp"

namespace genpip {

namespace {


// Traceback byte: bits 0-1 select the H source, bit 2 marks an extended E
// (horizontal) gap, bit 3 an extended F (vertical) gap.
enum : uint8_t { kFromStart = 0, kFromDiag = 1, kFromE = 2, kFromF = 3 };
constexpr uint8_t kEExtend = 4;
constexpr uint8_t kFExtend = 8;

template <class S>
constexpr S neg_inf() {
    if constexpr (std::is_same_v<S, int16_t>) {
        return -16384;
    } else {
        return std::numeric_limits<int>::min() / 4;
    }
}

template <class S>
struct Sweep {
    S* h0;
    const S* h1; // anti-diagonal a - 1
    const S* h2; // anti-diagonal a - 2
    S* e0;
    const S* e1;
    S* f0;
    const S* f1;
    uint8_t* tb;
    const char* q;
    const char* t;
    int64_t lo, hi;
    S open, ext, match, mismatch;
};

// One anti-diagonal; returns its highest H.
template <class S>
[[gnu::always_inline]] inline S sweep_impl(const Sweep<S>& w) {
    S* __restrict h0 = w.h0;
    const S* __restrict h1 = w.h1;
    const S* __restrict h2 = w.h2;
    S* __restrict e0 = w.e0;
    const S* __restrict e1 = w.e1;
    S* __restrict f0 = w.f0;
    const S* __restrict f1 = w.f1;
    uint8_t* __restrict tb = w.tb;
    const char* __restrict q = w.q;
    const char* __restrict t = w.t;
    const int64_t lo = w.lo, hi = w.hi;
    const S open = w.open, ext = w.ext, match = w.match, mismatch = w.mismatch;
    S best = 0;
#pragma GCC ivdep
    for (int64_t i = lo; i <= hi; ++i) {
        const S e_open = static_cast<S>(h1[i] + open); // from (i, j - 1)
        const S e_ext = static_cast<S>(e1[i] + ext);
        const bool e_x = e_ext > e_open;
        const S e = e_x ? e_ext : e_open;

        const S f_open = static_cast<S>(h1[i - 1] + open); // from (i - 1, j)
        const S f_ext = static_cast<S>(f1[i - 1] + ext);
        const bool f_x = f_ext > f_open;
        const S f = f_x ? f_ext : f_open;

        const S diag_base = h2[i - 1];
        const S diag = static_cast<S>(diag_base + (q[i] == t[i] ? match : mismatch));
        const bool d_pos = diag > 0;
        S h = d_pos ? diag : S{0};
        uint8_t src = (d_pos && diag_base > 0) ? uint8_t{kFromDiag} : uint8_t{kFromStart};
        const bool take_e = e > h;
        h = take_e ? e : h;
        src = take_e ? uint8_t{kFromE} : src;
        const bool take_f = f > h;
        h = take_f ? f : h;
        src = take_f ? uint8_t{kFromF} : src;

        h0[i] = h;
        e0[i] = e;
        f0[i] = f;
        tb[i] = static_cast<uint8_t>((e_x ? kEExtend : 0) | (f_x ? kFExtend : 0) | src);
        best = h > best ? h : best;
    }
    return best;
}

#if defined(__x86_64__) && defined(__has_attribute)
#if __has_attribute(target_clones)
#define GENPIP_CLONES __attribute__((target_clones("avx2", "sse4.1", "default")))
#endif
#endif
#ifndef GENPIP_CLONES
#define GENPIP_CLONES
#endif

GENPIP_CLONES int32_t sweep(const Sweep<int32_t>& w) { return sweep_impl(w); }
GENPIP_CLONES int16_t sweep(const Sweep<int16_t>& w) { return sweep_impl(w); }

} // namespace

void AlignParams::validate() const {
    if (match <= 0) {
        throw ConfigError("match score must be positive");
    }
    if (mismatch > 0 || gap_open > 0 || gap_extend > 0) {
        throw ConfigError("mismatch and gap scores must be <= 0");
    }
    if (band < 1) {
        throw ConfigError("band must be at least 1");
    }
}

namespace {

template <class S>
AlignmentResult smith_waterman_impl(std::string_view query, std::string_view target, const AlignParams& p,
                                    std::optional<Band> band) {
    constexpr S kNegInf = neg_inf<S>();
    const auto n = static_cast<int64_t>(query.size());
    const auto m = static_cast<int64_t>(target.size());
    AlignmentResult res;

    // Cells are swept by anti-diagonal a = i + j (1-based i, j), stored by
    // row index i. Cells on one anti-diagonal do not depend on each other.
    const int64_t dlo = band ? band->diagonal - int64_t{band->half_width} : 1 - n;
    const int64_t dhi = band ? band->diagonal + int64_t{band->half_width} : m - 1;
    auto i_range = [&](int64_t a) {
        // d = j - i = a - 2i within [dlo, dhi]; 1 <= i <= n; 1 <= a - i <= m
        int64_t lo = std::max<int64_t>({1, a - m, (a - dhi + 1) >> 1});
        int64_t hi = std::min<int64_t>({n, a - 1, (a - dlo) >> 1});
        return std::pair{lo, hi};
    };

    const size_t cols = static_cast<size_t>(n + 2);
    std::vector<S> h_buf(3 * cols, 0);
    std::vector<S> e_buf(2 * cols, kNegInf);
    std::vector<S> f_buf(2 * cols, kNegInf);
    std::string rtarget(target.rbegin(), target.rend());

    const int64_t a_first = 2, a_last = n + m;
    std::vector<int64_t> tb_off(static_cast<size_t>(a_last + 2), 0);
    std::vector<int64_t> tb_lo(static_cast<size_t>(a_last + 2), 0);
    int64_t total = 0;
    for (int64_t a = a_first; a <= a_last; ++a) {
        auto [lo, hi] = i_range(a);
        tb_off[static_cast<size_t>(a)] = total;
        tb_lo[static_cast<size_t>(a)] = lo;
        if (lo <= hi) {
            total += hi - lo + 1;
        }
    }
    if (total == 0) {
        return res;
    }
    std::vector<uint8_t> tb(static_cast<size_t>(total));

    const int open = p.gap_open + p.gap_extend;
    const int ext = p.gap_extend;
    const int match = p.match;
    const int mismatch = p.mismatch;
    int best = 0;
    int64_t best_i = 0, best_j = 0;

    for (int64_t a = a_first; a <= a_last; ++a) {
        auto [lo, hi] = i_range(a);
        S* h0 = h_buf.data() + static_cast<size_t>(a % 3) * cols;
        const S* h1 = h_buf.data() + static_cast<size_t>((a + 2) % 3) * cols;
        const S* h2 = h_buf.data() + static_cast<size_t>((a + 1) % 3) * cols;
        S* e0 = e_buf.data() + static_cast<size_t>(a & 1) * cols;
        const S* e1 = e_buf.data() + static_cast<size_t>((a + 1) & 1) * cols;
        S* f0 = f_buf.data() + static_cast<size_t>(a & 1) * cols;
        const S* f1 = f_buf.data() + static_cast<size_t>((a + 1) & 1) * cols;
        if (lo > hi) {
            continue;
        }
        uint8_t* row_tb = tb.data() + tb_off[static_cast<size_t>(a)] - lo;
        const char* q = query.data() - 1;                  // q[i] = query[i - 1]
        const char* t = rtarget.data() + (m - a);          // t[i] = target[a - i - 1]
        const int diag_max = sweep(Sweep<S>{h0, h1, h2, e0, e1, f0, f1, row_tb, q, t, lo, hi,
                                            static_cast<S>(open), static_cast<S>(ext), static_cast<S>(match),
                                            static_cast<S>(mismatch)});
        // Neighbours just outside this anti-diagonal must read as empty.
        h0[lo - 1] = 0;
        e0[lo - 1] = kNegInf;
        f0[lo - 1] = kNegInf;
        h0[hi + 1] = 0;
        e0[hi + 1] = kNegInf;
        f0[hi + 1] = kNegInf;

        // Best cell: highest score, then smallest i, then smallest j.
        if (diag_max > 0 && diag_max >= best) {
            const int64_t i = std::find(h0 + lo, h0 + hi + 1, static_cast<S>(diag_max)) - h0;
            if (diag_max > best || i < best_i) {
                best = diag_max;
                best_i = i;
                best_j = a - i;
            }
        }
    }

    if (best <= 0) {
        return res;
    }

    auto cell = [&](int64_t i, int64_t j) {
        const auto a = static_cast<size_t>(i + j);
        return tb[static_cast<size_t>(tb_off[a] + (i - tb_lo[a]))];
    };
    int64_t i = best_i, j = best_j;
    uint32_t matches = 0, block = 0;
    enum class State { h, e, f } state = State::h;
    while (true) {
        const uint8_t tbv = cell(i, j);
        if (state == State::h) {
            const uint8_t src = tbv & 3u;
            if (src == kFromStart || src == kFromDiag) {
                ++block;
                matches += query[static_cast<size_t>(i - 1)] == target[static_cast<size_t>(j - 1)] ? 1 : 0;
                if (src == kFromStart) {
                    break;
                }
                --i;
                --j;
            } else {
                state = src == kFromE ? State::e : State::f;
            }
        } else if (state == State::e) {
            ++block;
            if (!(tbv & kEExtend)) {
                state = State::h;
            }
            --j;
        } else {
            ++block;
            if (!(tbv & kFExtend)) {
                state = State::h;
            }
            --i;
        }
    }
    res.score = best;
    res.read_start = static_cast<uint32_t>(i - 1);
    res.read_end = static_cast<uint32_t>(best_i);
    res.ref_start = static_cast<uint32_t>(j - 1);
    res.ref_end = static_cast<uint32_t>(best_j);
    res.matches = matches;
    res.block_len = block;
    return res;
}

} // namespace

AlignmentResult smith_waterman(std::string_view query, std::string_view target,
                               const AlignParams& p, std::optional<Band> band) {
    p.validate();
    if (query.empty() || target.empty()) {
        return {};
    }
    // 16-bit lanes when every H fits and gap values stay above -32768.
    const int64_t max_score = int64_t{p.match} * static_cast<int64_t>(std::min(query.size(), target.size()));
    const int worst = std::min({p.mismatch, p.gap_open + p.gap_extend, p.gap_extend});
    if (max_score <= 32000 && worst >= -8000) {
        return smith_waterman_impl<int16_t>(query, target, p, band);
    }
    return smith_waterman_impl<int32_t>(query, target, p, band);
}

AlignmentResult align(const Read& read, const Chain& chain, const Reference& ref,
                      const AlignParams& p) {
    if (chain.anchors.empty()) {
        throw Error("align: empty chain for read " + read.id);
    }
    const int64_t len = static_cast<int64_t>(read.length());
    const bool reverse = chain.strand == Strand::reverse;
    const std::string oriented = reverse ? reverse_complement(read.bases) : read.bases;

    // Chain read span in the aligned orientation.
    const int64_t span_lo = reverse ? len - chain.read_end : chain.read_start;
    const int64_t span_hi = reverse ? len - chain.read_start : chain.read_end;
    const int64_t ref_len = static_cast<int64_t>(ref.length());
    const int64_t region_lo =
        std::max<int64_t>(0, int64_t{chain.ref_start} - span_lo - int64_t{p.flank});
    const int64_t region_hi =
        std::min<int64_t>(ref_len, int64_t{chain.ref_end} + (len - span_hi) + int64_t{p.flank});
    if (region_hi <= region_lo) {
        throw Error("align: empty reference region for read " + read.id);
    }

    const Anchor& first = chain.anchors.front();
    // A reverse-strand k-mer at [read_pos, read_pos + k) sits at
    // [len - read_pos - k, len - read_pos) on the reverse complement.
    const int64_t query_pos = reverse ? len - int64_t{first.read_pos} - int64_t{chain.seed_len}
                                      : int64_t{first.read_pos};
    const int64_t diagonal = (int64_t{first.ref_pos} - region_lo) - query_pos;

    std::string_view region(ref.bases.data() + region_lo, static_cast<size_t>(region_hi - region_lo));
    AlignmentResult res = smith_waterman(oriented, region, p, Band{diagonal, p.band});
    if (res.score > 0) {
        res.ref_start += static_cast<uint32_t>(region_lo);
        res.ref_end += static_cast<uint32_t>(region_lo);
    }
    return res;
}

} // namespace genpip
