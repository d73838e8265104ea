#include "genpip/refindex.hpp"

#include <deque>

#include "genpip/dna.hpp"
#include "genpip/error.hpp"

namespace genpip {

void IndexParams::validate() const {
    if (k < 1 || k > 31) {
        throw ConfigError("k must lie in [1, 31], got " + std::to_string(k));
    }
    if (w < 1) {
        throw ConfigError("w must be at least 1, got " + std::to_string(w));
    }
}

std::vector<Minimizer> minimizers(std::string_view seq, const IndexParams& params) {
    params.validate();
    const auto k = static_cast<size_t>(params.k);
    const auto w = static_cast<size_t>(params.w);
    std::vector<Minimizer> out;
    if (seq.size() < k + w - 1) {
        return out;
    }
    const uint64_t mask = (uint64_t{1} << (2 * k)) - 1;
    const unsigned rc_shift = static_cast<unsigned>(2 * (k - 1));

    uint64_t fwd = 0;
    uint64_t rev = 0;
    size_t valid_run = 0;
    std::deque<Minimizer> window; // increasing codes, leftmost first on ties

    for (size_t i = 0; i < seq.size(); ++i) {
        uint8_t c = kBaseCode[static_cast<uint8_t>(seq[i])];
        if (c > 3) {
            valid_run = 0;
            fwd = rev = 0;
        } else {
            fwd = ((fwd << 2) | c) & mask;
            rev = (rev >> 2) | (static_cast<uint64_t>(3 - c) << rc_shift);
            ++valid_run;
        }
        if (i + 1 < k) {
            continue;
        }
        const size_t kmer_pos = i + 1 - k;
        if (valid_run >= k) {
            Minimizer m{fwd, static_cast<uint32_t>(kmer_pos), Strand::forward};
            if (params.canonical && rev < fwd) {
                m.code = rev;
                m.strand = Strand::reverse;
            }
            while (!window.empty() && window.back().code > m.code) {
                window.pop_back();
            }
            window.push_back(m);
        }
        if (kmer_pos + 1 < w) {
            continue;
        }
        const size_t win_start = kmer_pos + 1 - w;
        while (!window.empty() && window.front().pos < win_start) {
            window.pop_front();
        }
        if (!window.empty() && (out.empty() || !(out.back() == window.front()))) {
            out.push_back(window.front());
        }
    }
    return out;
}

} // namespace genpip
