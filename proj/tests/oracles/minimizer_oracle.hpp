#pragma once

// Window-by-window minimizer scan: for every window, look at each of its w
// k-mers explicitly and keep the smallest.

#include <string>
#include <string_view>
#include <vector>

#include "genpip/refindex.hpp"

namespace oracle {

inline char comp(char b) {
    switch (b) {
    case 'A': return 'T';
    case 'C': return 'G';
    case 'G': return 'C';
    default: return 'A';
    }
}

inline uint64_t encode(std::string_view s) {
    uint64_t v = 0;
    for (char c : s) {
        v = v * 4 + (c == 'A' ? 0 : c == 'C' ? 1 : c == 'G' ? 2 : 3);
    }
    return v;
}

inline std::vector<genpip::Minimizer> minimizers(const std::string& seq, const genpip::IndexParams& p) {
    std::vector<genpip::Minimizer> out;
    const size_t k = static_cast<size_t>(p.k);
    const size_t w = static_cast<size_t>(p.w);
    if (seq.size() < k + w - 1) {
        return out;
    }
    for (size_t start = 0; start + k + w - 1 <= seq.size(); ++start) {
        genpip::Minimizer best{};
        bool have = false;
        for (size_t pos = start; pos < start + w; ++pos) {
            const std::string kmer = seq.substr(pos, k);
            std::string rc(kmer.rbegin(), kmer.rend());
            for (char& c : rc) {
                c = comp(c);
            }
            genpip::Minimizer m{encode(kmer), static_cast<uint32_t>(pos), genpip::Strand::forward};
            if (p.canonical && encode(rc) < m.code) {
                m.code = encode(rc);
                m.strand = genpip::Strand::reverse;
            }
            if (!have || m.code < best.code) {
                best = m;
                have = true;
            }
        }
        if (out.empty() || !(out.back() == best)) {
            out.push_back(best);
        }
    }
    return out;
}

} // namespace oracle
