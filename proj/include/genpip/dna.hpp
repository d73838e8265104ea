#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace genpip {

// 2-bit packing: A=0, C=1, G=2, T=3; anything else maps to 4.
inline constexpr std::array<uint8_t, 256> kBaseCode = [] {
    std::array<uint8_t, 256> t{};
    t.fill(4);
    t['A'] = 0; t['C'] = 1; t['G'] = 2; t['T'] = 3;
    t['a'] = 0; t['c'] = 1; t['g'] = 2; t['t'] = 3;
    return t;
}();

inline constexpr char kCodeBase[4] = {'A', 'C', 'G', 'T'};

inline char complement(char b) {
    switch (b) {
    case 'A': return 'T';
    case 'C': return 'G';
    case 'G': return 'C';
    case 'T': return 'A';
    default: return 'N';
    }
}

inline std::string reverse_complement(std::string_view seq) {
    std::string out(seq.size(), 'N');
    for (size_t i = 0; i < seq.size(); ++i) {
        out[seq.size() - 1 - i] = complement(seq[i]);
    }
    return out;
}

/// Packs a k-mer (k <= 31) into a 64-bit word, first base in the high bits.
inline uint64_t pack_kmer(std::string_view kmer) {
    uint64_t code = 0;
    for (char c : kmer) {
        code = (code << 2) | (kBaseCode[static_cast<uint8_t>(c)] & 3u);
    }
    return code;
}

inline std::string unpack_kmer(uint64_t code, int k) {
    std::string out(static_cast<size_t>(k), 'A');
    for (int i = k - 1; i >= 0; --i) {
        out[static_cast<size_t>(i)] = kCodeBase[code & 3u];
        code >>= 2;
    }
    return out;
}

} // namespace genpip
