#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace genpip::detail {

// Candidate bases for each IUPAC code; empty view means "not a nucleotide".
inline std::string_view iupac_candidates(char c) {
    switch (c) {
    case 'A': return "A";
    case 'C': return "C";
    case 'G': return "G";
    case 'T': case 'U': return "T";
    case 'R': return "AG";
    case 'Y': return "CT";
    case 'S': return "CG";
    case 'W': return "AT";
    case 'K': return "GT";
    case 'M': return "AC";
    case 'B': return "CGT";
    case 'D': return "AGT";
    case 'H': return "ACT";
    case 'V': return "ACG";
    case 'N': return "ACGT";
    default: return {};
    }
}

inline bool is_upper_ascii(char c) { return c >= 'A' && c <= 'Z'; }

/// Uppercases `c` and resolves ambiguity codes with `rng`. Returns 0 for a
/// character outside the IUPAC alphabet.
inline char normalize_base(char c, std::mt19937_64& rng) {
    if (c >= 'a' && c <= 'z') {
        c = static_cast<char>(c - 'a' + 'A');
    }
    std::string_view cand = iupac_candidates(c);
    if (cand.empty()) {
        return 0;
    }
    if (cand.size() == 1) {
        return cand[0];
    }
    std::uniform_int_distribution<size_t> pick(0, cand.size() - 1);
    return cand[pick(rng)];
}

} // namespace genpip::detail
