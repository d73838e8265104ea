#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace genpip {

struct Reference {
    std::string name;
    std::string bases;

    size_t length() const { return bases.size(); }
};

struct Read {
    std::string id;
    std::string bases;
    std::vector<uint8_t> quals; // Phred, 0..93

    size_t length() const { return bases.size(); }
};

inline constexpr int kPhredOffset = 33;
inline constexpr int kMaxPhred = 93;

/// Ambiguity codes and 'N' are replaced by a base drawn from a generator
/// seeded with `ambiguity_seed`, so loading the same file twice gives the
/// same sequence.
struct FastaOptions {
    uint64_t ambiguity_seed = 0;
};

std::vector<Reference> read_fasta(std::istream& in, const FastaOptions& opts = {});
std::vector<Reference> parse_fasta(const std::filesystem::path& path, const FastaOptions& opts = {});
/// First record only.
Reference parse_fasta_single(const std::filesystem::path& path, const FastaOptions& opts = {});
void write_fasta(std::ostream& out, const Reference& ref, size_t line_width = 80);

/// Streaming FASTQ reader (4-line records, Phred+33). Holds at most one
/// record in memory. Ambiguous read bases are resolved the same way as in
/// FASTA input.
class FastqReader {
public:
    explicit FastqReader(std::istream& in, uint64_t ambiguity_seed = 0);
    explicit FastqReader(const std::filesystem::path& path, uint64_t ambiguity_seed = 0);

    std::optional<Read> next();

private:
    std::unique_ptr<std::ifstream> owned_;
    std::istream* in_;
    std::mt19937_64 rng_;
    uint64_t line_no_ = 0;
};

std::vector<Read> parse_fastq(const std::filesystem::path& path);
void write_fastq(std::ostream& out, const Read& read);
void write_fastq(const std::filesystem::path& path, std::span<const Read> reads);

struct DatasetStats {
    uint64_t num_reads = 0;
    uint64_t total_bases = 0;
    double mean_len = 0;
    double median_len = 0;
    double mean_q = 0;
    double median_q = 0;
};

/// Per-read values are retained (lengths and mean qualities) so medians can
/// be taken after the stream ends.
class DatasetStatsBuilder {
public:
    void add(const Read& read);
    DatasetStats finish() const;

private:
    std::vector<uint64_t> lengths_;
    std::vector<double> mean_quals_;
};

DatasetStats dataset_stats(std::span<const Read> reads);

struct SynthParams {
    uint64_t num_reads = 1000;
    uint64_t len_min = 1000;
    uint64_t len_max = 10000;
    double sub_rate = 0.0;
    double ins_rate = 0.0;
    double del_rate = 0.0;
    double junk_frac = 0.0;
    double lowq_frac = 0.0;
    double qual_high_mean = 10.0;
    double qual_low_mean = 5.0;
    uint64_t rng_seed = 1;
    /// Disables reverse-complement sampling.
    bool forward_only = false;

    void validate() const;
};

struct GroundTruth {
    std::string id;
    std::optional<uint64_t> origin; // empty for junk reads
    char strand = '+';               // '*' for junk
    bool is_lowq = false;
    /// End (exclusive) of the source interval on the reference.
    uint64_t origin_end = 0;

    bool is_junk() const { return !origin.has_value(); }
};

struct SynthOutput {
    std::vector<Read> reads;
    std::vector<GroundTruth> truth;
};

SynthOutput synth_reads(const Reference& ref, const SynthParams& params);
/// Uniform random sequence, used for benchmark references.
Reference random_reference(std::string name, uint64_t length, uint64_t seed);

void write_truth_jsonl(std::ostream& out, std::span<const GroundTruth> truth);
void write_truth_jsonl(const std::filesystem::path& path, std::span<const GroundTruth> truth);

} // namespace genpip
