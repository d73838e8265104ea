#include "genpip/genio.hpp"

#include <istream>
#include <ostream>

#include "genpip/error.hpp"
#include "ambiguity.hpp"

namespace genpip {

namespace {

void chomp(std::string& s) {
    if (!s.empty() && s.back() == '\r') {
        s.pop_back();
    }
}

} // namespace

FastqReader::FastqReader(std::istream& in, uint64_t ambiguity_seed)
    : in_(&in), rng_(ambiguity_seed) {}

FastqReader::FastqReader(const std::filesystem::path& path, uint64_t ambiguity_seed)
    : owned_(std::make_unique<std::ifstream>(path)), in_(owned_.get()), rng_(ambiguity_seed) {
    if (!*owned_) {
        throw IoError("cannot open FASTQ file " + path.string());
    }
}

std::optional<Read> FastqReader::next() {
    std::string header;
    // Skip blank lines between records.
    while (true) {
        if (!std::getline(*in_, header)) {
            return std::nullopt;
        }
        ++line_no_;
        chomp(header);
        if (!header.empty()) {
            break;
        }
    }
    if (header.front() != '@') {
        throw FormatError("expected '@' at line " + std::to_string(line_no_));
    }
    Read read;
    size_t id_end = header.find_first_of(" \t");
    read.id = header.substr(1, id_end == std::string::npos ? std::string::npos : id_end - 1);

    std::string seq, plus, qual;
    if (!std::getline(*in_, seq) || !std::getline(*in_, plus) || !std::getline(*in_, qual)) {
        throw FormatError("truncated record " + read.id);
    }
    line_no_ += 3;
    chomp(seq);
    chomp(plus);
    chomp(qual);
    if (plus.empty() || plus.front() != '+') {
        throw FormatError("expected '+' line in record " + read.id);
    }
    if (seq.size() != qual.size()) {
        throw FormatError("length mismatch at record " + read.id);
    }

    read.bases.reserve(seq.size());
    for (char c : seq) {
        char b = detail::normalize_base(c, rng_);
        if (b == 0) {
            throw FormatError("invalid base '" + std::string(1, c) + "' in record " + read.id);
        }
        read.bases.push_back(b);
    }
    read.quals.reserve(qual.size());
    for (char c : qual) {
        if (c < '!' || c > '~') {
            throw FormatError("quality character out of range in record " + read.id);
        }
        read.quals.push_back(static_cast<uint8_t>(c - kPhredOffset));
    }
    return read;
}

std::vector<Read> parse_fastq(const std::filesystem::path& path) {
    FastqReader reader(path);
    std::vector<Read> reads;
    while (auto r = reader.next()) {
        reads.push_back(std::move(*r));
    }
    return reads;
}

void write_fastq(std::ostream& out, const Read& read) {
    out << '@' << read.id << '\n' << read.bases << "\n+\n";
    std::string qual(read.quals.size(), '!');
    for (size_t i = 0; i < read.quals.size(); ++i) {
        qual[i] = static_cast<char>(read.quals[i] + kPhredOffset);
    }
    out << qual << '\n';
}

void write_fastq(const std::filesystem::path& path, std::span<const Read> reads) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    for (const Read& r : reads) {
        write_fastq(out, r);
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

} // namespace genpip
