#include "genpip/genio.hpp"

#include <istream>
#include <ostream>

#include "genpip/error.hpp"
#include "ambiguity.hpp"

namespace genpip {

namespace {

std::string_view trim_right(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

std::string header_name(std::string_view header) {
    header.remove_prefix(1);
    size_t end = header.find_first_of(" \t");
    return std::string(header.substr(0, end));
}

} // namespace

std::vector<Reference> read_fasta(std::istream& in, const FastaOptions& opts) {
    std::mt19937_64 rng(opts.ambiguity_seed);
    std::vector<Reference> refs;
    std::string line;
    bool seen_header = false;

    auto close_record = [&]() {
        if (!refs.empty() && refs.back().bases.empty()) {
            throw FormatError("empty record " + refs.back().name);
        }
    };

    while (std::getline(in, line)) {
        std::string_view view = trim_right(line);
        if (view.empty()) {
            continue;
        }
        if (view.front() == '>') {
            close_record();
            refs.push_back(Reference{header_name(view), {}});
            seen_header = true;
            continue;
        }
        if (!seen_header) {
            throw FormatError("not a FASTA file: first line does not start with '>'");
        }
        std::string& bases = refs.back().bases;
        for (char c : view) {
            char b = detail::normalize_base(c, rng);
            if (b == 0) {
                throw FormatError("invalid character '" + std::string(1, c) + "' in record " +
                                  refs.back().name);
            }
            bases.push_back(b);
        }
    }
    if (refs.empty()) {
        throw FormatError("empty FASTA");
    }
    close_record();
    return refs;
}

std::vector<Reference> parse_fasta(const std::filesystem::path& path, const FastaOptions& opts) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open FASTA file " + path.string());
    }
    return read_fasta(in, opts);
}

Reference parse_fasta_single(const std::filesystem::path& path, const FastaOptions& opts) {
    return std::move(parse_fasta(path, opts).front());
}

void write_fasta(std::ostream& out, const Reference& ref, size_t line_width) {
    out << '>' << ref.name << '\n';
    for (size_t i = 0; i < ref.bases.size(); i += line_width) {
        out.write(ref.bases.data() + i,
                  static_cast<std::streamsize>(std::min(line_width, ref.bases.size() - i)));
        out << '\n';
    }
}

} // namespace genpip
