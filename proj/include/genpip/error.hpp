#pragma once

#include <stdexcept>
#include <string>

namespace genpip {

/// Base class for every error raised by the library. Command-line tools map
/// it to exit code 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file (FASTA/FASTQ/index/config).
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what) : Error(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

/// Parameter or configuration rejected by validation.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace genpip
