#pragma once

// Shared matrix text format:
//
//   m n
//   a11 a12 ... a1n
//   ...
//   am1 am2 ... amn
//
// Entries are integers or p/q rationals separated by whitespace. Blank lines
// are ignored. Errors carry "<source>:<line>:" prefixes.

#include "signreg/matrix.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace signreg {

/// Line-oriented reader that skips blank lines and remembers physical line numbers.
class LineReader {
public:
    LineReader(std::istream& in, std::string source);

    /// Next non-blank line split on whitespace; false at end of input.
    bool next(std::vector<std::string>& tokens);
    /// Line number of the most recent line returned by next().
    std::size_t line() const { return line_; }
    const std::string& source() const { return source_; }

    [[noreturn]] void fail(const std::string& message) const;

private:
    std::istream& in_;
    std::string source_;
    std::size_t line_ = 0;
};

/// Reads one matrix (header line plus rows) from the reader.
RationalMatrix read_matrix(LineReader& reader);
RationalMatrix parse_matrix(std::istream& in, const std::string& source = "<input>");
RationalMatrix parse_matrix(std::string_view text, const std::string& source = "<input>");
RationalMatrix load_matrix(const std::filesystem::path& path);

void write_matrix(std::ostream& out, const RationalMatrix& a);
std::string format_matrix(const RationalMatrix& a);
void save_matrix(const std::filesystem::path& path, const RationalMatrix& a);

/// Parses a positive dimension token such as "3" or a shape token such as "3x4".
std::size_t parse_dimension(std::string_view token);
Shape parse_shape(std::string_view token);

}  // namespace signreg
