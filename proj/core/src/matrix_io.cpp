#include "signreg/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace signreg {

LineReader::LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

bool LineReader::next(std::vector<std::string>& tokens) {
    std::string text;
    while (std::getline(in_, text)) {
        ++line_;
        tokens.clear();
        std::istringstream split(text);
        for (std::string tok; split >> tok;) tokens.push_back(tok);
        if (!tokens.empty()) return true;
    }
    return false;
}

void LineReader::fail(const std::string& message) const {
    throw MatrixError(source_ + ":" + std::to_string(line_) + ": " + message);
}

std::size_t parse_dimension(std::string_view token) {
    std::size_t value = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end || value == 0)
        throw MatrixError("invalid dimension '" + std::string(token) + "'");
    return value;
}

Shape parse_shape(std::string_view token) {
    const auto x = token.find('x');
    if (x == std::string_view::npos) throw MatrixError("invalid shape '" + std::string(token) + "', expected MxN");
    return {parse_dimension(token.substr(0, x)), parse_dimension(token.substr(x + 1))};
}

RationalMatrix read_matrix(LineReader& reader) {
    std::vector<std::string> tokens;
    if (!reader.next(tokens)) reader.fail("missing \"m n\" header");
    if (tokens.size() != 2) reader.fail("header must be \"m n\"");
    Shape shape;
    try {
        shape = {parse_dimension(tokens[0]), parse_dimension(tokens[1])};
    } catch (const MatrixError& e) {
        reader.fail(e.what());
    }
    RationalMatrix a(shape);
    for (std::size_t i = 0; i < shape.rows; ++i) {
        if (!reader.next(tokens))
            reader.fail("expected " + std::to_string(shape.rows) + " rows, got " + std::to_string(i));
        if (tokens.size() != shape.cols)
            reader.fail("expected " + std::to_string(shape.cols) + " entries, got " + std::to_string(tokens.size()));
        for (std::size_t j = 0; j < shape.cols; ++j) {
            try {
                a(i, j) = parse_rational(tokens[j]);
            } catch (const MatrixError& e) {
                reader.fail(e.what());
            }
        }
    }
    return a;
}

RationalMatrix parse_matrix(std::istream& in, const std::string& source) {
    LineReader reader(in, source);
    RationalMatrix a = read_matrix(reader);
    std::vector<std::string> extra;
    if (reader.next(extra)) reader.fail("trailing content after matrix");
    return a;
}

RationalMatrix parse_matrix(std::string_view text, const std::string& source) {
    std::istringstream in{std::string(text)};
    return parse_matrix(in, source);
}

RationalMatrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MatrixError("cannot open " + path.string());
    return parse_matrix(in, path.string());
}

void write_matrix(std::ostream& out, const RationalMatrix& a) {
    out << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out << (j ? " " : "") << to_string(a(i, j));
        out << '\n';
    }
}

std::string format_matrix(const RationalMatrix& a) {
    std::ostringstream out;
    write_matrix(out, a);
    return out.str();
}

void save_matrix(const std::filesystem::path& path, const RationalMatrix& a) {
    std::ofstream out(path);
    if (!out) throw MatrixError("cannot write " + path.string());
    write_matrix(out, a);
}

}  // namespace signreg
