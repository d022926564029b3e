#include "signreg/matrix_space_map.hpp"

#include "signreg/matrix_io.hpp"

#include <fstream>
#include <sstream>

namespace signreg {

std::vector<Rational> vec(const RationalMatrix& a) {
    return {a.data().begin(), a.data().end()};
}

RationalMatrix unvec(std::span<const Rational> v, Shape shape) {
    if (v.size() != shape.cells()) throw MatrixError("vector length does not match " + to_string(shape));
    RationalMatrix out(shape);
    std::copy(v.begin(), v.end(), out.data().begin());
    return out;
}

MatrixSpaceMap::MatrixSpaceMap(Shape shape, RationalMatrix matrix) : shape_(shape), matrix_(std::move(matrix)) {
    const std::size_t n = shape.cells();
    if (n == 0 || matrix_.rows() != n || matrix_.cols() != n)
        throw MatrixError("operator on " + to_string(shape) + " matrices must be " + std::to_string(n) + "x" +
                          std::to_string(n) + ", got " + to_string(matrix_.shape()));
}

MatrixSpaceMap MatrixSpaceMap::identity(Shape shape) {
    return MatrixSpaceMap(shape, identity_matrix(shape.cells()));
}

RationalMatrix MatrixSpaceMap::apply(const RationalMatrix& a) const {
    if (a.shape() != shape_)
        throw MatrixError("operator on " + to_string(shape_) + " applied to " + to_string(a.shape()) + " matrix");
    return unvec(multiply(matrix_, a.data()), shape_);
}

RationalMatrix MatrixSpaceMap::image_of_unit(std::size_t i, std::size_t j) const {
    RationalMatrix out(shape_);
    const std::size_t c = slot(shape_, i, j);
    for (std::size_t r = 0; r < shape_.cells(); ++r) out.data()[r] = matrix_(r, c);
    return out;
}

MatrixSpaceMap MatrixSpaceMap::after(const MatrixSpaceMap& first) const {
    if (first.shape_ != shape_) throw MatrixError("composing operators on different shapes");
    return MatrixSpaceMap(shape_, matrix_ * first.matrix_);
}

std::optional<MatrixSpaceMap> MatrixSpaceMap::inverse() const {
    auto inv = signreg::inverse(matrix_);
    if (!inv) return std::nullopt;
    return MatrixSpaceMap(shape_, std::move(*inv));
}

namespace {

// Reduced row echelon form of [a | b] in place; returns rank of a.
std::size_t row_reduce(RationalMatrix& a, RationalMatrix* b) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != rank) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(rank, j));
            if (b)
                for (std::size_t j = 0; j < b->cols(); ++j) std::swap((*b)(pivot, j), (*b)(rank, j));
        }
        const Rational inv_piv = 1 / a(rank, col);
        for (std::size_t j = 0; j < a.cols(); ++j) a(rank, j) *= inv_piv;
        if (b)
            for (std::size_t j = 0; j < b->cols(); ++j) (*b)(rank, j) *= inv_piv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == rank || a(i, col) == 0) continue;
            const Rational f = a(i, col);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
            if (b)
                for (std::size_t j = 0; j < b->cols(); ++j) (*b)(i, j) -= f * (*b)(rank, j);
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
    if (!a.is_square()) throw MatrixError("inverse of non-square matrix");
    RationalMatrix work = a;
    RationalMatrix inv = identity_matrix(a.rows());
    if (row_reduce(work, &inv) != a.rows()) return std::nullopt;
    return inv;
}

std::size_t rank(const RationalMatrix& a) {
    RationalMatrix work = a;
    return row_reduce(work, nullptr);
}

MatrixSpaceMap parse_operator(std::istream& in, const std::string& source) {
    LineReader reader(in, source);
    std::vector<std::string> tokens;
    if (!reader.next(tokens)) reader.fail("missing \"map m n\" header");
    if (tokens.size() != 3 || tokens[0] != "map") reader.fail("operator header must be \"map m n\"");
    Shape shape;
    try {
        shape = {parse_dimension(tokens[1]), parse_dimension(tokens[2])};
    } catch (const MatrixError& e) {
        reader.fail(e.what());
    }
    const std::size_t header_line = reader.line();
    RationalMatrix l = read_matrix(reader);
    if (l.rows() != shape.cells() || l.cols() != shape.cells()) {
        throw MatrixError(source + ":" + std::to_string(header_line) + ": operator on " + to_string(shape) +
                          " matrices must be " + std::to_string(shape.cells()) + "x" +
                          std::to_string(shape.cells()));
    }
    if (reader.next(tokens)) reader.fail("trailing content after operator");
    return MatrixSpaceMap(shape, std::move(l));
}

MatrixSpaceMap parse_operator(std::string_view text, const std::string& source) {
    std::istringstream in{std::string(text)};
    return parse_operator(in, source);
}

MatrixSpaceMap load_operator(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MatrixError("cannot open " + path.string());
    return parse_operator(in, path.string());
}

void write_operator(std::ostream& out, const MatrixSpaceMap& map) {
    out << "map " << map.shape().rows << ' ' << map.shape().cols << '\n';
    write_matrix(out, map.matrix());
}

std::string format_operator(const MatrixSpaceMap& map) {
    std::ostringstream out;
    write_operator(out, map);
    return out.str();
}

}  // namespace signreg
