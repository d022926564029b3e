#pragma once

// A linear operator on m x n matrix space, stored as the mn x mn matrix L
// acting on vec(A). vec is row-major: (E11, E12, ..., E1n, E21, ..., Emn).
// Column c of L is the image of the basis matrix with row-major slot c.
//
// Cross-reference: a proof-style basis ordering that lists the diagonal units
// first, (E11, E22, ..., Enn; E12, ..., Emn), differs from ours only by a
// permutation of slots, so monomiality, supports and scalars are unaffected.
//
// File format ("operator file"):
//
//   map m n
//   mn mn
//   <mn rows of mn entries>

#include "signreg/matrix.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace signreg {

/// Row-major slot of cell (i, j).
inline std::size_t slot(Shape shape, std::size_t i, std::size_t j) { return i * shape.cols + j; }

std::vector<Rational> vec(const RationalMatrix& a);
RationalMatrix unvec(std::span<const Rational> v, Shape shape);

class MatrixSpaceMap {
public:
    /// Throws MatrixError unless L is (m n) x (m n).
    MatrixSpaceMap(Shape shape, RationalMatrix matrix);

    static MatrixSpaceMap identity(Shape shape);

    Shape shape() const { return shape_; }
    const RationalMatrix& matrix() const { return matrix_; }

    /// unvec(L * vec(A)).
    RationalMatrix apply(const RationalMatrix& a) const;
    /// The image of the basis matrix E_ij.
    RationalMatrix image_of_unit(std::size_t i, std::size_t j) const;

    /// Composition: (this after first)(A) = this(first(A)).
    MatrixSpaceMap after(const MatrixSpaceMap& first) const;

    /// Exact inverse, or nullopt when L is singular.
    std::optional<MatrixSpaceMap> inverse() const;

    friend bool operator==(const MatrixSpaceMap&, const MatrixSpaceMap&) = default;

private:
    Shape shape_;
    RationalMatrix matrix_;
};

/// Gauss-Jordan inverse over the rationals; nullopt if singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& a);
std::size_t rank(const RationalMatrix& a);

MatrixSpaceMap parse_operator(std::istream& in, const std::string& source = "<input>");
MatrixSpaceMap parse_operator(std::string_view text, const std::string& source = "<input>");
MatrixSpaceMap load_operator(const std::filesystem::path& path);
void write_operator(std::ostream& out, const MatrixSpaceMap& map);
std::string format_operator(const MatrixSpaceMap& map);

}  // namespace signreg
