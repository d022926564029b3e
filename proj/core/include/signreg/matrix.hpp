#pragma once

#include "signreg/rational.hpp"

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace signreg {

/// Dimensions of an m x n matrix.
struct Shape {
    std::size_t rows = 0;
    std::size_t cols = 0;

    std::size_t min_dim() const { return rows < cols ? rows : cols; }
    std::size_t cells() const { return rows * cols; }
    bool square() const { return rows == cols; }

    friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(Shape shape);

/// Dense row-major matrix of exact rationals. Indices are 0-based.
class RationalMatrix {
public:
    /// Zero matrix. Both dimensions must be positive.
    RationalMatrix(std::size_t rows, std::size_t cols);
    explicit RationalMatrix(Shape shape) : RationalMatrix(shape.rows, shape.cols) {}
    RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Shape shape() const { return {rows_, cols_}; }
    bool is_square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    /// Entries in row-major order; this is also the vec() coordinate order.
    std::span<Rational> data() { return entries_; }
    std::span<const Rational> data() const { return entries_; }

    RationalMatrix transposed() const;
    RationalMatrix submatrix(std::span<const std::size_t> row_idx,
                             std::span<const std::size_t> col_idx) const;
    bool is_zero() const;

    RationalMatrix operator-() const;
    RationalMatrix& operator+=(const RationalMatrix& other);
    RationalMatrix& operator-=(const RationalMatrix& other);
    RationalMatrix& operator*=(const Rational& scalar);

    friend RationalMatrix operator+(RationalMatrix lhs, const RationalMatrix& rhs) { return lhs += rhs; }
    friend RationalMatrix operator-(RationalMatrix lhs, const RationalMatrix& rhs) { return lhs -= rhs; }
    friend RationalMatrix operator*(RationalMatrix lhs, const Rational& s) { return lhs *= s; }
    friend RationalMatrix operator*(const Rational& s, RationalMatrix rhs) { return rhs *= s; }
    friend RationalMatrix operator*(const RationalMatrix& lhs, const RationalMatrix& rhs);
    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rational> entries_;
};

/// Matrix-vector product.
std::vector<Rational> multiply(const RationalMatrix& a, std::span<const Rational> x);

/// Square selection of rows and columns, both strictly increasing and 0-based.
struct MinorIndex {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;

    std::size_t order() const { return rows.size(); }
    /// Throws MatrixError unless the selection is square, strictly increasing and in range.
    void validate(Shape shape) const;
    /// 1-based rendering, e.g. "rows {1,3} cols {2,4}".
    std::string to_string() const;

    friend bool operator==(const MinorIndex&, const MinorIndex&) = default;
};

struct MinorValue {
    MinorIndex index;
    Rational value;
};

/// Exact determinant by fraction-free (Bareiss) elimination on the
/// denominator-cleared integer matrix. Throws MatrixError if not square.
Rational determinant(const RationalMatrix& a);

/// Bareiss determinant of a k x k integer grid given row-major. The grid is
/// used as scratch space.
Integer integer_determinant(std::span<Integer> grid, std::size_t k);

Rational minor(const RationalMatrix& a, const MinorIndex& idx);

std::size_t binomial(std::size_t n, std::size_t k);

/// Calls visit(index, value) for every order-k minor in lexicographic order of
/// (rows, cols). Stops early when visit returns false.
void for_each_minor(const RationalMatrix& a, std::size_t order,
                    const std::function<bool(const MinorIndex&, const Rational&)>& visit);

/// Same traversal as for_each_minor but only reports the sign of each minor,
/// which avoids rebuilding rationals.
void for_each_minor_sign(const RationalMatrix& a, std::size_t order,
                         const std::function<bool(const MinorIndex&, int)>& visit);

/// All C(m,k) * C(n,k) minors of order k, lexicographically ordered.
std::vector<MinorValue> enumerate_minors(const RationalMatrix& a, std::size_t order);

// Named matrices.
RationalMatrix all_ones(std::size_t rows, std::size_t cols);
RationalMatrix unit_matrix(Shape shape, std::size_t i, std::size_t j);
RationalMatrix exchange_matrix(std::size_t n);
RationalMatrix identity_matrix(std::size_t n);
RationalMatrix diagonal_matrix(std::span<const Rational> diag);
/// Entry (i,j) = nodes[i]^j. Nodes must be strictly increasing and positive.
RationalMatrix vandermonde(std::span<const Rational> nodes, std::size_t cols);

}  // namespace signreg
