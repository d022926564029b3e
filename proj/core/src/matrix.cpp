#include "signreg/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace signreg {

std::string to_string(Shape shape) {
    return std::to_string(shape.rows) + "x" + std::to_string(shape.cols);
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) throw MatrixError("matrix dimensions must be positive");
    entries_.assign(rows * cols, Rational(0));
}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    if (rows_ == 0 || cols_ == 0) throw MatrixError("matrix dimensions must be positive");
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw MatrixError("ragged matrix literal");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty() || rows.front().empty()) throw MatrixError("matrix dimensions must be positive");
    RationalMatrix out(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != out.cols_) throw MatrixError("ragged row " + std::to_string(i + 1));
        std::copy(rows[i].begin(), rows[i].end(), out.entries_.begin() + i * out.cols_);
    }
    return out;
}

RationalMatrix RationalMatrix::transposed() const {
    RationalMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

RationalMatrix RationalMatrix::submatrix(std::span<const std::size_t> row_idx,
                                         std::span<const std::size_t> col_idx) const {
    RationalMatrix out(row_idx.size(), col_idx.size());
    for (std::size_t a = 0; a < row_idx.size(); ++a) {
        if (row_idx[a] >= rows_) throw MatrixError("row index out of range");
        for (std::size_t b = 0; b < col_idx.size(); ++b) {
            if (col_idx[b] >= cols_) throw MatrixError("column index out of range");
            out(a, b) = (*this)(row_idx[a], col_idx[b]);
        }
    }
    return out;
}

bool RationalMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& x) { return x == 0; });
}

RationalMatrix RationalMatrix::operator-() const {
    RationalMatrix out = *this;
    for (auto& x : out.entries_) x = -x;
    return out;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& other) {
    if (shape() != other.shape()) throw MatrixError("shape mismatch in addition");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& other) {
    if (shape() != other.shape()) throw MatrixError("shape mismatch in subtraction");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& scalar) {
    for (auto& x : entries_) x *= scalar;
    return *this;
}

RationalMatrix operator*(const RationalMatrix& lhs, const RationalMatrix& rhs) {
    if (lhs.cols_ != rhs.rows_) throw MatrixError("shape mismatch in product");
    RationalMatrix out(lhs.rows_, rhs.cols_);
    for (std::size_t i = 0; i < lhs.rows_; ++i) {
        for (std::size_t k = 0; k < lhs.cols_; ++k) {
            const Rational& a = lhs(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

std::vector<Rational> multiply(const RationalMatrix& a, std::span<const Rational> x) {
    if (x.size() != a.cols()) throw MatrixError("vector length does not match column count");
    std::vector<Rational> y(a.rows(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

void MinorIndex::validate(Shape shape) const {
    if (rows.size() != cols.size()) throw MatrixError("minor selection is not square");
    if (rows.empty()) throw MatrixError("empty minor selection");
    auto check = [](const std::vector<std::size_t>& idx, std::size_t bound, const char* what) {
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (idx[k] >= bound) throw MatrixError(std::string(what) + " index out of range");
            if (k > 0 && idx[k] <= idx[k - 1])
                throw MatrixError(std::string(what) + " indices not strictly increasing");
        }
    };
    check(rows, shape.rows, "row");
    check(cols, shape.cols, "column");
}

std::string MinorIndex::to_string() const {
    std::ostringstream out;
    auto put = [&out](const std::vector<std::size_t>& idx) {
        out << '{';
        for (std::size_t k = 0; k < idx.size(); ++k) out << (k ? "," : "") << idx[k] + 1;
        out << '}';
    };
    out << "rows ";
    put(rows);
    out << " cols ";
    put(cols);
    return out.str();
}

Integer integer_determinant(std::span<Integer> g, std::size_t k) {
    if (k == 1) return g[0];
    if (k == 2) return g[0] * g[3] - g[1] * g[2];
    int sign = 1;
    Integer prev = 1;
    Integer t;
    for (std::size_t p = 0; p + 1 < k; ++p) {
        std::size_t pivot = p;
        while (pivot < k && g[pivot * k + p] == 0) ++pivot;
        if (pivot == k) return 0;
        if (pivot != p) {
            for (std::size_t j = 0; j < k; ++j) std::swap(g[pivot * k + j], g[p * k + j]);
            sign = -sign;
        }
        const Integer& piv = g[p * k + p];
        for (std::size_t i = p + 1; i < k; ++i) {
            for (std::size_t j = p + 1; j < k; ++j) {
                t = g[i * k + j] * piv;
                t -= g[i * k + p] * g[p * k + j];
                mpz_divexact(g[i * k + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            g[i * k + p] = 0;
        }
        prev = piv;
    }
    Integer det = g[k * k - 1];
    if (sign < 0) det = -det;
    return det;
}

Rational determinant(const RationalMatrix& a) {
    if (!a.is_square()) throw MatrixError("determinant of non-square " + to_string(a.shape()) + " matrix");
    const std::size_t k = a.rows();
    // Scale each row by the lcm of its denominators; det = det(int) / prod(scales).
    std::vector<Integer> grid(k * k);
    Integer scale_product = 1;
    for (std::size_t i = 0; i < k; ++i) {
        Integer row_lcm = 1;
        for (std::size_t j = 0; j < k; ++j) mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), a(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < k; ++j) grid[i * k + j] = a(i, j).get_num() * (row_lcm / a(i, j).get_den());
        scale_product *= row_lcm;
    }
    return make_rational(integer_determinant(grid, k), scale_product);
}

Rational minor(const RationalMatrix& a, const MinorIndex& idx) {
    idx.validate(a.shape());
    return determinant(a.submatrix(idx.rows, idx.cols));
}

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return result;
}

namespace {

// Advances a strictly increasing k-subset of [0, n) lexicographically.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t pos = k; pos-- > 0;) {
        if (c[pos] < n - k + pos) {
            ++c[pos];
            for (std::size_t q = pos + 1; q < k; ++q) c[q] = c[q - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    return c;
}

// The matrix scaled by the lcm of all denominators. A positive common scale
// multiplies every order-k minor by scale^k.
struct ClearedMatrix {
    std::vector<Integer> entries;
    std::size_t cols;
    Integer scale;
};

ClearedMatrix clear_denominators(const RationalMatrix& a) {
    ClearedMatrix out{{}, a.cols(), 1};
    for (const auto& x : a.data()) mpz_lcm(out.scale.get_mpz_t(), out.scale.get_mpz_t(), x.get_den_mpz_t());
    out.entries.reserve(a.data().size());
    for (const auto& x : a.data()) out.entries.push_back(x.get_num() * (out.scale / x.get_den()));
    return out;
}

template <typename Visit>
void traverse_minors(const RationalMatrix& a, std::size_t order, Visit&& visit) {
    if (order == 0 || order > a.shape().min_dim())
        throw MatrixError("minor order " + std::to_string(order) + " out of range for " + to_string(a.shape()));
    const ClearedMatrix cleared = clear_denominators(a);
    std::vector<Integer> grid(order * order);
    MinorIndex idx{first_combination(order), {}};
    do {
        idx.cols = first_combination(order);
        do {
            for (std::size_t r = 0; r < order; ++r)
                for (std::size_t c = 0; c < order; ++c)
                    grid[r * order + c] = cleared.entries[idx.rows[r] * cleared.cols + idx.cols[c]];
            if (!visit(idx, integer_determinant(grid, order), cleared.scale)) return;
        } while (next_combination(idx.cols, a.cols()));
    } while (next_combination(idx.rows, a.rows()));
}

}  // namespace

void for_each_minor(const RationalMatrix& a, std::size_t order,
                    const std::function<bool(const MinorIndex&, const Rational&)>& visit) {
    Integer denom;
    bool denom_ready = false;
    traverse_minors(a, order, [&](const MinorIndex& idx, const Integer& det, const Integer& scale) {
        if (!denom_ready) {
            mpz_pow_ui(denom.get_mpz_t(), scale.get_mpz_t(), order);
            denom_ready = true;
        }
        return visit(idx, make_rational(det, denom));
    });
}

void for_each_minor_sign(const RationalMatrix& a, std::size_t order,
                         const std::function<bool(const MinorIndex&, int)>& visit) {
    traverse_minors(a, order, [&](const MinorIndex& idx, const Integer& det, const Integer&) {
        return visit(idx, sgn(det));
    });
}

std::vector<MinorValue> enumerate_minors(const RationalMatrix& a, std::size_t order) {
    std::vector<MinorValue> out;
    out.reserve(binomial(a.rows(), order) * binomial(a.cols(), order));
    for_each_minor(a, order, [&out](const MinorIndex& idx, const Rational& value) {
        out.push_back({idx, value});
        return true;
    });
    return out;
}

RationalMatrix all_ones(std::size_t rows, std::size_t cols) {
    RationalMatrix out(rows, cols);
    for (auto& x : out.data()) x = 1;
    return out;
}

RationalMatrix unit_matrix(Shape shape, std::size_t i, std::size_t j) {
    RationalMatrix out(shape);
    if (i >= shape.rows || j >= shape.cols) throw MatrixError("unit matrix index out of range");
    out(i, j) = 1;
    return out;
}

RationalMatrix exchange_matrix(std::size_t n) {
    RationalMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, n - 1 - i) = 1;
    return out;
}

RationalMatrix identity_matrix(std::size_t n) {
    RationalMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
    return out;
}

RationalMatrix diagonal_matrix(std::span<const Rational> diag) {
    RationalMatrix out(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
    return out;
}

RationalMatrix vandermonde(std::span<const Rational> nodes, std::size_t cols) {
    if (nodes.empty()) throw MatrixError("vandermonde needs at least one node");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] <= 0) throw MatrixError("vandermonde nodes must be positive");
        if (i > 0 && nodes[i] <= nodes[i - 1]) throw MatrixError("vandermonde nodes must be strictly increasing");
    }
    RationalMatrix out(nodes.size(), cols);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        Rational p = 1;
        for (std::size_t j = 0; j < cols; ++j) {
            out(i, j) = p;
            p *= nodes[i];
        }
    }
    return out;
}

}  // namespace signreg
