#pragma once

// Primitive linear transforms on m x n matrix space and their compositions.
//
// Chain text format: comma-separated tokens applied left to right,
//   diag(F=f1,...,fm;E=e1,...,en)   A -> F A E, positive diagonals
//   neg                              A -> -A
//   rowflip                          A -> P_m A
//   colflip                          A -> A P_n
//   transpose                        A -> A^T (square only)
//   hadamard(h11,h12;h21,h22)        A -> H o A, positive H (2x2 and vector shapes)
//   swap2                            [[a,b],[c,d]] -> [[a,b],[d,c]] (2x2 only)
//   rowperm(t1,...,tm)               source row i lands in row t_i (vector shapes)
//   colperm(t1,...,tn)               source column j lands in column t_j (vector shapes)

#include "signreg/matrix.hpp"
#include "signreg/matrix_space_map.hpp"
#include "signreg/signclass.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace signreg {

class TransformError : public MatrixError {
public:
    using MatrixError::MatrixError;
};

struct DiagEquiv {
    std::vector<Rational> row_scale;  ///< F, length m
    std::vector<Rational> col_scale;  ///< E, length n
    friend bool operator==(const DiagEquiv&, const DiagEquiv&) = default;
};
struct Negate {
    friend bool operator==(Negate, Negate) = default;
};
struct RowFlip {
    friend bool operator==(RowFlip, RowFlip) = default;
};
struct ColFlip {
    friend bool operator==(ColFlip, ColFlip) = default;
};
struct Transpose {
    friend bool operator==(Transpose, Transpose) = default;
};
struct HadamardScale {
    RationalMatrix weights;
    friend bool operator==(const HadamardScale&, const HadamardScale&) = default;
};
struct Swap2x2BottomPair {
    friend bool operator==(Swap2x2BottomPair, Swap2x2BottomPair) = default;
};
struct RowPermute {
    std::vector<std::size_t> target;  ///< 0-based destination of each source row
    friend bool operator==(const RowPermute&, const RowPermute&) = default;
};
struct ColPermute {
    std::vector<std::size_t> target;  ///< 0-based destination of each source column
    friend bool operator==(const ColPermute&, const ColPermute&) = default;
};

using PrimitiveTransform = std::variant<DiagEquiv, Negate, RowFlip, ColFlip, Transpose, HadamardScale,
                                        Swap2x2BottomPair, RowPermute, ColPermute>;

/// Throws TransformError if t is not legal on the given shape.
void validate(const PrimitiveTransform& t, Shape shape);

RationalMatrix apply(const PrimitiveTransform& t, const RationalMatrix& a);

/// Predicted sign pattern of t(A) from that of A. Star maps to Star.
/// Throws TransformError for transforms whose effect on orders >= 2 is not
/// determined by the pattern alone (hadamard, swap2, arbitrary permutations).
SignPattern pushforward_pattern(const PrimitiveTransform& t, const SignPattern& eps);

std::string to_token(const PrimitiveTransform& t);

/// An ordered composition of primitives on a fixed shape; steps apply left to right.
class TransformChain {
public:
    explicit TransformChain(Shape shape, std::vector<PrimitiveTransform> steps = {});

    Shape shape() const { return shape_; }
    const std::vector<PrimitiveTransform>& steps() const { return steps_; }
    bool empty() const { return steps_.empty(); }
    std::size_t size() const { return steps_.size(); }

    void push_back(PrimitiveTransform t);
    /// This chain followed by other.
    TransformChain then(const TransformChain& other) const;

    friend bool operator==(const TransformChain&, const TransformChain&) = default;

private:
    Shape shape_;
    std::vector<PrimitiveTransform> steps_;
};

RationalMatrix apply(const TransformChain& chain, const RationalMatrix& a);
SignPattern pushforward_pattern(const TransformChain& chain, const SignPattern& eps);

/// The mn x mn matrix of the chain in the row-major vec basis.
MatrixSpaceMap compose_to_operator(const TransformChain& chain);
MatrixSpaceMap compose_to_operator(const PrimitiveTransform& t, Shape shape);

std::string to_string(const TransformChain& chain);
TransformChain parse_chain(std::string_view text, Shape shape);

}  // namespace signreg
