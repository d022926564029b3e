#pragma once

// Variation diminution: S-(Ax) <= S-(x) for strictly sign regular A.

#include "signreg/matrix.hpp"

#include <vector>

namespace signreg {

/// Sign changes after deleting zero entries. The zero vector has none.
std::size_t sign_changes(std::span<const Rational> x);

struct VdViolation {
    std::vector<Rational> x;
    std::vector<Rational> ax;
    std::size_t changes_x = 0;
    std::size_t changes_ax = 0;
};

struct VdReport {
    std::size_t checked = 0;
    std::vector<VdViolation> violations;

    bool ok() const { return violations.empty(); }
};

/// Checks S-(Ax) <= S-(x) for every x. Throws MatrixError unless A is SSR
/// and every x has length n.
VdReport vd_check(const RationalMatrix& a, const std::vector<std::vector<Rational>>& xs);

/// All nonzero vectors in {-1,0,1}^n, in lexicographic order.
std::vector<std::vector<Rational>> exhaustive_sign_vectors(std::size_t n);

}  // namespace signreg
