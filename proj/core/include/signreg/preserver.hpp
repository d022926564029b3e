#pragma once

// Deciding whether a linear operator on m x n matrix space maps a sign
// regularity class onto itself.
//
// The decision is structural: monomial support, then product form of the
// support bijection, then rank-one scalars, then mode gates. Rejections carry
// a witness matrix found by gadget search (see witness.hpp).
//
// Regimes:
//   Vector    min(m,n) = 1. Only order-1 signs exist, so any positive
//             monomial (times a global sign) preserves; permutations are arbitrary.
//   TwoByTwo  2x2 in SR mode. The single 2x2 minor carries no constraint, so
//             all 24 cell bijections with entrywise positive scaling preserve.
//   General   everything else: A -> s * flips(F * [A or A^T] * E).

#include "signreg/matrix_space_map.hpp"
#include "signreg/signclass.hpp"
#include "signreg/transforms.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace signreg {

class PreserverError : public MatrixError {
public:
    using MatrixError::MatrixError;
};

/// sr: SR, ssr: SSR, sreps: SR(eps), ssreps: SSR(eps).
enum class PreserverMode { SR, SSR, SRPattern, SSRPattern };

std::string to_string(PreserverMode mode);
PreserverMode parse_mode(std::string_view text);
inline bool is_pattern_mode(PreserverMode m) { return m == PreserverMode::SRPattern || m == PreserverMode::SSRPattern; }
inline bool is_strict_mode(PreserverMode m) { return m == PreserverMode::SSR || m == PreserverMode::SSRPattern; }

enum class Regime { General, Vector, TwoByTwo };
std::string to_string(Regime regime);
Regime regime_for(Shape shape, PreserverMode mode);

struct Cell {
    std::size_t row = 0;
    std::size_t col = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Support of a signed monomial operator: E_ij -> global_sign * scale_ij * E_target(ij).
struct SupportMap {
    Shape shape;
    int global_sign = 1;
    std::vector<Cell> target;     ///< by source slot
    std::vector<Rational> scale;  ///< positive, by source slot

    const Cell& target_of(std::size_t i, std::size_t j) const { return target[slot(shape, i, j)]; }
    const Rational& scale_of(std::size_t i, std::size_t j) const { return scale[slot(shape, i, j)]; }
};

struct MonomialFailure {
    enum class Kind {
        ZeroImage,     ///< some E_ij maps to zero
        SplitImage,    ///< some E_ij maps onto two or more cells
        SharedTarget,  ///< some cell is hit by two or more sources, or by none
        MixedSigns,    ///< images of different E_ij have opposite signs
    };
    Kind kind;
    Cell cell;  ///< offending source cell (target cell for SharedTarget)

    std::string describe() const;
};

using MonomialAnalysis = std::variant<SupportMap, MonomialFailure>;

/// Succeeds iff L or -L is a nonnegative monomial matrix.
MonomialAnalysis monomial_analysis(const MatrixSpaceMap& map);

/// Extra 2x2 components: a word in {rowflip, colflip, transpose, swap2}
/// followed by entrywise positive scaling.
struct Special2x2 {
    std::vector<PrimitiveTransform> word;
    RationalMatrix hadamard;
};

/// Certificate that an operator is a preserver:
///   A -> global_sign * P(F * T(A) * E)
/// where T is transpose or identity, and P moves source row i to row_perm[i]
/// and source column j to col_perm[j]. In the 2x2 regime special_2x2 replaces
/// the T/F/E/P part.
struct CanonicalFactorization {
    Shape shape;
    Regime regime = Regime::General;
    int global_sign = 1;
    bool transposed = false;
    std::vector<std::size_t> row_perm;
    std::vector<std::size_t> col_perm;
    std::vector<Rational> row_scale;  ///< F
    std::vector<Rational> col_scale;  ///< E, with col_scale[0] == 1
    std::optional<Special2x2> special_2x2;

    bool row_reversed() const;
    bool col_reversed() const;
    TransformChain to_chain() const;
    MatrixSpaceMap materialize() const { return compose_to_operator(to_chain()); }
};

/// Evidence that an operator does not map the class onto itself.
struct Witness {
    enum class Kind {
        ImageLeavesClass,     ///< member in class, L(member) not (checked at order <= 2)
        PreimageLeavesClass,  ///< member in class, L^-1(member) not: member is not an image of the class
        NotSurjective,        ///< member in class but outside the range of L
    };
    Kind kind = Kind::ImageLeavesClass;
    RationalMatrix member;
    std::optional<RationalMatrix> partner;  ///< L(member) or L^-1(member)
    std::string family;                     ///< gadget that produced it, e.g. "J(c) entry (1,1), c=4"
};

std::string to_string(Witness::Kind kind);

struct PreserverVerdict {
    PreserverMode mode = PreserverMode::SR;
    Regime regime = Regime::General;
    std::optional<SignPattern> pattern;
    std::optional<CanonicalFactorization> factorization;
    std::optional<Witness> witness;
    std::string reason;  ///< set on rejection
    bool witness_exhausted = false;

    bool is_preserver() const { return factorization.has_value(); }
};

/// Structural decision only: the factorization, or the rejection reason.
std::variant<CanonicalFactorization, std::string> decide_structure(const MatrixSpaceMap& map, PreserverMode mode,
                                                                   const std::optional<SignPattern>& eps = {});

/// Full verdict. Pattern modes require a fully constrained eps of length
/// min(m,n); otherwise PreserverError is thrown.
PreserverVerdict factor_preserver(const MatrixSpaceMap& map, PreserverMode mode,
                                  const std::optional<SignPattern>& eps = {});

struct ClassAgreementReport {
    std::size_t compared = 0;
    std::size_t skipped = 0;  ///< SR/SSR pairs in the 2x2 regime, where the classes differ
    std::vector<std::string> divergences;

    bool ok() const { return divergences.empty(); }
};

/// Compares verdicts across strictness: SR vs SSR, and SR(eps) vs SSR(eps)
/// when eps is given. Also checks that every SSR-preserver is an SR-preserver.
ClassAgreementReport equal_preserver_classes_check(const std::vector<MatrixSpaceMap>& operators,
                                                   const std::optional<SignPattern>& eps = {});

/// Samples canonical and adversarial operators on one shape and compares.
ClassAgreementReport equal_preserver_classes_check(Shape shape, std::size_t samples, std::uint64_t seed);

}  // namespace signreg
