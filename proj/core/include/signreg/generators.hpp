#pragma once

// Exact test matrices: totally positive families, SSR(eps) instances,
// degenerate SR instances and the J(c) gadgets, plus the seeded sampling
// helpers used by the verification harness.

#include "signreg/matrix.hpp"
#include "signreg/signclass.hpp"
#include "signreg/transforms.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <variant>

namespace signreg {

class GeneratorError : public MatrixError {
public:
    using MatrixError::MatrixError;
};

/// Seeded source of randomness. Draws are derived from the raw mt19937_64
/// stream only, so a seed reproduces bit-identical output on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1)); }
    bool coin() { return (engine_() >> 63) != 0; }
    /// p/q with p in [1, max_num], q in [1, max_den].
    Rational positive_rational(std::int64_t max_num = 9, std::int64_t max_den = 4);

private:
    std::mt19937_64 engine_;
};

struct GadgetTarget {
    enum class Kind { Entry, Row, Col };
    Kind kind = Kind::Entry;
    std::size_t row = 0;  ///< Entry and Row
    std::size_t col = 0;  ///< Entry and Col

    static GadgetTarget entry(std::size_t i, std::size_t j) { return {Kind::Entry, i, j}; }
    static GadgetTarget whole_row(std::size_t i) { return {Kind::Row, i, 0}; }
    static GadgetTarget whole_col(std::size_t j) { return {Kind::Col, 0, j}; }
    std::string describe() const;  ///< 1-based, e.g. "entry (1,1)"
};

struct VandermondeSpec {
    std::vector<Rational> nodes;
    std::size_t cols = 0;
};
struct PascalSpec {
    Shape shape;
};
struct GadgetSpec {
    Shape shape;
    GadgetTarget target;
    Rational c;
};
struct PatternSearchSpec {
    Shape shape;
    SignPattern pattern;
    std::int64_t bound = 10;
    std::size_t attempts = 1'000'000;
    std::uint64_t seed = 0;
    bool strict = true;
};

using GeneratorSpec = std::variant<VandermondeSpec, PascalSpec, GadgetSpec, PatternSearchSpec>;

/// Vandermonde and Pascal outputs are checked to be totally positive before
/// they are returned; pattern search throws GeneratorError when its attempt
/// budget runs out.
RationalMatrix generate(const GeneratorSpec& spec);

/// Entry (i,j) = C(i+j, j), 0-based.
RationalMatrix pascal(Shape shape);

/// All-ones matrix with one entry, row or column multiplied by c > 0.
RationalMatrix gadget_j(Shape shape, GadgetTarget target, const Rational& c);

/// Rejection sampling of integer matrices with entries in [-bound, bound].
std::optional<RationalMatrix> pattern_search(const PatternSearchSpec& spec);

/// Orbit of the all-plus pattern under negation and row/column reversal.
std::set<SignPattern> reachable_patterns(Shape shape);

/// Shortest chain of {neg, rowflip, colflip} carrying all-plus to eps, if any.
std::optional<TransformChain> orbit_chain(Shape shape, const SignPattern& eps);

/// Deterministic SSR(eps) matrix: a Vandermonde TP matrix pushed through
/// orbit_chain. Throws GeneratorError when eps is not reachable.
RationalMatrix construct_ssr(Shape shape, const SignPattern& eps);

/// construct_ssr for reachable eps, otherwise strict pattern search.
RationalMatrix realize_pattern(Shape shape, const SignPattern& eps, std::int64_t bound = 10,
                               std::size_t attempts = 1'000'000, std::uint64_t seed = 0);

/// q^((i-j)^2) for 0 < q < 1: a totally positive matrix that tends to the
/// identity as q -> 0.
RationalMatrix gaussian_kernel(std::size_t n, const Rational& q);

// Sampling helpers.

enum class ChainFamily {
    SignRegular,       ///< diag, neg, rowflip, colflip, transpose (square)
    PatternPreserving  ///< diag, rowflip+colflip together, transpose (square)
};

RationalMatrix random_matrix(Shape shape, Rng& rng, std::int64_t bound, std::int64_t max_den = 1);
std::vector<Rational> random_positive_vector(std::size_t n, Rng& rng);
DiagEquiv random_diag(Shape shape, Rng& rng);
TransformChain random_chain(Shape shape, Rng& rng, ChainFamily family, std::size_t max_steps = 5);

/// Random totally positive matrix: Vandermonde on random nodes with random
/// positive diagonal scaling.
RationalMatrix random_tp(Shape shape, Rng& rng);
/// Random SSR matrix from the orbit of random_tp.
RationalMatrix random_ssr(Shape shape, Rng& rng);
/// Random SR matrix drawn from the TP orbit, small pattern searches, rank-one
/// and gadget matrices, and zero-padded smaller SR matrices.
RationalMatrix random_sr(Shape shape, Rng& rng);
/// Random fully constrained pattern of the given length.
SignPattern random_pattern(std::size_t length, Rng& rng);

}  // namespace signreg
