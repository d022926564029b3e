#include <doctest.h>

#include "oracles.hpp"
#include "signreg/generators.hpp"
#include "signreg/witness.hpp"

#include <algorithm>
#include <numeric>

using namespace signreg;

TEST_CASE("constant set") {
    const auto& c = witness_constants();
    CHECK(c.size() == 41);
    CHECK(c.front() == 1);
    CHECK(std::find(c.begin(), c.end(), power(Rational(2), 20)) != c.end());
    CHECK(std::find(c.begin(), c.end(), 1 / power(Rational(2), 20)) != c.end());
}

TEST_CASE("membership predicates") {
    const auto eps = SignPattern::parse("+,-");
    CHECK(in_source_class(all_ones(2, 3), PreserverMode::SRPattern, eps));
    CHECK(leaves_class(RationalMatrix{{1, 2, 1}, {2, 1, 2}}, PreserverMode::SR, std::nullopt));
    CHECK(leaves_class(RationalMatrix{{1, 1, 1}, {1, 2, 3}}, PreserverMode::SRPattern, eps));
    CHECK(!leaves_class(RationalMatrix{{1, 2, 1}, {2, 1, 0}}, PreserverMode::SR, std::nullopt) ==
          oracle::is_sr(RationalMatrix{{1, 2, 1}, {2, 1, 0}}, 2));
    CHECK(in_source_class(RationalMatrix{{2, 1}, {1, 2}}, PreserverMode::SSR, std::nullopt));
    CHECK(!in_source_class(all_ones(2, 2), PreserverMode::SSR, std::nullopt));
}

TEST_CASE("negative pattern sign flips the gadgets") {
    const Shape s{3, 3};
    const SignPattern eps = SignPattern::parse("-,+,-");
    const MatrixSpaceMap op = compose_to_operator(RowFlip{}, s);
    const Witness w = find_witness(op, PreserverMode::SRPattern, eps);
    CHECK(w.member(0, 0) < 0);
    CHECK(verify_witness(w, op, PreserverMode::SRPattern, eps));
    CHECK(!verify_witness(w, MatrixSpaceMap::identity(s), PreserverMode::SRPattern, eps));
}

TEST_CASE("singular operators are caught") {
    const Shape s{2, 3};
    RationalMatrix L = identity_matrix(6);
    L(5, 5) = 0;
    L(4, 5) = 1;  // E_23 -> E_22, nothing reaches E_23
    const MatrixSpaceMap op(s, L);
    const Witness w = find_witness(op, PreserverMode::SR);
    CHECK(verify_witness(w, op, PreserverMode::SR));
    CHECK(oracle::is_sr(w.member));
}

TEST_CASE("nonnegative non-monomial maps need the inverse direction") {
    // A -> A + a_11 J maps nonnegative matrices into themselves.
    const Shape s{2, 2};
    RationalMatrix L = identity_matrix(4);
    for (std::size_t t = 0; t < 4; ++t) L(t, 0) += 1;
    const MatrixSpaceMap op(s, L);
    const Witness w = find_witness(op, PreserverMode::SR);
    CHECK(verify_witness(w, op, PreserverMode::SR));
}

TEST_CASE("witness search on preservers reports exhaustion") {
    const MatrixSpaceMap op = compose_to_operator(TransformChain({3, 3}, {Negate{}, Transpose{}}));
    CHECK_THROWS_AS(find_witness(op, PreserverMode::SR), WitnessNotFound);
}

TEST_CASE("witness search order is deterministic") {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        const Shape s{3, 3};
        const std::size_t n = s.cells();
        RationalMatrix L(n, n);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t k = n; k > 1; --k) std::swap(perm[k - 1], perm[rng.index(k)]);
        for (std::size_t k = 0; k < n; ++k) L(perm[k], k) = 1;
        const MatrixSpaceMap op(s, L);
        if (std::holds_alternative<CanonicalFactorization>(decide_structure(op, PreserverMode::SR))) continue;
        const Witness a = find_witness(op, PreserverMode::SR);
        const Witness b = find_witness(op, PreserverMode::SR);
        CHECK(a.member == b.member);
        CHECK(a.family == b.family);
    }
}
