#include <doctest.h>

#include "oracles.hpp"
#include "signreg/generators.hpp"
#include "signreg/matrix_io.hpp"

#include <set>

using namespace signreg;

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(to_string(Rational(-3, 2)) == "-3/2");
    CHECK(to_string(Rational(4)) == "4");
    CHECK_THROWS_AS(parse_rational("1/0"), MatrixError);
    CHECK_THROWS_AS(parse_rational("1.5"), MatrixError);
    CHECK_THROWS_AS(parse_rational(""), MatrixError);
    CHECK_THROWS_AS(make_rational(1, 0), MatrixError);
    CHECK(power(Rational(1, 2), 3) == Rational(1, 8));
}

TEST_CASE("determinant fixed values") {
    CHECK(determinant(RationalMatrix{{1}}) == 1);
    CHECK(determinant(identity_matrix(3)) == 1);
    const RationalMatrix v{{1, 1, 1}, {1, 2, 4}, {1, 3, 9}};
    CHECK(determinant(v) == 2);
    CHECK(oracle::cofactor_det(v) == 2);
    CHECK(determinant(all_ones(3, 3)) == 0);
    CHECK(determinant(RationalMatrix{{Rational(1, 2), Rational(1, 3)}, {Rational(1, 4), Rational(1, 5)}}) ==
          Rational(1, 10) - Rational(1, 12));
    CHECK_THROWS_AS(determinant(RationalMatrix(2, 3)), MatrixError);
}

TEST_CASE("determinant agrees with cofactor expansion") {
    Rng rng(11);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + rng.index(5);
        const RationalMatrix a = random_matrix({n, n}, rng, 7, 5);
        REQUIRE(determinant(a) == oracle::cofactor_det(a));
    }
}

TEST_CASE("determinant of pivot-starved and rank-deficient matrices") {
    CHECK(determinant(RationalMatrix{{0, 1}, {1, 0}}) == -1);
    CHECK(determinant(RationalMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}) == -1);
    CHECK(determinant(RationalMatrix{{0, 2, 3}, {0, 4, 5}, {0, 6, 7}}) == 0);
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        RationalMatrix a = random_matrix({4, 4}, rng, 3, 1);
        for (std::size_t j = 0; j < 4; ++j) a(3, j) = a(0, j) - 2 * a(1, j);
        CHECK(determinant(a) == 0);
    }
}

TEST_CASE("minors") {
    CHECK(minor(RationalMatrix{{1, 2}, {3, 4}}, MinorIndex{{0, 1}, {0, 1}}) == -2);
    CHECK(minor(all_ones(3, 3), MinorIndex{{0, 1}, {0, 1}}) == 0);
    CHECK(minor(unit_matrix({3, 3}, 0, 0), MinorIndex{{0}, {0}}) == 1);
    CHECK_THROWS_AS(minor(all_ones(3, 3), MinorIndex{{1, 0}, {0, 1}}), MatrixError);
    CHECK_THROWS_AS(minor(all_ones(3, 3), MinorIndex{{0, 3}, {0, 1}}), MatrixError);
    CHECK_THROWS_AS(minor(all_ones(3, 3), MinorIndex{{0, 1}, {0}}), MatrixError);
    CHECK(MinorIndex{{0, 2}, {1, 3}}.to_string() == "rows {1,3} cols {2,4}");
}

TEST_CASE("minor enumeration counts, order and values") {
    CHECK(enumerate_minors(all_ones(2, 2), 2).size() == 1);
    CHECK(enumerate_minors(all_ones(3, 4), 2).size() == 18);
    CHECK(enumerate_minors(all_ones(4, 4), 3).size() == 16);
    CHECK(binomial(5, 2) == 10);

    Rng rng(2);
    const RationalMatrix a = random_matrix({4, 5}, rng, 5, 3);
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto minors = enumerate_minors(a, k);
        REQUIRE(minors.size() == binomial(4, k) * binomial(5, k));
        for (std::size_t t = 1; t < minors.size(); ++t) {
            const auto& p = minors[t - 1].index;
            const auto& q = minors[t].index;
            CHECK((p.rows < q.rows || (p.rows == q.rows && p.cols < q.cols)));
        }
        for (const auto& mv : minors) CHECK(mv.value == oracle::minor_of(a, mv.index.rows, mv.index.cols));
        std::size_t visited = 0;
        for_each_minor_sign(a, k, [&](const MinorIndex& idx, int s) {
            CHECK(s == sgn(minors[visited].value));
            CHECK(idx == minors[visited].index);
            ++visited;
            return true;
        });
        CHECK(visited == minors.size());
    }
}

TEST_CASE("builders") {
    CHECK(exchange_matrix(2) == RationalMatrix{{0, 1}, {1, 0}});
    CHECK(all_ones(2, 3) == RationalMatrix{{1, 1, 1}, {1, 1, 1}});
    const std::vector<Rational> nodes{1, 2, 3};
    CHECK(vandermonde(nodes, 3) == RationalMatrix{{1, 1, 1}, {1, 2, 4}, {1, 3, 9}});
    const std::vector<Rational> bad{1, 1, 2};
    CHECK_THROWS_AS(vandermonde(bad, 3), MatrixError);
    const std::vector<Rational> negative{-1, 2};
    CHECK_THROWS_AS(vandermonde(negative, 2), MatrixError);
    CHECK_THROWS_AS(RationalMatrix(0, 3), MatrixError);
}

TEST_CASE("products and transposes") {
    Rng rng(3);
    const RationalMatrix a = random_matrix({2, 3}, rng, 5, 2);
    const RationalMatrix b = random_matrix({3, 4}, rng, 5, 2);
    CHECK((a * b).transposed() == b.transposed() * a.transposed());
    CHECK_THROWS_AS(a * a, MatrixError);
}

TEST_CASE("matrix text format") {
    const RationalMatrix a = parse_matrix("2 3\n1 -2/4 3\n\n0 1/3 7\n");
    CHECK(a == RationalMatrix{{1, Rational(-1, 2), 3}, {0, Rational(1, 3), 7}});
    CHECK(parse_matrix(format_matrix(a)) == a);

    auto message = [](std::string_view text) {
        try {
            parse_matrix(text, "m.txt");
        } catch (const MatrixError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("2 2\n1 2\n3\n").find("m.txt:3:") == 0);
    CHECK(message("2 2\n1 2\n3 x\n").find("m.txt:3:") == 0);
    CHECK(message("2 2\n1 2\n") .find("m.txt:") == 0);
    CHECK(message("2 2\n1 2\n3 4\n5 6\n").find("m.txt:4:") == 0);
    CHECK(message("0 2\n").find("m.txt:1:") == 0);
    CHECK(message("2 2\n1 2\n3 4/0\n").find("m.txt:3:") == 0);
    CHECK(parse_shape("3x4") == Shape{3, 4});
    CHECK_THROWS_AS(parse_shape("3by4"), MatrixError);
    CHECK_THROWS_AS(load_matrix("/nonexistent/a.mat"), MatrixError);
}

TEST_CASE("operator vec basis and file format") {
    const Shape s{2, 3};
    const RationalMatrix a{{1, 2, 3}, {4, 5, 6}};
    CHECK(unvec(vec(a), s) == a);
    CHECK(vec(a)[slot(s, 1, 0)] == 4);
    const MatrixSpaceMap id = MatrixSpaceMap::identity(s);
    CHECK(id.apply(a) == a);
    CHECK(parse_operator(format_operator(id)) == id);
    CHECK_THROWS_AS(parse_operator("map 2 2\n3 3\n1 0 0\n0 1 0\n0 0 1\n"), MatrixError);
    CHECK_THROWS_AS(parse_operator("mop 1 1\n1 1\n1\n"), MatrixError);
    CHECK_THROWS_AS(MatrixSpaceMap(s, identity_matrix(5)), MatrixError);
}

TEST_CASE("exact inverse and rank") {
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
        const RationalMatrix a = random_matrix({4, 4}, rng, 5, 3);
        const auto inv = inverse(a);
        if (determinant(a) == 0) {
            CHECK(!inv);
            CHECK(rank(a) < 4);
        } else {
            REQUIRE(inv);
            CHECK(a * *inv == identity_matrix(4));
            CHECK(rank(a) == 4);
        }
    }
    CHECK(rank(all_ones(3, 4)) == 1);
}

TEST_CASE("reversal permutation determinant") {
    for (std::size_t n = 1; n <= 8; ++n) {
        const Rational expected = (n / 2) % 2 ? -1 : 1;
        CHECK(determinant(exchange_matrix(n)) == expected);
        CHECK(oracle::cofactor_det(exchange_matrix(n)) == expected);
    }
}

TEST_CASE("determinant is multiplicative") {
    Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng.index(5);
        const RationalMatrix a = random_matrix({n, n}, rng, 6, 4);
        const RationalMatrix b = random_matrix({n, n}, rng, 6, 4);
        CHECK(determinant(a * b) == determinant(a) * determinant(b));
    }
}

TEST_CASE("minor equals determinant of the extracted submatrix") {
    Rng rng(14);
    const RationalMatrix a = random_matrix({4, 5}, rng, 5, 3);
    for (std::size_t k = 1; k <= 4; ++k) {
        std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> seen;
        for (const auto& mv : enumerate_minors(a, k)) {
            CHECK(mv.value == determinant(a.submatrix(mv.index.rows, mv.index.cols)));
            CHECK(seen.insert({mv.index.rows, mv.index.cols}).second);
        }
    }
}
