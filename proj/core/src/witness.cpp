#include "signreg/witness.hpp"

#include "signreg/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace signreg {

const std::vector<Rational>& witness_constants() {
    static const std::vector<Rational> constants = [] {
        std::vector<Rational> c{Rational(1)};
        for (unsigned t = 1; t <= 20; ++t) {
            const Rational p = power(Rational(2), t);
            c.push_back(p);
            c.push_back(1 / p);
        }
        return c;
    }();
    return constants;
}

namespace {

bool ssr_2x2(PreserverMode mode, Shape shape) {
    return mode == PreserverMode::SSR && shape.rows == 2 && shape.cols == 2;
}

}  // namespace

bool in_source_class(const RationalMatrix& a, PreserverMode mode, const std::optional<SignPattern>& eps) {
    if (is_pattern_mode(mode)) return matches_pattern(a, *eps, false);
    if (ssr_2x2(mode, a.shape())) return is_strictly_sign_regular(a);
    return is_sign_regular(a);
}

bool leaves_class(const RationalMatrix& y, PreserverMode mode, const std::optional<SignPattern>& eps) {
    const std::size_t k = std::min<std::size_t>(2, y.shape().min_dim());
    if (is_pattern_mode(mode)) return !matches_pattern(y, eps->prefix(k), false);
    if (ssr_2x2(mode, y.shape())) return !is_strictly_sign_regular(y);
    return !is_sign_regular(y, k);
}

namespace {

// A(c) = base + c * dir
struct Pencil {
    RationalMatrix base;
    RationalMatrix dir;
    std::string label;  // e.g. "J(c) entry (1,1)"
};

std::string cell_name(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

std::vector<Pencil> unit_pencils(Shape shape, const Rational& sigma) {
    std::vector<Pencil> out;
    const RationalMatrix zero(shape);
    for (std::size_t i = 0; i < shape.rows; ++i)
        for (std::size_t j = 0; j < shape.cols; ++j)
            out.push_back({sigma * unit_matrix(shape, i, j), zero, "E" + cell_name(i, j)});
    for (std::size_t i = 0; i < shape.rows; ++i)
        for (std::size_t j = 0; j < shape.cols; ++j)
            for (std::size_t k = 0; k < shape.rows; ++k)
                for (std::size_t l = 0; l < shape.cols; ++l) {
                    if (i == k && j == l) continue;
                    out.push_back({sigma * unit_matrix(shape, i, j), sigma * unit_matrix(shape, k, l),
                                   "E" + cell_name(i, j) + " + c E" + cell_name(k, l)});
                }
    return out;
}

// J with the cells in `cells` replaced by c.
Pencil j_pencil(Shape shape, const std::vector<std::pair<std::size_t, std::size_t>>& cells, const Rational& sigma,
                std::string label) {
    RationalMatrix base = all_ones(shape.rows, shape.cols);
    RationalMatrix dir(shape);
    for (auto [i, j] : cells) {
        base(i, j) = 0;
        dir(i, j) = 1;
    }
    return {sigma * base, sigma * dir, std::move(label)};
}

std::vector<Pencil> gadget_pencils(Shape shape, const Rational& sigma) {
    std::vector<Pencil> out;
    for (std::size_t i = 0; i < shape.rows; ++i)
        for (std::size_t j = 0; j < shape.cols; ++j)
            out.push_back(j_pencil(shape, {{i, j}}, sigma, "J(c) entry " + cell_name(i, j)));
    for (std::size_t i = 0; i < shape.rows; ++i) {
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t j = 0; j < shape.cols; ++j) cells.emplace_back(i, j);
        out.push_back(j_pencil(shape, cells, sigma, "J(c) row " + std::to_string(i + 1)));
    }
    for (std::size_t j = 0; j < shape.cols; ++j) {
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t i = 0; i < shape.rows; ++i) cells.emplace_back(i, j);
        out.push_back(j_pencil(shape, cells, sigma, "J(c) column " + std::to_string(j + 1)));
    }
    const std::size_t m = shape.rows - 1, n = shape.cols - 1;
    if (m > 0 && n > 0) {
        out.push_back(j_pencil(shape, {{0, 0}, {m, n}}, sigma, "J(c) corners " + cell_name(0, 0) + cell_name(m, n)));
        out.push_back(j_pencil(shape, {{0, n}, {m, 0}}, sigma, "J(c) corners " + cell_name(0, n) + cell_name(m, 0)));
    }
    return out;
}

RationalMatrix at(const Pencil& p, const Rational& c) { return p.base + c * p.dir; }

// Coefficients of an entry (degree 1) or 2x2 minor (degree 2) along a pencil.
struct Quadratic {
    Rational a, b, c;  // a t^2 + b t + c
};

void pencil_polynomials(const RationalMatrix& base, const RationalMatrix& dir, std::vector<Quadratic>& out) {
    const Shape s = base.shape();
    for (std::size_t i = 0; i < s.rows; ++i)
        for (std::size_t j = 0; j < s.cols; ++j) out.push_back({0, dir(i, j), base(i, j)});
    for (std::size_t i = 0; i < s.rows; ++i)
        for (std::size_t k = i + 1; k < s.rows; ++k)
            for (std::size_t j = 0; j < s.cols; ++j)
                for (std::size_t l = j + 1; l < s.cols; ++l) {
                    // (b_ij + t d_ij)(b_kl + t d_kl) - (b_il + t d_il)(b_kj + t d_kj)
                    Quadratic q;
                    q.a = dir(i, j) * dir(k, l) - dir(i, l) * dir(k, j);
                    q.b = base(i, j) * dir(k, l) + dir(i, j) * base(k, l) - base(i, l) * dir(k, j) -
                          dir(i, l) * base(k, j);
                    q.c = base(i, j) * base(k, l) - base(i, l) * base(k, j);
                    out.push_back(q);
                }
}

std::optional<Rational> rational_sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    const Integer num = x.get_num(), den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rational(rn, rd);
}

// Sample points that meet every sign cell of the given polynomials.
std::vector<Rational> critical_points(const std::vector<Quadratic>& polys) {
    std::vector<Rational> roots;
    for (const auto& q : polys) {
        if (q.a == 0) {
            if (q.b != 0) roots.push_back(-q.c / q.b);
            continue;
        }
        roots.push_back(-q.b / (2 * q.a));
        const Rational disc = q.b * q.b - 4 * q.a * q.c;
        if (disc < 0) continue;
        if (auto r = rational_sqrt(disc)) {
            roots.push_back((-q.b + *r) / (2 * q.a));
            roots.push_back((-q.b - *r) / (2 * q.a));
        } else {
            const double d = std::sqrt(disc.get_d());
            const double a2 = 2 * q.a.get_d(), b = q.b.get_d();
            for (double x : {(-b + d) / a2, (-b - d) / a2})
                if (std::isfinite(x)) roots.emplace_back(x);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    std::vector<Rational> points;
    if (roots.empty()) return {Rational(1)};
    points.push_back(roots.front() - 1);
    for (std::size_t k = 0; k < roots.size(); ++k) {
        points.push_back(roots[k]);
        if (k + 1 < roots.size()) points.push_back((roots[k] + roots[k + 1]) / 2);
    }
    points.push_back(roots.back() + 1);
    return points;
}

std::string describe_c(const std::string& label, const Rational& c, bool constant) {
    return constant ? label : label + ", c=" + to_string(c);
}

using Check = std::function<std::optional<Witness>(const RationalMatrix&, const std::string&)>;

std::optional<Witness> scan_constants(const std::vector<Pencil>& pencils, const Check& check) {
    for (const auto& p : pencils) {
        const bool constant = p.dir.is_zero();
        for (const auto& c : witness_constants()) {
            if (auto w = check(at(p, c), describe_c(p.label, c, constant))) return w;
            if (constant) break;
        }
    }
    return std::nullopt;
}

std::optional<Witness> scan_adaptive(const std::vector<Pencil>& pencils, const MatrixSpaceMap& op, const Check& check) {
    for (const auto& p : pencils) {
        if (p.dir.is_zero()) continue;
        std::vector<Quadratic> polys;
        pencil_polynomials(p.base, p.dir, polys);
        pencil_polynomials(op.apply(p.base), op.apply(p.dir), polys);
        for (const auto& c : critical_points(polys))
            if (auto w = check(at(p, c), describe_c(p.label, c, false))) return w;
    }
    return std::nullopt;
}

bool in_range(const MatrixSpaceMap& map, const RationalMatrix& b) {
    const RationalMatrix& L = map.matrix();
    RationalMatrix aug(L.rows(), L.cols() + 1);
    const auto v = vec(b);
    for (std::size_t i = 0; i < L.rows(); ++i) {
        for (std::size_t j = 0; j < L.cols(); ++j) aug(i, j) = L(i, j);
        aug(i, L.cols()) = v[i];
    }
    return rank(aug) == rank(L);
}

}  // namespace

Witness find_witness(const MatrixSpaceMap& map, PreserverMode mode, const std::optional<SignPattern>& eps) {
    const Shape shape = map.shape();
    if (is_pattern_mode(mode) && (!eps || eps->size() != shape.min_dim() || !eps->fully_constrained()))
        throw PreserverError("witness search in pattern mode needs a fully constrained pattern of length min(m,n)");
    const Rational sigma = is_pattern_mode(mode) && eps->at_order(1) == SignSymbol::Minus ? -1 : 1;

    const bool monomial = std::holds_alternative<SupportMap>(monomial_analysis(map));
    std::vector<Pencil> pencils = monomial ? gadget_pencils(shape, sigma) : unit_pencils(shape, sigma);
    {
        auto rest = monomial ? unit_pencils(shape, sigma) : gadget_pencils(shape, sigma);
        pencils.insert(pencils.end(), std::make_move_iterator(rest.begin()), std::make_move_iterator(rest.end()));
    }

    const Check forward = [&](const RationalMatrix& a, const std::string& family) -> std::optional<Witness> {
        if (!in_source_class(a, mode, eps)) return std::nullopt;
        RationalMatrix y = map.apply(a);
        if (!leaves_class(y, mode, eps)) return std::nullopt;
        return Witness{Witness::Kind::ImageLeavesClass, a, std::move(y), family};
    };
    if (auto w = scan_constants(pencils, forward)) return *w;

    const auto inv = map.inverse();
    Check backward;
    if (inv) {
        backward = [&](const RationalMatrix& a, const std::string& family) -> std::optional<Witness> {
            if (!in_source_class(a, mode, eps)) return std::nullopt;
            RationalMatrix x = inv->apply(a);
            if (!leaves_class(x, mode, eps)) return std::nullopt;
            return Witness{Witness::Kind::PreimageLeavesClass, a, std::move(x), family};
        };
        if (auto w = scan_constants(pencils, backward)) return *w;
    }

    if (auto w = scan_adaptive(pencils, map, forward)) return *w;
    if (inv)
        if (auto w = scan_adaptive(pencils, *inv, backward)) return *w;

    if (!inv) {
        const Check outside = [&](const RationalMatrix& a, const std::string& family) -> std::optional<Witness> {
            if (!in_source_class(a, mode, eps) || in_range(map, a)) return std::nullopt;
            return Witness{Witness::Kind::NotSurjective, a, std::nullopt, family};
        };
        if (auto w = scan_constants(pencils, outside)) return *w;
    }

    throw WitnessNotFound("no witness found for the " + to_string(mode) + " operator on " + to_string(shape) +
                          " after exhausting the gadget families");
}

bool verify_witness(const Witness& w, const MatrixSpaceMap& map, PreserverMode mode,
                    const std::optional<SignPattern>& eps) {
    if (!(w.member.shape() == map.shape())) return false;
    if (!in_source_class(w.member, mode, eps)) return false;
    switch (w.kind) {
        case Witness::Kind::ImageLeavesClass: {
            const RationalMatrix y = map.apply(w.member);
            if (w.partner && !(*w.partner == y)) return false;
            return leaves_class(y, mode, eps);
        }
        case Witness::Kind::PreimageLeavesClass: {
            const auto inv = map.inverse();
            if (!inv) return false;
            const RationalMatrix x = inv->apply(w.member);
            if (w.partner && !(*w.partner == x)) return false;
            return leaves_class(x, mode, eps);
        }
        case Witness::Kind::NotSurjective: return !in_range(map, w.member);
    }
    return false;
}

}  // namespace signreg
