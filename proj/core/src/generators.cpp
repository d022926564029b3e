#include "signreg/generators.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

namespace signreg {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw GeneratorError("empty range in Rng::uniform");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw;
    do {
        draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
}

Rational Rng::positive_rational(std::int64_t max_num, std::int64_t max_den) {
    const auto p = uniform(1, max_num);
    const auto q = uniform(1, max_den);
    return make_rational(Integer(static_cast<long>(p)), Integer(static_cast<long>(q)));
}

std::string GadgetTarget::describe() const {
    switch (kind) {
        case Kind::Entry: return "entry (" + std::to_string(row + 1) + "," + std::to_string(col + 1) + ")";
        case Kind::Row: return "row " + std::to_string(row + 1);
        case Kind::Col: return "column " + std::to_string(col + 1);
    }
    return "?";
}

RationalMatrix pascal(Shape shape) {
    RationalMatrix out(shape);
    for (std::size_t i = 0; i < shape.rows; ++i)
        for (std::size_t j = 0; j < shape.cols; ++j) {
            Integer c;
            mpz_bin_uiui(c.get_mpz_t(), i + j, j);
            out(i, j) = Rational(c);
        }
    return out;
}

RationalMatrix gadget_j(Shape shape, GadgetTarget target, const Rational& c) {
    if (c <= 0) throw GeneratorError("gadget scale c must be positive");
    RationalMatrix out = all_ones(shape.rows, shape.cols);
    switch (target.kind) {
        case GadgetTarget::Kind::Entry:
            if (target.row >= shape.rows || target.col >= shape.cols) throw GeneratorError("gadget entry out of range");
            out(target.row, target.col) = c;
            break;
        case GadgetTarget::Kind::Row:
            if (target.row >= shape.rows) throw GeneratorError("gadget row out of range");
            for (std::size_t j = 0; j < shape.cols; ++j) out(target.row, j) = c;
            break;
        case GadgetTarget::Kind::Col:
            if (target.col >= shape.cols) throw GeneratorError("gadget column out of range");
            for (std::size_t i = 0; i < shape.rows; ++i) out(i, target.col) = c;
            break;
    }
    return out;
}

std::optional<RationalMatrix> pattern_search(const PatternSearchSpec& spec) {
    if (spec.bound < 1) throw GeneratorError("pattern search bound must be positive");
    if (spec.pattern.size() > spec.shape.min_dim()) throw GeneratorError("pattern longer than min(m,n)");
    Rng rng(spec.seed);
    RationalMatrix a(spec.shape);
    for (std::size_t attempt = 0; attempt < spec.attempts; ++attempt) {
        for (auto& x : a.data()) x = Rational(static_cast<long>(rng.uniform(-spec.bound, spec.bound)));
        if (matches_pattern(a, spec.pattern, spec.strict)) return a;
    }
    return std::nullopt;
}

namespace {

void require_tp(const RationalMatrix& a, const char* what) {
    if (!is_totally_positive(a)) throw GeneratorError(std::string(what) + " output failed the total positivity check");
}

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

std::vector<Rational> increasing_nodes(std::size_t count) {
    std::vector<Rational> nodes;
    for (std::size_t i = 0; i < count; ++i) nodes.emplace_back(static_cast<long>(i + 1));
    return nodes;
}

}  // namespace

RationalMatrix generate(const GeneratorSpec& spec) {
    return std::visit(overloaded{
                          [](const VandermondeSpec& v) {
                              RationalMatrix a = vandermonde(v.nodes, v.cols);
                              require_tp(a, "vandermonde");
                              return a;
                          },
                          [](const PascalSpec& p) {
                              RationalMatrix a = pascal(p.shape);
                              require_tp(a, "pascal");
                              return a;
                          },
                          [](const GadgetSpec& g) { return gadget_j(g.shape, g.target, g.c); },
                          [](const PatternSearchSpec& s) {
                              auto found = pattern_search(s);
                              if (!found)
                                  throw GeneratorError("pattern search for " + s.pattern.to_string() + " on " +
                                                       to_string(s.shape) + " exhausted " +
                                                       std::to_string(s.attempts) + " attempts");
                              return *found;
                          },
                      },
                      spec);
}

namespace {

// Breadth-first search over pushforwards of the all-plus pattern. Returns the
// parent links so callers can rebuild shortest chains.
struct OrbitSearch {
    std::map<SignPattern, std::vector<PrimitiveTransform>> chains;
};

OrbitSearch explore_orbit(std::size_t length) {
    const std::vector<PrimitiveTransform> moves{Negate{}, RowFlip{}, ColFlip{}};
    OrbitSearch search;
    const SignPattern start = SignPattern::all_plus(length);
    search.chains[start] = {};
    std::deque<SignPattern> queue{start};
    while (!queue.empty()) {
        const SignPattern cur = queue.front();
        queue.pop_front();
        for (const auto& mv : moves) {
            SignPattern next = pushforward_pattern(mv, cur);
            if (search.chains.contains(next)) continue;
            auto chain = search.chains[cur];
            chain.push_back(mv);
            search.chains.emplace(next, std::move(chain));
            queue.push_back(std::move(next));
        }
    }
    return search;
}

}  // namespace

std::set<SignPattern> reachable_patterns(Shape shape) {
    std::set<SignPattern> out;
    for (const auto& [pattern, chain] : explore_orbit(shape.min_dim()).chains) out.insert(pattern);
    return out;
}

std::optional<TransformChain> orbit_chain(Shape shape, const SignPattern& eps) {
    if (eps.size() != shape.min_dim()) throw GeneratorError("pattern length must equal min(m,n)");
    auto search = explore_orbit(shape.min_dim());
    auto it = search.chains.find(eps);
    if (it == search.chains.end()) return std::nullopt;
    return TransformChain(shape, it->second);
}

RationalMatrix construct_ssr(Shape shape, const SignPattern& eps) {
    auto chain = orbit_chain(shape, eps);
    if (!chain) throw GeneratorError("pattern " + eps.to_string() + " is not in the orbit of the TP signature");
    const RationalMatrix tp = generate(VandermondeSpec{increasing_nodes(shape.rows), shape.cols});
    return apply(*chain, tp);
}

RationalMatrix realize_pattern(Shape shape, const SignPattern& eps, std::int64_t bound, std::size_t attempts,
                               std::uint64_t seed) {
    if (orbit_chain(shape, eps)) return construct_ssr(shape, eps);
    return generate(PatternSearchSpec{shape, eps, bound, attempts, seed, true});
}

RationalMatrix gaussian_kernel(std::size_t n, const Rational& q) {
    if (q <= 0 || q >= 1) throw GeneratorError("gaussian kernel needs 0 < q < 1");
    RationalMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t d = i > j ? i - j : j - i;
            out(i, j) = power(q, static_cast<unsigned>(d * d));
        }
    return out;
}

RationalMatrix random_matrix(Shape shape, Rng& rng, std::int64_t bound, std::int64_t max_den) {
    RationalMatrix a(shape);
    for (auto& x : a.data()) {
        const auto p = rng.uniform(-bound, bound);
        const auto q = rng.uniform(1, max_den);
        x = make_rational(Integer(static_cast<long>(p)), Integer(static_cast<long>(q)));
    }
    return a;
}

std::vector<Rational> random_positive_vector(std::size_t n, Rng& rng) {
    std::vector<Rational> v;
    v.reserve(n);
    for (std::size_t k = 0; k < n; ++k) v.push_back(rng.positive_rational());
    return v;
}

DiagEquiv random_diag(Shape shape, Rng& rng) {
    return DiagEquiv{random_positive_vector(shape.rows, rng), random_positive_vector(shape.cols, rng)};
}

TransformChain random_chain(Shape shape, Rng& rng, ChainFamily family, std::size_t max_steps) {
    TransformChain chain(shape);
    const std::size_t steps = 1 + rng.index(max_steps);
    for (std::size_t s = 0; s < steps; ++s) {
        if (family == ChainFamily::SignRegular) {
            switch (rng.index(shape.square() ? 5 : 4)) {
                case 0: chain.push_back(random_diag(shape, rng)); break;
                case 1: chain.push_back(Negate{}); break;
                case 2: chain.push_back(RowFlip{}); break;
                case 3: chain.push_back(ColFlip{}); break;
                default: chain.push_back(Transpose{}); break;
            }
        } else {
            switch (rng.index(shape.square() ? 3 : 2)) {
                case 0: chain.push_back(random_diag(shape, rng)); break;
                case 1:
                    chain.push_back(RowFlip{});
                    chain.push_back(ColFlip{});
                    break;
                default: chain.push_back(Transpose{}); break;
            }
        }
    }
    return chain;
}

RationalMatrix random_tp(Shape shape, Rng& rng) {
    std::vector<Rational> nodes;
    Rational node = 0;
    for (std::size_t i = 0; i < shape.rows; ++i) {
        node += rng.positive_rational(3, 2);
        nodes.push_back(node);
    }
    RationalMatrix v = vandermonde(nodes, shape.cols);
    return signreg::apply(PrimitiveTransform{random_diag(shape, rng)}, v);
}

RationalMatrix random_ssr(Shape shape, Rng& rng) {
    RationalMatrix a = random_tp(shape, rng);
    const auto patterns = reachable_patterns(shape);
    auto it = patterns.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(rng.index(patterns.size())));
    return apply(*orbit_chain(shape, *it), a);
}

SignPattern random_pattern(std::size_t length, Rng& rng) {
    std::vector<SignSymbol> signs;
    for (std::size_t r = 0; r < length; ++r) signs.push_back(rng.coin() ? SignSymbol::Plus : SignSymbol::Minus);
    return SignPattern(std::move(signs));
}

namespace {

RationalMatrix insert_zero_line(const RationalMatrix& small, bool row, std::size_t at) {
    const Shape big = row ? Shape{small.rows() + 1, small.cols()} : Shape{small.rows(), small.cols() + 1};
    RationalMatrix out(big);
    for (std::size_t i = 0; i < small.rows(); ++i)
        for (std::size_t j = 0; j < small.cols(); ++j) {
            const std::size_t bi = (row && i >= at) ? i + 1 : i;
            const std::size_t bj = (!row && j >= at) ? j + 1 : j;
            out(bi, bj) = small(i, j);
        }
    return out;
}

// Leading block of a product of elementary bidiagonal TN factors.
RationalMatrix random_bidiagonal_tn(Shape shape, Rng& rng) {
    const std::size_t k = std::max(shape.rows, shape.cols);
    RationalMatrix prod = identity_matrix(k);
    const std::size_t factors = 1 + rng.index(2 * k);
    for (std::size_t f = 0; f < factors; ++f) {
        RationalMatrix e = identity_matrix(k);
        if (k > 1) {
            const std::size_t i = rng.index(k - 1);
            if (rng.coin()) e(i, i + 1) = rng.positive_rational(4, 2);
            else e(i + 1, i) = rng.positive_rational(4, 2);
        }
        prod = prod * e;
    }
    std::vector<std::size_t> rows(shape.rows), cols(shape.cols);
    for (std::size_t i = 0; i < shape.rows; ++i) rows[i] = i;
    for (std::size_t j = 0; j < shape.cols; ++j) cols[j] = j;
    return prod.submatrix(rows, cols);
}

RationalMatrix random_sr_candidate(Shape shape, Rng& rng) {
    const int sign = rng.coin() ? 1 : -1;
    switch (rng.index(7)) {
        case 0:
        case 1: return random_ssr(shape, rng);
        case 2: {
            if (shape.cells() <= 6) {
                PatternSearchSpec spec{shape, random_pattern(shape.min_dim(), rng), 4, 20000, rng.next(), false};
                if (auto found = pattern_search(spec)) return *found;
            }
            return random_ssr(shape, rng);
        }
        case 3: {
            if (shape.cells() == 1) return RationalMatrix(shape);
            const bool drop_row = shape.cols == 1 || (shape.rows > 1 && rng.coin());
            const Shape small = drop_row ? Shape{shape.rows - 1, shape.cols} : Shape{shape.rows, shape.cols - 1};
            const std::size_t at = rng.index((drop_row ? shape.rows : shape.cols));
            return insert_zero_line(random_sr(small, rng), drop_row, at);
        }
        case 4: {
            const auto u = random_positive_vector(shape.rows, rng);
            const auto v = random_positive_vector(shape.cols, rng);
            RationalMatrix out(shape);
            for (std::size_t i = 0; i < shape.rows; ++i)
                for (std::size_t j = 0; j < shape.cols; ++j) out(i, j) = sign * u[i] * v[j];
            return out;
        }
        case 5: {
            GadgetTarget target;
            switch (rng.index(3)) {
                case 0: {
                    const std::size_t i = rng.coin() ? 0 : shape.rows - 1;
                    const std::size_t j = rng.coin() ? 0 : shape.cols - 1;
                    target = GadgetTarget::entry(i, j);
                    break;
                }
                case 1: target = GadgetTarget::whole_row(rng.index(shape.rows)); break;
                default: target = GadgetTarget::whole_col(rng.index(shape.cols)); break;
            }
            return Rational(sign) * gadget_j(shape, target, rng.positive_rational());
        }
        default: return Rational(sign) * random_bidiagonal_tn(shape, rng);
    }
}

}  // namespace

RationalMatrix random_sr(Shape shape, Rng& rng) {
    RationalMatrix a = random_sr_candidate(shape, rng);
    if (!is_sign_regular(a)) throw GeneratorError("random_sr produced a matrix that is not sign regular");
    return a;
}

}  // namespace signreg
