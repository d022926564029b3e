#include "signreg/preserver.hpp"

#include "signreg/generators.hpp"
#include "signreg/witness.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace signreg {

std::string to_string(PreserverMode mode) {
    switch (mode) {
        case PreserverMode::SR: return "sr";
        case PreserverMode::SSR: return "ssr";
        case PreserverMode::SRPattern: return "sreps";
        case PreserverMode::SSRPattern: return "ssreps";
    }
    return "?";
}

PreserverMode parse_mode(std::string_view text) {
    if (text == "sr") return PreserverMode::SR;
    if (text == "ssr") return PreserverMode::SSR;
    if (text == "sreps") return PreserverMode::SRPattern;
    if (text == "ssreps") return PreserverMode::SSRPattern;
    throw PreserverError("unknown mode '" + std::string(text) + "' (expected sr, ssr, sreps or ssreps)");
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::General: return "general";
        case Regime::Vector: return "vector";
        case Regime::TwoByTwo: return "2x2";
    }
    return "?";
}

Regime regime_for(Shape shape, PreserverMode mode) {
    if (shape.min_dim() == 1) return Regime::Vector;
    if (shape.rows == 2 && shape.cols == 2 && mode == PreserverMode::SR) return Regime::TwoByTwo;
    return Regime::General;
}

std::string MonomialFailure::describe() const {
    const std::string at = "(" + std::to_string(cell.row + 1) + "," + std::to_string(cell.col + 1) + ")";
    switch (kind) {
        case Kind::ZeroImage: return "image of E" + at + " is zero";
        case Kind::SplitImage: return "image of E" + at + " has more than one nonzero entry";
        case Kind::SharedTarget: return "cell " + at + " is not hit by exactly one basis matrix";
        case Kind::MixedSigns: return "image of E" + at + " has the opposite sign to the image of E(1,1)";
    }
    return "?";
}

MonomialAnalysis monomial_analysis(const MatrixSpaceMap& map) {
    const Shape shape = map.shape();
    const std::size_t n = shape.cells();
    const RationalMatrix& L = map.matrix();
    auto cell_of = [&](std::size_t s) { return Cell{s / shape.cols, s % shape.cols}; };

    SupportMap support{shape, 1, std::vector<Cell>(n), std::vector<Rational>(n)};
    std::vector<std::size_t> hits(n, 0);
    std::vector<std::size_t> target_slot(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t count = 0;
        for (std::size_t t = 0; t < n; ++t)
            if (L(t, s) != 0) {
                ++count;
                target_slot[s] = t;
            }
        if (count == 0) return MonomialFailure{MonomialFailure::Kind::ZeroImage, cell_of(s)};
        if (count > 1) return MonomialFailure{MonomialFailure::Kind::SplitImage, cell_of(s)};
        ++hits[target_slot[s]];
    }
    for (std::size_t t = 0; t < n; ++t)
        if (hits[t] != 1) return MonomialFailure{MonomialFailure::Kind::SharedTarget, cell_of(t)};

    support.global_sign = sign(L(target_slot[0], 0));
    for (std::size_t s = 0; s < n; ++s) {
        const Rational& v = L(target_slot[s], s);
        if (sign(v) != support.global_sign) return MonomialFailure{MonomialFailure::Kind::MixedSigns, cell_of(s)};
        support.target[s] = cell_of(target_slot[s]);
        support.scale[s] = support.global_sign > 0 ? v : Rational(-v);
    }
    return support;
}

namespace {

bool is_identity(const std::vector<std::size_t>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != i) return false;
    return true;
}

bool is_reversal(const std::vector<std::size_t>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != p.size() - 1 - i) return false;
    return true;
}

bool unit_scalars(std::span<const Rational> xs) {
    return std::all_of(xs.begin(), xs.end(), [](const Rational& x) { return x == 1; });
}

}  // namespace

bool CanonicalFactorization::row_reversed() const { return row_perm.size() > 1 && is_reversal(row_perm); }
bool CanonicalFactorization::col_reversed() const { return col_perm.size() > 1 && is_reversal(col_perm); }

TransformChain CanonicalFactorization::to_chain() const {
    TransformChain chain(shape);
    if (special_2x2) {
        for (const auto& step : special_2x2->word) chain.push_back(step);
        if (!unit_scalars(special_2x2->hadamard.data())) chain.push_back(HadamardScale{special_2x2->hadamard});
    } else {
        // T(A) has the transposed shape only when m != n, which transpose forbids.
        if (transposed) chain.push_back(Transpose{});
        if (!unit_scalars(row_scale) || !unit_scalars(col_scale)) chain.push_back(DiagEquiv{row_scale, col_scale});
        if (row_reversed()) chain.push_back(RowFlip{});
        else if (!is_identity(row_perm)) chain.push_back(RowPermute{row_perm});
        if (col_reversed()) chain.push_back(ColFlip{});
        else if (!is_identity(col_perm)) chain.push_back(ColPermute{col_perm});
    }
    if (global_sign < 0) chain.push_back(Negate{});
    return chain;
}

std::string to_string(Witness::Kind kind) {
    switch (kind) {
        case Witness::Kind::ImageLeavesClass: return "image-leaves-class";
        case Witness::Kind::PreimageLeavesClass: return "preimage-leaves-class";
        case Witness::Kind::NotSurjective: return "not-surjective";
    }
    return "?";
}

namespace {

// Product-form test. On success fills transposed, row_perm, col_perm.
bool product_form(const SupportMap& s, bool transposed, CanonicalFactorization& out) {
    const Shape sh = s.shape;
    if (transposed && !sh.square()) return false;
    std::vector<std::size_t> rp(sh.rows), cp(sh.cols);
    if (!transposed) {
        for (std::size_t i = 0; i < sh.rows; ++i) rp[i] = s.target_of(i, 0).row;
        for (std::size_t j = 0; j < sh.cols; ++j) cp[j] = s.target_of(0, j).col;
        for (std::size_t i = 0; i < sh.rows; ++i)
            for (std::size_t j = 0; j < sh.cols; ++j)
                if (s.target_of(i, j) != Cell{rp[i], cp[j]}) return false;
    } else {
        // source (i,j) -> (rp[j], cp[i])
        for (std::size_t j = 0; j < sh.cols; ++j) rp[j] = s.target_of(0, j).row;
        for (std::size_t i = 0; i < sh.rows; ++i) cp[i] = s.target_of(i, 0).col;
        for (std::size_t i = 0; i < sh.rows; ++i)
            for (std::size_t j = 0; j < sh.cols; ++j)
                if (s.target_of(i, j) != Cell{rp[j], cp[i]}) return false;
    }
    out.transposed = transposed;
    out.row_perm = std::move(rp);
    out.col_perm = std::move(cp);
    return true;
}

// Rank-one test l_ij = f_i e_j (or f_j e_i when transposed) with e_1 = 1.
bool rank_one_scalars(const SupportMap& s, CanonicalFactorization& out) {
    const Shape sh = s.shape;
    // Scalar attached to cell (p,q) of T(A).
    auto l = [&](std::size_t p, std::size_t q) -> const Rational& {
        return out.transposed ? s.scale_of(q, p) : s.scale_of(p, q);
    };
    const std::size_t tr = out.transposed ? sh.cols : sh.rows;
    const std::size_t tc = out.transposed ? sh.rows : sh.cols;
    std::vector<Rational> f(tr), e(tc);
    for (std::size_t p = 0; p < tr; ++p) f[p] = l(p, 0);
    for (std::size_t q = 0; q < tc; ++q) e[q] = l(0, q) / f[0];
    for (std::size_t p = 0; p < tr; ++p)
        for (std::size_t q = 0; q < tc; ++q)
            if (l(p, q) != f[p] * e[q]) return false;
    out.row_scale = std::move(f);
    out.col_scale = std::move(e);
    return true;
}

using CellPerm = std::vector<std::size_t>;  // source slot -> target slot

CellPerm cell_permutation(const PrimitiveTransform& t, Shape shape) {
    const auto analysis = monomial_analysis(compose_to_operator(t, shape));
    const auto& s = std::get<SupportMap>(analysis);
    CellPerm p(shape.cells());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = slot(shape, s.target[k].row, s.target[k].col);
    return p;
}

// Shortest word over {rowflip, colflip, transpose, swap2} realizing a 2x2
// cell bijection. The group they generate is all of S_4.
std::vector<PrimitiveTransform> word_for(const CellPerm& goal) {
    const Shape shape{2, 2};
    static const std::vector<PrimitiveTransform> moves{RowFlip{}, ColFlip{}, Transpose{}, Swap2x2BottomPair{}};
    std::vector<CellPerm> move_perms;
    for (const auto& m : moves) move_perms.push_back(cell_permutation(m, shape));

    std::map<CellPerm, std::vector<PrimitiveTransform>> seen;
    const CellPerm id{0, 1, 2, 3};
    seen[id] = {};
    std::deque<CellPerm> queue{id};
    while (!queue.empty()) {
        const CellPerm cur = queue.front();
        queue.pop_front();
        if (cur == goal) return seen[cur];
        for (std::size_t k = 0; k < moves.size(); ++k) {
            CellPerm next(4);
            for (std::size_t s = 0; s < 4; ++s) next[s] = move_perms[k][cur[s]];
            if (seen.contains(next)) continue;
            auto w = seen[cur];
            w.push_back(moves[k]);
            seen.emplace(next, std::move(w));
            queue.push_back(next);
        }
    }
    throw PreserverError("internal: 2x2 cell bijection not generated");
}

void check_mode_inputs(Shape shape, PreserverMode mode, const std::optional<SignPattern>& eps) {
    if (is_pattern_mode(mode)) {
        if (!eps) throw PreserverError("mode " + to_string(mode) + " needs a sign pattern");
        if (!eps->fully_constrained()) throw PreserverError("sign pattern " + eps->to_string() + " contains *");
        if (eps->size() != shape.min_dim())
            throw PreserverError("sign pattern " + eps->to_string() + " must have length min(m,n) = " +
                                 std::to_string(shape.min_dim()));
    } else if (eps) {
        throw PreserverError("a sign pattern is only meaningful in sreps/ssreps modes");
    }
}

}  // namespace

std::variant<CanonicalFactorization, std::string> decide_structure(const MatrixSpaceMap& map, PreserverMode mode,
                                                                   const std::optional<SignPattern>& eps) {
    check_mode_inputs(map.shape(), mode, eps);
    const Shape shape = map.shape();
    const auto analysis = monomial_analysis(map);
    if (const auto* fail = std::get_if<MonomialFailure>(&analysis)) return "not monomial: " + fail->describe();
    const auto& support = std::get<SupportMap>(analysis);

    CanonicalFactorization fac;
    fac.shape = shape;
    fac.regime = regime_for(shape, mode);
    fac.global_sign = support.global_sign;

    switch (fac.regime) {
        case Regime::Vector: {
            // One of the two permutations is trivial; the other is arbitrary.
            if (!product_form(support, false, fac)) throw PreserverError("internal: vector bijection not a product");
            if (!rank_one_scalars(support, fac)) throw PreserverError("internal: vector scalars not rank one");
            break;
        }
        case Regime::TwoByTwo: {
            CanonicalFactorization plain = fac;
            const bool simple = (product_form(support, false, plain) || product_form(support, true, plain)) &&
                                (is_identity(plain.row_perm) || is_reversal(plain.row_perm)) &&
                                (is_identity(plain.col_perm) || is_reversal(plain.col_perm)) &&
                                rank_one_scalars(support, plain);
            if (simple) {
                fac = std::move(plain);
                break;
            }
            CellPerm goal(4);
            for (std::size_t s = 0; s < 4; ++s) goal[s] = slot(shape, support.target[s].row, support.target[s].col);
            Special2x2 special{word_for(goal), RationalMatrix(2, 2)};
            for (std::size_t s = 0; s < 4; ++s)
                special.hadamard(support.target[s].row, support.target[s].col) = support.scale[s];
            fac.special_2x2 = std::move(special);
            fac.row_perm = {0, 1};
            fac.col_perm = {0, 1};
            fac.row_scale = {1, 1};
            fac.col_scale = {1, 1};
            break;
        }
        case Regime::General: {
            if (!product_form(support, false, fac) && !product_form(support, true, fac))
                return std::string("support bijection is not of the form (i,j) -> (p(i), t(j)) or its transpose");
            if (!is_identity(fac.row_perm) && !is_reversal(fac.row_perm))
                return std::string("row permutation is neither the identity nor the reversal");
            if (!is_identity(fac.col_perm) && !is_reversal(fac.col_perm))
                return std::string("column permutation is neither the identity nor the reversal");
            if (!rank_one_scalars(support, fac)) return std::string("scalars are not of the form f_i e_j");
            break;
        }
    }

    if (is_pattern_mode(mode)) {
        if (fac.global_sign < 0) return std::string("negation changes the sign of order 1");
        if (fac.regime == Regime::General && fac.row_reversed() != fac.col_reversed())
            return std::string("a lone row or column reversal changes the sign of order 2");
    }

    if (!(fac.materialize() == map)) throw PreserverError("internal: factorization does not reproduce the operator");
    return fac;
}

PreserverVerdict factor_preserver(const MatrixSpaceMap& map, PreserverMode mode, const std::optional<SignPattern>& eps) {
    PreserverVerdict verdict;
    verdict.mode = mode;
    verdict.regime = regime_for(map.shape(), mode);
    verdict.pattern = eps;
    auto decision = decide_structure(map, mode, eps);
    if (auto* fac = std::get_if<CanonicalFactorization>(&decision)) {
        verdict.factorization = std::move(*fac);
        return verdict;
    }
    verdict.reason = std::get<std::string>(decision);
    try {
        verdict.witness = find_witness(map, mode, eps);
    } catch (const WitnessNotFound&) {
        verdict.witness_exhausted = true;
    }
    return verdict;
}

namespace {

std::optional<std::string> structure_key(const MatrixSpaceMap& map, PreserverMode mode,
                                         const std::optional<SignPattern>& eps) {
    auto d = decide_structure(map, mode, eps);
    if (auto* fac = std::get_if<CanonicalFactorization>(&d)) return to_string(fac->to_chain());
    return std::nullopt;
}

std::string describe_key(const std::optional<std::string>& key) {
    return key ? "accept [" + *key + "]" : std::string("reject");
}

void compare_one(const MatrixSpaceMap& map, const std::optional<SignPattern>& eps, std::size_t index,
                 ClassAgreementReport& report) {
    const Shape shape = map.shape();
    const std::string where = "operator #" + std::to_string(index) + " (" + to_string(shape) + ")";
    const auto sr = structure_key(map, PreserverMode::SR, std::nullopt);
    const auto ssr = structure_key(map, PreserverMode::SSR, std::nullopt);
    if (ssr && !sr) report.divergences.push_back(where + ": SSR accepts but SR rejects");
    if (regime_for(shape, PreserverMode::SR) != regime_for(shape, PreserverMode::SSR)) {
        ++report.skipped;
    } else {
        ++report.compared;
        if (sr != ssr)
            report.divergences.push_back(where + ": sr " + describe_key(sr) + " vs ssr " + describe_key(ssr));
    }
    if (eps && eps->size() == shape.min_dim() && eps->fully_constrained()) {
        ++report.compared;
        const auto p = structure_key(map, PreserverMode::SRPattern, eps);
        const auto q = structure_key(map, PreserverMode::SSRPattern, eps);
        if (p != q)
            report.divergences.push_back(where + " eps " + eps->to_string() + ": sreps " + describe_key(p) +
                                         " vs ssreps " + describe_key(q));
    }
}

MatrixSpaceMap random_monomial(Shape shape, Rng& rng) {
    const std::size_t n = shape.cells();
    std::vector<std::size_t> perm(n);
    for (std::size_t k = 0; k < n; ++k) perm[k] = k;
    for (std::size_t k = n; k > 1; --k) std::swap(perm[k - 1], perm[rng.index(k)]);
    const int s = rng.coin() ? 1 : -1;
    RationalMatrix L(n, n);
    for (std::size_t k = 0; k < n; ++k) L(perm[k], k) = s * rng.positive_rational();
    return MatrixSpaceMap(shape, std::move(L));
}

}  // namespace

ClassAgreementReport equal_preserver_classes_check(const std::vector<MatrixSpaceMap>& operators,
                                                   const std::optional<SignPattern>& eps) {
    ClassAgreementReport report;
    for (std::size_t k = 0; k < operators.size(); ++k) compare_one(operators[k], eps, k, report);
    return report;
}

ClassAgreementReport equal_preserver_classes_check(Shape shape, std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    ClassAgreementReport report;
    for (std::size_t k = 0; k < samples; ++k) {
        MatrixSpaceMap map = MatrixSpaceMap::identity(shape);
        switch (rng.index(4)) {
            case 0: map = compose_to_operator(random_chain(shape, rng, ChainFamily::SignRegular)); break;
            case 1: map = compose_to_operator(random_chain(shape, rng, ChainFamily::PatternPreserving)); break;
            case 2: map = random_monomial(shape, rng); break;
            default: {
                RationalMatrix L = compose_to_operator(random_chain(shape, rng, ChainFamily::SignRegular)).matrix();
                L(rng.index(L.rows()), rng.index(L.cols())) += rng.positive_rational();
                map = MatrixSpaceMap(shape, std::move(L));
                break;
            }
        }
        compare_one(map, random_pattern(shape.min_dim(), rng), k, report);
    }
    return report;
}

}  // namespace signreg
