#include "signreg/harness.hpp"

#include "signreg/generators.hpp"
#include "signreg/preserver.hpp"
#include "signreg/vdp.hpp"
#include "signreg/witness.hpp"

#include <map>

namespace signreg {

void SuiteResult::record(bool ok, const std::string& what) {
    if (ok) {
        ++passed;
        return;
    }
    ++failed;
    if (failures.size() < 5) failures.push_back(what);
}

bool HarnessReport::ok() const {
    if (witness_exhaustions != 0) return false;
    for (const auto& s : suites)
        if (s.failed != 0) return false;
    return true;
}

namespace {

struct Suites {
    SuiteResult determinant{"determinant", 0, 0, {}};
    SuiteResult pushforward{"pushforward", 0, 0, {}};
    SuiteResult roundtrip{"roundtrip", 0, 0, {}};
    SuiteResult rejection{"rejection", 0, 0, {}};
    SuiteResult invariance{"sr-invariance", 0, 0, {}};
    SuiteResult gates{"pattern-gates", 0, 0, {}};
    SuiteResult strictness{"strictness", 0, 0, {}};
    SuiteResult vd{"variation-diminishing", 0, 0, {}};
    SuiteResult density{"density", 0, 0, {}};
};

std::string at_shape(Shape s, const std::string& what) { return to_string(s) + ": " + what; }

std::vector<PrimitiveTransform> sign_primitives(Shape shape, Rng& rng) {
    std::vector<PrimitiveTransform> ts{random_diag(shape, rng), Negate{}, RowFlip{}, ColFlip{}};
    if (shape.square()) ts.push_back(Transpose{});
    return ts;
}

SignPattern predicted(const PrimitiveTransform& t, const SignPattern& eps, bool fault) {
    SignPattern p = pushforward_pattern(t, eps);
    if (fault && std::holds_alternative<RowFlip>(t) && p.size() >= 2) p.set_order(2, negate(p.at_order(2)));
    return p;
}

void run_determinant(Shape shape, Rng& rng, SuiteResult& out) {
    shape.cols = shape.rows;
    const RationalMatrix a = random_matrix(shape, rng, 9, 4);
    out.record(determinant(a) == determinant(a.transposed()), at_shape(shape, "det(A) != det(A^T)"));
    const RationalMatrix b = random_matrix(shape, rng, 9, 4);
    out.record(determinant(a * b) == determinant(a) * determinant(b), at_shape(shape, "det(AB) != det(A) det(B)"));
}

void run_pushforward(Shape shape, Rng& rng, bool fault, SuiteResult& out) {
    const RationalMatrix a = random_ssr(shape, rng);
    const SignPattern eps = classify(a).pattern;
    for (const auto& t : sign_primitives(shape, rng)) {
        const SignClass image = classify(signreg::apply(t, a));
        out.record(image.is_ssr() && image.pattern == predicted(t, eps, fault),
                   at_shape(shape, "pushforward of " + to_token(t) + " on " + eps.to_string() + " predicts " +
                                       predicted(t, eps, fault).to_string() + ", image has " +
                                       image.pattern.to_string()));
    }
}

void run_roundtrip(Shape shape, Rng& rng, SuiteResult& out) {
    const TransformChain chain = random_chain(shape, rng, ChainFamily::SignRegular);
    const MatrixSpaceMap op = compose_to_operator(chain);
    const auto d = decide_structure(op, PreserverMode::SR);
    const auto* fac = std::get_if<CanonicalFactorization>(&d);
    out.record(fac && fac->materialize() == op, at_shape(shape, "sr round trip failed for " + to_string(chain)));

    const TransformChain pchain = random_chain(shape, rng, ChainFamily::PatternPreserving);
    const MatrixSpaceMap pop = compose_to_operator(pchain);
    const SignPattern eps = random_pattern(shape.min_dim(), rng);
    const auto pd = decide_structure(pop, PreserverMode::SRPattern, eps);
    const auto* pfac = std::get_if<CanonicalFactorization>(&pd);
    out.record(pfac && pfac->materialize() == pop && pfac->global_sign == 1 &&
                   pfac->row_reversed() == pfac->col_reversed(),
               at_shape(shape, "pattern round trip failed for " + to_string(pchain)));
}

MatrixSpaceMap random_monomial_operator(Shape shape, Rng& rng) {
    const std::size_t n = shape.cells();
    std::vector<std::size_t> perm(n);
    for (std::size_t k = 0; k < n; ++k) perm[k] = k;
    for (std::size_t k = n; k > 1; --k) std::swap(perm[k - 1], perm[rng.index(k)]);
    RationalMatrix L(n, n);
    const bool unit = rng.coin();
    for (std::size_t k = 0; k < n; ++k) L(perm[k], k) = unit ? Rational(1) : rng.positive_rational();
    return MatrixSpaceMap(shape, std::move(L));
}

void run_rejection(Shape shape, Rng& rng, const std::vector<RationalMatrix>& sr_samples, SuiteResult& out,
                   SuiteResult& invariance, std::size_t& exhaustions) {
    const MatrixSpaceMap op = random_monomial_operator(shape, rng);
    const auto d = decide_structure(op, PreserverMode::SR);
    if (std::holds_alternative<CanonicalFactorization>(d)) {
        // Accepted by chance: its images must stay SR.
        for (const auto& a : sr_samples)
            invariance.record(is_sign_regular(op.apply(a)), at_shape(shape, "accepted random monomial broke SR"));
        return;
    }
    try {
        const Witness w = find_witness(op, PreserverMode::SR);
        out.record(verify_witness(w, op, PreserverMode::SR), at_shape(shape, "witness failed verification"));
    } catch (const WitnessNotFound& e) {
        ++exhaustions;
        out.record(false, at_shape(shape, e.what()));
    }
}

void run_invariance(Shape shape, Rng& rng, const RationalMatrix& a, SuiteResult& out) {
    const SignClass before = classify(a);
    for (int k = 0; k < 3; ++k) {
        const TransformChain chain = random_chain(shape, rng, ChainFamily::SignRegular);
        out.record(is_sign_regular(signreg::apply(chain, a)), at_shape(shape, "SR lost under " + to_string(chain)));
    }
    const TransformChain pchain = random_chain(shape, rng, ChainFamily::PatternPreserving);
    const SignClass after = classify(signreg::apply(pchain, a));
    out.record(after.is_sr() && after.pattern == before.pattern,
               at_shape(shape, "pattern " + before.pattern.to_string() + " became " + after.pattern.to_string() +
                                   " under " + to_string(pchain)));
}

void run_gates(Shape shape, Rng& rng, SuiteResult& out) {
    const SignPattern eps = random_pattern(shape.min_dim(), rng);
    const auto lone_row = decide_structure(compose_to_operator(RowFlip{}, shape), PreserverMode::SRPattern, eps);
    const auto lone_col = decide_structure(compose_to_operator(ColFlip{}, shape), PreserverMode::SRPattern, eps);
    const auto neg = decide_structure(compose_to_operator(Negate{}, shape), PreserverMode::SRPattern, eps);
    out.record(std::holds_alternative<std::string>(lone_row), at_shape(shape, "lone rowflip accepted for " + eps.to_string()));
    out.record(std::holds_alternative<std::string>(lone_col), at_shape(shape, "lone colflip accepted for " + eps.to_string()));
    out.record(std::holds_alternative<std::string>(neg), at_shape(shape, "negation accepted for " + eps.to_string()));
    const TransformChain both(shape, {RowFlip{}, ColFlip{}});
    const auto paired = decide_structure(compose_to_operator(both), PreserverMode::SRPattern, eps);
    out.record(std::holds_alternative<CanonicalFactorization>(paired) && pushforward_pattern(both, eps) == eps,
               at_shape(shape, "paired flips rejected for " + eps.to_string()));
}

void run_vd(Shape shape, Rng& rng, const std::vector<std::vector<Rational>>& xs, SuiteResult& out) {
    const RationalMatrix a = random_ssr(shape, rng);
    const VdReport r = vd_check(a, xs);
    out.record(r.ok(), at_shape(shape, std::to_string(r.violations.size()) + " variation diminishing violations"));
}

void run_density(Shape shape, const RationalMatrix& a, SuiteResult& out) {
    if (rank(a) != shape.min_dim()) return;
    const SignClass base = classify(a);
    const Rational q(1, 64);
    const RationalMatrix b = gaussian_kernel(shape.rows, q) * a * gaussian_kernel(shape.cols, q);
    const SignClass pert = classify(b);
    out.record(pert.is_ssr() && pert.pattern == base.pattern,
               at_shape(shape, "smoothing of an SR " + base.pattern.to_string() + " matrix gave " + pert.label()));
}

}  // namespace

HarnessReport verify_theorems(const HarnessConfig& config) {
    if (config.min_dim < 2 || config.min_dim > config.max_dim || config.max_dim > 5)
        throw MatrixError("verify-theorems needs 2 <= min dimension <= max dimension <= 5");
    Rng rng(config.seed);
    Suites s;
    std::size_t exhaustions = 0;
    std::map<std::size_t, std::vector<std::vector<Rational>>> sign_vectors;

    for (std::size_t m = config.min_dim; m <= config.max_dim; ++m)
        for (std::size_t n = config.min_dim; n <= config.max_dim; ++n) {
            const Shape shape{m, n};
            if (!sign_vectors.contains(n)) sign_vectors[n] = exhaustive_sign_vectors(n);
            std::vector<RationalMatrix> sr_samples;
            for (std::size_t k = 0; k < std::min<std::size_t>(config.samples, 10); ++k)
                sr_samples.push_back(random_sr(shape, rng));

            for (std::size_t k = 0; k < config.samples; ++k) {
                const RationalMatrix a = random_sr(shape, rng);
                run_determinant(shape, rng, s.determinant);
                run_pushforward(shape, rng, config.inject_fault, s.pushforward);
                run_roundtrip(shape, rng, s.roundtrip);
                run_invariance(shape, rng, a, s.invariance);
                run_gates(shape, rng, s.gates);
                run_vd(shape, rng, sign_vectors[n], s.vd);
                run_density(shape, a, s.density);
                if (k % 4 == 0) run_rejection(shape, rng, sr_samples, s.rejection, s.invariance, exhaustions);
            }
            const ClassAgreementReport agree = equal_preserver_classes_check(shape, config.samples, rng.next());
            s.strictness.passed += agree.compared - std::min(agree.compared, agree.divergences.size());
            for (const auto& d : agree.divergences) s.strictness.record(false, at_shape(shape, d));
        }

    HarnessReport report;
    report.suites = {s.determinant, s.pushforward, s.roundtrip, s.rejection, s.invariance,
                     s.gates,       s.strictness,  s.vd,        s.density};
    report.witness_exhaustions = exhaustions;
    return report;
}

}  // namespace signreg
