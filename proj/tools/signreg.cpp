#include "signreg/generators.hpp"
#include "signreg/harness.hpp"
#include "signreg/matrix_io.hpp"
#include "signreg/preserver.hpp"
#include "signreg/vdp.hpp"
#include "signreg/witness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using nlohmann::json;
using namespace signreg;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct Settings {
    std::string format = "human";
    std::uint64_t seed = 0;
    bool json() const { return format != "human"; }
};

void emit(const json& j) { std::cout << j.dump() << '\n'; }

json matrix_json(const RationalMatrix& a) {
    json rows = json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(to_string(a(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RationalMatrix read_matrix_arg(const std::string& path) {
    if (path == "-") return parse_matrix(std::cin, "<stdin>");
    return load_matrix(path);
}

MatrixSpaceMap read_operator_arg(const std::string& path) {
    if (path == "-") return parse_operator(std::cin, "<stdin>");
    return load_operator(path);
}

std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = s.find(',');
        out.push_back(s.substr(0, pos));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return out;
}

std::vector<Rational> parse_rationals(std::string_view s) {
    std::vector<Rational> out;
    for (auto tok : split_commas(s)) {
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        out.push_back(parse_rational(tok));
    }
    return out;
}

std::string join(const std::vector<Rational>& xs) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? "," : "") + to_string(xs[k]);
    return out;
}

std::string join_1based(const std::vector<std::size_t>& xs) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? "," : "") + std::to_string(xs[k] + 1);
    return out;
}

std::optional<SignPattern> pattern_arg(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return SignPattern::parse(text);
}

std::string pattern_text(const SignPattern& p) { return p.empty() ? "-" : p.to_string(); }

// classify

// With --strict only the SSR part is reported.
std::string strict_label(const SignClass& c) {
    return c.strict_order == 0 ? "not SSR_1" : "SSR_" + std::to_string(c.strict_order);
}

int cmd_classify(const Settings& st, const std::string& in, std::size_t up_to, bool strict) {
    const RationalMatrix a = read_matrix_arg(in);
    const SignClass c = classify(a, up_to);
    if (strict) {
        const SignPattern p = c.pattern.prefix(std::min(c.strict_order, c.pattern.size()));
        if (st.json())
            emit({{"command", "classify"}, {"shape", to_string(a.shape())}, {"label", strict_label(c)},
                  {"ssr", c.is_ssr()}, {"strict_order", c.strict_order}, {"checked_order", c.checked_order},
                  {"pattern", p.to_string()}});
        else
            std::cout << strict_label(c) << (p.empty() ? "" : " pattern " + p.to_string()) << '\n';
        return kOk;
    }
    const auto conflict = c.is_sr() ? std::nullopt : opposing_minors(a, c.regular_order + 1);
    if (st.json()) {
        json j{{"command", "classify"}, {"shape", to_string(a.shape())}, {"label", c.label()},
               {"sr", c.is_sr()},       {"ssr", c.is_ssr()},             {"strict_order", c.strict_order},
               {"regular_order", c.regular_order}, {"checked_order", c.checked_order},
               {"pattern", c.pattern.to_string()}};
        if (conflict)
            j["conflict"] = {{{"minor", conflict->first.index.to_string()}, {"value", to_string(conflict->first.value)}},
                             {{"minor", conflict->second.index.to_string()}, {"value", to_string(conflict->second.value)}}};
        emit(j);
    } else {
        std::cout << c.label();
        if (!c.pattern.empty()) std::cout << " pattern " << c.pattern.to_string();
        std::cout << '\n';
        if (conflict)
            std::cout << "  minor " << conflict->first.index.to_string() << " = " << to_string(conflict->first.value)
                      << ", minor " << conflict->second.index.to_string() << " = "
                      << to_string(conflict->second.value) << '\n';
    }
    return kOk;
}

// apply

int cmd_apply(const Settings& st, const std::string& in, const std::string& chain_text, const std::string& out) {
    const RationalMatrix a = read_matrix_arg(in);
    const TransformChain chain = parse_chain(chain_text, a.shape());
    const RationalMatrix b = apply(chain, a);
    if (!out.empty()) save_matrix(out, b);
    const SignClass c = classify(b);
    if (st.json()) {
        emit({{"command", "apply"}, {"chain", to_string(chain)}, {"image", matrix_json(b)}, {"label", c.label()},
              {"pattern", c.pattern.to_string()}});
    } else {
        if (out.empty()) std::cout << format_matrix(b);
        std::cout << "# " << c.label() << " pattern " << pattern_text(c.pattern) << '\n';
    }
    return kOk;
}

// factor / witness

json witness_json(const Witness& w) {
    json j{{"kind", to_string(w.kind)}, {"family", w.family}, {"matrix", matrix_json(w.member)}};
    if (w.partner) j["partner"] = matrix_json(*w.partner);
    return j;
}

// Human-readable reason the partner is outside the class.
std::vector<std::string> witness_evidence(const Witness& w, PreserverMode mode, const std::optional<SignPattern>& eps) {
    std::vector<std::string> lines;
    if (w.kind == Witness::Kind::NotSurjective) {
        lines.push_back("the witness is not in the range of the operator");
        return lines;
    }
    const RationalMatrix& y = *w.partner;
    const std::string who = w.kind == Witness::Kind::ImageLeavesClass ? "image" : "preimage";
    if (is_pattern_mode(mode)) {
        if (auto v = pattern_violation(y, eps->prefix(std::min<std::size_t>(2, eps->size()))))
            lines.push_back(who + " minor " + v->index.to_string() + " = " + to_string(v->value) +
                            " contradicts pattern " + eps->to_string());
        return lines;
    }
    if (auto pair = opposing_minors(y, 2)) {
        lines.push_back(who + " minor " + pair->first.index.to_string() + " = " + to_string(pair->first.value));
        lines.push_back(who + " minor " + pair->second.index.to_string() + " = " + to_string(pair->second.value));
        return lines;
    }
    lines.push_back(who + " is " + classify(y).label() + ", not strictly sign regular");
    return lines;
}

void print_witness(const Witness& w, PreserverMode mode, const std::optional<SignPattern>& eps) {
    std::cout << "witness (" << to_string(w.kind) << ", " << w.family << "):\n" << format_matrix(w.member);
    if (w.partner) {
        std::cout << (w.kind == Witness::Kind::ImageLeavesClass ? "image:\n" : "preimage:\n")
                  << format_matrix(*w.partner);
    }
    for (const auto& line : witness_evidence(w, mode, eps)) std::cout << line << '\n';
}

json factorization_json(const CanonicalFactorization& f) {
    json j{{"regime", to_string(f.regime)},
           {"chain", to_string(f.to_chain())},
           {"global_sign", f.global_sign},
           {"transposed", f.transposed},
           {"row_perm", join_1based(f.row_perm)},
           {"col_perm", join_1based(f.col_perm)},
           {"F", join(f.row_scale)},
           {"E", join(f.col_scale)}};
    if (f.special_2x2) j["hadamard"] = matrix_json(f.special_2x2->hadamard);
    return j;
}

int cmd_factor(const Settings& st, const std::string& in, const std::string& mode_text, const std::string& pattern) {
    const MatrixSpaceMap map = read_operator_arg(in);
    const PreserverMode mode = parse_mode(mode_text);
    const auto eps = pattern_arg(pattern);
    const PreserverVerdict v = factor_preserver(map, mode, eps);
    if (st.json()) {
        json j{{"command", "factor"}, {"mode", to_string(mode)}, {"shape", to_string(map.shape())},
               {"preserver", v.is_preserver()}};
        if (eps) j["pattern"] = eps->to_string();
        if (v.factorization) j["factorization"] = factorization_json(*v.factorization);
        if (!v.is_preserver()) j["reason"] = v.reason;
        if (v.witness) j["witness"] = witness_json(*v.witness);
        if (v.witness_exhausted) j["witness_exhausted"] = true;
        emit(j);
    } else if (v.factorization) {
        const auto& f = *v.factorization;
        std::cout << "preserver (" << to_string(mode) << ", " << to_string(f.regime) << " regime)\n"
                  << "chain: " << (f.to_chain().empty() ? "identity" : to_string(f.to_chain())) << '\n';
        if (!f.special_2x2) {
            std::cout << "global sign: " << (f.global_sign > 0 ? "+1" : "-1") << '\n'
                      << "transposed: " << (f.transposed ? "yes" : "no") << '\n'
                      << "row permutation: " << join_1based(f.row_perm) << '\n'
                      << "column permutation: " << join_1based(f.col_perm) << '\n'
                      << "F: " << join(f.row_scale) << '\n'
                      << "E: " << join(f.col_scale) << '\n';
        }
    } else {
        std::cout << "not a preserver (" << to_string(mode) << "): " << v.reason << '\n';
        if (v.witness) print_witness(*v.witness, mode, eps);
    }
    if (v.witness_exhausted) std::cerr << "error: no witness found in the gadget families\n";
    return v.is_preserver() ? kOk : kNegative;
}

int cmd_witness(const Settings& st, const std::string& in, const std::string& mode_text, const std::string& pattern) {
    const MatrixSpaceMap map = read_operator_arg(in);
    const PreserverMode mode = parse_mode(mode_text);
    const auto eps = pattern_arg(pattern);
    if (std::holds_alternative<CanonicalFactorization>(decide_structure(map, mode, eps))) {
        std::cerr << "operator preserves the " << to_string(mode) << " class; there is no witness\n";
        return kNegative;
    }
    std::optional<Witness> found;
    try {
        found = find_witness(map, mode, eps);
    } catch (const WitnessNotFound& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNegative;
    }
    const Witness& w = *found;
    if (st.json()) {
        json j = witness_json(w);
        j["command"] = "witness";
        j["mode"] = to_string(mode);
        j["evidence"] = witness_evidence(w, mode, eps);
        emit(j);
    } else {
        print_witness(w, mode, eps);
    }
    return kOk;
}

// generate

GadgetTarget parse_target(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw MatrixError("gadget target must look like entry:i,j, row:i or col:j");
    const std::string kind = text.substr(0, colon);
    const auto idx = split_commas(std::string_view(text).substr(colon + 1));
    auto index = [](std::string_view tok) { return parse_dimension(tok) - 1; };
    if (kind == "entry" && idx.size() == 2) return GadgetTarget::entry(index(idx[0]), index(idx[1]));
    if (kind == "row" && idx.size() == 1) return GadgetTarget::whole_row(index(idx[0]));
    if ((kind == "col" || kind == "column") && idx.size() == 1) return GadgetTarget::whole_col(index(idx[0]));
    throw MatrixError("bad gadget target '" + text + "'");
}

struct GenerateArgs {
    std::string kind;
    std::string shape;
    std::string nodes;
    std::string target = "entry:1,1";
    std::string c = "2";
    std::string pattern;
    std::int64_t bound = 10;
    std::size_t attempts = 1'000'000;
    bool nonstrict = false;
    std::string out;
};

int cmd_generate(const Settings& st, const GenerateArgs& g) {
    RationalMatrix a(1, 1);
    if (g.kind == "vandermonde") {
        std::vector<Rational> nodes;
        std::size_t cols = 0;
        if (!g.nodes.empty()) nodes = parse_rationals(g.nodes);
        if (!g.shape.empty()) {
            const Shape s = parse_shape(g.shape);
            if (nodes.empty())
                for (std::size_t i = 0; i < s.rows; ++i) nodes.emplace_back(static_cast<long>(i + 1));
            if (nodes.size() != s.rows) throw MatrixError("--nodes must list one node per row of --shape");
            cols = s.cols;
        } else {
            if (nodes.empty()) throw MatrixError("vandermonde needs --nodes or --shape");
            cols = nodes.size();
        }
        a = generate(VandermondeSpec{nodes, cols});
    } else if (g.kind == "pascal") {
        a = generate(PascalSpec{parse_shape(g.shape)});
    } else if (g.kind == "gadget") {
        a = generate(GadgetSpec{parse_shape(g.shape), parse_target(g.target), parse_rational(g.c)});
    } else if (g.kind == "pattern") {
        if (g.pattern.empty()) throw MatrixError("--kind pattern needs --pattern");
        a = generate(PatternSearchSpec{parse_shape(g.shape), SignPattern::parse(g.pattern), g.bound, g.attempts,
                                       st.seed, !g.nonstrict});
    } else if (g.kind == "orbit") {
        if (g.pattern.empty()) throw MatrixError("--kind orbit needs --pattern");
        a = construct_ssr(parse_shape(g.shape), SignPattern::parse(g.pattern));
    } else {
        throw MatrixError("unknown kind '" + g.kind + "'");
    }
    if (!g.out.empty()) save_matrix(g.out, a);
    const SignClass c = classify(a);
    if (st.json()) {
        emit({{"command", "generate"}, {"kind", g.kind}, {"matrix", matrix_json(a)}, {"label", c.label()},
              {"pattern", c.pattern.to_string()}});
    } else if (g.out.empty()) {
        std::cout << format_matrix(a);
    } else {
        std::cout << "wrote " << g.out << " (" << c.label() << ")\n";
    }
    return kOk;
}

// vd

int cmd_vd(const Settings& st, const std::string& in, bool exhaustive, const std::vector<std::string>& vectors) {
    const RationalMatrix a = read_matrix_arg(in);
    std::vector<std::vector<Rational>> xs;
    if (exhaustive) xs = exhaustive_sign_vectors(a.cols());
    for (const auto& v : vectors) xs.push_back(parse_rationals(v));
    if (xs.empty()) throw MatrixError("vd needs --exhaustive-signs or at least one --vector");
    const VdReport r = vd_check(a, xs);
    if (st.json()) {
        json viol = json::array();
        for (const auto& v : r.violations)
            viol.push_back({{"x", join(v.x)}, {"Ax", join(v.ax)}, {"changes_x", v.changes_x},
                            {"changes_Ax", v.changes_ax}});
        emit({{"command", "vd"}, {"checked", r.checked}, {"violations", r.violations.size()}, {"details", viol}});
    } else {
        std::cout << "checked " << r.checked << " vectors, " << r.violations.size() << " violations\n";
        for (const auto& v : r.violations)
            std::cout << "  x = (" << join(v.x) << ") has " << v.changes_x << " sign changes, Ax = (" << join(v.ax)
                      << ") has " << v.changes_ax << '\n';
    }
    return r.ok() ? kOk : kNegative;
}

// verify-theorems

int cmd_verify(const Settings& st, HarnessConfig cfg) {
    cfg.seed = st.seed;
    const HarnessReport r = verify_theorems(cfg);
    if (st.json()) {
        for (const auto& s : r.suites)
            emit({{"suite", s.name}, {"passed", s.passed}, {"failed", s.failed}, {"failures", s.failures}});
        emit({{"command", "verify-theorems"}, {"ok", r.ok()}, {"witness_exhaustions", r.witness_exhaustions},
              {"seed", cfg.seed}, {"samples", cfg.samples}});
    } else {
        for (const auto& s : r.suites) {
            std::cout << s.name << ": " << s.passed << "/" << (s.passed + s.failed) << " passed\n";
            for (const auto& f : s.failures) std::cout << "  violated: " << f << '\n';
        }
        std::cout << "witness exhaustions: " << r.witness_exhaustions << '\n' << (r.ok() ? "ok" : "FAILED") << '\n';
    }
    return r.ok() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact sign regularity toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings st;
    app.add_option("--format", st.format, "Output format")->check(CLI::IsMember({"human", "json", "json-lines"}));
    app.add_option("--seed", st.seed, "Seed for randomized subcommands");

    std::string in, out, chain, mode = "sr", pattern;
    std::size_t up_to = 0;

    auto* classify_cmd = app.add_subcommand("classify", "Sign regularity class and pattern of a matrix");
    classify_cmd->add_option("--in", in, "Matrix file, - for stdin")->required();
    bool strict = false;
    classify_cmd->add_option("--order,--up-to", up_to, "Highest order to check (default min(m,n))");
    classify_cmd->add_flag("--strict", strict, "Report only strict sign regularity");

    auto* apply_cmd = app.add_subcommand("apply", "Apply a transform chain to a matrix");
    apply_cmd->add_option("--in", in, "Matrix file, - for stdin")->required();
    apply_cmd->add_option("--chain", chain, "Comma-separated transform tokens")->required();
    apply_cmd->add_option("--out", out, "Write the image here");

    auto* factor_cmd = app.add_subcommand("factor", "Decide whether an operator preserves a class");
    auto* witness_cmd = app.add_subcommand("witness", "Find a counterexample for a non-preserver");
    for (auto* cmd : {factor_cmd, witness_cmd}) {
        cmd->add_option("--in", in, "Operator file, - for stdin")->required();
        cmd->add_option("--mode", mode, "sr, ssr, sreps or ssreps")
            ->check(CLI::IsMember({"sr", "ssr", "sreps", "ssreps"}));
        cmd->add_option("--pattern", pattern, "Sign pattern for sreps/ssreps, e.g. \"+,-\"");
    }

    GenerateArgs gen;
    auto* gen_cmd = app.add_subcommand("generate", "Generate a test matrix");
    gen_cmd->add_option("--kind", gen.kind, "vandermonde, pascal, gadget, pattern or orbit")
        ->required()
        ->check(CLI::IsMember({"vandermonde", "pascal", "gadget", "pattern", "orbit"}));
    gen_cmd->add_option("--shape", gen.shape, "m x n, e.g. 3x4");
    gen_cmd->add_option("--nodes", gen.nodes, "Vandermonde nodes, e.g. 1,2,3");
    gen_cmd->add_option("--target", gen.target, "Gadget target: entry:i,j, row:i or col:j");
    gen_cmd->add_option("--c", gen.c, "Gadget scale");
    gen_cmd->add_option("--pattern", gen.pattern, "Sign pattern");
    gen_cmd->add_option("--bound", gen.bound, "Pattern search entry bound");
    gen_cmd->add_option("--attempts", gen.attempts, "Pattern search attempt budget");
    gen_cmd->add_flag("--nonstrict", gen.nonstrict, "Accept SR instead of SSR in pattern search");
    gen_cmd->add_option("--out", gen.out, "Write the matrix here");

    bool exhaustive = false;
    std::vector<std::string> vectors;
    auto* vd_cmd = app.add_subcommand("vd", "Variation diminishing check");
    vd_cmd->add_option("--in", in, "SSR matrix file, - for stdin")->required();
    vd_cmd->add_flag("--exhaustive-signs", exhaustive, "Check every nonzero x in {-1,0,1}^n");
    vd_cmd->add_option("--vector", vectors, "Explicit x, e.g. 1,-1,0");

    HarnessConfig cfg;
    auto* verify_cmd = app.add_subcommand("verify-theorems", "Run the randomized property suites");
    verify_cmd->add_option("--min-dim", cfg.min_dim, "Smallest dimension");
    verify_cmd->add_option("--max-dim", cfg.max_dim, "Largest dimension");
    verify_cmd->add_option("--samples", cfg.samples, "Samples per shape");
    verify_cmd->add_flag("--inject-fault", cfg.inject_fault, "Flip one pushforward sign to check the harness");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*classify_cmd) return cmd_classify(st, in, up_to, strict);
        if (*apply_cmd) return cmd_apply(st, in, chain, out);
        if (*factor_cmd) return cmd_factor(st, in, mode, pattern);
        if (*witness_cmd) return cmd_witness(st, in, mode, pattern);
        if (*gen_cmd) return cmd_generate(st, gen);
        if (*vd_cmd) return cmd_vd(st, in, exhaustive, vectors);
        if (*verify_cmd) return cmd_verify(st, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
