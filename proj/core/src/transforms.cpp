#include "signreg/transforms.hpp"

#include <algorithm>

namespace signreg {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

bool is_permutation_of_range(const std::vector<std::size_t>& p, std::size_t n) {
    if (p.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (std::size_t t : p) {
        if (t >= n || seen[t]) return false;
        seen[t] = true;
    }
    return true;
}

bool all_positive(std::span<const Rational> xs) {
    return std::all_of(xs.begin(), xs.end(), [](const Rational& x) { return x > 0; });
}

// Sign of the reversal permutation on r elements.
int reversal_sign(std::size_t r) { return (r * (r - 1) / 2) % 2 == 0 ? 1 : -1; }

SignSymbol times(SignSymbol s, int factor) { return factor > 0 ? s : negate(s); }

std::string join_rationals(std::span<const Rational> xs, char sep) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) out += sep;
        out += to_string(xs[k]);
    }
    return out;
}

std::string join_indices(const std::vector<std::size_t>& xs) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(xs[k] + 1);
    }
    return out;
}

}  // namespace

void validate(const PrimitiveTransform& t, Shape shape) {
    const bool vector_shape = shape.min_dim() == 1;
    const bool two_by_two = shape.rows == 2 && shape.cols == 2;
    std::visit(overloaded{
                   [&](const DiagEquiv& d) {
                       if (d.row_scale.size() != shape.rows || d.col_scale.size() != shape.cols)
                           throw TransformError("diag scales do not match shape " + to_string(shape));
                       if (!all_positive(d.row_scale) || !all_positive(d.col_scale))
                           throw TransformError("diag scales must be strictly positive");
                   },
                   [](Negate) {},
                   [](RowFlip) {},
                   [](ColFlip) {},
                   [&](Transpose) {
                       if (!shape.square()) throw TransformError("transpose requires a square shape");
                   },
                   [&](const HadamardScale& h) {
                       if (!two_by_two && !vector_shape)
                           throw TransformError("hadamard is only legal on 2x2 or vector shapes");
                       if (h.weights.shape() != shape) throw TransformError("hadamard weights do not match shape");
                       if (!all_positive(h.weights.data()))
                           throw TransformError("hadamard weights must be strictly positive");
                   },
                   [&](Swap2x2BottomPair) {
                       if (!two_by_two) throw TransformError("swap2 is only legal on 2x2 shapes");
                   },
                   [&](const RowPermute& p) {
                       if (!vector_shape) throw TransformError("rowperm is only legal on vector shapes");
                       if (!is_permutation_of_range(p.target, shape.rows))
                           throw TransformError("rowperm is not a permutation of the rows");
                   },
                   [&](const ColPermute& p) {
                       if (!vector_shape) throw TransformError("colperm is only legal on vector shapes");
                       if (!is_permutation_of_range(p.target, shape.cols))
                           throw TransformError("colperm is not a permutation of the columns");
                   },
               },
               t);
}

RationalMatrix apply(const PrimitiveTransform& t, const RationalMatrix& a) {
    validate(t, a.shape());
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    return std::visit(overloaded{
                          [&](const DiagEquiv& d) {
                              RationalMatrix out = a;
                              for (std::size_t i = 0; i < m; ++i)
                                  for (std::size_t j = 0; j < n; ++j) out(i, j) *= d.row_scale[i] * d.col_scale[j];
                              return out;
                          },
                          [&](Negate) { return -a; },
                          [&](RowFlip) {
                              RationalMatrix out(m, n);
                              for (std::size_t i = 0; i < m; ++i)
                                  for (std::size_t j = 0; j < n; ++j) out(i, j) = a(m - 1 - i, j);
                              return out;
                          },
                          [&](ColFlip) {
                              RationalMatrix out(m, n);
                              for (std::size_t i = 0; i < m; ++i)
                                  for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, n - 1 - j);
                              return out;
                          },
                          [&](Transpose) { return a.transposed(); },
                          [&](const HadamardScale& h) {
                              RationalMatrix out = a;
                              for (std::size_t k = 0; k < out.data().size(); ++k) out.data()[k] *= h.weights.data()[k];
                              return out;
                          },
                          [&](Swap2x2BottomPair) {
                              RationalMatrix out = a;
                              std::swap(out(1, 0), out(1, 1));
                              return out;
                          },
                          [&](const RowPermute& p) {
                              RationalMatrix out(m, n);
                              for (std::size_t i = 0; i < m; ++i)
                                  for (std::size_t j = 0; j < n; ++j) out(p.target[i], j) = a(i, j);
                              return out;
                          },
                          [&](const ColPermute& p) {
                              RationalMatrix out(m, n);
                              for (std::size_t i = 0; i < m; ++i)
                                  for (std::size_t j = 0; j < n; ++j) out(i, p.target[j]) = a(i, j);
                              return out;
                          },
                      },
                      t);
}

SignPattern pushforward_pattern(const PrimitiveTransform& t, const SignPattern& eps) {
    auto order_one_only = [&](const char* name) {
        if (eps.size() > 1)
            throw TransformError(std::string(name) + " does not determine signs of minors of order >= 2");
        return eps;
    };
    return std::visit(overloaded{
                          [&](const DiagEquiv&) { return eps; },
                          [&](Negate) {
                              SignPattern out = eps;
                              for (std::size_t r = 1; r <= eps.size(); ++r)
                                  out.set_order(r, times(eps.at_order(r), r % 2 == 0 ? 1 : -1));
                              return out;
                          },
                          [&](RowFlip) {
                              SignPattern out = eps;
                              for (std::size_t r = 1; r <= eps.size(); ++r)
                                  out.set_order(r, times(eps.at_order(r), reversal_sign(r)));
                              return out;
                          },
                          [&](ColFlip) {
                              SignPattern out = eps;
                              for (std::size_t r = 1; r <= eps.size(); ++r)
                                  out.set_order(r, times(eps.at_order(r), reversal_sign(r)));
                              return out;
                          },
                          [&](Transpose) { return eps; },
                          [&](const HadamardScale&) { return order_one_only("hadamard"); },
                          [&](Swap2x2BottomPair) { return order_one_only("swap2"); },
                          [&](const RowPermute&) { return order_one_only("rowperm"); },
                          [&](const ColPermute&) { return order_one_only("colperm"); },
                      },
                      t);
}

std::string to_token(const PrimitiveTransform& t) {
    return std::visit(overloaded{
                          [](const DiagEquiv& d) {
                              return "diag(F=" + join_rationals(d.row_scale, ',') +
                                     ";E=" + join_rationals(d.col_scale, ',') + ")";
                          },
                          [](Negate) { return std::string("neg"); },
                          [](RowFlip) { return std::string("rowflip"); },
                          [](ColFlip) { return std::string("colflip"); },
                          [](Transpose) { return std::string("transpose"); },
                          [](const HadamardScale& h) {
                              std::string out = "hadamard(";
                              for (std::size_t i = 0; i < h.weights.rows(); ++i) {
                                  if (i) out += ';';
                                  out += join_rationals(h.weights.data().subspan(i * h.weights.cols(),
                                                                                 h.weights.cols()),
                                                        ',');
                              }
                              return out + ")";
                          },
                          [](Swap2x2BottomPair) { return std::string("swap2"); },
                          [](const RowPermute& p) { return "rowperm(" + join_indices(p.target) + ")"; },
                          [](const ColPermute& p) { return "colperm(" + join_indices(p.target) + ")"; },
                      },
                      t);
}

TransformChain::TransformChain(Shape shape, std::vector<PrimitiveTransform> steps) : shape_(shape) {
    if (shape.rows == 0 || shape.cols == 0) throw TransformError("chain shape must be positive");
    for (auto& t : steps) push_back(std::move(t));
}

void TransformChain::push_back(PrimitiveTransform t) {
    validate(t, shape_);
    steps_.push_back(std::move(t));
}

TransformChain TransformChain::then(const TransformChain& other) const {
    if (other.shape_ != shape_) throw TransformError("concatenating chains on different shapes");
    TransformChain out = *this;
    out.steps_.insert(out.steps_.end(), other.steps_.begin(), other.steps_.end());
    return out;
}

RationalMatrix apply(const TransformChain& chain, const RationalMatrix& a) {
    if (a.shape() != chain.shape())
        throw TransformError("chain on " + to_string(chain.shape()) + " applied to " + to_string(a.shape()));
    RationalMatrix out = a;
    for (const auto& t : chain.steps()) out = signreg::apply(t, out);
    return out;
}

SignPattern pushforward_pattern(const TransformChain& chain, const SignPattern& eps) {
    SignPattern out = eps;
    for (const auto& t : chain.steps()) out = pushforward_pattern(t, out);
    return out;
}

MatrixSpaceMap compose_to_operator(const TransformChain& chain) {
    const Shape shape = chain.shape();
    RationalMatrix l(shape.cells(), shape.cells());
    for (std::size_t i = 0; i < shape.rows; ++i) {
        for (std::size_t j = 0; j < shape.cols; ++j) {
            const RationalMatrix image = apply(chain, unit_matrix(shape, i, j));
            const std::size_t c = slot(shape, i, j);
            for (std::size_t r = 0; r < shape.cells(); ++r) l(r, c) = image.data()[r];
        }
    }
    return MatrixSpaceMap(shape, std::move(l));
}

MatrixSpaceMap compose_to_operator(const PrimitiveTransform& t, Shape shape) {
    return compose_to_operator(TransformChain(shape, {t}));
}

std::string to_string(const TransformChain& chain) {
    std::string out;
    for (std::size_t k = 0; k < chain.steps().size(); ++k) {
        if (k) out += ',';
        out += to_token(chain.steps()[k]);
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= s.size(); ++k) {
        if (k == s.size() || s[k] == sep) {
            parts.push_back(trim(s.substr(start, k - start)));
            start = k + 1;
        }
    }
    return parts;
}

std::vector<Rational> parse_rational_list(std::string_view s) {
    std::vector<Rational> out;
    for (auto part : split(s, ',')) out.push_back(parse_rational(part));
    return out;
}

std::vector<std::size_t> parse_index_list(std::string_view s) {
    std::vector<std::size_t> out;
    for (auto part : split(s, ',')) {
        const Rational v = parse_rational(part);
        if (v.get_den() != 1 || v < 1) throw TransformError("permutation entries must be positive integers");
        out.push_back(v.get_num().get_ui() - 1);
    }
    return out;
}

PrimitiveTransform parse_token(std::string_view token) {
    const auto open = token.find('(');
    const std::string_view name = trim(token.substr(0, open));
    std::string_view args;
    if (open != std::string_view::npos) {
        if (token.back() != ')') throw TransformError("unbalanced parentheses in '" + std::string(token) + "'");
        args = trim(token.substr(open + 1, token.size() - open - 2));
    }
    auto no_args = [&](PrimitiveTransform t) {
        if (open != std::string_view::npos) throw TransformError("'" + std::string(name) + "' takes no arguments");
        return t;
    };
    if (name == "neg") return no_args(Negate{});
    if (name == "rowflip") return no_args(RowFlip{});
    if (name == "colflip") return no_args(ColFlip{});
    if (name == "transpose") return no_args(Transpose{});
    if (name == "swap2") return no_args(Swap2x2BottomPair{});
    if (open == std::string_view::npos) throw TransformError("unknown transform '" + std::string(token) + "'");
    if (name == "diag") {
        DiagEquiv d;
        for (auto part : split(args, ';')) {
            if (part.starts_with("F=")) d.row_scale = parse_rational_list(part.substr(2));
            else if (part.starts_with("E=")) d.col_scale = parse_rational_list(part.substr(2));
            else throw TransformError("diag expects F=...;E=...");
        }
        return d;
    }
    if (name == "hadamard") {
        std::vector<std::vector<Rational>> rows;
        for (auto part : split(args, ';')) rows.push_back(parse_rational_list(part));
        return HadamardScale{RationalMatrix::from_rows(rows)};
    }
    if (name == "rowperm") return RowPermute{parse_index_list(args)};
    if (name == "colperm") return ColPermute{parse_index_list(args)};
    throw TransformError("unknown transform '" + std::string(name) + "'");
}

}  // namespace

TransformChain parse_chain(std::string_view text, Shape shape) {
    TransformChain chain(shape);
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= text.size(); ++k) {
        const char ch = k < text.size() ? text[k] : ',';
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth < 0) throw TransformError("unbalanced parentheses in chain");
        if (ch == ',' && depth == 0) {
            const auto token = trim(text.substr(start, k - start));
            if (!token.empty()) chain.push_back(parse_token(token));
            else if (k < text.size()) throw TransformError("empty token in chain");
            start = k + 1;
        }
    }
    if (depth != 0) throw TransformError("unbalanced parentheses in chain");
    return chain;
}

}  // namespace signreg
