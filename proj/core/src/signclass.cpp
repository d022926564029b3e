#include "signreg/signclass.hpp"

#include <algorithm>

namespace signreg {

char to_char(SignSymbol s) {
    switch (s) {
        case SignSymbol::Plus: return '+';
        case SignSymbol::Minus: return '-';
        case SignSymbol::Star: return '*';
    }
    return '?';
}

SignSymbol negate(SignSymbol s) {
    switch (s) {
        case SignSymbol::Plus: return SignSymbol::Minus;
        case SignSymbol::Minus: return SignSymbol::Plus;
        case SignSymbol::Star: return SignSymbol::Star;
    }
    return s;
}

SignPattern SignPattern::all_plus(std::size_t length) {
    return SignPattern(std::vector<SignSymbol>(length, SignSymbol::Plus));
}

SignPattern SignPattern::parse(std::string_view text) {
    std::vector<SignSymbol> signs;
    bool expect_symbol = true;
    for (char ch : text) {
        if (ch == ' ' || ch == '\t') continue;
        if (ch == ',') {
            if (expect_symbol) throw MatrixError("empty entry in sign pattern '" + std::string(text) + "'");
            expect_symbol = true;
            continue;
        }
        switch (ch) {
            case '+': signs.push_back(SignSymbol::Plus); break;
            case '-': signs.push_back(SignSymbol::Minus); break;
            case '*': signs.push_back(SignSymbol::Star); break;
            default: throw MatrixError("invalid symbol '" + std::string(1, ch) + "' in sign pattern");
        }
        expect_symbol = false;
    }
    if (signs.empty()) throw MatrixError("empty sign pattern");
    if (expect_symbol) throw MatrixError("trailing comma in sign pattern '" + std::string(text) + "'");
    return SignPattern(std::move(signs));
}

bool SignPattern::fully_constrained() const {
    return std::none_of(signs_.begin(), signs_.end(), [](SignSymbol s) { return s == SignSymbol::Star; });
}

SignPattern SignPattern::prefix(std::size_t k) const {
    const std::size_t n = std::min(k, signs_.size());
    return SignPattern(std::vector<SignSymbol>(signs_.begin(), signs_.begin() + static_cast<std::ptrdiff_t>(n)));
}

std::string SignPattern::to_string() const {
    std::string out;
    for (std::size_t r = 0; r < signs_.size(); ++r) {
        if (r) out += ',';
        out += to_char(signs_[r]);
    }
    return out;
}

std::optional<SignSymbol> OrderCensus::symbol() const {
    if (inconsistent()) return std::nullopt;
    if (positive) return SignSymbol::Plus;
    if (negative) return SignSymbol::Minus;
    return SignSymbol::Star;
}

OrderCensus order_census(const RationalMatrix& a, std::size_t order, bool stop_on_conflict) {
    OrderCensus census;
    for_each_minor_sign(a, order, [&](const MinorIndex&, int s) {
        if (s > 0) census.positive = true;
        else if (s < 0) census.negative = true;
        else census.zero = true;
        return !(stop_on_conflict && census.inconsistent());
    });
    return census;
}

std::optional<SignSymbol> order_sign(const RationalMatrix& a, std::size_t order) {
    return order_census(a, order).symbol();
}

std::string SignClass::label() const {
    if (strict_order == checked_order) return "SSR_" + std::to_string(checked_order);
    if (regular_order == checked_order) return "SR_" + std::to_string(checked_order);
    return "not SR_" + std::to_string(regular_order + 1);
}

SignClass classify(const RationalMatrix& a, std::size_t up_to) {
    const std::size_t max_order = a.shape().min_dim();
    if (up_to == 0) up_to = max_order;
    if (up_to > max_order)
        throw MatrixError("classification order " + std::to_string(up_to) + " exceeds min(m,n) = " +
                          std::to_string(max_order));
    SignClass result;
    result.checked_order = up_to;
    bool strict_so_far = true;
    for (std::size_t r = 1; r <= up_to; ++r) {
        const OrderCensus census = order_census(a, r);
        const auto symbol = census.symbol();
        if (!symbol) break;
        result.regular_order = r;
        result.pattern.push_back(*symbol);
        strict_so_far = strict_so_far && !census.zero;
        if (strict_so_far) result.strict_order = r;
    }
    return result;
}

bool matches_pattern(const RationalMatrix& a, const SignPattern& eps, bool strict) {
    if (eps.size() > a.shape().min_dim())
        throw MatrixError("sign pattern longer than min(m,n) for " + to_string(a.shape()));
    for (std::size_t r = 1; r <= eps.size(); ++r) {
        const SignSymbol want = eps.at_order(r);
        bool ok = true;
        for_each_minor_sign(a, r, [&](const MinorIndex&, int s) {
            if (want == SignSymbol::Star) ok = (s == 0);
            else if (s == 0) ok = !strict;
            else ok = (s == static_cast<int>(want));
            return ok;
        });
        if (!ok) return false;
    }
    return true;
}

bool is_sign_regular(const RationalMatrix& a, std::size_t up_to) { return classify(a, up_to).is_sr(); }

bool is_strictly_sign_regular(const RationalMatrix& a, std::size_t up_to) {
    return classify(a, up_to).is_ssr();
}

bool is_totally_positive(const RationalMatrix& a) {
    return matches_pattern(a, SignPattern::all_plus(a.shape().min_dim()), true);
}

bool is_totally_nonnegative(const RationalMatrix& a) {
    return matches_pattern(a, SignPattern::all_plus(a.shape().min_dim()), false);
}

std::optional<std::pair<MinorValue, MinorValue>> opposing_minors(const RationalMatrix& a, std::size_t max_order) {
    max_order = std::min(max_order, a.shape().min_dim());
    for (std::size_t r = 1; r <= max_order; ++r) {
        std::optional<MinorValue> pos, neg;
        for_each_minor(a, r, [&](const MinorIndex& idx, const Rational& v) {
            if (v > 0 && !pos) pos = MinorValue{idx, v};
            if (v < 0 && !neg) neg = MinorValue{idx, v};
            return !(pos && neg);
        });
        if (pos && neg) return std::make_pair(*pos, *neg);
    }
    return std::nullopt;
}

std::optional<MinorValue> pattern_violation(const RationalMatrix& a, const SignPattern& eps) {
    for (std::size_t r = 1; r <= std::min(eps.size(), a.shape().min_dim()); ++r) {
        const SignSymbol want = eps.at_order(r);
        std::optional<MinorValue> bad;
        for_each_minor(a, r, [&](const MinorIndex& idx, const Rational& v) {
            const int s = sgn(v);
            const bool violates = want == SignSymbol::Star ? s != 0 : (s != 0 && s != static_cast<int>(want));
            if (violates) bad = MinorValue{idx, v};
            return !bad;
        });
        if (bad) return bad;
    }
    return std::nullopt;
}

}  // namespace signreg
