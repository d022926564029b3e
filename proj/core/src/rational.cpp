#include "signreg/rational.hpp"

#include <cctype>

namespace signreg {

namespace {

bool is_integer_literal(std::string_view text) {
    if (text.empty()) return false;
    std::size_t pos = 0;
    if (text[0] == '+' || text[0] == '-') pos = 1;
    if (pos == text.size()) return false;
    for (; pos < text.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(text[pos]))) return false;
    }
    return true;
}

Integer parse_integer(std::string_view text) {
    if (!is_integer_literal(text)) {
        throw MatrixError("malformed integer '" + std::string(text) + "'");
    }
    if (text[0] == '+') text.remove_prefix(1);
    return Integer(std::string(text), 10);
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw MatrixError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view token) {
    const auto slash = token.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(token));
    const auto den_text = token.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '+' || den_text[0] == '-')) {
        throw MatrixError("malformed rational '" + std::string(token) + "'");
    }
    return make_rational(parse_integer(token.substr(0, slash)), parse_integer(den_text));
}

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational power(const Rational& base, unsigned exponent) {
    Rational result(1);
    for (unsigned e = 0; e < exponent; ++e) result *= base;
    return result;
}

}  // namespace signreg
