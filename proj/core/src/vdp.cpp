#include "signreg/vdp.hpp"

#include "signreg/signclass.hpp"

#include <algorithm>

namespace signreg {

std::size_t sign_changes(std::span<const Rational> x) {
    std::size_t changes = 0;
    int last = 0;
    for (const auto& v : x) {
        const int s = sign(v);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

VdReport vd_check(const RationalMatrix& a, const std::vector<std::vector<Rational>>& xs) {
    if (!is_strictly_sign_regular(a)) throw MatrixError("vd_check needs a strictly sign regular matrix");
    VdReport report;
    for (const auto& x : xs) {
        if (x.size() != a.cols())
            throw MatrixError("vector of length " + std::to_string(x.size()) + " does not match " +
                              std::to_string(a.cols()) + " columns");
        auto ax = multiply(a, x);
        const std::size_t sx = sign_changes(x), sax = sign_changes(ax);
        ++report.checked;
        if (sax > sx) report.violations.push_back({x, std::move(ax), sx, sax});
    }
    return report;
}

std::vector<std::vector<Rational>> exhaustive_sign_vectors(std::size_t n) {
    std::vector<std::vector<Rational>> out;
    std::vector<int> digits(n, -1);
    while (true) {
        if (std::any_of(digits.begin(), digits.end(), [](int d) { return d != 0; })) {
            std::vector<Rational> v;
            v.reserve(n);
            for (int d : digits) v.emplace_back(d);
            out.push_back(std::move(v));
        }
        std::size_t k = n;
        while (k > 0 && digits[k - 1] == 1) digits[--k] = -1;
        if (k == 0) break;
        ++digits[k - 1];
    }
    return out;
}

}  // namespace signreg
