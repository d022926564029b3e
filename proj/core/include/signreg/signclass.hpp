#pragma once

#include "signreg/matrix.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace signreg {

/// Shared sign of all minors of one order. Star means every minor of that order vanishes.
enum class SignSymbol : signed char { Minus = -1, Star = 0, Plus = 1 };

char to_char(SignSymbol s);
SignSymbol negate(SignSymbol s);

/// Per-order sign symbols; entry r-1 belongs to order r (epsilon_0 = +1 is implicit).
class SignPattern {
public:
    SignPattern() = default;
    explicit SignPattern(std::vector<SignSymbol> signs) : signs_(std::move(signs)) {}
    /// All-plus pattern of the given length (the TP/TN signature).
    static SignPattern all_plus(std::size_t length);
    /// Parses "+,-,*". Commas are optional.
    static SignPattern parse(std::string_view text);

    std::size_t size() const { return signs_.size(); }
    bool empty() const { return signs_.empty(); }
    /// Sign at order r, 1-based.
    SignSymbol at_order(std::size_t r) const { return signs_.at(r - 1); }
    void set_order(std::size_t r, SignSymbol s) { signs_.at(r - 1) = s; }
    void push_back(SignSymbol s) { signs_.push_back(s); }
    const std::vector<SignSymbol>& symbols() const { return signs_; }
    /// True when no order carries Star.
    bool fully_constrained() const;
    /// First k orders.
    SignPattern prefix(std::size_t k) const;

    /// "+,-,*"
    std::string to_string() const;

    friend bool operator==(const SignPattern&, const SignPattern&) = default;
    friend auto operator<=>(const SignPattern&, const SignPattern&) = default;

private:
    std::vector<SignSymbol> signs_;
};

/// Which strict signs (and zeros) occur among the minors of one order.
struct OrderCensus {
    bool positive = false;
    bool negative = false;
    bool zero = false;

    bool inconsistent() const { return positive && negative; }
    /// Star when all minors vanish; nullopt when inconsistent.
    std::optional<SignSymbol> symbol() const;
};

/// Census of order-r minors. With stop_on_conflict the scan ends at the first
/// minor contradicting an earlier one, so zero may be under-reported.
OrderCensus order_census(const RationalMatrix& a, std::size_t order, bool stop_on_conflict = true);

/// Shared sign of the order-r minors, Star if they all vanish, nullopt if
/// both strict signs occur. Throws MatrixError when r is out of range.
std::optional<SignSymbol> order_sign(const RationalMatrix& a, std::size_t order);

/// Classification verdict through some order k.
struct SignClass {
    std::size_t strict_order = 0;   ///< largest r <= k with A SSR_r
    std::size_t regular_order = 0;  ///< largest r <= k with A SR_r
    std::size_t checked_order = 0;  ///< the k that was requested
    SignPattern pattern;            ///< symbols for orders 1..regular_order

    bool is_sr() const { return regular_order == checked_order; }
    bool is_ssr() const { return strict_order == checked_order; }
    /// "SSR_3", "SR_2", or "not SR_1".
    std::string label() const;
};

/// Classifies A through order up_to (defaults to min(m,n) when 0).
/// Stops at the first inconsistent order.
SignClass classify(const RationalMatrix& a, std::size_t up_to = 0);

/// Whether A is SR_k(eps) (or SSR_k(eps) when strict) with k = eps.size().
/// On the SR side an order whose minors all vanish is compatible with any
/// queried sign; a queried Star requires all minors of that order to vanish.
bool matches_pattern(const RationalMatrix& a, const SignPattern& eps, bool strict);

/// Convenience predicates over the full order range.
bool is_sign_regular(const RationalMatrix& a, std::size_t up_to = 0);
bool is_strictly_sign_regular(const RationalMatrix& a, std::size_t up_to = 0);
bool is_totally_positive(const RationalMatrix& a);
bool is_totally_nonnegative(const RationalMatrix& a);

/// Two minors of the same order with strictly opposite signs, if any exist
/// at order <= max_order. Used as human-readable evidence for witnesses.
std::optional<std::pair<MinorValue, MinorValue>> opposing_minors(const RationalMatrix& a, std::size_t max_order);

/// First minor of order <= eps.size() whose strict sign contradicts eps.
std::optional<MinorValue> pattern_violation(const RationalMatrix& a, const SignPattern& eps);

}  // namespace signreg
