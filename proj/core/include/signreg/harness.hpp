#pragma once

// Randomized property suites behind `signreg verify-theorems`.

#include "signreg/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace signreg {

struct HarnessConfig {
    std::size_t min_dim = 2;  ///< shapes m x n with min_dim <= m, n <= max_dim
    std::size_t max_dim = 4;
    std::size_t samples = 200;  ///< per shape
    std::uint64_t seed = 0;
    /// Mutation check: flips the predicted order-2 sign of rowflip.
    bool inject_fault = false;
};

struct SuiteResult {
    std::string name;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::vector<std::string> failures;  ///< first few, for the report

    void record(bool ok, const std::string& what);
};

struct HarnessReport {
    std::vector<SuiteResult> suites;
    std::size_t witness_exhaustions = 0;

    bool ok() const;
};

/// Throws MatrixError unless 2 <= min_dim <= max_dim <= 5.
HarnessReport verify_theorems(const HarnessConfig& config);

}  // namespace signreg
