#pragma once

// Counterexample search for rejected operators.
//
// Candidates are one-parameter pencils A(c) = B + c D drawn from
//   E_ij and E_ij + c E_kl
//   J(c): all-ones with one entry, row or column scaled by c, or two
//         opposite corners scaled together
// and are tried in a fixed order:
//   1. forward, c in witness_constants()
//   2. inverse (L^-1 applied to class members), same constants
//   3. forward, c at the critical points of every entry and 2x2 minor of
//      A(c) and L(A(c)) and at a point inside every gap between them
//   4. inverse, same
//   5. singular L: a class member outside the range
// In pattern modes every candidate is multiplied by the sign of eps_1.
// Exhausting all phases throws WitnessNotFound.

#include "signreg/preserver.hpp"

#include <vector>

namespace signreg {

class WitnessNotFound : public PreserverError {
public:
    using PreserverError::PreserverError;
};

/// 1, then 2^t and 2^-t for t = 1..20.
const std::vector<Rational>& witness_constants();

/// Membership of a candidate in the class the operator should preserve.
bool in_source_class(const RationalMatrix& a, PreserverMode mode, const std::optional<SignPattern>& eps);
/// Certified exit from the class, checked at orders <= 2.
bool leaves_class(const RationalMatrix& y, PreserverMode mode, const std::optional<SignPattern>& eps);

Witness find_witness(const MatrixSpaceMap& map, PreserverMode mode, const std::optional<SignPattern>& eps = {});

/// Re-checks a witness from scratch against the operator.
bool verify_witness(const Witness& w, const MatrixSpaceMap& map, PreserverMode mode,
                    const std::optional<SignPattern>& eps = {});

}  // namespace signreg
