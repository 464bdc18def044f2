#pragma once

// Result record shared by every verifier (identity checks, finite-field
// checks, combinatorial checks).  A result is `verified` exactly when the two
// sides agree; on failure `witness` holds the first differing term or a
// mismatch description, and the sides are kept for serialization.

#include <string>
#include <utility>
#include <vector>

#include "qprove/laurent.hpp"

namespace qprove {

struct VerificationResult {
    std::string identity;
    std::vector<std::pair<std::string, long>> params;  // named, in display order
    bool verified = false;
    std::string witness;  // empty iff verified

    // Polynomial sides (when the check compares polynomials).
    bool has_polys = false;
    qlaurent::LaurentPoly lhs;
    qlaurent::LaurentPoly rhs;

    // Scalar sides (when the check compares exact numbers/counts).
    std::string lhs_value;
    std::string rhs_value;

    // Per-result named scalars (observed exponents, conventions, ...).
    std::vector<std::pair<std::string, std::string>> extras;

    // Convenience used by the verifiers.
    static VerificationResult of_polys(std::string name,
                                       std::vector<std::pair<std::string, long>> params,
                                       qlaurent::LaurentPoly lhs_poly,
                                       qlaurent::LaurentPoly rhs_poly) {
        VerificationResult r;
        r.identity = std::move(name);
        r.params = std::move(params);
        r.has_polys = true;
        r.lhs = std::move(lhs_poly);
        r.rhs = std::move(rhs_poly);
        r.verified = (r.lhs == r.rhs);
        if (!r.verified) r.witness = qlaurent::first_difference(r.lhs, r.rhs);
        return r;
    }
};

}  // namespace qprove
