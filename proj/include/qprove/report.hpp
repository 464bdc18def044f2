#pragma once

// Deterministic JSON reports.  Key order is insertion order (ordered_json)
// and every value is derived from the inputs alone, so a report is
// byte-identical across repeated runs with the same arguments and seed,
// regardless of thread count.  (Wall-clock timing is opt-in for this reason.)

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qprove/verification.hpp"

namespace qprove::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "qprove";
inline constexpr const char* kVersion = "1.0.0";

// Sorted term list [{"eq":int,"ep":int,"ez":int,"a":dec-string,"b":dec-string}, ...].
json poly_to_json(const qlaurent::LaurentPoly& x);

// include_polys forces serialization of the polynomial sides even for
// verified results (they are always serialized on failure).
json result_to_json(const VerificationResult& r, bool include_polys);

struct RunReport {
    std::string command;
    std::optional<long> seed;
    long elapsed_millis = 0;
    std::vector<VerificationResult> results;
    std::vector<std::pair<std::string, json>> extras;

    bool success() const {
        for (const auto& r : results)
            if (!r.verified) return false;
        return true;
    }

    json to_json(bool include_polys = false) const;
};

}  // namespace qprove::report
