#include "qprove/report.hpp"

namespace qprove::report {

json poly_to_json(const qlaurent::LaurentPoly& x) {
    json arr = json::array();
    for (const auto& [e, c] : x.terms()) {
        json term;
        term["eq"] = e.eq;
        term["ep"] = e.ep;
        term["ez"] = e.ez;
        term["a"] = c.a.get_str();
        term["b"] = c.b.get_str();
        arr.push_back(std::move(term));
    }
    return arr;
}

json result_to_json(const VerificationResult& r, bool include_polys) {
    json out;
    out["identity"] = r.identity;
    json params = json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    out["params"] = std::move(params);
    out["status"] = r.verified ? "verified" : "failed";
    if (!r.verified) out["witness"] = r.witness;
    if (r.has_polys && (!r.verified || include_polys)) {
        out["lhs"] = poly_to_json(r.lhs);
        out["rhs"] = poly_to_json(r.rhs);
    }
    if (!r.lhs_value.empty()) out["lhsValue"] = r.lhs_value;
    if (!r.rhs_value.empty()) out["rhsValue"] = r.rhs_value;
    if (!r.extras.empty()) {
        json extras = json::object();
        for (const auto& [k, v] : r.extras) extras[k] = v;
        out["extras"] = std::move(extras);
    }
    return out;
}

json RunReport::to_json(bool include_polys) const {
    json out;
    out["tool"] = kToolName;
    out["version"] = kVersion;
    out["command"] = command;
    if (seed) out["seed"] = *seed;
    out["elapsedMillis"] = elapsed_millis;
    json rs = json::array();
    for (const auto& r : results) rs.push_back(result_to_json(r, include_polys));
    out["results"] = std::move(rs);
    json ex = json::object();
    for (const auto& [k, v] : extras) ex[k] = v;
    out["extras"] = std::move(ex);
    out["success"] = success();
    return out;
}

}  // namespace qprove::report
