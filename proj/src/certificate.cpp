#include "oscillab/certificate.hpp"

#include <cmath>

#include "oscillab/common.hpp"

namespace oscillab {

std::string_view to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Skipped: return "SKIPPED";
    }
    return "FAIL";
}

Check make_check(std::string label, double lhs, double rhs) {
    Check c;
    c.label = std::move(label);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = rhs - lhs;
    const bool ok = std::isfinite(lhs) && !std::isnan(rhs) &&
                    (c.slack >= -kCheckTol * std::abs(rhs) || lhs <= rhs);
    c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    return c;
}

Check skipped_check(std::string label, std::string reason) {
    Check c;
    c.label = std::move(label);
    c.lhs = c.rhs = c.slack = 0.0;
    c.status = CheckStatus::Skipped;
    c.reason = std::move(reason);
    return c;
}

void CertificateReport::add(Check c) {
    if (c.status == CheckStatus::Fail) pass = false;
    checks.push_back(std::move(c));
}

int CertificateReport::failures() const {
    int n = 0;
    for (const auto& c : checks) n += c.status == CheckStatus::Fail;
    return n;
}

double CertificateReport::max_negative_slack() const {
    double m = 0.0;
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail && std::isfinite(c.slack)) m = std::max(m, -c.slack);
    return m;
}

nlohmann::json to_json(const CertificateReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json j{{"label", c.label},
                         {"lhs", c.lhs},
                         {"rhs", c.rhs},
                         {"slack", c.slack},
                         {"status", to_string(c.status)}};
        if (!c.reason.empty()) j["reason"] = c.reason;
        checks.push_back(std::move(j));
    }
    return {{"theorem", r.theorem},
            {"inputs_digest", r.inputs_digest},
            {"checks", checks},
            {"pass", r.pass},
            {"metadata", r.metadata}};
}

}  // namespace oscillab
