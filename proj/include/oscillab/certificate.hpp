#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace oscillab {

inline constexpr double kCheckTol = 1e-9;

enum class CheckStatus { Pass, Fail, Skipped };

std::string_view to_string(CheckStatus s);

struct Check {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    CheckStatus status = CheckStatus::Pass;
    std::string reason;  // reason code for SKIPPED
};

// lhs <= rhs, passing when slack >= -kCheckTol |rhs|.
Check make_check(std::string label, double lhs, double rhs);
Check skipped_check(std::string label, std::string reason);

struct CertificateReport {
    std::string theorem;
    std::string inputs_digest;
    std::vector<Check> checks;
    bool pass = true;
    nlohmann::json metadata = nlohmann::json::object();

    void add(Check c);
    int failures() const;
    double max_negative_slack() const;  // largest |slack| among failing checks
};

nlohmann::json to_json(const CertificateReport& r);

}  // namespace oscillab
