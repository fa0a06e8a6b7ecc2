#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace stabreg {

enum class CheckStatus { Pass, Fail, Inconclusive, NotApplicable };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Inconclusive: return "inconclusive";
        case CheckStatus::NotApplicable: return "not_applicable";
    }
    return "?";
}

// One verified inequality instance: lhs <= rhs (+ slack).
struct CheckRow {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = true;
};

struct CheckReport {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    double worst_slack = 0.0;  // max(lhs - rhs) over rows; <= 0 means all held strictly
    std::vector<CheckRow> rows;
    std::string note;

    bool passed() const { return status == CheckStatus::Pass || status == CheckStatus::NotApplicable; }

    void add(const std::string& label, double lhs, double rhs, double slack) {
        bool ok = lhs <= rhs + slack;
        rows.push_back({label, lhs, rhs, ok});
        worst_slack = rows.size() == 1 ? lhs - rhs : std::max(worst_slack, lhs - rhs);
        if (!ok) status = CheckStatus::Fail;
    }
};

}  // namespace stabreg
