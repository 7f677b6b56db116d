#pragma once

#include <string>
#include <vector>

namespace lowtrot {

// Slack factor absorbing truncated higher orders in the dominance verdicts.
inline constexpr double kDominanceSlack = 1.25;

// Absolute allowance for empirical values sitting at the numerical floor
// (roundoff of the dense eigensolves) when the analytic bound is exactly 0.
inline constexpr double kVerdictFloor = 1e-12;

// One experiment row: empirical quantities, analytic bounds and the derived
// dominance verdicts.  Verdicts are always recomputed from the stored
// numbers.  Analytic fields are NaN when no closed form applies (schedule
// order beyond the coefficient tables).
struct BoundReport {
    std::string model;
    std::string schedule;
    int order = 0;
    double s = 0.0;
    double delta = 0.0;
    double delta_prime = 0.0;
    double delta_f = 0.0;
    double eps_empirical = 0.0;
    double leakage_empirical = 0.0;
    double retained_empirical = 0.0;
    double leakage_bound = 0.0;
    double retained_bound = 0.0;
    double psd_bound = 0.0;  // NaN unless every group is positive semidefinite
    bool leakage_vacuous = false;
    bool analytic_available = true;

    bool psd_applicable() const;
    // leakage_empirical <= leakage_bound
    bool verdict_leakage() const;
    // retained_empirical <= retained_bound * kDominanceSlack
    bool verdict_retained() const;
    // eps_empirical <= psd_bound * kDominanceSlack, when applicable
    bool verdict_psd() const;
    std::string vacuity_flags() const;
};

// Fixed 17-column CSV schema; floating values carry 17 significant digits.
extern const char* const kReportCsvHeader;

std::string reports_to_csv(const std::vector<BoundReport>& reports);
std::string reports_to_json(const std::vector<BoundReport>& reports);
std::vector<BoundReport> reports_from_json(const std::string& text);

void write_file(const std::string& path, const std::string& contents);

}  // namespace lowtrot
