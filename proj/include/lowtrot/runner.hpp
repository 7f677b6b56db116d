#pragma once

#include <string>
#include <vector>

#include "lowtrot/config.hpp"
#include "lowtrot/cost.hpp"
#include "lowtrot/report.hpp"

namespace lowtrot {

struct AnalyzeResult {
    std::vector<BoundReport> reports;
    std::vector<std::string> failures;  // one entry per failed grid point

    // For models whose groups are not all positive semidefinite there is no
    // closed-form step bound; the optimal-shift restricted norm at the
    // median final cutoff is reported instead (NaN when not applicable).
    bool groups_psd = true;
    double delta_tilde_f_report = 0.0;

    bool all_verdicts_pass() const;
};

// One BoundReport per (s, delta[, delta_prime]) grid point.  Points run
// concurrently up to the worker cap and fail independently.
AnalyzeResult run_analyze(const ExperimentConfig& config);

struct LeakageRow {
    std::string kind;  // "arad" or "formula"
    int sample = 0;
    double s = 0.0;          // formula rows only
    double cutoff_low = 0.0;
    double cutoff_high = 0.0;
    double norm_a = 0.0;     // arad rows only
    double measured = 0.0;
    double bound = 0.0;
    bool vacuous = false;

    bool verdict() const { return measured <= bound; }
};

struct LeakageResult {
    std::vector<LeakageRow> rows;
    int violations = 0;
};

// Generic (random k-local operator) and product-formula leakage sweeps.
LeakageResult run_leakage(const ExperimentConfig& config);

std::string leakage_to_csv(const LeakageResult& result);

struct CostExponentRow {
    std::string method;
    int order = 0;
    std::string law;         // rendered cost law
    Rational n_exp;
    double evaluated = 0.0;  // at the config's (T, N, Delta, eps)
    int dominant_term = 0;
};

struct CostEmpiricalRow {
    std::string label;  // "restricted" or "full-space"
    long long steps = 0;
    double achieved_error = 0.0;
    std::string failure;  // non-empty when the search errored
};

struct CostResult {
    std::vector<CostExponentRow> exponents;        // methods x configured order
    std::vector<CostExponentRow> figure_exponents; // three methods, p = 1..8
    std::vector<CostEmpiricalRow> empirical;
    double delta_used = 0.0;
};

CostResult run_cost(const ExperimentConfig& config);

std::string cost_to_csv(const CostResult& result);

struct CompareRow {
    int order = 0;
    std::string general;
    std::string prior;
    std::string present;
    Rational general_n, prior_n, present_n;
};

// Cost-law table and the N-exponent comparison for the requested orders.
std::vector<CompareRow> run_compare(const std::vector<int>& orders);

std::string compare_to_csv(const std::vector<CompareRow>& rows);
std::string render_law(const ScalingLaw& law);

}  // namespace lowtrot
