#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "lowtrot/formulas.hpp"
#include "lowtrot/pauli.hpp"
#include "lowtrot/spectral.hpp"

namespace lowtrot {

// Closed forms for the expansion coefficients are implemented through this
// order; higher orders are out of scope.
inline constexpr int kMaxCoefficientOrder = 3;

// Default cap for symbolic expansion; term counts grow as L (kd)^n n!.
inline constexpr int kMaxExpansionOrder = 4;

// Group indices of a nested commutator [H_{i0}, [H_{i1}, ... [H_{i_{n-1}},
// H_{i_n}] ...]]: outermost first, the base group last; order = size - 1.
struct NestedSpec {
    std::vector<int> indices;

    int order() const { return static_cast<int>(indices.size()) - 1; }
    int base() const { return indices.back(); }
};

// A canonical sum of weighted Pauli words (duplicates fused, negligible
// coefficients dropped).  Coefficients may be complex here: commutators
// produce factors of i.
class OperatorSum {
  public:
    OperatorSum() = default;
    explicit OperatorSum(std::vector<LocalTerm> terms);

    const std::vector<LocalTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int size() const { return static_cast<int>(terms_.size()); }

    int max_support() const;
    double max_coeff_magnitude() const;

  private:
    std::vector<LocalTerm> terms_;
};

Eigen::MatrixXcd dense_matrix(const OperatorSum& sum, int n_qubits,
                              int dense_limit = kDenseQubitLimit);

// Symbolic expansion of the nested commutator, resolved innermost-first and
// re-fused after every level.
OperatorSum expand_nested(const PartitionedHamiltonian& h, const NestedSpec& spec,
                          int max_order = kMaxExpansionOrder);

// Accounting over the raw expansion, before any fusion: one entry per chain
// of pairwise commutators of single k-local terms.  These are the objects
// the L (kd)^n n! / (n+1)k / J^{n+1} envelopes speak about; fusion can push
// canonical coefficients above the strength envelope.  Strength of an entry
// is its spectral spread, 2|c| for a non-identity word.
struct ExpansionAudit {
    long long term_count = 0;
    int max_support = 0;
    double max_strength = 0.0;
};
ExpansionAudit expand_nested_audit(const PartitionedHamiltonian& h, const NestedSpec& spec,
                                   int max_order = kMaxExpansionOrder);

struct CountBounds {
    double max_terms;     // L (kd)^n n!
    int max_support;      // (n+1) k
    double max_strength;  // J^{n+1}
};
CountBounds count_bounds(int order, int max_group_terms, int locality, int degree,
                         double strength);

// Coefficients of the nested-commutator expansion of the instantaneous
// generator: per stage tuple (chain nu_1 <= ... <= nu_n, all > base nu) the
// value is a_nu * prod a_{nu_i} divided by the factorial of every repeated
// run, and the group-level entries aggregate those over the stage-to-group
// map.  Group entries are keyed by NestedSpec::indices layout (outermost
// first, base last).
class CoefficientTable {
  public:
    struct StageEntry {
        std::vector<int> chain;  // nu_1 <= ... <= nu_n (innermost first)
        int base;                // nu
        double value;
    };

    CoefficientTable(std::vector<std::vector<StageEntry>> stage_entries,
                     std::vector<std::map<std::vector<int>, double>> group_entries);

    int max_order() const { return static_cast<int>(stage_.size()); }
    const std::vector<StageEntry>& stage_entries(int order) const;
    const std::map<std::vector<int>, double>& group_entries(int order) const;

    // Sum of |f| over all aggregated entries of the given order.
    double abs_group_sum(int order) const;

  private:
    std::vector<std::vector<StageEntry>> stage_;
    std::vector<std::map<std::vector<int>, double>> group_;
};

CoefficientTable expand_F_coefficients(const FormulaSchedule& schedule, int up_to);

// Sum of |f| restricted to group tuples whose symbolic expansion is nonzero.
double abs_f_sum_surviving(const FormulaSchedule& schedule, const PartitionedHamiltonian& h,
                           int order);

// The f-weighted sum of order-n nested commutators; vanishes identically for
// every n below the schedule's true order.
OperatorSum aggregated_commutator_sum(const FormulaSchedule& schedule,
                                      const PartitionedHamiltonian& h, int order);

// Prefactor of the leading single-step error bound: the bound itself is
// s^{p+1}/(p+1) times this value.
double commutator_bound_sum(const FormulaSchedule& schedule, const PartitionedHamiltonian& h,
                            int order, int dense_limit = kDenseQubitLimit);

// Same sum with every norm restricted to energies at or below the cutoff in
// the full-Hamiltonian eigenbasis.
double restricted_commutator_bound_sum(const FormulaSchedule& schedule,
                                       const PartitionedHamiltonian& h, int order,
                                       const SpectralCache& total, double cutoff,
                                       int dense_limit = kDenseQubitLimit);

}  // namespace lowtrot
