#include "lowtrot/commutators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace lowtrot {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// 1 / (product of run-length factorials) for an ascending chain.
double repetition_factor(const std::vector<int>& chain) {
    double factor = 1.0;
    std::size_t i = 0;
    while (i < chain.size()) {
        std::size_t j = i;
        while (j < chain.size() && chain[j] == chain[i]) ++j;
        factor /= factorial(static_cast<int>(j - i));
        i = j;
    }
    return factor;
}

OperatorSum commutator_with_group(const TermGroup& group, const OperatorSum& sum) {
    std::vector<LocalTerm> out;
    for (const auto& a : group.terms()) {
        for (const auto& b : sum.terms()) {
            if (auto c = pauli_commutator(a, b)) out.push_back(*c);
        }
    }
    return OperatorSum(std::move(out));
}

}  // namespace

OperatorSum::OperatorSum(std::vector<LocalTerm> terms) : terms_(fuse_terms(std::move(terms))) {}

int OperatorSum::max_support() const {
    int support = 0;
    for (const auto& t : terms_) support = std::max(support, t.pauli.support_size());
    return support;
}

double OperatorSum::max_coeff_magnitude() const {
    double mag = 0.0;
    for (const auto& t : terms_) mag = std::max(mag, std::abs(t.coeff));
    return mag;
}

Eigen::MatrixXcd dense_matrix(const OperatorSum& sum, int n_qubits, int dense_limit) {
    if (n_qubits > dense_limit) throw DimensionTooLarge(n_qubits, dense_limit);
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : sum.terms()) {
        Eigen::MatrixXcd term = dense_matrix(t, n_qubits, dense_limit);
        m += term;
    }
    return m;
}

OperatorSum expand_nested(const PartitionedHamiltonian& h, const NestedSpec& spec,
                          int max_order) {
    if (spec.indices.empty()) throw Error("nested spec has no indices");
    if (spec.order() > max_order) throw OrderTooLarge(spec.order(), max_order);
    for (int idx : spec.indices) {
        if (idx < 0 || idx >= h.n_groups()) {
            throw Error("nested spec references group " + std::to_string(idx));
        }
    }
    OperatorSum current(h.group(spec.base()).terms());
    for (int level = static_cast<int>(spec.indices.size()) - 2; level >= 0; --level) {
        current = commutator_with_group(h.group(spec.indices[level]), current);
        if (current.empty()) break;
    }
    return current;
}

ExpansionAudit expand_nested_audit(const PartitionedHamiltonian& h, const NestedSpec& spec,
                                   int max_order) {
    if (spec.indices.empty()) throw Error("nested spec has no indices");
    if (spec.order() > max_order) throw OrderTooLarge(spec.order(), max_order);
    std::vector<LocalTerm> atoms = h.group(spec.base()).terms();
    for (int level = static_cast<int>(spec.indices.size()) - 2; level >= 0; --level) {
        std::vector<LocalTerm> next;
        for (const auto& outer : h.group(spec.indices[level]).terms()) {
            for (const auto& atom : atoms) {
                if (auto c = pauli_commutator(outer, atom)) next.push_back(*c);
            }
        }
        atoms = std::move(next);
        if (atoms.empty()) break;
    }
    ExpansionAudit audit;
    audit.term_count = static_cast<long long>(atoms.size());
    for (const auto& t : atoms) {
        audit.max_support = std::max(audit.max_support, t.pauli.support_size());
        if (!t.pauli.is_identity()) {
            audit.max_strength = std::max(audit.max_strength, 2.0 * std::abs(t.coeff));
        }
    }
    return audit;
}

CountBounds count_bounds(int order, int max_group_terms, int locality, int degree,
                         double strength) {
    if (order < 0) throw Error("order must be nonnegative");
    return {max_group_terms * std::pow(static_cast<double>(locality) * degree, order) *
                factorial(order),
            (order + 1) * locality, std::pow(strength, order + 1)};
}

CoefficientTable::CoefficientTable(std::vector<std::vector<StageEntry>> stage_entries,
                                   std::vector<std::map<std::vector<int>, double>> group_entries)
    : stage_(std::move(stage_entries)), group_(std::move(group_entries)) {}

const std::vector<CoefficientTable::StageEntry>& CoefficientTable::stage_entries(
    int order) const {
    if (order < 1 || order > max_order()) throw OrderTooLarge(order, max_order());
    return stage_[order - 1];
}

const std::map<std::vector<int>, double>& CoefficientTable::group_entries(int order) const {
    if (order < 1 || order > max_order()) throw OrderTooLarge(order, max_order());
    return group_[order - 1];
}

double CoefficientTable::abs_group_sum(int order) const {
    double total = 0.0;
    for (const auto& [key, value] : group_entries(order)) total += std::abs(value);
    return total;
}

CoefficientTable expand_F_coefficients(const FormulaSchedule& schedule, int up_to) {
    if (up_to < 1) throw Error("coefficient order must be at least 1");
    if (up_to > kMaxCoefficientOrder) throw OrderTooLarge(up_to, kMaxCoefficientOrder);
    const auto& stages = schedule.stages();
    const int q = static_cast<int>(stages.size());

    std::vector<std::vector<CoefficientTable::StageEntry>> stage_entries(up_to);
    std::vector<std::map<std::vector<int>, double>> group_entries(up_to);

    for (int order = 1; order <= up_to; ++order) {
        std::vector<int> chain(order);
        // Enumerate base < nu_1 <= nu_2 <= ... <= nu_order.
        std::function<void(int, int)> recurse = [&](int position, int minimum) {
            if (position == order) {
                double value = repetition_factor(chain);
                for (int nu : chain) value *= stages[nu].coeff;
                for (int base = 0; base < chain.front(); ++base) {
                    CoefficientTable::StageEntry entry{chain, base,
                                                       value * stages[base].coeff};
                    stage_entries[order - 1].push_back(entry);
                    std::vector<int> key(chain.rbegin(), chain.rend());
                    for (int& nu : key) nu = stages[nu].group;
                    key.push_back(stages[base].group);
                    group_entries[order - 1][key] += entry.value;
                }
                return;
            }
            for (int nu = minimum; nu < q; ++nu) {
                chain[position] = nu;
                recurse(position + 1, nu);
            }
        };
        // chain[0] ranges over 1..q-1 so at least one base fits below it.
        for (int first = 1; first < q; ++first) {
            chain[0] = first;
            recurse(1, first);
        }
        std::erase_if(group_entries[order - 1],
                      [](const auto& kv) { return std::abs(kv.second) <= 1e-15; });
    }
    return CoefficientTable(std::move(stage_entries), std::move(group_entries));
}

double abs_f_sum_surviving(const FormulaSchedule& schedule, const PartitionedHamiltonian& h,
                           int order) {
    const CoefficientTable table = expand_F_coefficients(schedule, order);
    double total = 0.0;
    for (const auto& [key, value] : table.group_entries(order)) {
        if (!expand_nested(h, NestedSpec{key}).empty()) total += std::abs(value);
    }
    return total;
}

OperatorSum aggregated_commutator_sum(const FormulaSchedule& schedule,
                                      const PartitionedHamiltonian& h, int order) {
    const CoefficientTable table = expand_F_coefficients(schedule, order);
    std::vector<LocalTerm> accumulated;
    for (const auto& [key, value] : table.group_entries(order)) {
        const OperatorSum expansion = expand_nested(h, NestedSpec{key});
        for (const auto& t : expansion.terms()) {
            accumulated.push_back({t.pauli, value * t.coeff});
        }
    }
    return OperatorSum(std::move(accumulated));
}

double commutator_bound_sum(const FormulaSchedule& schedule, const PartitionedHamiltonian& h,
                            int order, int dense_limit) {
    if (order != schedule.declared_order()) {
        throw Error("bound sum must be evaluated at the schedule's declared order");
    }
    const CoefficientTable table = expand_F_coefficients(schedule, order);
    double total = 0.0;
    for (const auto& [key, value] : table.group_entries(order)) {
        const OperatorSum expansion = expand_nested(h, NestedSpec{key});
        if (expansion.empty()) continue;
        total += std::abs(value) *
                 spectral_norm(dense_matrix(expansion, h.n_qubits(), dense_limit));
    }
    return total;
}

double restricted_commutator_bound_sum(const FormulaSchedule& schedule,
                                       const PartitionedHamiltonian& h, int order,
                                       const SpectralCache& total_cache, double cutoff,
                                       int dense_limit) {
    if (order != schedule.declared_order()) {
        throw Error("bound sum must be evaluated at the schedule's declared order");
    }
    const CoefficientTable table = expand_F_coefficients(schedule, order);
    double total = 0.0;
    for (const auto& [key, value] : table.group_entries(order)) {
        const OperatorSum expansion = expand_nested(h, NestedSpec{key});
        if (expansion.empty()) continue;
        total += std::abs(value) *
                 restricted_norm(dense_matrix(expansion, h.n_qubits(), dense_limit),
                                 total_cache, cutoff);
    }
    return total;
}

}  // namespace lowtrot
