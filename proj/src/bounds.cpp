#include "lowtrot/bounds.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "lowtrot/parallel.hpp"

namespace lowtrot {

namespace {

constexpr double kMinChainGap = 1e-9;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

LeakageParams LeakageParams::for_k_local(const ParamSummary& params) {
    const double g = params.strength * params.max_degree;
    return {lambda_param(params.strength, params.max_degree, params.max_support),
            g,
            params.max_support * params.strength * params.max_degree,
            params.max_support,
            params.max_degree,
            params.strength};
}

double lambda_param(double strength, int degree, int locality) {
    if (strength <= 0.0 || degree <= 0 || locality <= 0) {
        throw Error("leakage rate needs positive strength, degree and locality");
    }
    return 1.0 / (2.0 * strength * degree * locality);
}

double ell_n(int order, int max_group_terms, int locality, int degree, double strength) {
    if (order < 0) throw Error("order must be nonnegative");
    const double e = std::exp(1.0);
    const double compact = max_group_terms * factorial(order) *
                           std::pow(strength * locality * degree * e, order) * e * strength;
    const double lambda = lambda_param(strength, degree, locality);
    const double expanded = max_group_terms *
                            std::pow(static_cast<double>(locality) * degree, order) *
                            factorial(order) * std::pow(strength, order + 1) *
                            std::exp(2.0 * lambda * strength * locality * degree * (order + 1));
    if (std::abs(compact - expanded) > 1e-12 * std::max(std::abs(compact), 1.0)) {
        throw Error("leakage prefactor forms disagree; parameter bookkeeping is broken");
    }
    return compact;
}

ExpBound arad_leakage_bound(double norm_a, double radius, double lambda, double cutoff_low,
                            double cutoff_high) {
    if (cutoff_high < cutoff_low) {
        throw Error("leakage bound needs cutoff_high >= cutoff_low");
    }
    const double value = norm_a * std::exp(-lambda * (cutoff_high - cutoff_low - 2.0 * radius));
    return {value, value >= norm_a};
}

double formula_leakage_radius(const FormulaSchedule& schedule, const PartitionedHamiltonian& h,
                              double s, const ParamSummary& params) {
    const int p = schedule.declared_order();
    const double f_sum = abs_f_sum_surviving(schedule, h, p);
    const double ell = ell_n(p, params.max_group_terms, params.max_support, params.max_degree,
                             params.strength);
    const double lambda =
        lambda_param(params.strength, params.max_degree, params.max_support);
    return std::pow(s, p + 1) / (p + 1) * (ell / lambda) * f_sum;
}

ExpBound formula_leakage_bound(double delta, double delta_prime, double lambda, double r_w) {
    if (delta_prime < delta) throw Error("leakage bound needs delta_prime >= delta");
    const double value = std::exp(-lambda * (delta_prime - delta - 2.0 * r_w));
    return {value, value >= 1.0};
}

DeltaPrimeChoice select_delta_prime(double delta, double s, int order, double max_group_terms,
                                    double lambda, double alpha, double theta) {
    if (theta <= 0.0 || theta > 1.0) throw Error("target leakage must lie in (0, 1]");
    const double radius_term = 2.0 * alpha * std::pow(s, order + 1) * max_group_terms;
    const double log_term = std::log(1.0 / theta) / lambda;
    return {delta + radius_term + log_term, radius_term, log_term};
}

void CutoffChain::validate(int order) const {
    if (order < 1) throw InvalidChain("chain order must be positive");
    if (order == 1) {
        if (!cutoffs.empty()) throw InvalidChain("order-1 chains are degenerate");
        return;
    }
    if (static_cast<int>(cutoffs.size()) != order - 1) {
        throw InvalidChain("an order-" + std::to_string(order) + " chain needs " +
                           std::to_string(order - 1) + " cutoffs");
    }
    double previous = delta_prime;
    for (double c : cutoffs) {
        if (c <= previous) throw InvalidChain("chain cutoffs must ascend strictly");
        previous = c;
    }
}

double ChainBoundBreakdown::leakage_share() const {
    if (total <= 0.0) return 0.0;
    double leak = 0.0;
    for (double t : leakage_terms) leak += t;
    return leak / total;
}

ChainBoundBreakdown cutoff_chain_bound(const PartitionedHamiltonian& h,
                                       const FormulaSchedule& schedule, int order,
                                       const CutoffChain& chain, const SpectralCache& total,
                                       const ParamSummary& params, int dense_limit) {
    if (order != schedule.declared_order()) {
        throw Error("chain bound must be evaluated at the schedule's declared order");
    }
    chain.validate(order);

    const double lambda =
        lambda_param(params.strength, params.max_degree, params.max_support);
    std::vector<double> ells(order + 1);
    for (int n = 0; n <= order; ++n) {
        ells[n] = ell_n(n, params.max_group_terms, params.max_support, params.max_degree,
                        params.strength);
    }

    // Largest group norm restricted to each cutoff.
    auto group_norm_at = [&](double cutoff) {
        double norm = 0.0;
        for (int m = 0; m < h.n_groups(); ++m) {
            norm = std::max(norm,
                            restricted_norm(dense_matrix(h.group(m), dense_limit), total, cutoff));
        }
        return norm;
    };

    std::vector<double> interior_norms(chain.cutoffs.size());
    for (std::size_t i = 0; i < chain.cutoffs.size(); ++i) {
        interior_norms[i] = group_norm_at(chain.cutoffs[i]);
    }
    const double final_norm =
        chain.cutoffs.empty() ? group_norm_at(chain.delta_prime) : interior_norms.back();

    ChainBoundBreakdown out;
    double norm_product = 1.0;  // restricted norms accumulated before step j
    double previous = chain.delta_prime;
    for (std::size_t j = 0; j < chain.cutoffs.size(); ++j) {
        const double gap = chain.cutoffs[j] - previous;
        const double term = std::pow(2.0, static_cast<double>(j + 1)) * norm_product * ells[0] *
                            ells[order - 1 - j] * std::exp(-2.0 * lambda * gap);
        out.leakage_terms.push_back(term);
        norm_product *= interior_norms[j];
        previous = chain.cutoffs[j];
    }
    // norm_product now carries the p-1 interior factors; the closing term has
    // p+1 factors, the last two at the final cutoff.
    out.final_term = std::pow(2.0, order) * norm_product * final_norm * final_norm;
    out.total = out.final_term;
    for (double t : out.leakage_terms) out.total += t;
    return out;
}

CutoffChain auto_chain(double delta_prime, int order, double max_group_terms, double lambda,
                       const std::vector<double>& ells, double theta,
                       double final_term_estimate) {
    if (order < 1) throw Error("chain order must be positive");
    if (theta <= 0.0 || theta >= 1.0) throw Error("slack fraction must lie in (0, 1)");
    CutoffChain chain{delta_prime, {}};
    if (order == 1) return chain;
    if (static_cast<int>(ells.size()) < order) {
        throw Error("need ell_0 .. ell_{p-1} to space the chain");
    }
    double estimate = final_term_estimate;
    if (estimate <= 0.0) {
        estimate = std::pow(2.0, order) * std::pow(std::abs(delta_prime), order) * ells[0];
        if (estimate <= 0.0) estimate = 1.0;
    }
    double previous = delta_prime;
    for (int j = 1; j <= order - 1; ++j) {
        const double numerator =
            std::pow(2.0, j) * ells[0] * ells[order - j] * order;
        const double gap =
            std::max(kMinChainGap,
                     std::log(numerator / (theta * estimate)) / (2.0 * lambda));
        chain.cutoffs.push_back(previous + gap);
        previous = chain.cutoffs.back();
    }
    return chain;
}

double psd_step_error_bound(double s, int order, double delta_f, double f_sum) {
    return std::pow(s, order + 1) / (order + 1) * std::pow(2.0, order) * f_sum *
           std::pow(delta_f, order + 1);
}

double delta_tilde_f(const TermGroup& group, const SpectralCache& total, double delta_f,
                     int dense_limit) {
    const Eigen::Index count = total.count_leq(delta_f);
    if (count == 0) throw EmptySubspace("no eigenstates at or below the final cutoff");
    const auto basis = total.eigenvectors.leftCols(count);
    const Eigen::MatrixXcd block =
        par::matmul(basis.adjoint(), par::matmul(dense_matrix(group, dense_limit), basis));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (block + block.adjoint()),
                                                           Eigen::EigenvaluesOnly);
    return 0.5 * (solver.eigenvalues().maxCoeff() - solver.eigenvalues().minCoeff());
}

double delta_tilde_f(const PartitionedHamiltonian& h, const SpectralCache& total, double delta_f,
                     int dense_limit) {
    double value = 0.0;
    for (int m = 0; m < h.n_groups(); ++m) {
        value = std::max(value, delta_tilde_f(h.group(m), total, delta_f, dense_limit));
    }
    return value;
}

double empirical_low_energy_error(const FormulaSchedule& schedule, const PropagatorCache& cache,
                                  double s, double delta) {
    if (cache.total_cache().count_leq(delta) == 0) return 0.0;
    const Eigen::MatrixXcd diff =
        apply_formula(schedule, cache, s) - cache.exact_propagator(s);
    return spectral_norm(par::matmul(diff, projector_leq(cache.total_cache(), delta)));
}

double empirical_leakage(const FormulaSchedule& schedule, const PropagatorCache& cache, double s,
                         double delta, double delta_prime) {
    if (delta_prime < delta) throw Error("leakage needs delta_prime >= delta");
    if (cache.total_cache().count_leq(delta) == 0) return 0.0;
    const Eigen::MatrixXcd w = apply_formula(schedule, cache, s);
    return spectral_norm(
        par::matmul(projector_gt(cache.total_cache(), delta_prime),
                    par::matmul(w, projector_leq(cache.total_cache(), delta))));
}

ErrorSplit error_decomposition(const FormulaSchedule& schedule, const PropagatorCache& cache,
                               double s, double delta, double delta_prime) {
    if (delta_prime < delta) throw Error("decomposition needs delta_prime >= delta");
    const Eigen::MatrixXcd w = apply_formula(schedule, cache, s);
    const Eigen::MatrixXcd diff = w - cache.exact_propagator(s);
    const Eigen::MatrixXcd low = projector_leq(cache.total_cache(), delta);

    ErrorSplit split;
    split.retained = spectral_norm(par::matmul(
        projector_leq(cache.total_cache(), delta_prime), par::matmul(diff, low)));
    split.leakage = spectral_norm(
        par::matmul(projector_gt(cache.total_cache(), delta_prime), par::matmul(w, low)));

    const double eps = spectral_norm(par::matmul(diff, low));
    if (eps > split.retained + split.leakage + 1e-12) {
        throw Error("decomposition triangle inequality violated; norms are inconsistent");
    }
    return split;
}

}  // namespace lowtrot
