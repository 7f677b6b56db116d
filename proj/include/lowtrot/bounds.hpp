#pragma once

#include <vector>

#include "lowtrot/commutators.hpp"
#include "lowtrot/formulas.hpp"
#include "lowtrot/pauli.hpp"
#include "lowtrot/spectral.hpp"

namespace lowtrot {

// Parameters of the generic leakage bound: decay rate lambda = 1/(2 g k)
// with g = J d, and radius R the total strength of Hamiltonian terms not
// commuting with the leaking operator.
struct LeakageParams {
    double lambda;
    double g;
    double radius;
    int locality;
    int degree;
    double strength;

    // For a single k-local operator the radius defaults to k J d.
    static LeakageParams for_k_local(const ParamSummary& params);
};

double lambda_param(double strength, int degree, int locality);

// Leakage prefactor of an order-n nested commutator:
//   ell_n = L n! (J k d e)^n e J.
// Evaluated both in that form and as (L (kd)^n n!) J^{n+1} e^{n+1}; the two
// must agree to relative 1e-12.
double ell_n(int order, int max_group_terms, int locality, int degree, double strength);

// An exponential bound together with its vacuity status: vacuous means it is
// no stronger than the trivial bound (||A|| for general blocks, 1 for
// unitary ones).
struct ExpBound {
    double value;
    bool vacuous;
};

// norm_a * exp(-lambda (cutoff_high - cutoff_low - 2 radius)).
ExpBound arad_leakage_bound(double norm_a, double radius, double lambda, double cutoff_low,
                            double cutoff_high);

// Effective leakage radius of a product formula, leading order:
//   R_W(s) = s^{p+1}/(p+1) * (ell_p / lambda) * sum |f|,
// the |f| sum running over aggregated coefficients whose nested commutator
// does not vanish identically.
double formula_leakage_radius(const FormulaSchedule& schedule, const PartitionedHamiltonian& h,
                              double s, const ParamSummary& params);

// exp(-lambda (delta_prime - delta - 2 r_w)); vacuous when >= 1.
ExpBound formula_leakage_bound(double delta, double delta_prime, double lambda, double r_w);

struct DeltaPrimeChoice {
    double delta_prime;
    double radius_term;  // 2 R_W
    double log_term;     // ln(1/theta) / lambda
};

// delta + 2 alpha s^{p+1} L + ln(1/theta)/lambda, which caps the formula
// leakage bound at theta.
DeltaPrimeChoice select_delta_prime(double delta, double s, int order, double max_group_terms,
                                    double lambda, double alpha, double theta);

// Ascending cutoffs delta_prime < Delta_1 < ... < Delta_{p-1} = Delta_f used
// to resolve a nested commutator into restricted norms.  For order 1 the
// chain is degenerate and the final cutoff equals delta_prime.
struct CutoffChain {
    double delta_prime;
    std::vector<double> cutoffs;

    double final_cutoff() const { return cutoffs.empty() ? delta_prime : cutoffs.back(); }
    void validate(int order) const;
};

struct ChainBoundBreakdown {
    double total;
    double final_term;
    std::vector<double> leakage_terms;  // one per interior cutoff

    double leakage_share() const;
};

// The bracket multiplying s^{p+1}/(p+1) in the chain bound for one nested
// commutator: leakage terms 2^j (prod of restricted norms) ell_0 ell_{p-j}
// exp(-2 lambda (Delta_j - Delta_{j-1})), plus the closing term with p+1
// restricted norms.  Restricted norms are taken as the maximum over groups.
ChainBoundBreakdown cutoff_chain_bound(const PartitionedHamiltonian& h,
                                       const FormulaSchedule& schedule, int order,
                                       const CutoffChain& chain, const SpectralCache& total,
                                       const ParamSummary& params,
                                       int dense_limit = kDenseQubitLimit);

// Spaces cutoffs so each leakage term of the bracket stays below theta/p of
// the estimated closing term.  ells[i] must hold ell_i for i = 0..order-1.
// With final_term_estimate <= 0 the parametric default 2^p delta_prime^p
// ell_0 is used; callers holding a spectrum should pass the sharper
// 2^p (max_m ||H_m||_{<=delta_prime})^{p+1}.
CutoffChain auto_chain(double delta_prime, int order, double max_group_terms, double lambda,
                       const std::vector<double>& ells, double theta,
                       double final_term_estimate = 0.0);

// Closing-term bound for positive semidefinite groups:
//   s^{p+1}/(p+1) * 2^p * f_sum * delta_f^{p+1}.
double psd_step_error_bound(double s, int order, double delta_f, double f_sum);

// min over constants C of the restricted norm of H_m + C, equal to half the
// spectral spread of the subspace-compressed block.
double delta_tilde_f(const TermGroup& group, const SpectralCache& total, double delta_f,
                     int dense_limit = kDenseQubitLimit);
// Maximum over groups.
double delta_tilde_f(const PartitionedHamiltonian& h, const SpectralCache& total, double delta_f,
                     int dense_limit = kDenseQubitLimit);

// || (W(s) - exp(-iHs)) P_{<=delta} ||.
double empirical_low_energy_error(const FormulaSchedule& schedule, const PropagatorCache& cache,
                                  double s, double delta);

// || P_{>delta_prime} W(s) P_{<=delta} ||.
double empirical_leakage(const FormulaSchedule& schedule, const PropagatorCache& cache, double s,
                         double delta, double delta_prime);

struct ErrorSplit {
    double retained;
    double leakage;
};

// Retained and leaked components; checks the triangle inequality against the
// plain low-energy error before returning.
ErrorSplit error_decomposition(const FormulaSchedule& schedule, const PropagatorCache& cache,
                               double s, double delta, double delta_prime);

}  // namespace lowtrot
