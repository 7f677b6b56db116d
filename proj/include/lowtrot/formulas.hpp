#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "lowtrot/pauli.hpp"
#include "lowtrot/spectral.hpp"

namespace lowtrot {

struct Stage {
    int group;     // 0-based group index
    double coeff;  // a_nu: the stage evolves for a_nu * s
};

// An ordered product of group exponentials approximating exp(-iHs).  The
// first stage in `stages` is applied first (it is the rightmost factor of the
// operator product).  Adjacent stages with equal group index are fused and
// zero-coefficient stages dropped at construction.
class FormulaSchedule {
  public:
    FormulaSchedule(std::vector<Stage> stages, int n_groups, int declared_order,
                    std::string name = "custom");

    const std::vector<Stage>& stages() const { return stages_; }
    int n_stages() const { return static_cast<int>(stages_.size()); }
    int n_groups() const { return n_groups_; }
    int declared_order() const { return declared_order_; }
    const std::string& name() const { return name_; }

  private:
    std::vector<Stage> stages_;
    int n_groups_;
    int declared_order_;
    std::string name_;
};

// First-order schedule: each group once, coefficient 1.
FormulaSchedule lie_trotter(int n_groups);

// Symmetric second-order schedule.
FormulaSchedule strang(int n_groups);

// Even-order schedule from the standard recursion
//   S_{2k}(s) = S_{2k-2}(u s)^2 S_{2k-2}((1-4u)s) S_{2k-2}(u s)^2,
//   u = 1 / (4 - 4^{1/(2k-1)}).
FormulaSchedule suzuki(int order, int n_groups);

// Per-group eigendecompositions plus the full-Hamiltonian cache; schedules
// reuse the same groups across many step sizes, so everything is built once.
class PropagatorCache {
  public:
    explicit PropagatorCache(const PartitionedHamiltonian& h,
                             int dense_limit = kDenseQubitLimit);

    Eigen::Index dimension() const { return total_cache_.dimension(); }
    int n_groups() const { return static_cast<int>(group_caches_.size()); }

    const Eigen::MatrixXcd& group_matrix(int m) const { return group_matrices_.at(m); }
    const SpectralCache& group_cache(int m) const { return group_caches_.at(m); }
    const Eigen::MatrixXcd& total_matrix() const { return total_matrix_; }
    const SpectralCache& total_cache() const { return total_cache_; }

    Eigen::MatrixXcd group_propagator(int m, double time) const;
    Eigen::MatrixXcd exact_propagator(double time) const;

  private:
    std::vector<Eigen::MatrixXcd> group_matrices_;
    std::vector<SpectralCache> group_caches_;
    Eigen::MatrixXcd total_matrix_;
    SpectralCache total_cache_;
};

// W(s): the staged product of exact group propagators.
Eigen::MatrixXcd apply_formula(const FormulaSchedule& schedule, const PropagatorCache& cache,
                               double s);
Eigen::MatrixXcd apply_formula(const FormulaSchedule& schedule, const PartitionedHamiltonian& h,
                               double s, int dense_limit = kDenseQubitLimit);

// F(s) with dW/ds = -i F(s) W(s);  F(0) = H.
Eigen::MatrixXcd instantaneous_generator(const FormulaSchedule& schedule,
                                         const PropagatorCache& cache, double s);

// E(s) = F(s) - H; vanishes at s = 0 and is O(s^p) for a declared order p.
Eigen::MatrixXcd generator_error(const FormulaSchedule& schedule, const PropagatorCache& cache,
                                 double s);

// || W(s) - exp(-iHs) ||.
double product_formula_error(const FormulaSchedule& schedule, const PropagatorCache& cache,
                             double s);

struct QuadratureBound {
    double value;             // Gauss-Legendre estimate of the integral
    double refinement_delta;  // |value - estimate at half the node count|
    int nodes;
};

// Integral bound on the step error: integral of ||E(sigma)|| over [0, s].
QuadratureBound error_integral_bound(const FormulaSchedule& schedule,
                                     const PropagatorCache& cache, double s, int n_quad);

struct OrderFit {
    double slope = 0.0;
    bool degenerate = false;  // too few points clear of the numerical floor
    int points_used = 0;
};

// Least-squares slope of log error against log s.  Errors above regime_max
// throw NonAsymptoticGrid; points below floor are dropped from the fit.
OrderFit empirical_order(const FormulaSchedule& schedule, const PropagatorCache& cache,
                         const std::vector<double>& s_grid, double regime_max = 1e-3,
                         double floor = 1e-12);

// Gauss-Legendre nodes and weights on [-1, 1].
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Quadrature gauss_legendre(int n);

}  // namespace lowtrot
