#include "lowtrot/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lowtrot/parallel.hpp"

namespace lowtrot {

namespace {

constexpr double kStageDropThreshold = 1e-15;
constexpr double kConsistencyTolerance = 1e-12;

std::vector<Stage> fuse_stages(std::vector<Stage> stages) {
    std::vector<Stage> out;
    for (const Stage& s : stages) {
        if (!out.empty() && out.back().group == s.group) {
            out.back().coeff += s.coeff;
        } else {
            out.push_back(s);
        }
    }
    std::erase_if(out, [](const Stage& s) { return std::abs(s.coeff) <= kStageDropThreshold; });
    return out;
}

}  // namespace

FormulaSchedule::FormulaSchedule(std::vector<Stage> stages, int n_groups, int declared_order,
                                 std::string name)
    : stages_(fuse_stages(std::move(stages))),
      n_groups_(n_groups),
      declared_order_(declared_order),
      name_(std::move(name)) {
    if (n_groups_ < 1) throw Error("schedule needs at least one group");
    if (declared_order_ < 1) throw Error("declared order must be positive");
    if (stages_.empty()) throw Error("schedule has no stages");
    std::vector<double> sums(n_groups_, 0.0);
    for (const Stage& s : stages_) {
        if (s.group < 0 || s.group >= n_groups_) {
            throw Error("stage references group " + std::to_string(s.group) +
                        " outside 0.." + std::to_string(n_groups_ - 1));
        }
        sums[s.group] += s.coeff;
    }
    for (int m = 0; m < n_groups_; ++m) {
        if (std::abs(sums[m] - 1.0) > kConsistencyTolerance) {
            throw Error("per-group stage coefficients of group " + std::to_string(m) +
                        " sum to " + std::to_string(sums[m]) + ", expected 1");
        }
    }
}

FormulaSchedule lie_trotter(int n_groups) {
    std::vector<Stage> stages;
    for (int m = 0; m < n_groups; ++m) stages.push_back({m, 1.0});
    return FormulaSchedule(std::move(stages), n_groups, 1, "lie_trotter");
}

FormulaSchedule strang(int n_groups) {
    std::vector<Stage> stages;
    for (int m = 0; m < n_groups - 1; ++m) stages.push_back({m, 0.5});
    stages.push_back({n_groups - 1, 1.0});
    for (int m = n_groups - 2; m >= 0; --m) stages.push_back({m, 0.5});
    return FormulaSchedule(std::move(stages), n_groups, 2, "strang");
}

FormulaSchedule suzuki(int order, int n_groups) {
    if (order < 2 || order % 2 != 0) {
        throw Error("the recursion defines even orders only, got " + std::to_string(order));
    }
    std::vector<Stage> stages = strang(n_groups).stages();
    for (int k = 2; 2 * k <= order; ++k) {
        const double u = 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * k - 1.0)));
        const double scales[5] = {u, u, 1.0 - 4.0 * u, u, u};
        std::vector<Stage> next;
        for (double scale : scales) {
            for (const Stage& s : stages) next.push_back({s.group, s.coeff * scale});
        }
        stages = fuse_stages(std::move(next));
    }
    return FormulaSchedule(std::move(stages), n_groups, order, "suzuki" + std::to_string(order));
}

PropagatorCache::PropagatorCache(const PartitionedHamiltonian& h, int dense_limit) {
    group_matrices_.reserve(h.n_groups());
    group_caches_.reserve(h.n_groups());
    for (int m = 0; m < h.n_groups(); ++m) {
        group_matrices_.push_back(dense_matrix(h.group(m), dense_limit));
        group_caches_.push_back(eigendecompose(group_matrices_.back()));
    }
    total_matrix_ = dense_matrix(h, dense_limit);
    total_cache_ = eigendecompose(total_matrix_);
}

Eigen::MatrixXcd PropagatorCache::group_propagator(int m, double time) const {
    return evolve(group_caches_.at(m), time);
}

Eigen::MatrixXcd PropagatorCache::exact_propagator(double time) const {
    return evolve(total_cache_, time);
}

Eigen::MatrixXcd apply_formula(const FormulaSchedule& schedule, const PropagatorCache& cache,
                               double s) {
    if (schedule.n_groups() != cache.n_groups()) {
        throw Error("schedule group count does not match the Hamiltonian");
    }
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(cache.dimension(), cache.dimension());
    for (const Stage& stage : schedule.stages()) {
        w = par::matmul(cache.group_propagator(stage.group, stage.coeff * s), w);
    }
    return w;
}

Eigen::MatrixXcd apply_formula(const FormulaSchedule& schedule, const PartitionedHamiltonian& h,
                               double s, int dense_limit) {
    return apply_formula(schedule, PropagatorCache(h, dense_limit), s);
}

Eigen::MatrixXcd instantaneous_generator(const FormulaSchedule& schedule,
                                         const PropagatorCache& cache, double s) {
    if (schedule.n_groups() != cache.n_groups()) {
        throw Error("schedule group count does not match the Hamiltonian");
    }
    const Eigen::Index dim = cache.dimension();
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(dim, dim);
    // F(s) = sum_nu a_nu V_nu H_{m_nu} V_nu^dagger with V_nu the product of
    // the stages applied after stage nu; build V from the last stage down.
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(dim, dim);
    const auto& stages = schedule.stages();
    for (int nu = static_cast<int>(stages.size()) - 1; nu >= 0; --nu) {
        const Stage& stage = stages[nu];
        f += stage.coeff *
             par::matmul(par::matmul(v, cache.group_matrix(stage.group)), v.adjoint());
        if (nu > 0) {
            v = par::matmul(v, cache.group_propagator(stage.group, stage.coeff * s));
        }
    }
    return 0.5 * (f + f.adjoint().eval());
}

Eigen::MatrixXcd generator_error(const FormulaSchedule& schedule, const PropagatorCache& cache,
                                 double s) {
    return instantaneous_generator(schedule, cache, s) - cache.total_matrix();
}

double product_formula_error(const FormulaSchedule& schedule, const PropagatorCache& cache,
                             double s) {
    return spectral_norm(apply_formula(schedule, cache, s) - cache.exact_propagator(s));
}

Quadrature gauss_legendre(int n) {
    if (n < 1) throw Error("quadrature needs at least one node");
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    // Newton on the Legendre polynomial, symmetric nodes.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    return q;
}

namespace {

double integral_of_generator_error(const FormulaSchedule& schedule, const PropagatorCache& cache,
                                   double s, int n_quad) {
    const Quadrature q = gauss_legendre(n_quad);
    double total = 0.0;
    for (int i = 0; i < n_quad; ++i) {
        const double sigma = 0.5 * s * (q.nodes[i] + 1.0);
        total += 0.5 * s * q.weights[i] *
                 spectral_norm(generator_error(schedule, cache, sigma));
    }
    return total;
}

}  // namespace

QuadratureBound error_integral_bound(const FormulaSchedule& schedule,
                                     const PropagatorCache& cache, double s, int n_quad) {
    if (n_quad < 2) throw Error("integral bound needs at least two nodes");
    if (s == 0.0) return {0.0, 0.0, n_quad};
    const double value = integral_of_generator_error(schedule, cache, s, n_quad);
    const double coarse = integral_of_generator_error(schedule, cache, s, n_quad / 2);
    return {value, std::abs(value - coarse), n_quad};
}

OrderFit empirical_order(const FormulaSchedule& schedule, const PropagatorCache& cache,
                         const std::vector<double>& s_grid, double regime_max, double floor) {
    if (s_grid.size() < 2) throw Error("order fit needs at least two step sizes");
    const auto [lo, hi] = std::minmax_element(s_grid.begin(), s_grid.end());
    if (*lo <= 0.0) throw Error("step sizes must be positive");
    if (*hi / *lo < 10.0 * (1.0 - 1e-9)) {
        throw Error("step-size grid must span at least one decade");
    }

    std::vector<double> log_s, log_err;
    for (double s : s_grid) {
        const double err = product_formula_error(schedule, cache, s);
        if (err > regime_max) {
            throw NonAsymptoticGrid("error " + std::to_string(err) + " at s = " +
                                    std::to_string(s) + " exceeds the regime threshold " +
                                    std::to_string(regime_max));
        }
        if (err < floor) continue;  // below the numerical floor
        log_s.push_back(std::log(s));
        log_err.push_back(std::log(err));
    }

    OrderFit fit;
    fit.points_used = static_cast<int>(log_s.size());
    if (fit.points_used < 3) {
        fit.degenerate = true;
        return fit;
    }
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < log_s.size(); ++i) {
        mean_x += log_s[i];
        mean_y += log_err[i];
    }
    mean_x /= fit.points_used;
    mean_y /= fit.points_used;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < log_s.size(); ++i) {
        sxx += (log_s[i] - mean_x) * (log_s[i] - mean_x);
        sxy += (log_s[i] - mean_x) * (log_err[i] - mean_y);
    }
    fit.slope = sxy / sxx;
    return fit;
}

}  // namespace lowtrot
