#include "lowtrot/runner.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <sstream>

#include "lowtrot/bounds.hpp"
#include "lowtrot/parallel.hpp"

namespace lowtrot {

namespace {

struct GridPoint {
    double s;
    double delta;
    double delta_prime;  // NaN under the auto policy (derived per point)
};

std::string format_g(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

// Shared per-run quantities that every grid point reuses.
struct AnalysisContext {
    const PartitionedHamiltonian& h;
    FormulaSchedule schedule;
    PropagatorCache cache;
    ParamSummary summary;
    double lambda = 0.0;
    bool analytic = false;  // closed-form coefficients available
    double f_sum = 0.0;     // surviving |f| at the declared order
    std::vector<double> ells;  // ell_0 .. ell_p

    AnalysisContext(const PartitionedHamiltonian& model, const ScheduleSpec& spec,
                    int dense_limit)
        : h(model),
          schedule(build_schedule(spec, model.n_groups())),
          cache(model, dense_limit),
          summary(validate_partition(model, dense_limit)) {
        lambda = lambda_param(summary.strength, summary.max_degree, summary.max_support);
        const int p = schedule.declared_order();
        analytic = p <= kMaxCoefficientOrder;
        if (analytic) {
            f_sum = abs_f_sum_surviving(schedule, h, p);
            for (int n = 0; n <= p; ++n) {
                ells.push_back(ell_n(n, summary.max_group_terms, summary.max_support,
                                     summary.max_degree, summary.strength));
            }
        }
    }
};

BoundReport analyze_point(const AnalysisContext& ctx, const ExperimentConfig& config,
                          const GridPoint& point) {
    const int p = ctx.schedule.declared_order();
    BoundReport r;
    r.model = ctx.h.name();
    r.schedule = ctx.schedule.name();
    r.order = p;
    r.s = point.s;
    r.delta = point.delta;
    r.analytic_available = ctx.analytic;

    const double nan = std::nan("");
    double r_w = nan;
    if (ctx.analytic) {
        r_w = std::pow(point.s, p + 1) / (p + 1) * (ctx.ells[p] / ctx.lambda) * ctx.f_sum;
    }

    if (std::isnan(point.delta_prime)) {
        if (!ctx.analytic) {
            throw Error("auto delta_prime needs coefficient tables (schedule order > " +
                        std::to_string(kMaxCoefficientOrder) + "); supply explicit values");
        }
        r.delta_prime = point.delta + 2.0 * r_w +
                        std::log(1.0 / config.delta_prime.theta) / ctx.lambda;
    } else {
        r.delta_prime = point.delta_prime;
    }

    if (ctx.analytic) {
        const ExpBound leak =
            formula_leakage_bound(point.delta, r.delta_prime, ctx.lambda, r_w);
        r.leakage_bound = leak.value;
        r.leakage_vacuous = leak.vacuous;
        r.retained_bound =
            std::pow(point.s, p + 1) / (p + 1) *
            restricted_commutator_bound_sum(ctx.schedule, ctx.h, p, ctx.cache.total_cache(),
                                            r.delta_prime, config.dense_limit);

        // Sharper closing-term estimate than the parametric default: the
        // restricted group norms at delta_prime lower-bound those at every
        // later cutoff.
        double h0 = 0.0;
        for (int m = 0; m < ctx.h.n_groups(); ++m) {
            h0 = std::max(h0, restricted_norm(dense_matrix(ctx.h.group(m), config.dense_limit),
                                              ctx.cache.total_cache(), r.delta_prime));
        }
        const double estimate = std::pow(2.0, p) * std::pow(h0, p + 1);
        const CutoffChain chain =
            auto_chain(r.delta_prime, p, ctx.summary.max_group_terms, ctx.lambda, ctx.ells,
                       config.chain_slack, estimate > 0.0 ? estimate : 0.0);
        r.delta_f = chain.final_cutoff();

        r.psd_bound = (ctx.summary.psd_checked && ctx.summary.groups_psd)
                          ? psd_step_error_bound(point.s, p, r.delta_f, ctx.f_sum)
                          : nan;
    } else {
        r.leakage_bound = nan;
        r.retained_bound = nan;
        r.psd_bound = nan;
        r.delta_f = nan;
    }

    r.eps_empirical = empirical_low_energy_error(ctx.schedule, ctx.cache, point.s, point.delta);
    const ErrorSplit split =
        error_decomposition(ctx.schedule, ctx.cache, point.s, point.delta, r.delta_prime);
    r.retained_empirical = split.retained;
    r.leakage_empirical = split.leakage;
    return r;
}

Eigen::MatrixXcd embed_on_qubits(const Eigen::MatrixXcd& block, const std::vector<int>& qubits,
                                 int n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    const Eigen::Index small = block.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        std::uint64_t sub = 0;
        for (std::size_t i = 0; i < qubits.size(); ++i) {
            if ((static_cast<std::uint64_t>(col) >> qubits[i]) & 1) sub |= std::uint64_t{1} << i;
        }
        for (Eigen::Index row_sub = 0; row_sub < small; ++row_sub) {
            std::uint64_t row = static_cast<std::uint64_t>(col);
            for (std::size_t i = 0; i < qubits.size(); ++i) {
                const std::uint64_t bit = std::uint64_t{1} << qubits[i];
                row = (static_cast<std::uint64_t>(row_sub) >> i) & 1 ? (row | bit) : (row & ~bit);
            }
            const Complex v = block(row_sub, static_cast<Eigen::Index>(sub));
            if (v != Complex{0, 0}) out(static_cast<Eigen::Index>(row), col) = v;
        }
    }
    return out;
}

}  // namespace

bool AnalyzeResult::all_verdicts_pass() const {
    for (const auto& r : reports) {
        if (!r.analytic_available) continue;
        if (!r.verdict_leakage() || !r.verdict_retained()) return false;
        if (r.psd_applicable() && !r.verdict_psd()) return false;
    }
    return true;
}

AnalyzeResult run_analyze(const ExperimentConfig& config) {
    if (config.model->n_qubits() > config.dense_limit) {
        throw DimensionTooLarge(config.model->n_qubits(), config.dense_limit);
    }
    AnalysisContext ctx(*config.model, config.schedule, config.dense_limit);

    std::vector<double> deltas;
    for (double v : config.delta.values) {
        deltas.push_back(config.delta.percentile ? ctx.cache.total_cache().percentile_energy(v)
                                                 : v);
    }

    std::vector<GridPoint> grid;
    for (double s : config.s_grid) {
        for (double delta : deltas) {
            if (config.delta_prime.auto_policy) {
                grid.push_back({s, delta, std::nan("")});
            } else {
                for (double dp : config.delta_prime.values) grid.push_back({s, delta, dp});
            }
        }
    }

    AnalyzeResult result;
    result.reports.resize(grid.size());
    std::vector<std::string> failures(grid.size());
    const int workers = config.workers > 0 ? config.workers : par::max_workers();

#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            result.reports[i] = analyze_point(ctx, config, grid[i]);
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "grid point s=" << format_g(grid[i].s) << " delta=" << format_g(grid[i].delta)
                << ": " << e.what();
            failures[i] = msg.str();
        }
    }

    // Order-stable: drop failed rows, keep grid order.
    std::vector<BoundReport> kept;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (failures[i].empty()) {
            kept.push_back(std::move(result.reports[i]));
        } else {
            result.failures.push_back(failures[i]);
        }
    }
    result.reports = std::move(kept);

    result.groups_psd = ctx.summary.psd_checked && ctx.summary.groups_psd;
    result.delta_tilde_f_report = std::nan("");
    if (!result.groups_psd && !result.reports.empty()) {
        std::vector<double> finals;
        for (const auto& r : result.reports) {
            if (!std::isnan(r.delta_f)) finals.push_back(r.delta_f);
        }
        if (!finals.empty()) {
            std::sort(finals.begin(), finals.end());
            const double median = finals[finals.size() / 2];
            result.delta_tilde_f_report =
                delta_tilde_f(ctx.h, ctx.cache.total_cache(),
                              std::min(median, ctx.cache.total_cache().max_energy()),
                              config.dense_limit);
        }
    }
    return result;
}

LeakageResult run_leakage(const ExperimentConfig& config) {
    if (config.model->n_qubits() > config.dense_limit) {
        throw DimensionTooLarge(config.model->n_qubits(), config.dense_limit);
    }
    const PartitionedHamiltonian& h = *config.model;
    const ParamSummary summary = validate_partition(h, config.dense_limit);
    const PropagatorCache cache(h, config.dense_limit);
    const SpectralCache& total = cache.total_cache();
    const LeakageParams params = LeakageParams::for_k_local(summary);

    LeakageResult result;
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> qubit_pick(0, h.n_qubits() - 1);

    const std::vector<double> low_percentiles{10, 25, 50, 75, 90};
    const std::vector<double> gap_fractions{0.1, 0.3, 0.5, 0.7, 0.9};

    for (int sample = 0; sample < config.leakage_samples; ++sample) {
        // Random Hermitian block on a random set of k qubits.
        std::vector<int> qubits;
        while (static_cast<int>(qubits.size()) < summary.max_support) {
            const int q = qubit_pick(rng);
            if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) qubits.push_back(q);
        }
        std::sort(qubits.begin(), qubits.end());
        const Eigen::Index small = Eigen::Index{1} << qubits.size();
        Eigen::MatrixXcd g(small, small);
        for (Eigen::Index i = 0; i < small; ++i) {
            for (Eigen::Index j = 0; j < small; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
        }
        const Eigen::MatrixXcd block = 0.5 * (g + g.adjoint().eval());
        const Eigen::MatrixXcd a = embed_on_qubits(block, qubits, h.n_qubits());
        const double norm_a = spectral_norm(a);

        for (double lp : low_percentiles) {
            const double low = total.percentile_energy(lp);
            for (double frac : gap_fractions) {
                const double high = low + frac * (total.max_energy() - low);
                LeakageRow row;
                row.kind = "arad";
                row.sample = sample;
                row.cutoff_low = low;
                row.cutoff_high = high;
                row.norm_a = norm_a;
                row.measured = spectral_norm(
                    par::matmul(projector_gt(total, high),
                                par::matmul(a, projector_leq(total, low))));
                const ExpBound bound =
                    arad_leakage_bound(norm_a, params.radius, params.lambda, low, high);
                row.bound = bound.value;
                row.vacuous = bound.vacuous;
                if (!row.verdict()) ++result.violations;
                result.rows.push_back(row);
            }
        }
    }

    // Product-formula leakage against the closed-form bound.
    FormulaSchedule schedule = build_schedule(config.schedule, h.n_groups());
    if (schedule.declared_order() <= kMaxCoefficientOrder) {
        for (double s : config.s_grid) {
            const double r_w = formula_leakage_radius(schedule, h, s, summary);
            for (double dv : config.delta.values) {
                const double delta =
                    config.delta.percentile ? total.percentile_energy(dv) : dv;
                const double delta_prime =
                    config.delta_prime.auto_policy
                        ? delta + 2.0 * r_w +
                              std::log(1.0 / config.delta_prime.theta) / params.lambda
                        : config.delta_prime.values.front();
                LeakageRow row;
                row.kind = "formula";
                row.s = s;
                row.cutoff_low = delta;
                row.cutoff_high = delta_prime;
                row.measured = empirical_leakage(schedule, cache, s, delta, delta_prime);
                const ExpBound bound =
                    formula_leakage_bound(delta, delta_prime, params.lambda, r_w);
                row.bound = bound.value;
                row.vacuous = bound.vacuous;
                if (!row.verdict()) ++result.violations;
                result.rows.push_back(row);
            }
        }
    }
    return result;
}

std::string leakage_to_csv(const LeakageResult& result) {
    std::ostringstream out;
    out << "kind,sample,s,cutoff_low,cutoff_high,norm_a,measured,bound,vacuous,verdict\n";
    char buffer[64];
    auto fmt = [&buffer](double v) {
        std::snprintf(buffer, sizeof(buffer), "%.17g", v);
        return std::string(buffer);
    };
    for (const auto& row : result.rows) {
        out << row.kind << ',' << row.sample << ',' << fmt(row.s) << ',' << fmt(row.cutoff_low)
            << ',' << fmt(row.cutoff_high) << ',' << fmt(row.norm_a) << ',' << fmt(row.measured)
            << ',' << fmt(row.bound) << ',' << (row.vacuous ? "yes" : "no") << ','
            << (row.verdict() ? "pass" : "fail") << '\n';
    }
    return out.str();
}

std::string render_law(const ScalingLaw& law) {
    std::ostringstream out;
    bool first_term = true;
    for (const auto& term : law.terms) {
        if (!first_term) out << " + ";
        first_term = false;
        bool any = false;
        auto factor = [&](const char* symbol, const Rational& exp) {
            if (exp == Rational(0)) return;
            if (any) out << ' ';
            out << symbol << '^' << (exp.den() == 1 ? exp.str() : "{" + exp.str() + "}");
            any = true;
        };
        factor("T", term.t_exp);
        factor("N", term.n_exp);
        factor("Delta", term.delta_exp);
        factor("eps", term.eps_exp);
        if (!any) out << '1';
    }
    return out.str();
}

CostResult run_cost(const ExperimentConfig& config) {
    const PartitionedHamiltonian& h = *config.model;
    CostResult result;

    const FormulaSchedule schedule = build_schedule(config.schedule, h.n_groups());
    const int p = std::max(1, std::min(schedule.declared_order(), 8));

    const PropagatorCache cache(h, config.dense_limit);
    const SpectralCache& total = cache.total_cache();
    const double delta = config.delta.percentile
                             ? total.percentile_energy(config.delta.values.front())
                             : config.delta.values.front();
    result.delta_used = delta;
    // Evaluation point: Delta must be positive for fractional powers.
    const double delta_eval = delta > 0.0 ? delta : 1.0;

    auto emit = [&](CostMethod method, int order, std::vector<CostExponentRow>& sink) {
        const ScalingLaw law = method == CostMethod::general ? scaling_general(order)
                               : method == CostMethod::prior_low_energy
                                   ? scaling_prior_low_energy(order)
                                   : scaling_present(order);
        CostExponentRow row;
        row.method = method_name(method);
        row.order = order;
        row.law = render_law(law);
        row.n_exp = n_exponent(method, order);
        const LawValue value =
            evaluate_law(law, config.cost_total_time, static_cast<double>(h.n_qubits()),
                         delta_eval, config.cost_eps_target, config.cost_unit_constant);
        row.evaluated = value.value;
        row.dominant_term = value.dominant_term;
        sink.push_back(row);
    };

    for (CostMethod method :
         {CostMethod::general, CostMethod::prior_low_energy, CostMethod::present}) {
        emit(method, p, result.exponents);
        for (int order = 1; order <= 8; ++order) emit(method, order, result.figure_exponents);
    }

    // Empirical minimal Trotter numbers, restricted and full-space.
    auto search = [&](const std::string& label, double cutoff) {
        CostEmpiricalRow row;
        row.label = label;
        try {
            const TrotterSearchResult found = empirical_trotter_number(
                schedule, cache, cutoff, config.cost_total_time, config.cost_eps_target);
            row.steps = found.steps;
            row.achieved_error = found.achieved_error;
        } catch (const std::exception& e) {
            row.failure = e.what();
        }
        result.empirical.push_back(row);
    };
    search("restricted", delta);
    search("full-space", total.max_energy());
    return result;
}

std::string cost_to_csv(const CostResult& result) {
    std::ostringstream out;
    out << "section,method,p,n_exponent,law,evaluated,dominant_term\n";
    auto rows = [&](const std::string& section, const std::vector<CostExponentRow>& list) {
        for (const auto& row : list) {
            out << section << ',' << row.method << ',' << row.order << ',' << row.n_exp.str()
                << ',' << row.law << ',' << row.evaluated << ',' << row.dominant_term << '\n';
        }
    };
    rows("table", result.exponents);
    rows("figure", result.figure_exponents);
    for (const auto& row : result.empirical) {
        out << "empirical," << row.label << ",,,," << row.steps << ','
            << (row.failure.empty() ? format_g(row.achieved_error) : row.failure) << '\n';
    }
    return out.str();
}

std::vector<CompareRow> run_compare(const std::vector<int>& orders) {
    std::vector<CompareRow> rows;
    for (int p : orders) {
        CompareRow row;
        row.order = p;
        row.general = render_law(scaling_general(p));
        row.prior = render_law(scaling_prior_low_energy(p));
        row.present = render_law(scaling_present(p));
        row.general_n = n_exponent(CostMethod::general, p);
        row.prior_n = n_exponent(CostMethod::prior_low_energy, p);
        row.present_n = n_exponent(CostMethod::present, p);
        rows.push_back(row);
    }
    return rows;
}

std::string compare_to_csv(const std::vector<CompareRow>& rows) {
    std::ostringstream out;
    out << "p,general,prior,present,general_n_exp,prior_n_exp,present_n_exp\n";
    for (const auto& row : rows) {
        out << row.order << ',' << row.general << ',' << row.prior << ',' << row.present << ','
            << row.general_n.str() << ',' << row.prior_n.str() << ',' << row.present_n.str()
            << '\n';
    }
    return out.str();
}

}  // namespace lowtrot
