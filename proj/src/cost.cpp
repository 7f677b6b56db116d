#include "lowtrot/cost.hpp"

#include <cmath>
#include <functional>
#include <numeric>

namespace lowtrot {

Rational::Rational(long long numerator, long long denominator)
    : num_(numerator), den_(denominator) {
    if (den_ == 0) throw Error("rational with zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(Rational a, Rational b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator-(Rational a, Rational b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator*(Rational a, Rational b) { return Rational(a.num_ * b.num_, a.den_ * b.den_); }
Rational operator/(Rational a, Rational b) {
    if (b.num_ == 0) throw Error("rational division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}
bool operator<(Rational a, Rational b) { return a.num_ * b.den_ < b.num_ * a.den_; }

std::string method_name(CostMethod method) {
    switch (method) {
        case CostMethod::general: return "general";
        case CostMethod::prior_low_energy: return "prior-low-energy";
        case CostMethod::present: return "present";
    }
    throw Error("unknown cost method");
}

namespace {

void check_order(int order) {
    if (order < 1) throw Error("cost laws need order >= 1");
}

}  // namespace

ScalingLaw scaling_general(int order) {
    check_order(order);
    const Rational p(order);
    ScalingLaw law{CostMethod::general, order, {}, false};
    law.terms.push_back({Rational(1) + Rational(1) / p, Rational(1) / p, Rational(0),
                         Rational(0) - Rational(1) / p});
    return law;
}

ScalingLaw scaling_prior_low_energy(int order) {
    check_order(order);
    const Rational p(order);
    ScalingLaw law{CostMethod::prior_low_energy, order, {}, true};
    law.terms.push_back({Rational(1) + Rational(1) / p, Rational(0), Rational(1) + Rational(1) / p,
                         Rational(0) - Rational(1) / p});
    const Rational den(2 * order + 1);
    law.terms.push_back({Rational(2 * order + 2) / den, Rational(order + 1) / den, Rational(0),
                         Rational(0) - Rational(1) / den});
    return law;
}

ScalingLaw scaling_present(int order) {
    check_order(order);
    const Rational p(order);
    ScalingLaw law{CostMethod::present, order, {}, true};
    law.terms.push_back({Rational(1) + Rational(1) / p, Rational(0), Rational(1) + Rational(1) / p,
                         Rational(0) - Rational(1) / p});
    const Rational den((order + 1) * (order + 1) + order);
    law.terms.push_back({Rational(1) + Rational(1) / den, Rational(order + 1) / den, Rational(0),
                         Rational(0) - Rational(1) / den});
    return law;
}

Rational n_exponent(CostMethod method, int order) {
    check_order(order);
    switch (method) {
        case CostMethod::general: return Rational(1, order);
        case CostMethod::prior_low_energy:
            return Rational(1, 2) + Rational(1, 4 * order + 2);
        case CostMethod::present: {
            const Rational direct(order + 1, (order + 1) * (order + 1) + order);
            // 1 / (p + 1 + p/(p+1)) must reduce to the same rational.
            const Rational p(order);
            const Rational alt = Rational(1) / (p + Rational(1) + p / (p + Rational(1)));
            if (!(direct == alt)) throw Error("present-method exponent forms disagree");
            return direct;
        }
    }
    throw Error("unknown cost method");
}

LawValue evaluate_law(const ScalingLaw& law, double t, double n, double delta, double eps,
                      double unit_constant) {
    if (t <= 0.0 || n <= 0.0 || delta <= 0.0 || eps <= 0.0) {
        throw Error("cost evaluation needs positive T, N, Delta and eps");
    }
    if (eps >= 1.0) throw Error("cost evaluation needs eps < 1");
    LawValue out{0.0, 0, {}};
    for (const auto& term : law.terms) {
        const double v = unit_constant * std::pow(t, term.t_exp.value()) *
                         std::pow(n, term.n_exp.value()) *
                         std::pow(delta, term.delta_exp.value()) *
                         std::pow(eps, term.eps_exp.value());
        out.term_values.push_back(v);
        out.value += v;
    }
    for (std::size_t i = 1; i < out.term_values.size(); ++i) {
        if (out.term_values[i] > out.term_values[out.dominant_term]) {
            out.dominant_term = static_cast<int>(i);
        }
    }
    return out;
}

TrotterSearchResult empirical_trotter_number(const FormulaSchedule& schedule,
                                             const PropagatorCache& cache, double delta,
                                             double total_time, double eps_target,
                                             long long cap) {
    if (total_time <= 0.0) throw Error("Trotter search needs a positive evolution time");
    if (eps_target <= 0.0 || eps_target >= 1.0) {
        throw Error("Trotter search needs a target error in (0, 1)");
    }

    auto accumulated = [&](long long r) {
        return static_cast<double>(r) *
               empirical_low_energy_error(schedule, cache, total_time / static_cast<double>(r),
                                          delta);
    };

    long long hi = 1;
    double g_hi = accumulated(hi);
    if (g_hi <= eps_target) return {1, g_hi};

    long long lo = 1;
    double g_lo = g_hi;
    while (g_hi > eps_target) {
        if (hi > cap / 2) throw RNotFoundWithinBudget(cap);
        lo = hi;
        g_lo = g_hi;
        hi *= 2;
        g_hi = accumulated(hi);
    }

    // The accumulated error r * eps(T/r) must fall along the final bracket;
    // pre-asymptotic oscillation would invalidate the bisection.
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        const double g_mid = accumulated(mid);
        const double slack = 1e-12 * std::max(1.0, g_lo);
        if (g_mid > g_lo + slack || g_mid + slack < g_hi) {
            throw NonMonotoneBracket("accumulated error leaves the bracket range");
        }
        if (g_mid <= eps_target) {
            hi = mid;
            g_hi = g_mid;
        } else {
            lo = mid;
            g_lo = g_mid;
        }
    }
    // Local certificate: hi reaches the target, hi-1 does not.
    return {hi, g_hi};
}

}  // namespace lowtrot
