#pragma once

#include <string>
#include <vector>

#include "lowtrot/bounds.hpp"
#include "lowtrot/formulas.hpp"

namespace lowtrot {

// Exact rational arithmetic for the cost exponents; the table cells must
// reproduce bit-for-bit, not to a tolerance.
class Rational {
  public:
    Rational() = default;
    Rational(long long numerator, long long denominator = 1);

    long long num() const { return num_; }
    long long den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    friend Rational operator+(Rational a, Rational b);
    friend Rational operator-(Rational a, Rational b);
    friend Rational operator*(Rational a, Rational b);
    friend Rational operator/(Rational a, Rational b);
    friend bool operator==(Rational a, Rational b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator<(Rational a, Rational b);
    friend bool operator<=(Rational a, Rational b) { return a < b || a == b; }

  private:
    long long num_ = 0;
    long long den_ = 1;
};

enum class CostMethod { general, prior_low_energy, present };

std::string method_name(CostMethod method);

// One product T^a N^b Delta^c eps^d of a cost law.
struct CostMonomial {
    Rational t_exp;
    Rational n_exp;
    Rational delta_exp;
    Rational eps_exp;
};

struct ScalingLaw {
    CostMethod method;
    int order = 1;
    std::vector<CostMonomial> terms;
    bool polylog_suppressed = false;  // correctness up to polylog factors
};

ScalingLaw scaling_general(int order);
ScalingLaw scaling_prior_low_energy(int order);
ScalingLaw scaling_present(int order);

// System-size exponent of each method's N-carrying term.  The present form
// is computed both as (p+1)/((p+1)^2+p) and as 1/(p+1+p/(p+1)) and the two
// must agree exactly.
Rational n_exponent(CostMethod method, int order);

struct LawValue {
    double value;
    int dominant_term;
    std::vector<double> term_values;
};

// Evaluates a law with an explicit unit constant; the laws carry no hidden
// constants of their own.
LawValue evaluate_law(const ScalingLaw& law, double t, double n, double delta, double eps,
                      double unit_constant);

struct TrotterSearchResult {
    long long steps;
    double achieved_error;  // steps * single-step error at T / steps
};

inline constexpr long long kTrotterSearchCap = 1LL << 20;

// Smallest r with r * eps_delta(T/r) <= eps_target, by geometric doubling
// and bisection on the decreasing tail.  The returned r is certified
// locally: r satisfies the target and r-1 does not.
TrotterSearchResult empirical_trotter_number(const FormulaSchedule& schedule,
                                             const PropagatorCache& cache, double delta,
                                             double total_time, double eps_target,
                                             long long cap = kTrotterSearchCap);

}  // namespace lowtrot
