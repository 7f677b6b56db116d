#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lowtrot/commutators.hpp"
#include "lowtrot/models.hpp"
#include "oracles.hpp"

using lowtrot::NestedSpec;
using lowtrot::OperatorSum;
using lowtrot::PartitionedHamiltonian;

namespace {

// Iterated dense commutator [H_{i0}, [H_{i1}, ... H_{base}]] via the oracle.
Eigen::MatrixXcd dense_nested(const PartitionedHamiltonian& h, const NestedSpec& spec) {
    Eigen::MatrixXcd current = oracles::dense_terms(h.group(spec.base()).terms(), h.n_qubits());
    for (int level = static_cast<int>(spec.indices.size()) - 2; level >= 0; --level) {
        const Eigen::MatrixXcd outer =
            oracles::dense_terms(h.group(spec.indices[level]).terms(), h.n_qubits());
        current = oracles::commutator(outer, current);
    }
    return current;
}

void enumerate_specs(int n_groups, int order, std::vector<NestedSpec>& out) {
    std::vector<int> indices(order + 1, 0);
    while (true) {
        out.push_back(NestedSpec{indices});
        int pos = order;
        while (pos >= 0 && ++indices[pos] == n_groups) {
            indices[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

}  // namespace

TEST_CASE("self and commuting expansions vanish") {
    const auto h = lowtrot::tfim_chain(4, 1.0, 1.0, lowtrot::Boundary::open);
    CHECK(lowtrot::expand_nested(h, NestedSpec{{0, 0}}).empty());
    CHECK(lowtrot::expand_nested(h, NestedSpec{{1, 1}}).empty());

    const auto commuting = oracles::commuting_model(3);
    CHECK(lowtrot::expand_nested(commuting, NestedSpec{{0, 1}}).empty());
    CHECK(lowtrot::expand_nested(commuting, NestedSpec{{1, 0, 1}}).empty());
}

TEST_CASE("expansion matches the dense commutator") {
    const auto h = lowtrot::tfim_chain(4, 1.0, 1.0, lowtrot::Boundary::open);
    const OperatorSum sum = lowtrot::expand_nested(h, NestedSpec{{1, 0}});
    CHECK(!sum.empty());
    CHECK((lowtrot::dense_matrix(sum, 4) - dense_nested(h, NestedSpec{{1, 0}}))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
}

TEST_CASE("dense equivalence and counting bounds for all specs up to order 3") {
    const std::vector<PartitionedHamiltonian> models{
        lowtrot::tfim_chain(4, 1.0, 1.0, lowtrot::Boundary::open),
        lowtrot::heisenberg_chain(6, 1.0, lowtrot::Boundary::open),
        lowtrot::heisenberg_chain(6, 1.0, lowtrot::Boundary::open, true)};
    for (const auto& h : models) {
        const auto params = lowtrot::validate_partition(h);
        for (int order = 0; order <= 3; ++order) {
            std::vector<NestedSpec> specs;
            enumerate_specs(h.n_groups(), order, specs);
            for (const auto& spec : specs) {
                const OperatorSum sum = lowtrot::expand_nested(h, spec);
                const auto audit = lowtrot::expand_nested_audit(h, spec);
                const auto bounds =
                    lowtrot::count_bounds(order, params.max_group_terms, params.max_support,
                                          params.max_degree, params.strength);
                // The envelopes hold for the raw expansion entries; the
                // canonical form can only have fewer terms, and its words
                // keep the same supports.
                REQUIRE(audit.term_count <= bounds.max_terms);
                REQUIRE(audit.max_support <= bounds.max_support);
                REQUIRE(audit.max_strength <= bounds.max_strength + 1e-12);
                REQUIRE(sum.size() <= audit.term_count);
                REQUIRE(sum.max_support() <= bounds.max_support);
                REQUIRE((lowtrot::dense_matrix(sum, h.n_qubits()) - dense_nested(h, spec))
                            .cwiseAbs()
                            .maxCoeff() < 1e-10);
            }
        }
    }
}

TEST_CASE("expansion order cap") {
    const auto h = lowtrot::tfim_chain(4, 1.0, 1.0, lowtrot::Boundary::open);
    CHECK_THROWS_AS(lowtrot::expand_nested(h, NestedSpec{{0, 1, 0, 1, 0, 1}}),
                    lowtrot::OrderTooLarge);
}

TEST_CASE("count bound table rows") {
    // order 0: (L, k, J)
    auto row0 = lowtrot::count_bounds(0, 7, 2, 3, 1.5);
    CHECK(row0.max_terms == doctest::Approx(7.0));
    CHECK(row0.max_support == 2);
    CHECK(row0.max_strength == doctest::Approx(1.5));
    // order 1: (L k d, 2k, J^2)
    auto row1 = lowtrot::count_bounds(1, 7, 2, 3, 1.5);
    CHECK(row1.max_terms == doctest::Approx(7.0 * 2 * 3));
    CHECK(row1.max_support == 4);
    CHECK(row1.max_strength == doctest::Approx(2.25));
    // order 3: (L kd * 2kd * 3kd = 6 L (kd)^3, 4k, J^4)
    auto row3 = lowtrot::count_bounds(3, 7, 2, 3, 1.5);
    CHECK(row3.max_terms == doctest::Approx(6.0 * 7.0 * std::pow(6.0, 3)));
    CHECK(row3.max_support == 8);
    CHECK(row3.max_strength == doctest::Approx(std::pow(1.5, 4)));
}

TEST_CASE("stage coefficients for lie-trotter") {
    const auto f = lowtrot::lie_trotter(2);
    const auto table = lowtrot::expand_F_coefficients(f, 1);
    const auto& entries = table.stage_entries(1);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].base == 0);
    CHECK(entries[0].chain == std::vector<int>{1});
    CHECK(entries[0].value == doctest::Approx(1.0));  // a_1 a_2 = 1

    // Aggregated over groups: f_{(1),0} = 1.
    const auto& groups = table.group_entries(1);
    REQUIRE(groups.size() == 1);
    CHECK(groups.begin()->first == std::vector<int>{1, 0});
    CHECK(groups.begin()->second == doctest::Approx(1.0));
}

TEST_CASE("repeated stage indices carry factorial weights") {
    // Order 2 with chain (nu1, nu1) must carry a_nu a_nu1^2 / 2.
    const auto f = lowtrot::strang(2);  // stages (0, 1/2), (1, 1), (0, 1/2)
    const auto table = lowtrot::expand_F_coefficients(f, 2);
    bool found = false;
    for (const auto& e : table.stage_entries(2)) {
        if (e.base == 0 && e.chain == std::vector<int>{1, 1}) {
            CHECK(e.value == doctest::Approx(0.5 * 0.5 * 1.0 * 1.0));  // 1/2 a0 a1^2
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("strang order-1 aggregated sum vanishes") {
    const auto f = lowtrot::strang(2);
    const auto h = lowtrot::tfim_chain(4, 1.0, 1.0, lowtrot::Boundary::open);
    const OperatorSum sum = lowtrot::aggregated_commutator_sum(f, h, 1);
    CHECK(sum.max_coeff_magnitude() < 1e-12);
    CHECK(lowtrot::dense_matrix(sum, 4).cwiseAbs().maxCoeff() < 1e-12);

    // Lie-Trotter's does not vanish.
    const OperatorSum lt = lowtrot::aggregated_commutator_sum(lowtrot::lie_trotter(2), h, 1);
    CHECK(lowtrot::dense_matrix(lt, 4).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("suzuki-4 aggregated sums vanish through order 3") {
    const auto f = lowtrot::suzuki(4, 2);
    const auto h = lowtrot::tfim_chain(4, 1.0, 1.0, lowtrot::Boundary::open);
    for (int order = 1; order <= 3; ++order) {
        const OperatorSum sum = lowtrot::aggregated_commutator_sum(f, h, order);
        CHECK(lowtrot::dense_matrix(sum, 4).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("coefficient order cap") {
    CHECK_THROWS_AS(lowtrot::expand_F_coefficients(lowtrot::strang(2), 4),
                    lowtrot::OrderTooLarge);
}

TEST_CASE("bound sums") {
    const auto commuting = oracles::commuting_model(3);
    CHECK(lowtrot::commutator_bound_sum(lowtrot::lie_trotter(2), commuting, 1) == 0.0);

    const lowtrot::PartitionedHamiltonian single(
        2, {lowtrot::TermGroup({{lowtrot::PauliString::parse(2, "X0 X1"), 1.0}})});
    CHECK(lowtrot::commutator_bound_sum(lowtrot::lie_trotter(1), single, 1) == 0.0);

    // First-order dominance: (s^2/2) * sum exceeds the measured error.
    const auto h = lowtrot::tfim_chain(4, 1.0, 1.0, lowtrot::Boundary::open);
    const auto f = lowtrot::lie_trotter(2);
    const double sum = lowtrot::commutator_bound_sum(f, h, 1);
    CHECK(sum > 0.0);
    const lowtrot::PropagatorCache cache(h);
    for (double s : {1e-3, 3e-3, 1e-2}) {
        const double measured = lowtrot::product_formula_error(f, cache, s);
        const double bound = s * s / 2.0 * sum;
        REQUIRE(measured <= bound * 1.1);
    }
}

TEST_CASE("restricted bound sums") {
    const auto h = lowtrot::heisenberg_chain(6, 1.0, lowtrot::Boundary::open);
    const auto f = lowtrot::strang(2);
    const auto cache = lowtrot::eigendecompose(lowtrot::dense_matrix(h));

    const double unrestricted = lowtrot::commutator_bound_sum(f, h, 2);

    // Above the top of the spectrum the restriction is idle.
    CHECK(lowtrot::restricted_commutator_bound_sum(f, h, 2, cache, cache.max_energy() + 1.0) ==
          doctest::Approx(unrestricted).epsilon(1e-10));

    // Below the ground state everything vanishes.
    CHECK(lowtrot::restricted_commutator_bound_sum(f, h, 2, cache, cache.min_energy() - 1.0) ==
          0.0);

    // Strictly smaller in the mid-spectrum, and monotone in the cutoff.
    const double p30 = cache.percentile_energy(30);
    const double mid = lowtrot::restricted_commutator_bound_sum(f, h, 2, cache, p30);
    CHECK(mid > 0.0);
    CHECK(mid < unrestricted);
    double previous = 0.0;
    for (double pct : {10.0, 30.0, 50.0, 70.0, 90.0, 100.0}) {
        const double value = lowtrot::restricted_commutator_bound_sum(
            f, h, 2, cache, cache.percentile_energy(pct));
        REQUIRE(value >= previous - 1e-12);
        previous = value;
    }

    // Declared-order mismatch is rejected.
    CHECK_THROWS(lowtrot::commutator_bound_sum(lowtrot::lie_trotter(2), h, 2));
}

TEST_CASE("surviving f-sum drops vanishing commutators") {
    const auto commuting = oracles::commuting_model(3);
    CHECK(lowtrot::abs_f_sum_surviving(lowtrot::lie_trotter(2), commuting, 1) == 0.0);

    const auto h = lowtrot::tfim_chain(4, 1.0, 1.0, lowtrot::Boundary::open);
    CHECK(lowtrot::abs_f_sum_surviving(lowtrot::lie_trotter(2), h, 1) == doctest::Approx(1.0));
    // Strang at its own order keeps the three surviving tuples.
    const double strang_sum = lowtrot::abs_f_sum_surviving(lowtrot::strang(2), h, 2);
    CHECK(strang_sum == doctest::Approx(0.25 + 0.25 + 0.125));
}
