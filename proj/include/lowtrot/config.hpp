#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lowtrot/formulas.hpp"
#include "lowtrot/models.hpp"
#include "lowtrot/pauli.hpp"

namespace lowtrot {

struct ScheduleSpec {
    std::string name = "strang";  // lie_trotter | strang | suzuki | custom
    int order = 2;                // suzuki order, or declared order for custom
    std::vector<Stage> stages;    // custom only
};

FormulaSchedule build_schedule(const ScheduleSpec& spec, int n_groups);

struct DeltaSpec {
    bool percentile = true;
    std::vector<double> values{25.0, 50.0};
};

struct DeltaPrimeSpec {
    bool auto_policy = true;
    double theta = 1e-3;          // leakage target for the auto policy
    std::vector<double> values;   // explicit cutoffs otherwise
};

struct ExperimentConfig {
    std::shared_ptr<PartitionedHamiltonian> model;
    ScheduleSpec schedule;
    std::vector<double> s_grid;
    DeltaSpec delta;
    DeltaPrimeSpec delta_prime;
    double chain_slack = 0.25;     // leakage share target for auto chains
    double cost_total_time = 1.0;
    double cost_eps_target = 1e-6;
    double cost_unit_constant = 1.0;
    int leakage_samples = 50;      // random operators in the generic sweep
    int dense_limit = kDenseQubitLimit;
    unsigned long long seed = 0;
    int workers = 0;               // 0: library default
    std::string output_path;
    std::string output_format = "csv";
};

// Parses and fully validates a config; defaults are filled and unknown keys
// rejected by name.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_json_string(const std::string& text);

// The config keys understood by load_config, for --help output.
std::string config_key_reference();

}  // namespace lowtrot
