#include "lowtrot/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace lowtrot {

namespace {

using nlohmann::json;

void reject_unknown(const json& object, const std::string& where,
                    const std::set<std::string>& known) {
    for (const auto& [key, value] : object.items()) {
        if (!known.contains(key)) {
            throw ValidationError("unknown key '" + key + "' in " + where);
        }
    }
}

double require_number(const json& object, const std::string& where, const std::string& key) {
    if (!object.contains(key) || !object[key].is_number()) {
        throw ValidationError(where + " needs a numeric '" + key + "'");
    }
    return object[key].get<double>();
}

std::shared_ptr<PartitionedHamiltonian> parse_model(const json& model) {
    if (!model.is_object()) throw ValidationError("'model' must be an object");
    if (model.contains("generator")) {
        const std::string gen = model["generator"].get<std::string>();
        if (gen == "tfim_chain") {
            reject_unknown(model, "model",
                           {"generator", "n_qubits", "j_zz", "h_x", "boundary"});
            const int n = static_cast<int>(require_number(model, "model", "n_qubits"));
            const double j_zz = model.value("j_zz", 1.0);
            const double h_x = model.value("h_x", 1.0);
            const Boundary b = boundary_from_string(model.value("boundary", "open"));
            return std::make_shared<PartitionedHamiltonian>(tfim_chain(n, j_zz, h_x, b));
        }
        if (gen == "heisenberg_chain") {
            reject_unknown(model, "model",
                           {"generator", "n_qubits", "j", "boundary", "shift_psd"});
            const int n = static_cast<int>(require_number(model, "model", "n_qubits"));
            const double j = model.value("j", 1.0);
            const Boundary b = boundary_from_string(model.value("boundary", "open"));
            const bool shift = model.value("shift_psd", false);
            return std::make_shared<PartitionedHamiltonian>(heisenberg_chain(n, j, b, shift));
        }
        throw ValidationError("unknown model generator '" + gen + "'");
    }
    if (model.contains("file")) {
        reject_unknown(model, "model", {"file"});
        return std::make_shared<PartitionedHamiltonian>(
            model_from_json_file(model["file"].get<std::string>()));
    }
    if (model.contains("inline")) {
        reject_unknown(model, "model", {"inline"});
        return std::make_shared<PartitionedHamiltonian>(
            model_from_json_string(model["inline"].dump()));
    }
    throw ValidationError("'model' needs a 'generator', 'file' or 'inline' entry");
}

ScheduleSpec parse_schedule(const json& schedule) {
    if (!schedule.is_object()) throw ValidationError("'schedule' must be an object");
    reject_unknown(schedule, "schedule", {"name", "order", "stages"});
    ScheduleSpec spec;
    spec.name = schedule.value("name", "strang");
    if (spec.name != "lie_trotter" && spec.name != "strang" && spec.name != "suzuki" &&
        spec.name != "custom") {
        throw ValidationError("unknown schedule name '" + spec.name + "'");
    }
    spec.order = schedule.value("order", spec.name == "lie_trotter" ? 1 : 2);
    if (schedule.contains("stages")) {
        if (spec.name != "custom") {
            throw ValidationError("explicit 'stages' require schedule name 'custom'");
        }
        for (const auto& entry : schedule["stages"]) {
            if (!entry.is_array() || entry.size() != 2) {
                throw ValidationError("each stage must be a [group, coefficient] pair");
            }
            spec.stages.push_back({entry[0].get<int>(), entry[1].get<double>()});
        }
    } else if (spec.name == "custom") {
        throw ValidationError("a custom schedule needs explicit 'stages'");
    }
    return spec;
}

std::vector<double> parse_s_grid(const json& grid) {
    std::vector<double> out;
    if (grid.is_array()) {
        for (const auto& v : grid) out.push_back(v.get<double>());
    } else if (grid.is_object()) {
        reject_unknown(grid, "s_grid", {"min", "max", "points"});
        const double lo = require_number(grid, "s_grid", "min");
        const double hi = require_number(grid, "s_grid", "max");
        const int points = static_cast<int>(grid.value("points", 8));
        if (lo <= 0.0 || hi <= lo || points < 2) {
            throw ValidationError("'s_grid' needs 0 < min < max and points >= 2");
        }
        for (int i = 0; i < points; ++i) {
            out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
        }
    } else {
        throw ValidationError("'s_grid' must be an array or a {min,max,points} object");
    }
    if (out.empty()) throw ValidationError("'s_grid' is empty");
    for (double s : out) {
        if (s <= 0.0) throw ValidationError("'s_grid' values must be positive");
    }
    return out;
}

DeltaSpec parse_delta(const json& delta) {
    DeltaSpec spec;
    if (!delta.is_object()) throw ValidationError("'delta' must be an object");
    reject_unknown(delta, "delta", {"percentiles", "values"});
    if (delta.contains("percentiles") == delta.contains("values")) {
        throw ValidationError("'delta' needs exactly one of 'percentiles' or 'values'");
    }
    if (delta.contains("percentiles")) {
        spec.percentile = true;
        spec.values.clear();
        for (const auto& v : delta["percentiles"]) {
            const double p = v.get<double>();
            if (p < 0.0 || p > 100.0) {
                throw ValidationError("'delta.percentiles' must lie in [0, 100]");
            }
            spec.values.push_back(p);
        }
    } else {
        spec.percentile = false;
        spec.values.clear();
        for (const auto& v : delta["values"]) spec.values.push_back(v.get<double>());
    }
    if (spec.values.empty()) throw ValidationError("'delta' grid is empty");
    return spec;
}

DeltaPrimeSpec parse_delta_prime(const json& dp) {
    DeltaPrimeSpec spec;
    if (!dp.is_object()) throw ValidationError("'delta_prime' must be an object");
    reject_unknown(dp, "delta_prime", {"policy", "theta", "values"});
    const std::string policy = dp.value("policy", "auto");
    if (policy == "auto") {
        spec.auto_policy = true;
        spec.theta = dp.value("theta", 1e-3);
        if (spec.theta <= 0.0 || spec.theta > 1.0) {
            throw ValidationError("'delta_prime.theta' must lie in (0, 1]");
        }
    } else if (policy == "explicit") {
        spec.auto_policy = false;
        if (!dp.contains("values")) {
            throw ValidationError("explicit 'delta_prime' needs 'values'");
        }
        for (const auto& v : dp["values"]) spec.values.push_back(v.get<double>());
        if (spec.values.empty()) throw ValidationError("'delta_prime.values' is empty");
    } else {
        throw ValidationError("'delta_prime.policy' must be 'auto' or 'explicit'");
    }
    return spec;
}

}  // namespace

FormulaSchedule build_schedule(const ScheduleSpec& spec, int n_groups) {
    if (spec.name == "lie_trotter") return lie_trotter(n_groups);
    if (spec.name == "strang") return strang(n_groups);
    if (spec.name == "suzuki") return suzuki(spec.order, n_groups);
    return FormulaSchedule(spec.stages, n_groups, spec.order, "custom");
}

ExperimentConfig config_from_json_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config JSON: ") + e.what());
    }
    reject_unknown(doc, "config",
                   {"model", "schedule", "s_grid", "delta", "delta_prime", "chain_slack",
                    "cost", "leakage_samples", "dense_limit", "seed", "workers", "output"});
    if (!doc.contains("model")) throw ValidationError("config needs a 'model'");

    ExperimentConfig config;
    config.model = parse_model(doc["model"]);
    if (doc.contains("schedule")) config.schedule = parse_schedule(doc["schedule"]);
    if (doc.contains("s_grid")) {
        config.s_grid = parse_s_grid(doc["s_grid"]);
    } else {
        config.s_grid = parse_s_grid(json{{"min", 1e-3}, {"max", 1e-1}, {"points", 8}});
    }
    if (doc.contains("delta")) config.delta = parse_delta(doc["delta"]);
    if (doc.contains("delta_prime")) config.delta_prime = parse_delta_prime(doc["delta_prime"]);
    if (doc.contains("chain_slack")) {
        config.chain_slack = doc["chain_slack"].get<double>();
        if (config.chain_slack <= 0.0 || config.chain_slack >= 1.0) {
            throw ValidationError("'chain_slack' must lie in (0, 1)");
        }
    }
    if (doc.contains("cost")) {
        const json& cost = doc["cost"];
        reject_unknown(cost, "cost", {"total_time", "eps_target", "unit_constant"});
        config.cost_total_time = cost.value("total_time", 1.0);
        config.cost_eps_target = cost.value("eps_target", 1e-6);
        config.cost_unit_constant = cost.value("unit_constant", 1.0);
        if (config.cost_total_time <= 0.0) {
            throw ValidationError("'cost.total_time' must be positive");
        }
        if (config.cost_eps_target <= 0.0 || config.cost_eps_target >= 1.0) {
            throw ValidationError("'cost.eps_target' must lie in (0, 1)");
        }
    }
    if (doc.contains("leakage_samples")) {
        config.leakage_samples = doc["leakage_samples"].get<int>();
        if (config.leakage_samples < 1) {
            throw ValidationError("'leakage_samples' must be positive");
        }
    }
    if (doc.contains("dense_limit")) {
        config.dense_limit = doc["dense_limit"].get<int>();
        if (config.dense_limit < 1) throw ValidationError("'dense_limit' must be positive");
    }
    if (doc.contains("seed")) config.seed = doc["seed"].get<unsigned long long>();
    if (doc.contains("workers")) config.workers = doc["workers"].get<int>();
    if (doc.contains("output")) {
        const json& output = doc["output"];
        reject_unknown(output, "output", {"path", "format"});
        config.output_path = output.value("path", "");
        config.output_format = output.value("format", "csv");
        if (config.output_format != "csv" && config.output_format != "json") {
            throw ValidationError("'output.format' must be 'csv' or 'json'");
        }
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json_string(buffer.str());
}

std::string config_key_reference() {
    return "Config keys:\n"
           "  model                {generator: tfim_chain|heisenberg_chain, n_qubits, j_zz,\n"
           "                        h_x, j, boundary: open|periodic, shift_psd} |\n"
           "                       {file: path} | {inline: {n_qubits, groups}}\n"
           "  schedule             {name: lie_trotter|strang|suzuki|custom, order,\n"
           "                        stages: [[group, coeff], ...]}\n"
           "  s_grid               [values...] | {min, max, points} (log-spaced;\n"
           "                        default 8 points in [1e-3, 1e-1])\n"
           "  delta                {percentiles: [...]} | {values: [...]}\n"
           "                        (default percentiles [25, 50])\n"
           "  delta_prime          {policy: auto, theta} | {policy: explicit, values}\n"
           "                        (default auto, theta 1e-3)\n"
           "  chain_slack          leakage share target for auto cutoff chains (0.25)\n"
           "  cost                 {total_time, eps_target, unit_constant}\n"
           "  leakage_samples      random operators in the generic leakage sweep (50)\n"
           "  dense_limit          largest qubit count for dense operations (12)\n"
           "  seed                 seed for randomized checks\n"
           "  workers              grid parallelism cap (0: LOWTROT_WORKERS or OpenMP)\n"
           "  output               {path, format: csv|json}\n";
}

}  // namespace lowtrot
