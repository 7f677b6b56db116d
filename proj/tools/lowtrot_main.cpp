#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lowtrot/config.hpp"
#include "lowtrot/errors.hpp"
#include "lowtrot/report.hpp"
#include "lowtrot/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdictFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string format;
    int workers = 0;
};

lowtrot::ExperimentConfig load_with_overrides(const CommonArgs& args) {
    lowtrot::ExperimentConfig config = lowtrot::load_config(args.config_path);
    if (!args.out_path.empty()) config.output_path = args.out_path;
    if (!args.format.empty()) config.output_format = args.format;
    if (args.workers > 0) config.workers = args.workers;
    return config;
}

void write_or_print(const std::string& path, const std::string& contents) {
    if (path.empty()) {
        std::cout << contents;
    } else {
        lowtrot::write_file(path, contents);
        std::cout << "wrote " << path << "\n";
    }
}

int cmd_analyze(const CommonArgs& args) {
    const lowtrot::ExperimentConfig config = load_with_overrides(args);
    const lowtrot::AnalyzeResult result = lowtrot::run_analyze(config);

    const std::string rendered = config.output_format == "json"
                                     ? lowtrot::reports_to_json(result.reports)
                                     : lowtrot::reports_to_csv(result.reports);
    write_or_print(config.output_path, rendered);

    int failing_verdicts = 0;
    for (const auto& r : result.reports) {
        if (!r.analytic_available) continue;
        if (!r.verdict_leakage() || !r.verdict_retained()) ++failing_verdicts;
        else if (r.psd_applicable() && !r.verdict_psd()) ++failing_verdicts;
    }
    std::cerr << result.reports.size() << " grid points, " << failing_verdicts
              << " failing verdicts, " << result.failures.size() << " failures\n";
    if (!result.groups_psd && !std::isnan(result.delta_tilde_f_report)) {
        std::cerr << "groups not positive semidefinite: no step bound; optimal-shift "
                  << "restricted norm at the median final cutoff = "
                  << result.delta_tilde_f_report << "\n";
    }
    for (const auto& f : result.failures) std::cerr << "  failed: " << f << "\n";

    if (!result.failures.empty()) return kExitRuntime;
    return failing_verdicts == 0 ? kExitOk : kExitVerdictFail;
}

int cmd_leakage(const CommonArgs& args) {
    const lowtrot::ExperimentConfig config = load_with_overrides(args);
    const lowtrot::LeakageResult result = lowtrot::run_leakage(config);
    write_or_print(config.output_path, lowtrot::leakage_to_csv(result));
    std::cerr << result.rows.size() << " rows, " << result.violations << " violations\n";
    return result.violations == 0 ? kExitOk : kExitVerdictFail;
}

int cmd_cost(const CommonArgs& args) {
    const lowtrot::ExperimentConfig config = load_with_overrides(args);
    const lowtrot::CostResult result = lowtrot::run_cost(config);
    write_or_print(config.output_path, lowtrot::cost_to_csv(result));
    return kExitOk;
}

int cmd_compare(const std::string& orders_arg, const std::string& out_path) {
    std::vector<int> orders;
    std::stringstream in(orders_arg);
    std::string token;
    while (std::getline(in, token, ',')) {
        const int p = std::stoi(token);
        if (p < 1) throw lowtrot::ValidationError("orders must be positive");
        orders.push_back(p);
    }
    if (orders.empty()) throw lowtrot::ValidationError("no orders given");
    write_or_print(out_path, lowtrot::compare_to_csv(lowtrot::run_compare(orders)));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "lowtrot: product-formula error measurement and low-energy bound evaluation\n"};
    app.require_subcommand(1);
    app.footer(lowtrot::config_key_reference() +
               "\nEnvironment:\n  LOWTROT_WORKERS  default worker count\n"
               "\nExit codes: 0 all verdicts pass, 1 a dominance verdict fails,\n"
               "            2 usage or config error, 3 runtime failure\n");

    CommonArgs analyze_args, leakage_args, cost_args;
    std::string compare_orders = "1,2,3";
    std::string compare_out;

    auto add_common = [](CLI::App* sub, CommonArgs& args, bool with_format) {
        sub->add_option("--config", args.config_path, "experiment config file")->required();
        sub->add_option("--out", args.out_path, "output path (default: stdout)");
        if (with_format) {
            sub->add_option("--format", args.format, "csv or json")
                ->check(CLI::IsMember({"csv", "json"}));
        }
        sub->add_option("--workers", args.workers, "concurrent grid points");
    };

    CLI::App* analyze =
        app.add_subcommand("analyze", "bound-dominance sweep over the (s, delta) grid");
    add_common(analyze, analyze_args, true);
    CLI::App* leakage =
        app.add_subcommand("leakage", "generic and product-formula leakage sweeps");
    add_common(leakage, leakage_args, false);
    CLI::App* cost = app.add_subcommand("cost", "cost laws and empirical Trotter numbers");
    add_common(cost, cost_args, false);
    CLI::App* compare =
        app.add_subcommand("compare", "cost-law table across methods and orders");
    compare->add_option("--orders", compare_orders, "comma-separated orders (default 1,2,3)");
    compare->add_option("--out", compare_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(analyze_args);
        if (leakage->parsed()) return cmd_leakage(leakage_args);
        if (cost->parsed()) return cmd_cost(cost_args);
        if (compare->parsed()) return cmd_compare(compare_orders, compare_out);
    } catch (const lowtrot::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const lowtrot::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
