#include "lowtrot/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lowtrot/errors.hpp"

namespace lowtrot {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

// String cells must stay comma-free so every row splits into exactly 17
// columns.
std::string sanitize(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n') c = ';';
    }
    return s;
}

std::string verdict_cell(bool applicable, bool verdict) {
    if (!applicable) return "na";
    return verdict ? "pass" : "fail";
}

json report_to_json(const BoundReport& r) {
    auto number_or_null = [](double v) { return std::isnan(v) ? json() : json(v); };
    json row;
    row["model"] = r.model;
    row["schedule"] = r.schedule;
    row["p"] = r.order;
    row["s"] = r.s;
    row["delta"] = r.delta;
    row["delta_prime"] = r.delta_prime;
    row["delta_f"] = r.delta_f;
    row["eps_empirical"] = r.eps_empirical;
    row["leakage_empirical"] = r.leakage_empirical;
    row["retained_empirical"] = r.retained_empirical;
    row["leakage_bound"] = number_or_null(r.leakage_bound);
    row["retained_bound"] = number_or_null(r.retained_bound);
    row["psd_bound"] = number_or_null(r.psd_bound);
    row["leakage_vacuous"] = r.leakage_vacuous;
    row["analytic_available"] = r.analytic_available;
    row["verdict_leakage"] = verdict_cell(r.analytic_available, r.verdict_leakage());
    row["verdict_retained"] = verdict_cell(r.analytic_available, r.verdict_retained());
    row["verdict_psd"] = verdict_cell(r.psd_applicable(), r.verdict_psd());
    row["vacuity_flags"] = r.vacuity_flags();
    return row;
}

}  // namespace

bool BoundReport::psd_applicable() const { return analytic_available && !std::isnan(psd_bound); }

bool BoundReport::verdict_leakage() const {
    return leakage_empirical <= leakage_bound + kVerdictFloor;
}

bool BoundReport::verdict_retained() const {
    return retained_empirical <= retained_bound * kDominanceSlack + kVerdictFloor;
}

bool BoundReport::verdict_psd() const {
    return eps_empirical <= psd_bound * kDominanceSlack + kVerdictFloor;
}

std::string BoundReport::vacuity_flags() const {
    std::string flags;
    auto add = [&](const std::string& f) {
        if (!flags.empty()) flags += '|';
        flags += f;
    };
    if (!analytic_available) add("analytic_na");
    if (leakage_vacuous) add("leakage_vacuous");
    if (analytic_available && !psd_applicable()) add("psd_na");
    return flags.empty() ? "none" : flags;
}

const char* const kReportCsvHeader =
    "model,schedule,p,s,delta,delta_prime,delta_f,eps_empirical,leakage_empirical,"
    "retained_empirical,leakage_bound,retained_bound,psd_bound,verdict_leakage,"
    "verdict_retained,verdict_psd,vacuity_flags";

std::string reports_to_csv(const std::vector<BoundReport>& reports) {
    std::ostringstream out;
    out << kReportCsvHeader << '\n';
    for (const auto& r : reports) {
        out << sanitize(r.model) << ',' << sanitize(r.schedule) << ',' << r.order << ','
            << format_double(r.s) << ',' << format_double(r.delta) << ','
            << format_double(r.delta_prime) << ',' << format_double(r.delta_f) << ','
            << format_double(r.eps_empirical) << ',' << format_double(r.leakage_empirical)
            << ',' << format_double(r.retained_empirical) << ','
            << format_double(r.leakage_bound) << ',' << format_double(r.retained_bound) << ','
            << format_double(r.psd_bound) << ','
            << verdict_cell(r.analytic_available, r.verdict_leakage()) << ','
            << verdict_cell(r.analytic_available, r.verdict_retained()) << ','
            << verdict_cell(r.psd_applicable(), r.verdict_psd()) << ',' << r.vacuity_flags()
            << '\n';
    }
    return out.str();
}

std::string reports_to_json(const std::vector<BoundReport>& reports) {
    json rows = json::array();
    for (const auto& r : reports) rows.push_back(report_to_json(r));
    return rows.dump(2) + "\n";
}

std::vector<BoundReport> reports_from_json(const std::string& text) {
    json rows;
    try {
        rows = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("report JSON: ") + e.what());
    }
    std::vector<BoundReport> out;
    for (const auto& row : rows) {
        BoundReport r;
        r.model = row.at("model").get<std::string>();
        r.schedule = row.at("schedule").get<std::string>();
        r.order = row.at("p").get<int>();
        r.s = row.at("s").get<double>();
        r.delta = row.at("delta").get<double>();
        r.delta_prime = row.at("delta_prime").get<double>();
        r.delta_f = row.at("delta_f").get<double>();
        r.eps_empirical = row.at("eps_empirical").get<double>();
        r.leakage_empirical = row.at("leakage_empirical").get<double>();
        r.retained_empirical = row.at("retained_empirical").get<double>();
        auto number = [](const json& v) {
            return v.is_null() ? std::nan("") : v.get<double>();
        };
        r.leakage_bound = number(row.at("leakage_bound"));
        r.retained_bound = number(row.at("retained_bound"));
        r.psd_bound = number(row.at("psd_bound"));
        r.leakage_vacuous = row.at("leakage_vacuous").get<bool>();
        r.analytic_available = row.at("analytic_available").get<bool>();
        out.push_back(std::move(r));
    }
    return out;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace lowtrot
