#include "lowtrot/models.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lowtrot {

namespace {

using nlohmann::json;

std::vector<std::pair<int, int>> chain_bonds(int n, Boundary boundary) {
    std::vector<std::pair<int, int>> bonds;
    for (int i = 0; i + 1 < n; ++i) bonds.emplace_back(i, i + 1);
    if (boundary == Boundary::periodic && n > 2) bonds.emplace_back(n - 1, 0);
    return bonds;
}

PauliString two_site_word(int n, char letter, int a, int b) {
    PauliString p(n);
    p.set_letter(a, letter);
    p.set_letter(b, letter);
    return p;
}

}  // namespace

Boundary boundary_from_string(const std::string& s) {
    if (s == "open") return Boundary::open;
    if (s == "periodic") return Boundary::periodic;
    throw ValidationError("boundary must be 'open' or 'periodic', got '" + s + "'");
}

PartitionedHamiltonian tfim_chain(int n_qubits, double j_zz, double h_x, Boundary boundary) {
    if (n_qubits < 2) throw Error("tfim_chain needs at least 2 qubits");
    std::vector<LocalTerm> zz, fields;
    for (auto [a, b] : chain_bonds(n_qubits, boundary)) {
        zz.push_back({two_site_word(n_qubits, 'Z', a, b), j_zz});
    }
    for (int q = 0; q < n_qubits; ++q) {
        PauliString p(n_qubits);
        p.set_letter(q, 'X');
        fields.push_back({p, h_x});
    }
    PartitionedHamiltonian h(n_qubits, {TermGroup(std::move(zz)), TermGroup(std::move(fields))});
    std::ostringstream name;
    name << "tfim_chain[N=" << n_qubits << " Jzz=" << j_zz << " hx=" << h_x << " "
         << (boundary == Boundary::open ? "open" : "periodic") << "]";
    h.set_name(name.str());
    return h;
}

PartitionedHamiltonian heisenberg_chain(int n_qubits, double j, Boundary boundary,
                                        bool shift_groups_psd) {
    if (n_qubits < 2) throw Error("heisenberg_chain needs at least 2 qubits");
    if (boundary == Boundary::periodic && n_qubits % 2 != 0) {
        throw Error("periodic even/odd bond grouping needs an even qubit count");
    }
    std::vector<std::vector<LocalTerm>> groups(2);
    std::vector<int> bond_count(2, 0);
    int bond_index = 0;
    for (auto [a, b] : chain_bonds(n_qubits, boundary)) {
        auto& g = groups[bond_index % 2];
        for (char letter : {'X', 'Y', 'Z'}) {
            g.push_back({two_site_word(n_qubits, letter, a, b), j});
        }
        ++bond_count[bond_index % 2];
        ++bond_index;
    }
    if (shift_groups_psd) {
        // Per bond, XX+YY+ZZ has spectrum j*{1,1,1,-3}; bonds inside a group
        // are disjoint, so the group minimum is additive.
        const double bond_min = std::min(j, -3.0 * j);
        for (int m = 0; m < 2; ++m) {
            const double group_min = bond_count[m] * bond_min;
            if (group_min < 0.0) {
                groups[m].push_back({PauliString(n_qubits), -group_min});
            }
        }
    }
    PartitionedHamiltonian h(
        n_qubits, {TermGroup(std::move(groups[0])), TermGroup(std::move(groups[1]))});
    std::ostringstream name;
    name << "heisenberg_chain[N=" << n_qubits << " J=" << j << " "
         << (boundary == Boundary::open ? "open" : "periodic")
         << (shift_groups_psd ? " psd-shifted" : "") << "]";
    h.set_name(name.str());
    return h;
}

PartitionedHamiltonian model_from_json_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model JSON: ") + e.what());
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "n_qubits" && key != "groups" && key != "name") {
            throw ValidationError("unknown model key '" + key + "'");
        }
    }
    if (!doc.contains("n_qubits") || !doc["n_qubits"].is_number_integer()) {
        throw ValidationError("model needs an integer 'n_qubits'");
    }
    if (!doc.contains("groups") || !doc["groups"].is_array() || doc["groups"].empty()) {
        throw ValidationError("model needs a non-empty 'groups' array");
    }
    const int n = doc["n_qubits"].get<int>();
    std::vector<TermGroup> groups;
    for (const auto& group : doc["groups"]) {
        if (!group.is_array()) throw ValidationError("every group must be an array of terms");
        std::vector<LocalTerm> terms;
        for (const auto& term : group) {
            for (const auto& [key, value] : term.items()) {
                if (key != "pauli" && key != "coeff") {
                    throw ValidationError("unknown term key '" + key + "'");
                }
            }
            if (!term.contains("pauli") || !term["pauli"].is_string() ||
                !term.contains("coeff") || !term["coeff"].is_number()) {
                throw ValidationError("every term needs a 'pauli' string and numeric 'coeff'");
            }
            terms.push_back({PauliString::parse(n, term["pauli"].get<std::string>()),
                             term["coeff"].get<double>()});
        }
        groups.emplace_back(std::move(terms));
    }
    PartitionedHamiltonian h(n, std::move(groups));
    if (doc.contains("name")) h.set_name(doc["name"].get<std::string>());
    return h;
}

PartitionedHamiltonian model_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return model_from_json_string(buffer.str());
}

std::string model_to_json_string(const PartitionedHamiltonian& h) {
    json doc;
    doc["n_qubits"] = h.n_qubits();
    doc["name"] = h.name();
    json groups = json::array();
    for (const auto& g : h.groups()) {
        json terms = json::array();
        for (const auto& t : g.terms()) {
            terms.push_back({{"pauli", t.pauli.str()}, {"coeff", t.coeff.real()}});
        }
        groups.push_back(terms);
    }
    doc["groups"] = groups;
    return doc.dump(2);
}

}  // namespace lowtrot
