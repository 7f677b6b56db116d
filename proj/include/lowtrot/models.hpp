#pragma once

#include <string>

#include "lowtrot/pauli.hpp"

namespace lowtrot {

enum class Boundary { open, periodic };

// Transverse-field Ising chain, two groups: {J_zz Z_i Z_{i+1}} and {h_x X_i}.
PartitionedHamiltonian tfim_chain(int n_qubits, double j_zz, double h_x, Boundary boundary);

// Heisenberg chain with even/odd bond grouping; every bond contributes the
// three words XX, YY, ZZ with weight j.  With shift_groups_psd each group
// gains an identity term that lifts its spectrum to be positive semidefinite
// (the shift is exact: bonds are mutually commuting, so the group minimum is
// the sum of per-bond minima).
PartitionedHamiltonian heisenberg_chain(int n_qubits, double j, Boundary boundary,
                                        bool shift_groups_psd = false);

Boundary boundary_from_string(const std::string& s);

// Model description files: {"n_qubits": N, "groups": [[{"pauli": "X0 X1",
// "coeff": 1.0}, ...], ...]}.
PartitionedHamiltonian model_from_json_string(const std::string& text);
PartitionedHamiltonian model_from_json_file(const std::string& path);
std::string model_to_json_string(const PartitionedHamiltonian& h);

}  // namespace lowtrot
