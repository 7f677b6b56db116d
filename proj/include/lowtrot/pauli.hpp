#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lowtrot/errors.hpp"

namespace lowtrot {

using Complex = std::complex<double>;

// Dense matrices above this many qubits are refused unless the caller raises
// the limit explicitly.
inline constexpr int kDenseQubitLimit = 12;

// A Pauli word stored as X/Z bit masks; qubit i is bit i and also the i-th
// factor of the tensor product (qubit 0 is the least significant bit of a
// basis index).  The empty word is the identity.
class PauliString {
  public:
    explicit PauliString(int n_qubits);
    static PauliString from_masks(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);
    // Parses a token list like "X0 Z3 Y5"; "" and "I" denote the identity.
    static PauliString parse(int n_qubits, const std::string& tokens);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t x_mask() const { return x_mask_; }
    std::uint64_t z_mask() const { return z_mask_; }
    std::uint64_t support_mask() const { return x_mask_ | z_mask_; }
    int support_size() const;
    bool is_identity() const { return support_mask() == 0; }

    char letter_at(int qubit) const;  // 'I', 'X', 'Y' or 'Z'
    void set_letter(int qubit, char letter);

    bool commutes_with(const PauliString& other) const;

    std::string str() const;

    friend bool operator==(const PauliString& a, const PauliString& b) = default;
    friend auto operator<=>(const PauliString& a, const PauliString& b) = default;

  private:
    int n_qubits_;
    std::uint64_t x_mask_ = 0;
    std::uint64_t z_mask_ = 0;
};

struct PauliProduct {
    Complex phase;  // one of {1, i, -1, -i}
    PauliString string;
};

// matrix(a)*matrix(b) == phase * matrix(result), computed from the bit masks.
PauliProduct pauli_product(const PauliString& a, const PauliString& b);

// One k-local interaction: a Pauli word with a scalar weight.  Hamiltonians
// require real weights; commutator expansions carry complex ones.
struct LocalTerm {
    PauliString pauli;
    Complex coeff;
};

// [a, b] as a single term, or nullopt when the words commute.
std::optional<LocalTerm> pauli_commutator(const LocalTerm& a, const LocalTerm& b);

// Sorts by word, fuses duplicates, drops coefficients below 1e-14.
std::vector<LocalTerm> fuse_terms(std::vector<LocalTerm> terms);

// Spectral spread max(eig) - min(eig) of the term, which equals
// 2 min_c ||h + c|| for Hermitian h.  Requires a real coefficient.
double term_spread(const LocalTerm& t);

// Spread of a sum of terms, via dense diagonalization on the joint support.
// Used for interactions supplied as several fused words (e.g. projectors).
double spectral_spread(const std::vector<LocalTerm>& terms);

// A set of mutually commuting local terms, kept in canonical form: sorted by
// word, duplicate words fused, negligible coefficients dropped.
class TermGroup {
  public:
    explicit TermGroup(std::vector<LocalTerm> terms);

    const std::vector<LocalTerm>& terms() const { return terms_; }
    int size() const { return static_cast<int>(terms_.size()); }
    int n_qubits() const { return n_qubits_; }

    // Symbolic pairwise check; returns the first offending pair if any.
    std::optional<std::pair<int, int>> find_noncommuting_pair() const;

  private:
    int n_qubits_;
    std::vector<LocalTerm> terms_;
};

struct ParamSummary {
    int n_qubits = 0;       // N
    int n_groups = 0;       // M
    int max_support = 0;    // k: largest single-term support
    int max_degree = 0;     // d: most terms sharing one qubit
    int max_group_terms = 0;  // L: largest group size
    double strength = 0.0;  // J: twice the largest per-term min-shift norm
    bool groups_psd = false;
    bool psd_checked = false;  // false when the dense check was skipped
    double min_group_eigenvalue = 0.0;
};

class PartitionedHamiltonian {
  public:
    // Throws EmptyGroup, QubitCountMismatch, or NotHermitian (complex weight).
    PartitionedHamiltonian(int n_qubits, std::vector<TermGroup> groups);

    int n_qubits() const { return n_qubits_; }
    int n_groups() const { return static_cast<int>(groups_.size()); }
    const TermGroup& group(int m) const { return groups_.at(m); }
    const std::vector<TermGroup>& groups() const { return groups_; }

    std::string name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

  private:
    int n_qubits_;
    std::vector<TermGroup> groups_;
    std::string name_ = "custom";
};

// Verifies within-group commutativity, derives (N, M, k, d, L, J) and, when
// the dimension permits, whether every group is positive semidefinite.
ParamSummary validate_partition(const PartitionedHamiltonian& h,
                                int dense_limit = kDenseQubitLimit);

Eigen::MatrixXcd dense_matrix(const LocalTerm& term, int n_qubits,
                              int dense_limit = kDenseQubitLimit);
Eigen::MatrixXcd dense_matrix(const TermGroup& group, int dense_limit = kDenseQubitLimit);
Eigen::MatrixXcd dense_matrix(const PartitionedHamiltonian& h,
                              int dense_limit = kDenseQubitLimit);

}  // namespace lowtrot
