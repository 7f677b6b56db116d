#include "lowtrot/pauli.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "lowtrot/parallel.hpp"

namespace lowtrot {

namespace {

constexpr double kFuseThreshold = 1e-14;
constexpr double kRealTolerance = 1e-12;

void check_same_size(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw QubitCountMismatch("Pauli strings act on " + std::to_string(a.n_qubits()) +
                                 " and " + std::to_string(b.n_qubits()) + " qubits");
    }
}

}  // namespace

std::vector<LocalTerm> fuse_terms(std::vector<LocalTerm> terms) {
    std::sort(terms.begin(), terms.end(), [](const LocalTerm& a, const LocalTerm& b) {
        return a.pauli < b.pauli;
    });
    std::vector<LocalTerm> fused;
    for (auto& t : terms) {
        if (!fused.empty() && fused.back().pauli == t.pauli) {
            fused.back().coeff += t.coeff;
        } else {
            fused.push_back(std::move(t));
        }
    }
    std::erase_if(fused, [](const LocalTerm& t) { return std::abs(t.coeff) <= kFuseThreshold; });
    return fused;
}

PauliString::PauliString(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 64) {
        throw Error("qubit count must be in [1, 64], got " + std::to_string(n_qubits));
    }
}

PauliString PauliString::from_masks(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask) {
    PauliString p(n_qubits);
    const std::uint64_t valid =
        n_qubits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_qubits) - 1);
    if ((x_mask | z_mask) & ~valid) {
        throw Error("Pauli mask touches a qubit index >= " + std::to_string(n_qubits));
    }
    p.x_mask_ = x_mask;
    p.z_mask_ = z_mask;
    return p;
}

PauliString PauliString::parse(int n_qubits, const std::string& tokens) {
    PauliString p(n_qubits);
    std::istringstream in(tokens);
    std::string tok;
    while (in >> tok) {
        if (tok == "I") continue;
        const char letter = static_cast<char>(std::toupper(tok[0]));
        if ((letter != 'X' && letter != 'Y' && letter != 'Z') || tok.size() < 2) {
            throw ParseError("bad Pauli token '" + tok + "'");
        }
        int qubit = -1;
        try {
            qubit = std::stoi(tok.substr(1));
        } catch (const std::exception&) {
            throw ParseError("bad qubit index in token '" + tok + "'");
        }
        if (qubit < 0 || qubit >= n_qubits) {
            throw ParseError("token '" + tok + "' outside the " + std::to_string(n_qubits) +
                             "-qubit register");
        }
        if (p.letter_at(qubit) != 'I') {
            throw ParseError("qubit " + std::to_string(qubit) + " assigned twice");
        }
        p.set_letter(qubit, letter);
    }
    return p;
}

int PauliString::support_size() const { return std::popcount(support_mask()); }

char PauliString::letter_at(int qubit) const {
    const bool x = (x_mask_ >> qubit) & 1;
    const bool z = (z_mask_ >> qubit) & 1;
    if (x && z) return 'Y';
    if (x) return 'X';
    if (z) return 'Z';
    return 'I';
}

void PauliString::set_letter(int qubit, char letter) {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw Error("qubit index " + std::to_string(qubit) + " out of range");
    }
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    x_mask_ &= ~bit;
    z_mask_ &= ~bit;
    switch (letter) {
        case 'I': break;
        case 'X': x_mask_ |= bit; break;
        case 'Y': x_mask_ |= bit; z_mask_ |= bit; break;
        case 'Z': z_mask_ |= bit; break;
        default: throw Error(std::string("unknown Pauli letter '") + letter + "'");
    }
}

bool PauliString::commutes_with(const PauliString& other) const {
    check_same_size(*this, other);
    const int anti = std::popcount(x_mask_ & other.z_mask_) +
                     std::popcount(z_mask_ & other.x_mask_);
    return (anti & 1) == 0;
}

std::string PauliString::str() const {
    if (is_identity()) return "I";
    std::string out;
    for (int q = 0; q < n_qubits_; ++q) {
        const char l = letter_at(q);
        if (l == 'I') continue;
        if (!out.empty()) out += ' ';
        out += l;
        out += std::to_string(q);
    }
    return out;
}

PauliProduct pauli_product(const PauliString& a, const PauliString& b) {
    check_same_size(a, b);
    // With P = i^{|x&z|} X^x Z^z:  P_a P_b picks up (-1)^{|z_a & x_b|} from
    // commuting Z^{z_a} past X^{x_b}, and the i-powers rebalance against the
    // canonical form of the product word.
    static const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::uint64_t x = a.x_mask() ^ b.x_mask();
    const std::uint64_t z = a.z_mask() ^ b.z_mask();
    int ipower = std::popcount(a.x_mask() & a.z_mask()) +
                 std::popcount(b.x_mask() & b.z_mask()) - std::popcount(x & z);
    ipower += 2 * std::popcount(a.z_mask() & b.x_mask());
    ipower &= 3;
    return {i_pow[ipower], PauliString::from_masks(a.n_qubits(), x, z)};
}

std::optional<LocalTerm> pauli_commutator(const LocalTerm& a, const LocalTerm& b) {
    if (a.pauli.commutes_with(b.pauli)) return std::nullopt;
    // Anticommuting words: [A,B] = 2AB.
    PauliProduct prod = pauli_product(a.pauli, b.pauli);
    return LocalTerm{prod.string, 2.0 * prod.phase * a.coeff * b.coeff};
}

double term_spread(const LocalTerm& t) {
    if (std::abs(t.coeff.imag()) > kRealTolerance) {
        throw NotHermitian("term spread requires a real coefficient");
    }
    if (t.pauli.is_identity()) return 0.0;
    return 2.0 * std::abs(t.coeff.real());
}

double spectral_spread(const std::vector<LocalTerm>& terms) {
    if (terms.empty()) return 0.0;
    // Compress onto the joint support so the dense solve stays tiny.
    std::uint64_t support = 0;
    for (const auto& t : terms) support |= t.pauli.support_mask();
    std::vector<int> qubits;
    for (int q = 0; q < terms.front().pauli.n_qubits(); ++q) {
        if ((support >> q) & 1) qubits.push_back(q);
    }
    const int n = std::max<int>(1, static_cast<int>(qubits.size()));
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : terms) {
        if (std::abs(t.coeff.imag()) > kRealTolerance) {
            throw NotHermitian("spectral spread requires real coefficients");
        }
        std::uint64_t x = 0, z = 0;
        for (std::size_t i = 0; i < qubits.size(); ++i) {
            if ((t.pauli.x_mask() >> qubits[i]) & 1) x |= std::uint64_t{1} << i;
            if ((t.pauli.z_mask() >> qubits[i]) & 1) z |= std::uint64_t{1} << i;
        }
        par::pauli_accumulate_serial(m, x, z, t.coeff);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff() - solver.eigenvalues().minCoeff();
}

TermGroup::TermGroup(std::vector<LocalTerm> terms) : n_qubits_(0), terms_(fuse_terms(std::move(terms))) {
    if (terms_.empty()) return;
    n_qubits_ = terms_.front().pauli.n_qubits();
    for (const auto& t : terms_) {
        if (t.pauli.n_qubits() != n_qubits_) {
            throw QubitCountMismatch("terms of one group act on different registers");
        }
    }
}

std::optional<std::pair<int, int>> TermGroup::find_noncommuting_pair() const {
    for (int i = 0; i < size(); ++i) {
        for (int j = i + 1; j < size(); ++j) {
            if (!terms_[i].pauli.commutes_with(terms_[j].pauli)) return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

PartitionedHamiltonian::PartitionedHamiltonian(int n_qubits, std::vector<TermGroup> groups)
    : n_qubits_(n_qubits), groups_(std::move(groups)) {
    if (groups_.empty()) throw Error("a Hamiltonian needs at least one group");
    for (int m = 0; m < n_groups(); ++m) {
        const TermGroup& g = groups_[m];
        if (g.size() == 0) throw EmptyGroup(m);
        if (g.n_qubits() != n_qubits_) {
            throw QubitCountMismatch("group " + std::to_string(m) +
                                     " acts on a different register size");
        }
        for (const auto& t : g.terms()) {
            if (std::abs(t.coeff.imag()) > kRealTolerance) {
                throw NotHermitian("Hamiltonian terms must have real coefficients");
            }
        }
    }
}

ParamSummary validate_partition(const PartitionedHamiltonian& h, int dense_limit) {
    ParamSummary out;
    out.n_qubits = h.n_qubits();
    out.n_groups = h.n_groups();

    std::vector<int> degree(h.n_qubits(), 0);
    for (int m = 0; m < h.n_groups(); ++m) {
        const TermGroup& g = h.group(m);
        if (g.size() == 0) throw EmptyGroup(m);
        if (auto pair = g.find_noncommuting_pair()) {
            throw NonCommutingGroup(m, pair->first, pair->second);
        }
        out.max_group_terms = std::max(out.max_group_terms, g.size());
        for (const auto& t : g.terms()) {
            out.max_support = std::max(out.max_support, t.pauli.support_size());
            out.strength = std::max(out.strength, term_spread(t));
            for (int q = 0; q < h.n_qubits(); ++q) {
                if ((t.pauli.support_mask() >> q) & 1) ++degree[q];
            }
        }
    }
    out.max_degree = *std::max_element(degree.begin(), degree.end());

    if (h.n_qubits() <= dense_limit) {
        out.psd_checked = true;
        out.groups_psd = true;
        out.min_group_eigenvalue = std::numeric_limits<double>::infinity();
        for (int m = 0; m < h.n_groups(); ++m) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
                dense_matrix(h.group(m), dense_limit), Eigen::EigenvaluesOnly);
            const double lo = solver.eigenvalues().minCoeff();
            out.min_group_eigenvalue = std::min(out.min_group_eigenvalue, lo);
            if (lo < -1e-10) out.groups_psd = false;
        }
    }
    return out;
}

Eigen::MatrixXcd dense_matrix(const LocalTerm& term, int n_qubits, int dense_limit) {
    if (n_qubits > dense_limit) throw DimensionTooLarge(n_qubits, dense_limit);
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    par::pauli_accumulate(m, term.pauli.x_mask(), term.pauli.z_mask(), term.coeff);
    return m;
}

Eigen::MatrixXcd dense_matrix(const TermGroup& group, int dense_limit) {
    const int n = group.n_qubits();
    if (n > dense_limit) throw DimensionTooLarge(n, dense_limit);
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : group.terms()) {
        par::pauli_accumulate(m, t.pauli.x_mask(), t.pauli.z_mask(), t.coeff);
    }
    return m;
}

Eigen::MatrixXcd dense_matrix(const PartitionedHamiltonian& h, int dense_limit) {
    if (h.n_qubits() > dense_limit) throw DimensionTooLarge(h.n_qubits(), dense_limit);
    const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& g : h.groups()) {
        for (const auto& t : g.terms()) {
            par::pauli_accumulate(m, t.pauli.x_mask(), t.pauli.z_mask(), t.coeff);
        }
    }
    return m;
}

}  // namespace lowtrot
