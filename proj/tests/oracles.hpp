#pragma once

// Brute-force reference implementations for the tests.  Everything here
// deliberately avoids the library's own dense kernels: Pauli matrices come
// from explicit 2x2 Kronecker products and norms from a plain SVD.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <complex>
#include <random>
#include <vector>

#include "lowtrot/pauli.hpp"

namespace oracles {

using Complex = std::complex<double>;

inline Eigen::Matrix2cd pauli_letter(char letter) {
    Eigen::Matrix2cd m;
    switch (letter) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw std::runtime_error("bad letter");
    }
    return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// Tensor-product matrix with qubit 0 as the least significant bit: the
// factor for the highest qubit sits leftmost in the Kronecker chain.
inline Eigen::MatrixXcd pauli_matrix(const lowtrot::PauliString& p) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = p.n_qubits() - 1; q >= 0; --q) {
        m = kron(m, pauli_letter(p.letter_at(q)));
    }
    return m;
}

inline Eigen::MatrixXcd dense_terms(const std::vector<lowtrot::LocalTerm>& terms, int n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : terms) m += t.coeff * pauli_matrix(t.pauli);
    return m;
}

inline Eigen::MatrixXcd dense_hamiltonian(const lowtrot::PartitionedHamiltonian& h) {
    const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& g : h.groups()) m += dense_terms(g.terms(), h.n_qubits());
    return m;
}

inline double svd_norm(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

inline Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return a * b - b * a;
}

inline Eigen::MatrixXcd random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
    }
    return 0.5 * (g + g.adjoint().eval());
}

// min over c of || h + c I || by golden-section-free grid refinement.
inline double min_shift_norm(const Eigen::MatrixXcd& h, double c_lo, double c_hi, double step) {
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(h.rows(), h.cols());
    double best = std::numeric_limits<double>::infinity();
    for (double c = c_lo; c <= c_hi + 0.5 * step; c += step) {
        best = std::min(best, svd_norm(h + c * eye));
    }
    return best;
}

// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    }
    return sxy / sxx;
}

// A model whose groups commute with each other (diagonal words only), so the
// product formula is exact for every schedule.
inline lowtrot::PartitionedHamiltonian commuting_model(int n_qubits) {
    std::vector<lowtrot::LocalTerm> bonds, fields;
    for (int i = 0; i + 1 < n_qubits; ++i) {
        lowtrot::PauliString p(n_qubits);
        p.set_letter(i, 'Z');
        p.set_letter(i + 1, 'Z');
        bonds.push_back({p, 1.0});
    }
    for (int i = 0; i < n_qubits; ++i) {
        lowtrot::PauliString p(n_qubits);
        p.set_letter(i, 'Z');
        fields.push_back({p, 0.7});
    }
    lowtrot::PartitionedHamiltonian h(
        n_qubits, {lowtrot::TermGroup(bonds), lowtrot::TermGroup(fields)});
    h.set_name("commuting-zz-z");
    return h;
}

// Frustration-free chain of two-site projectors (singlet projectors), grouped
// even/odd; every group is positive semidefinite by construction.
inline lowtrot::PartitionedHamiltonian projector_chain(int n_qubits) {
    std::vector<std::vector<lowtrot::LocalTerm>> groups(2);
    for (int i = 0; i + 1 < n_qubits; ++i) {
        auto& g = groups[i % 2];
        lowtrot::PauliString eye(n_qubits);
        g.push_back({eye, 0.25});
        for (char letter : {'X', 'Y', 'Z'}) {
            lowtrot::PauliString p(n_qubits);
            p.set_letter(i, letter);
            p.set_letter(i + 1, letter);
            g.push_back({p, -0.25});
        }
    }
    lowtrot::PartitionedHamiltonian h(
        n_qubits, {lowtrot::TermGroup(groups[0]), lowtrot::TermGroup(groups[1])});
    h.set_name("singlet-projector-chain");
    return h;
}

}  // namespace oracles
