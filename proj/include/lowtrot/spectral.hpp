#pragma once

#include <Eigen/Dense>

#include "lowtrot/errors.hpp"

namespace lowtrot {

// Eigenvalues within this window of a cutoff count as below it; keeps the
// closed condition E <= cutoff stable against roundoff.
inline constexpr double kCutoffTie = 1e-12;

// Eigendecomposition of a Hermitian operator: the source of propagators,
// energy-cutoff projectors and restricted norms.
struct SpectralCache {
    Eigen::VectorXd eigenvalues;    // ascending
    Eigen::MatrixXcd eigenvectors;  // column i pairs with eigenvalues[i]

    Eigen::Index dimension() const { return eigenvalues.size(); }
    double min_energy() const { return eigenvalues(0); }
    double max_energy() const { return eigenvalues(eigenvalues.size() - 1); }

    // Eigenvalue at the given percentile of the sorted spectrum (nearest-rank
    // on indices 0..dim-1).
    double percentile_energy(double percent) const;

    // Number of eigenvalues at or below the cutoff.
    Eigen::Index count_leq(double cutoff) const;
};

SpectralCache eigendecompose(const Eigen::MatrixXcd& a);

Eigen::MatrixXcd projector_leq(const SpectralCache& c, double cutoff);
Eigen::MatrixXcd projector_gt(const SpectralCache& c, double cutoff);

// exp(-i * time * H) from the cached eigenbasis.
Eigen::MatrixXcd evolve(const SpectralCache& c, double time);

// Largest singular value.
double spectral_norm(const Eigen::MatrixXcd& a);

// || P A P || with P the at-or-below-cutoff projector of c.
double restricted_norm(const Eigen::MatrixXcd& a, const SpectralCache& c, double cutoff);

}  // namespace lowtrot
