#include "lowtrot/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "lowtrot/parallel.hpp"

namespace lowtrot {

namespace {

constexpr double kHermitianTolerance = 1e-10;

}  // namespace

double SpectralCache::percentile_energy(double percent) const {
    if (percent < 0.0 || percent > 100.0) {
        throw ValidationError("percentile must lie in [0, 100]");
    }
    const auto last = static_cast<double>(dimension() - 1);
    const auto index = static_cast<Eigen::Index>(std::lround(percent / 100.0 * last));
    return eigenvalues(std::clamp<Eigen::Index>(index, 0, dimension() - 1));
}

Eigen::Index SpectralCache::count_leq(double cutoff) const {
    Eigen::Index n = 0;
    while (n < dimension() && eigenvalues(n) <= cutoff + kCutoffTie) ++n;
    return n;
}

SpectralCache eigendecompose(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw NotHermitian("matrix is not square");
    const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTolerance) {
        throw NotHermitian("matrix deviates from Hermitian by " + std::to_string(asym));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
    if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::MatrixXcd projector_leq(const SpectralCache& c, double cutoff) {
    const Eigen::Index n = c.count_leq(cutoff);
    if (n == 0) return Eigen::MatrixXcd::Zero(c.dimension(), c.dimension());
    const auto v = c.eigenvectors.leftCols(n);
    return par::matmul(v, v.adjoint());
}

Eigen::MatrixXcd projector_gt(const SpectralCache& c, double cutoff) {
    return Eigen::MatrixXcd::Identity(c.dimension(), c.dimension()) - projector_leq(c, cutoff);
}

Eigen::MatrixXcd evolve(const SpectralCache& c, double time) {
    Eigen::VectorXcd phases(c.dimension());
    for (Eigen::Index i = 0; i < c.dimension(); ++i) {
        phases(i) = std::exp(std::complex<double>(0.0, -time * c.eigenvalues(i)));
    }
    return par::matmul(c.eigenvectors * phases.asDiagonal(), c.eigenvectors.adjoint());
}

double spectral_norm(const Eigen::MatrixXcd& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    // sqrt of the top eigenvalue of A^dagger A; exact at these sizes and the
    // square is positive semidefinite by construction.
    Eigen::MatrixXcd gram = par::matmul(a.adjoint(), a);
    gram = 0.5 * (gram + gram.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double restricted_norm(const Eigen::MatrixXcd& a, const SpectralCache& c, double cutoff) {
    if (a.rows() != c.dimension() || a.cols() != c.dimension()) {
        throw Error("restricted norm: operator and cache dimensions differ");
    }
    if (c.count_leq(cutoff) == 0) return 0.0;
    const Eigen::MatrixXcd p = projector_leq(c, cutoff);
    return spectral_norm(par::matmul(par::matmul(p, a), p));
}

}  // namespace lowtrot
