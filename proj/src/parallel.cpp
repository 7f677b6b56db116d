#include "lowtrot/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <bit>
#include <cstdlib>
#include <stdexcept>

namespace lowtrot::par {

namespace {

std::atomic<int> g_max_workers{0};

int env_workers() {
    const char* v = std::getenv("LOWTROT_WORKERS");
    if (v == nullptr) return 0;
    int n = std::atoi(v);
    return n > 0 ? n : 0;
}

// Below this many scalar multiply-adds the fork/join overhead dominates.
constexpr long kParallelFlopThreshold = 1L << 18;

inline Complex pauli_phase(std::uint64_t x_mask, std::uint64_t z_mask, std::uint64_t column) {
    // P|j> = i^{|x&z|} (-1)^{|j&z|} |j^x>
    static const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Complex phase = i_pow[std::popcount(x_mask & z_mask) & 3];
    if (std::popcount(column & z_mask) & 1) phase = -phase;
    return phase;
}

}  // namespace

int max_workers() {
    int n = g_max_workers.load();
    if (n > 0) return n;
    n = env_workers();
    if (n > 0) return n;
    return omp_get_max_threads();
}

void set_max_workers(int n) { g_max_workers.store(n); }

Matrix matmul_serial(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
    const Eigen::Index rows = a.rows(), inner = a.cols(), cols = b.cols();
    Matrix c = Matrix::Zero(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index k = 0; k < inner; ++k) {
            const Complex bkj = b(k, j);
            if (bkj == Complex{0, 0}) continue;
            Complex* cj = c.col(j).data();
            const Complex* ak = a.col(k).data();
            for (Eigen::Index i = 0; i < rows; ++i) cj[i] += ak[i] * bkj;
        }
    }
    return c;
}

Matrix matmul_omp(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
    const Eigen::Index rows = a.rows(), inner = a.cols(), cols = b.cols();
    Matrix c = Matrix::Zero(rows, cols);
#pragma omp parallel for schedule(static) num_threads(max_workers())
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index k = 0; k < inner; ++k) {
            const Complex bkj = b(k, j);
            if (bkj == Complex{0, 0}) continue;
            Complex* cj = c.col(j).data();
            const Complex* ak = a.col(k).data();
            for (Eigen::Index i = 0; i < rows; ++i) cj[i] += ak[i] * bkj;
        }
    }
    return c;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    const long flops = static_cast<long>(a.rows()) * a.cols() * b.cols();
    if (flops < kParallelFlopThreshold || omp_in_parallel()) return matmul_serial(a, b);
    return matmul_omp(a, b);
}

void pauli_accumulate_serial(Matrix& out, std::uint64_t x_mask, std::uint64_t z_mask,
                             Complex coeff) {
    const std::uint64_t dim = static_cast<std::uint64_t>(out.rows());
    for (std::uint64_t j = 0; j < dim; ++j) {
        out(static_cast<Eigen::Index>(j ^ x_mask), static_cast<Eigen::Index>(j)) +=
            coeff * pauli_phase(x_mask, z_mask, j);
    }
}

void pauli_accumulate_omp(Matrix& out, std::uint64_t x_mask, std::uint64_t z_mask,
                          Complex coeff) {
    const std::int64_t dim = out.rows();
#pragma omp parallel for schedule(static) num_threads(max_workers())
    for (std::int64_t j = 0; j < dim; ++j) {
        const std::uint64_t ju = static_cast<std::uint64_t>(j);
        out(static_cast<Eigen::Index>(ju ^ x_mask), j) += coeff * pauli_phase(x_mask, z_mask, ju);
    }
}

void pauli_accumulate(Matrix& out, std::uint64_t x_mask, std::uint64_t z_mask, Complex coeff) {
    if (out.rows() < (1 << 10) || omp_in_parallel()) {
        pauli_accumulate_serial(out, x_mask, z_mask, coeff);
    } else {
        pauli_accumulate_omp(out, x_mask, z_mask, coeff);
    }
}

}  // namespace lowtrot::par
