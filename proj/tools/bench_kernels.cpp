// Times the OpenMP kernels against their serial references.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "lowtrot/parallel.hpp"

namespace {

using Clock = std::chrono::steady_clock;
using lowtrot::par::Matrix;

double g_sink = 0.0;  // keeps the optimizer from dropping the kernels

double seconds_per_call(int repeats, const std::function<void()>& body) {
    // Warm up once so thread pools and allocations settle.
    body();
    const auto start = Clock::now();
    for (int i = 0; i < repeats; ++i) body();
    const std::chrono::duration<double> elapsed = Clock::now() - start;
    return elapsed.count() / repeats;
}

Matrix random_matrix(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) m(i, j) = {gauss(rng), gauss(rng)};
    }
    return m;
}

}  // namespace

int main() {
    std::mt19937_64 rng(7);
    std::printf("workers: %d\n\n", lowtrot::par::max_workers());

    std::printf("%-24s %10s %12s %12s %8s\n", "kernel", "dim", "serial[s]", "omp[s]",
                "speedup");
    for (Eigen::Index dim : {64, 128, 256, 512, 1024}) {
        const Matrix a = random_matrix(dim, rng);
        const Matrix b = random_matrix(dim, rng);
        const int repeats = dim <= 256 ? 20 : 3;
        const double serial = seconds_per_call(
            repeats, [&] { g_sink += lowtrot::par::matmul_serial(a, b)(0, 0).real(); });
        const double omp = seconds_per_call(
            repeats, [&] { g_sink += lowtrot::par::matmul_omp(a, b)(0, 0).real(); });
        std::printf("%-24s %10lld %12.6f %12.6f %8.2f\n", "matmul", static_cast<long long>(dim),
                    serial, omp, serial / omp);
    }

    std::printf("\n");
    for (int n_qubits : {8, 10, 12}) {
        const Eigen::Index dim = Eigen::Index{1} << n_qubits;
        Matrix m = Matrix::Zero(dim, dim);
        const std::uint64_t x_mask = 0b1011, z_mask = 0b0110;
        const int repeats = 200;
        const double serial = seconds_per_call(repeats, [&] {
            lowtrot::par::pauli_accumulate_serial(m, x_mask, z_mask, {0.5, 0.0});
        });
        const double omp = seconds_per_call(repeats, [&] {
            lowtrot::par::pauli_accumulate_omp(m, x_mask, z_mask, {0.5, 0.0});
        });
        g_sink += m(0, 0).real();
        std::printf("%-24s %10lld %12.6f %12.6f %8.2f\n", "pauli_accumulate",
                    static_cast<long long>(dim), serial, omp, serial / omp);
    }
    return g_sink == 0.12345 ? 1 : 0;
}
