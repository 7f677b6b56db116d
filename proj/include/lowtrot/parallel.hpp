#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

// Dense kernels used throughout the toolkit.  Each kernel has a plain serial
// implementation (the reference, used by tests and as the small-size path)
// and an OpenMP variant.  The undecorated entry points dispatch on problem
// size so callers never pick a variant by hand.

namespace lowtrot::par {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Worker cap: set_max_workers() wins, then the LOWTROT_WORKERS environment
// variable, then the OpenMP default.
int max_workers();
void set_max_workers(int n);

Matrix matmul_serial(const Matrix& a, const Matrix& b);
Matrix matmul_omp(const Matrix& a, const Matrix& b);
Matrix matmul(const Matrix& a, const Matrix& b);

// out += coeff * P where P is the Pauli string with the given bit masks on
// log2(out.rows()) qubits.  P is a signed permutation, so each column gets a
// single entry; columns are independent, which is what the OpenMP variant
// exploits.
void pauli_accumulate_serial(Matrix& out, std::uint64_t x_mask, std::uint64_t z_mask,
                             Complex coeff);
void pauli_accumulate_omp(Matrix& out, std::uint64_t x_mask, std::uint64_t z_mask,
                          Complex coeff);
void pauli_accumulate(Matrix& out, std::uint64_t x_mask, std::uint64_t z_mask, Complex coeff);

}  // namespace lowtrot::par
