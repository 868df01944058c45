#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace wcq::kernels {

// Largest prime below 2^26: products of residues stay exact in a double.
constexpr double kPrime = 67108859.0;

// row[j] = (row[j] - c * pivot[j]) mod p, all values in [0, p).
using AxpyFn = void (*)(double* row, const double* pivot, double c, std::size_t n);

struct ModKernel {
  const char* name;
  AxpyFn axpy;
};

const ModKernel& scalar_kernel();
// nullptr when the build or the CPU lacks AVX2.
const ModKernel* avx2_kernel();
// AVX2 when available unless WCQ_SIMD=scalar is set.
const ModKernel& active_kernel();

double mod_reduce(double x);
double mod_inverse(double a);

// Dense rank over F_p; `m` is row-major rows x cols and is destroyed.
std::size_t rank_mod_p(std::vector<double>& m, std::size_t rows, std::size_t cols, const ModKernel& k);

}  // namespace wcq::kernels
