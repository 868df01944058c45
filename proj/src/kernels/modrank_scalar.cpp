#include <cmath>

#include "wcq/kernels.hpp"

namespace wcq::kernels {

namespace {

constexpr double kInv = 1.0 / kPrime;

void axpy_scalar(double* row, const double* pivot, double c, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double x = row[j] - c * pivot[j];
    double q = std::floor(x * kInv);
    double r = x - q * kPrime;
    if (r < 0) r += kPrime;
    if (r >= kPrime) r -= kPrime;
    row[j] = r;
  }
}

}  // namespace

double mod_reduce(double x) {
  double r = x - std::floor(x * kInv) * kPrime;
  if (r < 0) r += kPrime;
  if (r >= kPrime) r -= kPrime;
  return r;
}

double mod_inverse(double a) {
  long long p = static_cast<long long>(kPrime);
  long long t = 0, nt = 1, r = p, nr = static_cast<long long>(a);
  while (nr != 0) {
    long long q = r / nr;
    long long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<double>(t);
}

const ModKernel& scalar_kernel() {
  static const ModKernel k{"scalar", &axpy_scalar};
  return k;
}

std::size_t rank_mod_p(std::vector<double>& m, std::size_t rows, std::size_t cols, const ModKernel& k) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != rank)
      for (std::size_t j = c; j < cols; ++j) std::swap(m[p * cols + j], m[rank * cols + j]);
    double* piv = &m[rank * cols];
    double inv = mod_inverse(piv[c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      double* row = &m[r * cols];
      if (row[c] == 0) continue;
      double f = mod_reduce(row[c] * inv);
      k.axpy(row + c, piv + c, f, cols - c);
    }
    ++rank;
  }
  return rank;
}

}  // namespace wcq::kernels
