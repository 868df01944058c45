#include <random>

#include "doctest.h"
#include "wcq/kernels.hpp"

using namespace wcq::kernels;

TEST_CASE("scalar and avx2 row updates are bit-identical") {
  const ModKernel* simd = avx2_kernel();
  if (!simd) {
    MESSAGE("no AVX2 kernel on this machine; scalar only");
    return;
  }
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> dist(0, static_cast<long long>(kPrime) - 1);
  for (std::size_t n : {1u, 3u, 4u, 5u, 17u, 64u, 129u}) {
    for (int t = 0; t < 50; ++t) {
      std::vector<double> a(n), b(n), p(n);
      for (std::size_t j = 0; j < n; ++j) {
        a[j] = b[j] = static_cast<double>(dist(rng));
        p[j] = static_cast<double>(dist(rng));
      }
      double c = static_cast<double>(dist(rng));
      scalar_kernel().axpy(a.data(), p.data(), c, n);
      simd->axpy(b.data(), p.data(), c, n);
      CHECK(a == b);
      for (double v : a) CHECK((v >= 0 && v < kPrime));
    }
  }
}

TEST_CASE("modular rank is kernel independent") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    std::size_t r = 1 + rng() % 40, c = 1 + rng() % 40;
    std::vector<double> m(r * c);
    for (auto& v : m) v = (rng() % 4 == 0) ? static_cast<double>(rng() % 1000) : 0.0;
    std::vector<double> m2 = m;
    std::size_t a = rank_mod_p(m, r, c, scalar_kernel());
    std::size_t b = rank_mod_p(m2, r, c, active_kernel());
    CHECK(a == b);
  }
}

TEST_CASE("modular helpers") {
  CHECK(mod_reduce(-1) == kPrime - 1);
  CHECK(mod_reduce(mod_inverse(12345) * 12345) == 1);
}
