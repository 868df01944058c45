#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wcq/check.hpp"
#include "wcq/qkernel.hpp"

namespace wcq {

// alg[eps_1..eps_n] with d eps_i = s_i. The complex K(twist) in internal
// degree n is the algebra slice complex in degree n + twist.
struct KoszulComplex {
  Algebra algebra;
  std::vector<std::size_t> exterior;
  int twist = 0;
  // Internal degree of the top term eps_1...eps_n as a twist R(top_twist).
  int top_twist = 0;

  SliceComplex slice(int degree, int hmin, int budget, const CompletenessOracle* oracle = nullptr) const;
};

KoszulComplex koszul_complex(const Algebra& alg, const std::vector<Element>& sequence, int twist = 0);

struct ResolutionPresentation {
  Algebra algebra;
  std::vector<std::size_t> adjoined;
  TruncationBox band;
  std::vector<std::string> log;

  // One line per adjoined generator: name weight hdeg d = ...
  std::string listing() const;
};

ResolutionPresentation koszul_tate(const Algebra& t, const std::vector<Element>& ideal, int hmin,
                                   const TruncationBox& box);

// K = R (x) R [u, kappa, lambda, mu, nu] with augmentation to Q(R).
struct KResolution {
  KernelAlgebra q;
  Algebra algebra;
  AlgebraMap augmentation;
  std::vector<std::size_t> copy1, copy2;  // per base variable
  std::size_t u = 0;
  std::size_t kappa = 0, lambda = 0, mu = 0, nu = 0;
};

KResolution resolution_K(const KernelAlgebra& q);
Check verify_resolution_K(const KResolution& k, const TruncationBox& box);
Check check_property_p(const Algebra& r, const TruncationBox& box);

}  // namespace wcq
