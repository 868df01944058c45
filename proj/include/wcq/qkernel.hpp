#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wcq/algebra.hpp"
#include "wcq/check.hpp"
#include "wcq/slices.hpp"

namespace wcq {

// Variables of an arity-1 algebra sorted by role.
struct BaseSplit {
  std::vector<std::size_t> positive;    // hdeg 0, weight > 0
  std::vector<std::size_t> negative;    // hdeg 0, weight < 0
  std::vector<std::size_t> generators;  // hdeg < 0
};

BaseSplit split_base(const Algebra& r);

enum class Role : char { X = 'x', Z = 'z', U = 'u', E = 'e', G = 'g' };

struct KernelAlgebra {
  Algebra base;
  Algebra algebra;
  bool delta = false;
  std::size_t u = 0;
  AlgebraMap p;
  AlgebraMap s;
  // Q only: the inclusion into Delta(R).
  std::optional<AlgebraMap> eta;
  // Per variable of `algebra`: role and originating base variable (u has none).
  std::vector<Role> roles;
  std::vector<std::optional<std::size_t>> origin;

  std::optional<std::size_t> image_of(std::size_t base_var) const;
};

KernelAlgebra build_delta(const Algebra& r);
KernelAlgebra build_q(const Algebra& r);

enum class Side { P, S };
const char* side_name(Side s);

// Bigraded box [hmin, 0] x range^2 used by the structural checks.
TruncationBox kernel_box(const TruncationBox& box);

Check check_localization_iso(const KernelAlgebra& q, const Element& t, Side side, const TruncationBox& box);
// Both sides at once: invert p(t1) and s(t2) for positive t1, t2.
Check check_faithfulness(const KernelAlgebra& q, const TruncationBox& box);
Check check_basechange(const Algebra& r, const TruncationBox& box);
Check check_middle_invariants(const KernelAlgebra& q, const TruncationBox& box);
Check check_eta_injective(const KernelAlgebra& q, const TruncationBox& box);

}  // namespace wcq
