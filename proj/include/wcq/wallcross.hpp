#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wcq/check.hpp"
#include "wcq/qkernel.hpp"

namespace wcq {

// Q localized at p(x_a) and s(y_b). Both units are pinned, so the remaining
// variables carry the budget and the chart complexes are finite per level.
struct ChartKernel {
  std::size_t x = 0, y = 0;    // base variables
  std::size_t xa = 0, zb = 0;  // their images in Q
  std::string label;
  KernelAlgebra q;
  Algebra algebra;
};

std::vector<ChartKernel> restrict_kernel(const Algebra& r);

struct ChartComparison {
  std::string label;
  bool iso_case = false;
  Check check;
};

struct FiberComparison {
  int invariant_budget = 0;
  std::vector<std::string> invariants;      // minimal degree-0 monomials of R
  std::vector<std::string> certificates;    // one per positive variable
  std::vector<ChartComparison> charts;
  Check check;
};

FiberComparison fiber_comparison(const Algebra& r, const TruncationBox& box);

struct ChartHomology {
  std::string label;
  std::vector<HomologyReport> reports;
  Check check;
};

ChartHomology chart_homology(const Algebra& r, const ChartKernel& chart, const TruncationBox& box);

std::vector<Check> mukai_verify(int l, const TruncationBox& box);

}  // namespace wcq
