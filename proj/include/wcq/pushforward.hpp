#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wcq/check.hpp"
#include "wcq/qkernel.hpp"

namespace wcq {

enum class Chamber { Plus, Minus };
const char* chamber_name(Chamber c);

// Same variables and differentials with every internal weight negated.
Algebra reverse_grading(const Algebra& r);

// Alternating Cech complex of Q localized at the p-images of the positive
// variables; the term for a subset of size c sits in Cech degree c - 1.
// The minus chamber is realized on the grading-reversed presentation.
struct CechComplex {
  KernelAlgebra q;
  Chamber side = Chamber::Plus;
  int twist = 0;
  std::vector<std::size_t> inverted;               // Q variables
  std::vector<std::vector<std::size_t>> subsets;   // positions into `inverted`
  std::vector<Algebra> terms;

  std::size_t length() const { return inverted.size(); }
  // Budget headroom of the localized terms (see budget_margin).
  int margin() const;
  // Total complex of Q_S^b in bidegree (twist, n), total degree b + c - 1.
  SliceComplex total(int n, int hmin, int budget) const;
  // Cech differential only, on Q^b.
  SliceComplex row(int n, int b, int budget) const;
};

CechComplex cech_complex(const Algebra& r, Chamber side, int twist);

struct WindowImageReport {
  int twist = 0;
  Chamber side = Chamber::Plus;
  bool in_window = false;
  bool hypothesis_ok = false;
  bool match = false;
  Check check;
};

WindowImageReport window_image(const Algebra& r, int twist, const TruncationBox& box, Chamber side = Chamber::Plus);

struct WindowSummary {
  Chamber side = Chamber::Plus;
  std::vector<int> range;
  std::vector<WindowImageReport> images;
  Check check;
};

WindowSummary window_membership(const Algebra& r, Chamber side, const TruncationBox& box);

}  // namespace wcq
