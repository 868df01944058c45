#pragma once

#include <string>
#include <vector>

#include "wcq/check.hpp"
#include "wcq/slices.hpp"

namespace wcq {

struct WeightSummary {
  std::vector<int> positive;
  std::vector<int> negative;
  int mu_plus = 0;
  int mu_minus = 0;
  bool calabi_yau = true;
};

WeightSummary compute_mu(const Algebra& t);

enum class WeightMode { Plus, Minus, Wallcross };
const char* weight_mode_name(WeightMode m);

// plus: generators of degree <= 0; minus: >= 0; wallcross: = 0.
Check check_generator_weights(const Algebra& r, WeightMode mode);

struct VanishingReport {
  Check check;
  // (R/x)_{b+1-i} dims summed over homological degrees, per i in [a, b].
  std::vector<std::size_t> dims;
  // The same quantity at i = b + 1.
  std::size_t probe = 0;
};

VanishingReport sod_vanishing(const Algebra& r, int a, int b, const TruncationBox& box);

struct EndoReport {
  Check check;
  HomologyReport endo;       // Hom-complex homology, internal degree 0
  HomologyReport fixed;      // R/(x, y) homology, internal degree 0
};

EndoReport endo_ring(const Algebra& r, const TruncationBox& box);

struct SodPiece {
  int twist = 0;
  std::string description;
};

struct SodDescription {
  char sign = '0';
  int count = 0;
  std::vector<SodPiece> copies;
  std::string wallcross;
  std::string shape;
  Check check;
};

SodDescription sod_report(const Algebra& r, const TruncationBox& box);

}  // namespace wcq
