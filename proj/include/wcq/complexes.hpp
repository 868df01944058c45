#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wcq/linalg.hpp"
#include "wcq/slices.hpp"

namespace wcq {

enum class Verdict { Pass, Fail, Inconclusive, HypothesisViolation, Info };

const char* verdict_name(Verdict v);
// Pass < Info < Inconclusive < HypothesisViolation < Fail
Verdict combine(Verdict a, Verdict b);

// Spaces C_lo .. C_hi (cohomological indexing, d raises the index).
// Each basis element carries its budget; homology is computed on the band
// F_N C with N = budget - margin (N = budget when d preserves budgets).
struct SliceComplex {
  Multidegree degree;
  int lo = 0;
  int report_lo = 0;
  int budget = 0;
  int margin = 0;
  std::vector<std::vector<int>> budgets;
  std::vector<ExactMatrix> diffs;
  std::vector<bool> complete;

  int hi() const { return lo + static_cast<int>(budgets.size()) - 1; }
  std::size_t dim(int h) const;
  bool graded() const;
  void check() const;
  SliceComplex shifted(int k) const;
};

int budget_margin(const Algebra& alg);

SliceComplex algebra_slice_complex(const SliceFamily& fam, const Multidegree& degree, int report_lo,
                                   const CompletenessOracle* oracle = nullptr);

struct HomologyEntry {
  int hdeg = 0;
  std::size_t dim = 0;
  bool certified = false;
};

struct HomologyReport {
  Multidegree degree;
  int level = 0;
  bool graded = false;
  std::vector<HomologyEntry> entries;
  std::string description;

  std::size_t at(int h) const;
  bool certified(int h) const;
  bool all_zero() const;
  bool any_certified_nonzero() const;
};

HomologyReport homology_dims(const SliceComplex& c, std::optional<int> level = std::nullopt);

// maps[k] : C_{lo+k} -> D_{lo+k}; both complexes share lo and hi.
using SliceChainMap = std::vector<ExactMatrix>;

bool commutes(const SliceComplex& c, const SliceComplex& d, const SliceChainMap& f, std::string* why = nullptr);
SliceComplex cone(const SliceComplex& c, const SliceComplex& d, const SliceChainMap& f);

struct QuasiIsoResult {
  Verdict verdict = Verdict::Pass;
  HomologyReport cone_homology;
};

QuasiIsoResult compare_quasi_iso(const SliceComplex& c, const SliceComplex& d, const SliceChainMap& f);

// Chain map between algebra slice complexes induced by an algebra map.
SliceChainMap algebra_chain_map(const AlgebraMap& map, const SliceFamily& source, const Multidegree& sdeg,
                                const SliceFamily& target, bool* boundary = nullptr);

}  // namespace wcq
