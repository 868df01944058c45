#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wcq/complexes.hpp"

namespace wcq {

struct TableEntry {
  Multidegree degree;
  int hdeg = 0;
  std::size_t dim = 0;
  bool certified = false;
};

struct HilbertTable {
  std::string label;
  std::vector<TableEntry> entries;
};

// Outcome of one verification: verdict, free-form notes, and tables.
struct Check {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::vector<std::string> notes;
  std::vector<HilbertTable> tables;

  void note(std::string s) { notes.push_back(std::move(s)); }
  void merge(Verdict v) { verdict = combine(verdict, v); }
  void fail(std::string why) {
    merge(Verdict::Fail);
    note(std::move(why));
  }
  bool passed() const { return verdict == Verdict::Pass || verdict == Verdict::Info; }
};

void add_report(HilbertTable& t, const HomologyReport& r);

// Homology of every slice complex of `alg` over `degrees`, reported on
// [hmin, 0]; the families are built one degree lower.
std::vector<HomologyReport> algebra_homology(const Algebra& alg, const std::vector<Multidegree>& degrees, int hmin,
                                             int budget);

// Worker count for slice-parallel loops; results are always collected by index.
void set_threads(int n);
int threads();
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace wcq
