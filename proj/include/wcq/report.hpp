#pragma once

#include <string>
#include <vector>

#include "wcq/check.hpp"
#include "wcq/slices.hpp"

namespace wcq {

struct TaskResult {
  std::string task;
  std::vector<Check> checks;
  std::string error;  // empty unless the task raised
  double seconds = 0;
};

struct Report {
  std::string subject;
  TruncationBox box;
  std::vector<TaskResult> tasks;

  Verdict verdict() const;
};

// 0 pass, 1 fail or inconclusive, 2 hypothesis violation only.
int exit_code(const Report& r);

// Deterministic renderings; seconds are printed only when `timing` is set.
std::string render_text(const Report& r, bool timing = false);
std::string render_structured(const Report& r, bool timing = false);

}  // namespace wcq
