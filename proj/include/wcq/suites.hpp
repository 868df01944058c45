#pragma once

#include <string>
#include <vector>

#include "wcq/report.hpp"
#include "wcq/scenario.hpp"

namespace wcq {

const std::vector<std::string>& suite_names();

// mukai | twopoints | qnotasheaf | affine-base; `l` only matters for mukai.
Report verify_suite(const std::string& name, int l, const TruncationBox& box);

// Rejects unknown or malformed task parameters before anything runs.
void validate_tasks(const Algebra& r, const std::vector<TaskSpec>& tasks);

// Every task runs; a task that raises becomes a failing (or, for hypothesis
// errors, a hypothesis-violation) check and its siblings still run.
Report run_tasks(const Algebra& r, const std::vector<TaskSpec>& tasks, const TruncationBox& box);
Report run_scenario(const Scenario& sc);

}  // namespace wcq
