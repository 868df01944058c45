#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wcq/algebra.hpp"
#include "wcq/slices.hpp"

namespace wcq {

struct GeneratorDecl {
  std::string name;
  int weight = 0;
  int hdeg = -1;
  std::string differential;
};

// `tasks[] = name key=value ...`
struct TaskSpec {
  std::string name;
  std::map<std::string, std::string> params;
  int line = 0;
};

struct Scenario {
  std::string label = "scenario";
  std::vector<std::pair<std::string, int>> variables;
  std::vector<GeneratorDecl> generators;
  TruncationBox box = TruncationBox::standard(1);
  std::vector<TaskSpec> tasks;
  std::string output = "text";

  Algebra algebra() const;
};

const std::vector<std::string>& known_tasks();

// Line-oriented `key = value`; '#' starts a comment. Errors report line and
// column of the offending text.
Scenario parse_scenario(std::string_view text);

// `LO..HI`
std::pair<int, int> parse_range(std::string_view s);

}  // namespace wcq
