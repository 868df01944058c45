#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Randomized algebraic identities shared by the property tests and the
// acceptance binary.
namespace wcq::props {

struct Outcome {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
};

Outcome graded_commutativity(int cases);
Outcome leibniz(int cases);
Outcome d_squared(int cases);
Outcome canonical_idempotence(int cases);
Outcome rank_vs_naive(int cases);
Outcome simd_vs_scalar(int cases);

std::vector<Outcome> all(int cases);

}  // namespace wcq::props
