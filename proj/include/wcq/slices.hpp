#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wcq/algebra.hpp"
#include "wcq/linalg.hpp"

namespace wcq {

struct ExponentsHash {
  std::size_t operator()(const std::vector<int>& e) const noexcept;
};

struct TruncationBox {
  int budget = 8;
  int hmin = -4;
  std::vector<std::pair<int, int>> degree_range;

  static TruncationBox standard(int arity, int budget = 8, int hmin = -4, int lo = -4, int hi = 4);
  TruncationBox with_arity(int arity) const;
  void validate(int arity) const;
  bool contains(const Multidegree& d) const;
  // Every multidegree of the box, lexicographically.
  std::vector<Multidegree> degrees() const;
};

struct SliceBasis {
  Algebra algebra;
  Multidegree degree;
  int hdeg = 0;
  int budget_limit = 0;
  std::vector<Exponents> monomials;
  std::vector<int> budgets;
  std::unordered_map<Exponents, int, ExponentsHash> index;

  std::size_t size() const { return monomials.size(); }
  int find(const Exponents& e) const;
  void push(Exponents e);
};

SliceBasis enumerate_basis(const Algebra& alg, const Multidegree& degree, int hdeg, const TruncationBox& box);

// All slice bases for the given multidegrees and homological degrees
// [hlo, hhi], from a single enumeration pass over the free variables.
class SliceFamily {
 public:
  SliceFamily() = default;
  SliceFamily(Algebra alg, std::vector<Multidegree> targets, int hlo, int hhi, int budget);

  const Algebra& algebra() const { return alg_; }
  int budget() const { return budget_; }
  int hlo() const { return hlo_; }
  int hhi() const { return hhi_; }
  const std::vector<Multidegree>& targets() const { return targets_; }
  const SliceBasis& get(const Multidegree& degree, int hdeg) const;

 private:
  Algebra alg_;
  std::vector<Multidegree> targets_;
  int hlo_ = 0, hhi_ = 0, budget_ = 0;
  std::map<std::pair<Multidegree, int>, SliceBasis> slices_;
  SliceBasis empty_;
};

// Upper bound for the budget of every monomial in a slice, from a positive
// linear functional on (multidegree, hdeg); nullopt when none is found.
class CompletenessOracle {
 public:
  explicit CompletenessOracle(const Algebra& alg);
  std::optional<int> bound(const Multidegree& degree, int hdeg) const;
  bool complete(const Multidegree& degree, int hdeg, int level) const;

 private:
  std::vector<std::vector<int>> functionals_;
};

struct SliceMap {
  ExactMatrix matrix;
  std::vector<bool> boundary;
  bool any_boundary() const;
};

// Multiplication by a homogeneous element.
SliceMap linear_map_slice(const Element& multiplier, const SliceBasis& source, const SliceBasis& target);
SliceMap differential_slice(const SliceBasis& source, const SliceBasis& target);
SliceMap algebra_map_slice(const AlgebraMap& map, const SliceBasis& source, const SliceBasis& target);

std::string degree_string(const Multidegree& d);

}  // namespace wcq
