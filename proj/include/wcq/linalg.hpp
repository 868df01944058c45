#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "wcq/algebra.hpp"

namespace wcq {

// Sparse rational matrix stored by columns.
class ExactMatrix {
 public:
  using Entry = std::pair<std::uint32_t, Rational>;
  using Column = std::vector<Entry>;

  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_dense(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }

  void add(std::size_t r, std::size_t c, const Rational& v);
  const Column& column(std::size_t c) const;
  Rational at(std::size_t r, std::size_t c) const;
  std::size_t nonzeros() const;
  bool is_zero() const;

  ExactMatrix select_columns(const std::vector<bool>& keep) const;
  ExactMatrix select_rows(const std::vector<bool>& keep) const;
  std::vector<std::vector<Rational>> dense() const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

 private:
  void tidy(std::size_t c) const;
  std::size_t rows_ = 0;
  mutable std::vector<Column> cols_;
  mutable std::vector<bool> dirty_;
};

// Exact rank over Q. A dense mod-p pass may certify full rank first.
std::size_t rank(const ExactMatrix& m);
// Fraction-free sparse elimination only (int64 with a GMP fallback).
std::size_t rank_exact(const ExactMatrix& m);
// Rank mod p of the integer-scaled matrix; a lower bound for the rational rank.
std::size_t rank_modular(const ExactMatrix& m);

// Basis of the kernel as column vectors, from the reduced row echelon form.
std::vector<std::vector<Rational>> nullspace(const ExactMatrix& m);

// Reduced row echelon form of a dense rational matrix; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a);

}  // namespace wcq
