#pragma once

#include <vector>

#include "gkv/numberfield.hpp"

namespace gkv {

// Dense matrix over a number field, exact arithmetic throughout.
class MatrixNF {
 public:
  MatrixNF() : rows_(0), cols_(0) {}
  MatrixNF(FieldPtr field, int rows, int cols)
      : field_(std::move(field)), rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * cols, NFElem(field_)) {}

  static MatrixNF identity(const FieldPtr& field, int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldPtr& field() const { return field_; }

  NFElem& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const NFElem& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  MatrixNF operator*(const MatrixNF& o) const;
  MatrixNF operator+(const MatrixNF& o) const;
  MatrixNF operator-(const MatrixNF& o) const;
  MatrixNF scaled(const NFElem& c) const;
  MatrixNF transpose() const;
  std::vector<NFElem> apply(const std::vector<NFElem>& v) const;  // matrix * column

  friend bool operator==(const MatrixNF& x, const MatrixNF& y);

  // In-place reduced row echelon form; returns the pivot column list.
  std::vector<int> rref();

  NFElem det() const;
  MatrixNF inverse() const;  // SingularMatrix when not invertible

  int rank() const;

 private:
  FieldPtr field_;
  int rows_, cols_;
  std::vector<NFElem> a_;
};

// Echelon-normalized basis of the right kernel {v : m v = 0}.  Each basis
// vector has a 1 in its free column and zeros in the other free columns, so
// the output is deterministic; cardinality = cols - rank.
std::vector<std::vector<NFElem>> kernel_basis(const MatrixNF& m);

// Solve m x = b; empty optional-like flag via bool return, solution written to x.
bool solve_linear(const MatrixNF& m, const std::vector<NFElem>& b, std::vector<NFElem>& x);

}  // namespace gkv
