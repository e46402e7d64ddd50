#include "gkv/matrixnf.hpp"

#include "gkv/errors.hpp"

namespace gkv {

MatrixNF MatrixNF::identity(const FieldPtr& field, int n) {
  MatrixNF m(field, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = NFElem(field, Rational(1));
  return m;
}

MatrixNF MatrixNF::operator*(const MatrixNF& o) const {
  if (cols_ != o.rows_) throw BadInput("matrix product shape mismatch");
  MatrixNF r(field_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const NFElem& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) += aik * o.at(k, j);
      }
    }
  return r;
}

MatrixNF MatrixNF::operator+(const MatrixNF& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw BadInput("matrix sum shape mismatch");
  MatrixNF r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

MatrixNF MatrixNF::operator-(const MatrixNF& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw BadInput("matrix diff shape mismatch");
  MatrixNF r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

MatrixNF MatrixNF::scaled(const NFElem& c) const {
  MatrixNF r = *this;
  for (auto& x : r.a_) x *= c;
  return r;
}

MatrixNF MatrixNF::transpose() const {
  MatrixNF r(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

std::vector<NFElem> MatrixNF::apply(const std::vector<NFElem>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw BadInput("matrix apply shape mismatch");
  std::vector<NFElem> r(rows_, NFElem(field_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (at(i, j).is_zero() || v[j].is_zero()) continue;
      r[i] += at(i, j) * v[j];
    }
  return r;
}

bool operator==(const MatrixNF& x, const MatrixNF& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
  for (size_t i = 0; i < x.a_.size(); ++i)
    if (x.a_[i] != y.a_[i]) return false;
  return true;
}

std::vector<int> MatrixNF::rref() {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int piv = -1;
    for (int i = r; i < rows_; ++i)
      if (!at(i, c).is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols_; ++j) std::swap(at(piv, j), at(r, j));
    NFElem inv = at(r, c).inv();
    for (int j = c; j < cols_; ++j) at(r, j) *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || at(i, c).is_zero()) continue;
      NFElem f = at(i, c);
      for (int j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int MatrixNF::rank() const {
  MatrixNF m = *this;
  return static_cast<int>(m.rref().size());
}

NFElem MatrixNF::det() const {
  if (rows_ != cols_) throw BadInput("determinant of non-square matrix");
  MatrixNF m = *this;
  NFElem d(field_, Rational(1));
  int n = rows_;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!m.at(i, c).is_zero()) { piv = i; break; }
    if (piv < 0) return NFElem(field_);
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    NFElem inv = m.at(c, c).inv();
    for (int i = c + 1; i < n; ++i) {
      if (m.at(i, c).is_zero()) continue;
      NFElem f = m.at(i, c) * inv;
      for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

MatrixNF MatrixNF::inverse() const {
  if (rows_ != cols_) throw SingularMatrix("inverse of non-square matrix");
  int n = rows_;
  MatrixNF aug(field_, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, n + i) = NFElem(field_, Rational(1));
  }
  auto pivots = aug.rref();
  if (static_cast<int>(pivots.size()) != n || pivots[n - 1] != n - 1)
    throw SingularMatrix("matrix is singular");
  MatrixNF inv(field_, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

std::vector<std::vector<NFElem>> kernel_basis(const MatrixNF& m) {
  MatrixNF e = m;
  std::vector<int> pivots = e.rref();
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<NFElem>> basis;
  const FieldPtr& F = m.field();
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<NFElem> v(m.cols(), NFElem(F));
    v[free] = NFElem(F, Rational(1));
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -e.at(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve_linear(const MatrixNF& m, const std::vector<NFElem>& b, std::vector<NFElem>& x) {
  if (static_cast<int>(b.size()) != m.rows()) throw BadInput("solve shape mismatch");
  MatrixNF aug(m.field(), m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  auto pivots = aug.rref();
  // inconsistent iff a pivot lands in the augmented column
  if (!pivots.empty() && pivots.back() == m.cols()) return false;
  x.assign(m.cols(), NFElem(m.field()));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), m.cols());
  return true;
}

}  // namespace gkv
