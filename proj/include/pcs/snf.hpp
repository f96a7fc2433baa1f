#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pcs/arith.hpp"
#include "pcs/errors.hpp"

namespace pcs {

/// Dense integer matrix, row-major. Zero-sized dimensions are legal and
/// behave as the empty matrix.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Int(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  Int& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  Matrix mul(const Matrix& rhs) const {
    if (cols != rhs.rows) throw DomainError("matrix product: inner dimensions differ");
    Matrix out(rows, rhs.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const Int& v = at(i, k);
        if (v == 0) continue;
        for (int j = 0; j < rhs.cols; ++j) out.at(i, j) += v * rhs.at(k, j);
      }
    return out;
  }

  std::vector<Int> apply(const std::vector<Int>& v) const {
    if (static_cast<int>(v.size()) != cols) throw DomainError("matrix apply: size mismatch");
    std::vector<Int> out(rows, Int(0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (at(i, j) != 0 && v[j] != 0) out[i] += at(i, j) * v[j];
    return out;
  }

  bool operator==(const Matrix&) const = default;
};

/// p * input * q = d, with p, q unimodular and pinv, qinv their exact
/// inverses. d is diagonal with nonnegative entries in divisibility
/// order d(0,0) | d(1,1) | ...
struct SmithResult {
  Matrix d;
  Matrix p, pinv;
  Matrix q, qinv;
  int rank = 0;

  std::vector<Int> diagonal() const {
    std::vector<Int> diag;
    int n = d.rows < d.cols ? d.rows : d.cols;
    for (int i = 0; i < n; ++i) diag.push_back(d.at(i, i));
    return diag;
  }
};

namespace snf_detail {

inline Int abs_of(const Int& v) { return v < 0 ? Int(-v) : v; }

struct Worker {
  Matrix& m;
  Matrix &p, &pinv, &q, &qinv;

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
    for (int c = 0; c < p.cols; ++c) std::swap(p.at(i, c), p.at(j, c));
    for (int r = 0; r < pinv.rows; ++r) std::swap(pinv.at(r, i), pinv.at(r, j));
  }

  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
    for (int r = 0; r < q.rows; ++r) std::swap(q.at(r, i), q.at(r, j));
    for (int c = 0; c < qinv.cols; ++c) std::swap(qinv.at(i, c), qinv.at(j, c));
  }

  // row i += k * row j
  void row_add(int i, int j, const Int& k) {
    if (k == 0) return;
    for (int c = 0; c < m.cols; ++c) m.at(i, c) += k * m.at(j, c);
    for (int c = 0; c < p.cols; ++c) p.at(i, c) += k * p.at(j, c);
    for (int r = 0; r < pinv.rows; ++r) pinv.at(r, j) -= k * pinv.at(r, i);
  }

  // col j += k * col i
  void col_add(int j, int i, const Int& k) {
    if (k == 0) return;
    for (int r = 0; r < m.rows; ++r) m.at(r, j) += k * m.at(r, i);
    for (int r = 0; r < q.rows; ++r) q.at(r, j) += k * q.at(r, i);
    for (int c = 0; c < qinv.cols; ++c) qinv.at(i, c) -= k * qinv.at(j, c);
  }

  void row_negate(int i) {
    for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
    for (int c = 0; c < p.cols; ++c) p.at(i, c) = -p.at(i, c);
    for (int r = 0; r < pinv.rows; ++r) pinv.at(r, i) = -pinv.at(r, i);
  }
};

}  // namespace snf_detail

/// Smith normal form with full transform tracking. Pivoting picks the
/// smallest nonzero magnitude; elimination keeps the remainder as the
/// new pivot, so entries shrink monotonically and termination is by
/// descent on |pivot|.
inline SmithResult smith_normal_form(Matrix input) {
  SmithResult r;
  r.p = Matrix::identity(input.rows);
  r.pinv = Matrix::identity(input.rows);
  r.q = Matrix::identity(input.cols);
  r.qinv = Matrix::identity(input.cols);
  Matrix& m = input;
  snf_detail::Worker w{m, r.p, r.pinv, r.q, r.qinv};

  int t = 0;
  int bound = m.rows < m.cols ? m.rows : m.cols;
  while (t < bound) {
    int pr = -1, pc = -1;
    for (int i = t; i < m.rows; ++i)
      for (int j = t; j < m.cols; ++j)
        if (m.at(i, j) != 0 &&
            (pr < 0 || snf_detail::abs_of(m.at(i, j)) < snf_detail::abs_of(m.at(pr, pc)))) {
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    w.row_swap(t, pr);
    w.col_swap(t, pc);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < m.rows; ++i) {
        if (m.at(i, t) == 0) continue;
        Int quot = m.at(i, t) / m.at(t, t);
        w.row_add(i, t, -quot);
        if (m.at(i, t) != 0) {  // remainder is strictly smaller: promote it
          w.row_swap(t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < m.cols; ++j) {
        if (m.at(t, j) == 0) continue;
        Int quot = m.at(t, j) / m.at(t, t);
        w.col_add(j, t, -quot);
        if (m.at(t, j) != 0) {
          w.col_swap(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      for (int i = t + 1; i < m.rows && clean; ++i)
        for (int j = t + 1; j < m.cols && clean; ++j)
          if (m.at(i, j) % m.at(t, t) != 0) {
            w.row_add(t, i, Int(1));  // pulls the bad entry into the pivot row
            clean = false;
          }
    }
    if (m.at(t, t) < 0) w.row_negate(t);
    ++t;
  }
  r.rank = t;
  r.d = std::move(input);
  return r;
}

}  // namespace pcs
