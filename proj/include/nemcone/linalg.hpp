#pragma once

#include "nemcone/rational.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nemcone {

template <typename Scalar>
struct Echelon {
  Matrix<Scalar> reduced;       // reduced row echelon form, zero rows dropped
  std::vector<Index> pivots;    // pivot column of each row of `reduced`
};

/// Fraction-free (Bareiss) elimination. Works over any integral domain in
/// which the Bareiss quotients are exact, e.g. Integer or Rational.
template <typename Scalar>
Index bareiss_rank(Matrix<Scalar> m) {
  Index r = 0;
  Scalar prev(1);
  for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Index p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) m.row(p).swap(m.row(r));
    for (Index i = r + 1; i < m.rows(); ++i) {
      for (Index j = c + 1; j < m.cols(); ++j)
        m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

template <typename Scalar>
Index rank(const Matrix<Scalar>& m) {
  return bareiss_rank(m);
}

/// Rows are scaled to integers first so that elimination runs over Integer.
Index rank(const RatMatrix& m);
Index rank(const std::vector<RatVector>& rows, Index cols);

/// Gauss-Jordan over a field.
template <typename Scalar>
Echelon<Scalar> rref(Matrix<Scalar> m) {
  Echelon<Scalar> out;
  Index r = 0;
  for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Index p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) m.row(p).swap(m.row(r));
    Scalar inv = Scalar(1) / m(r, c);
    m.row(r) *= inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Scalar f = m(i, c);
      m.row(i) -= f * m.row(r);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = m.topRows(r);
  return out;
}

/// Right kernel basis, one vector per free column (unit entry at that column).
template <typename Scalar>
std::vector<Vector<Scalar>> kernel_basis(const Matrix<Scalar>& m) {
  Echelon<Scalar> e = rref(m);
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
  for (Index p : e.pivots) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<Vector<Scalar>> basis;
  for (Index f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    Vector<Scalar> v = Vector<Scalar>::Constant(m.cols(), Scalar(0));
    v(f) = 1;
    for (size_t r = 0; r < e.pivots.size(); ++r)
      v(e.pivots[r]) = -e.reduced(static_cast<Index>(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// A particular solution of m·x = target (free variables set to zero), or
/// nullopt when the system is inconsistent.
template <typename Scalar>
std::optional<Vector<Scalar>> solve(const Matrix<Scalar>& m, const Vector<Scalar>& target) {
  if (m.rows() != target.size())
    throw std::invalid_argument("solve: matrix has " + std::to_string(m.rows()) +
                                " rows but target has dimension " +
                                std::to_string(target.size()));
  Matrix<Scalar> aug(m.rows(), m.cols() + 1);
  aug << m, target;
  Echelon<Scalar> e = rref(aug);
  Vector<Scalar> x = Vector<Scalar>::Constant(m.cols(), Scalar(0));
  for (size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;
    x(e.pivots[r]) = e.reduced(static_cast<Index>(r), m.cols());
  }
  return x;
}

/// Solves Σ x_k·columns[k] = target.
std::optional<RatVector> solve_columns(const std::vector<RatVector>& columns,
                                       const RatVector& target);

/// Coprime integer vector positively proportional to v. The sign of v is
/// kept, since rays are directed.
RatVector primitive(const RatVector& v);

/// Primitive form of an undirected line: additionally the first nonzero entry
/// is made positive.
RatVector line_canonical(const RatVector& v);

Rational dot(const RatVector& a, const RatVector& b);

/// Canonical basis of span(rows): reduced echelon rows, each line-canonical.
std::vector<RatVector> canonical_span_basis(const std::vector<RatVector>& rows, Index dim);

/// Basis of the orthogonal complement of span(rows), line-canonical.
std::vector<RatVector> orthogonal_complement(const std::vector<RatVector>& rows, Index dim);

/// Orthogonal projection of v onto the complement of span(basis).
RatVector project_out(const RatVector& v, const std::vector<RatVector>& basis);

bool in_span(const std::vector<RatVector>& rows, const RatVector& v);

}  // namespace nemcone
