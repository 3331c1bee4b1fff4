#include "nemcone/linalg.hpp"

#include <boost/integer/common_factor.hpp>

namespace nemcone {

namespace {

Integer lcm_of_denominators(const RatVector& v) {
  Integer l = 1;
  for (Index k = 0; k < v.size(); ++k) l = boost::integer::lcm(l, Integer(denominator(v(k))));
  return l;
}

}  // namespace

Index rank(const RatMatrix& m) {
  Matrix<Integer> z(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r) {
    Integer l = lcm_of_denominators(m.row(r).transpose());
    for (Index c = 0; c < m.cols(); ++c)
      z(r, c) = numerator(m(r, c)) * (l / denominator(m(r, c)));
  }
  return bareiss_rank(std::move(z));
}

Index rank(const std::vector<RatVector>& rows, Index cols) {
  if (rows.empty()) return 0;
  return rank(stack_rows(rows, cols));
}

std::optional<RatVector> solve_columns(const std::vector<RatVector>& columns,
                                       const RatVector& target) {
  RatMatrix m(target.size(), static_cast<Index>(columns.size()));
  for (size_t k = 0; k < columns.size(); ++k) {
    if (columns[k].size() != target.size())
      throw std::invalid_argument("solve_columns: dimension mismatch");
    m.col(static_cast<Index>(k)) = columns[k];
  }
  return solve(m, target);
}

RatVector primitive(const RatVector& v) {
  if (is_zero(v)) throw std::invalid_argument("zero vector has no primitive form");
  Integer l = lcm_of_denominators(v);
  Integer g = 0;
  for (Index k = 0; k < v.size(); ++k) {
    Integer z = numerator(v(k)) * (l / denominator(v(k)));
    g = boost::integer::gcd(g, z);
  }
  if (g < 0) g = -g;
  RatVector out(v.size());
  for (Index k = 0; k < v.size(); ++k)
    out(k) = Rational(numerator(v(k)) * (l / denominator(v(k))) / g);
  return out;
}

RatVector line_canonical(const RatVector& v) {
  RatVector p = primitive(v);
  for (Index k = 0; k < p.size(); ++k) {
    if (p(k) == 0) continue;
    if (p(k) < 0) p = -p;
    break;
  }
  return p;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dot: dimension mismatch " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  Rational s = 0;
  for (Index k = 0; k < a.size(); ++k) s += a(k) * b(k);
  return s;
}

std::vector<RatVector> canonical_span_basis(const std::vector<RatVector>& rows, Index dim) {
  std::vector<RatVector> out;
  if (rows.empty()) return out;
  Echelon<Rational> e = rref(stack_rows(rows, dim));
  for (Index r = 0; r < e.reduced.rows(); ++r)
    out.push_back(line_canonical(e.reduced.row(r).transpose()));
  return out;
}

std::vector<RatVector> orthogonal_complement(const std::vector<RatVector>& rows, Index dim) {
  std::vector<RatVector> out;
  if (rows.empty()) {
    for (Index k = 0; k < dim; ++k) out.push_back(unit_vector(dim, k));
    return out;
  }
  for (const auto& v : kernel_basis(stack_rows(rows, dim))) out.push_back(v);
  return canonical_span_basis(out, dim);
}

RatVector project_out(const RatVector& v, const std::vector<RatVector>& basis) {
  if (basis.empty()) return v;
  Index k = static_cast<Index>(basis.size());
  RatMatrix b(v.size(), k);
  for (Index c = 0; c < k; ++c) b.col(c) = basis[static_cast<size_t>(c)];
  RatMatrix gram = b.transpose() * b;
  RatVector rhs = b.transpose() * v;
  auto coeffs = solve(gram, rhs);
  if (!coeffs) throw std::logic_error("project_out: singular Gram matrix");
  return v - b * *coeffs;
}

bool in_span(const std::vector<RatVector>& rows, const RatVector& v) {
  if (is_zero(v)) return true;
  if (rows.empty()) return false;
  std::vector<RatVector> ext = rows;
  ext.push_back(v);
  return rank(ext, v.size()) == rank(rows, v.size());
}

}  // namespace nemcone
