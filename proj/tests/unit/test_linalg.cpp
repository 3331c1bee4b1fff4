#include "nemcone/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace nemcone;

namespace {

RatMatrix random_matrix(std::mt19937& rng, Index rows, Index cols, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  RatMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

// Rank by brute force: the largest k with a nonzero k×k minor.
Rational det(RatMatrix m) {
  const Index n = m.rows();
  Rational d = 1;
  for (Index c = 0; c < n; ++c) {
    Index p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.row(p).swap(m.row(c));
      d = -d;
    }
    d *= m(c, c);
    for (Index r = c + 1; r < n; ++r) m.row(r) -= (m(r, c) / m(c, c)) * m.row(c);
  }
  return d;
}

Index minor_rank(const RatMatrix& m) {
  const Index rows = m.rows(), cols = m.cols();
  for (Index k = std::min(rows, cols); k > 0; --k) {
    for (unsigned rs = 0; rs < (1u << rows); ++rs) {
      if (__builtin_popcount(rs) != k) continue;
      for (unsigned cs = 0; cs < (1u << cols); ++cs) {
        if (__builtin_popcount(cs) != k) continue;
        RatMatrix sub(k, k);
        Index a = 0;
        for (Index i = 0; i < rows; ++i) {
          if (!((rs >> i) & 1u)) continue;
          Index b = 0;
          for (Index j = 0; j < cols; ++j)
            if ((cs >> j) & 1u) sub(a, b++) = m(i, j);
          ++a;
        }
        if (det(sub) != 0) return k;
      }
    }
  }
  return 0;
}

}  // namespace

TEST_CASE("rationals parse and print exactly") {
  CHECK(parse_rational("5/3") == Rational(5, 3));
  CHECK(parse_rational(" -4/6 ") == Rational(-2, 3));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(format_vector(make_vector({1, Rational(-1, 2), 0})) == "(1, -1/2, 0)");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("primitive keeps direction and line_canonical fixes the sign") {
  CHECK(equal(primitive(make_vector({Rational(-1, 3), 0, Rational(-4, 3)})), make_vector({-1, 0, -4})));
  CHECK(equal(primitive(make_vector({6, 4, 2})), make_vector({3, 2, 1})));
  CHECK(equal(line_canonical(make_vector({0, -2, 4})), make_vector({0, 1, -2})));
  CHECK_THROWS(primitive(zero_vector(3)));
}

TEST_CASE("Bareiss rank agrees over Integer and Rational and with minors") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const Index r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    RatMatrix m = random_matrix(rng, r, c, -2, 2);
    if (trial % 3 == 0 && r > 1) m.row(r - 1) = m.row(0) * Rational(-2);
    Matrix<Integer> mi(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) mi(i, j) = numerator(m(i, j));
    const Index expected = minor_rank(m);
    CHECK(rank(m) == expected);
    CHECK(rank(mi) == expected);
    CHECK(rank(RatMatrix(m.transpose())) == expected);
  }
}

TEST_CASE("kernel basis spans the null space") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    RatMatrix m = random_matrix(rng, 3, 5, -3, 3);
    auto ker = kernel_basis(m);
    CHECK(static_cast<Index>(ker.size()) == m.cols() - rank(m));
    for (const auto& v : ker) CHECK(is_zero(m * v));
    CHECK(rank(ker, m.cols()) == static_cast<Index>(ker.size()));
  }
}

TEST_CASE("solve returns exact solutions or reports inconsistency") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    RatMatrix m = random_matrix(rng, 4, 3, -4, 4);
    RatVector x = random_matrix(rng, 3, 1, -5, 5).col(0);
    RatVector b = m * x;
    auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(equal(m * *sol, b));
  }
  RatMatrix m(2, 1);
  m << 1, 1;
  CHECK_FALSE(solve(m, make_vector({1, 2})).has_value());
  CHECK_THROWS_AS(solve(m, make_vector({1})), std::invalid_argument);
}

TEST_CASE("span helpers") {
  std::vector<RatVector> rows{make_vector({1, 2, 3}), make_vector({2, 4, 6}), make_vector({0, 1, 1})};
  auto basis = canonical_span_basis(rows, 3);
  CHECK(basis.size() == 2);
  auto perp = orthogonal_complement(rows, 3);
  REQUIRE(perp.size() == 1);
  for (const auto& r : rows) CHECK(dot(r, perp[0]) == 0);
  CHECK(in_span(rows, make_vector({1, 3, 4})));
  CHECK_FALSE(in_span(rows, make_vector({0, 0, 1})));
  RatVector p = project_out(make_vector({1, 0, 0}), perp);
  CHECK(dot(p, perp[0]) == 0);
}
