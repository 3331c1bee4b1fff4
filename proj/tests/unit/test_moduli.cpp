#include "nemcone/moduli.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace nemcone;

namespace {

// Orbits of two-sided splittings of {1..n} under permutations of the last
// n−m points, counted directly from subsets.
int boundary_orbits(int n, int m) {
  std::set<std::pair<std::pair<int, PointSet>, std::pair<int, PointSet>>> seen;
  const PointSet named = (PointSet(1) << m) - 1;
  for (PointSet side = 1; side < (PointSet(1) << n) - 1; ++side) {
    const int size = __builtin_popcount(side);
    if (size < 2 || size > n - 2) continue;
    const PointSet other = ((PointSet(1) << n) - 1) & ~side;
    std::pair<int, PointSet> a{size, side & named}, b{n - size, other & named};
    seen.insert(std::minmax(a, b));
  }
  return static_cast<int>(seen.size());
}

// All permutations of the points m+1..n.
std::vector<std::vector<int>> symmetric_group(int n, int m) {
  std::vector<int> p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin() + m, p.end()));
  return out;
}

// Checks π_*F against Σ_g g·F = π^*π_*F modulo the Keel relations, where
// π^* sends b_L to the sum of the boundary divisors over L.
bool pushforward_oracle(const BoundarySum& f, const SpaceId& dst) {
  const SpaceId top = f.space;
  BoundarySum sym(top);
  for (const auto& p : symmetric_group(top.n, dst.m)) sym = sym + permute_points(f, p);
  DivisorClass pushed = quotient_pushforward(f, dst);
  BoundarySum down = as_boundary_sum(relations_and_basis(dst), pushed);
  BoundarySum up(top);
  for (const auto& l : enumerate_boundaries(top)) {
    auto it = down.terms.find(label_of_side(dst, l.T));
    if (it != down.terms.end()) up.add(l, it->second);
  }
  return in_span(keel_relations(top.n), sym.to_vector() - up.to_vector());
}

BoundarySum random_sum(std::mt19937& rng, int n) {
  BoundarySum f(make_space(n, n));
  auto labels = enumerate_boundaries(f.space);
  std::uniform_int_distribution<size_t> pick(0, labels.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int k = 0; k < 5; ++k) f.add(labels[pick(rng)], coef(rng));
  return f;
}

}  // namespace

TEST_CASE("space validation") {
  CHECK_THROWS_WITH(make_space(3, 0), doctest::Contains("n ≥ 4"));
  CHECK(make_space(6, 5) == make_space(6, 6));
  CHECK(to_string(make_space(7, 1)) == "X_{7,1}");
}

TEST_CASE("boundary counts match a direct orbit count") {
  for (int n = 5; n <= 10; ++n)
    for (int m = 0; m <= 4; ++m)
      CHECK(static_cast<int>(enumerate_boundaries(make_space(n, m)).size()) == boundary_orbits(n, m));
}

TEST_CASE("Picard numbers") {
  // M̄_{0,n}: 2^{n−1} − C(n,2) − 1.
  for (int n = 5; n <= 7; ++n) CHECK(picard_number(make_space(n, n)) == (1 << (n - 1)) - n * (n - 1) / 2 - 1);
  for (int n = 5; n <= 12; ++n) {
    CHECK(picard_number(make_space(n, 0)) == n / 2 - 1);
    CHECK(picard_number(make_space(n, 1)) == n - 3);
    CHECK(picard_number(make_space(n, 2)) == 2 * n - 7);
    CHECK(picard_number(make_space(n, 3)) == 4 * n - 16);
  }
}

TEST_CASE("stated relations span the pushed Keel relations") {
  for (int n = 5; n <= 9; ++n)
    for (int m = 0; m <= 3; ++m) {
      const SpaceId s = make_space(n, m);
      BasisSpec b = relations_and_basis(s);
      auto keel = pushed_keel_relations(s);
      const Index nl = static_cast<Index>(b.labels.size());
      CHECK(rank(b.relations, nl) == rank(keel, nl));
      for (const auto& r : b.relations) CHECK(in_span(keel, r));
      CHECK(static_cast<int>(b.ordered_basis.size()) == picard_number(s));
      for (const auto& r : b.relations) CHECK(is_zero(b.label_to_basis * r));
    }
}

TEST_CASE("basis labels map to unit vectors") {
  const SpaceId s = make_space(8, 2);
  BasisSpec b = relations_and_basis(s);
  for (size_t k = 0; k < b.ordered_basis.size(); ++k) {
    BoundarySum one(s);
    one.add(b.ordered_basis[k], 1);
    CHECK(equal(express_in_basis(b, one).coords, unit_vector(static_cast<Index>(b.ordered_basis.size()), k)));
  }
  CHECK(b.basis_names.front() == "b3");
  CHECK(b.basis_names[static_cast<size_t>(8 - 4)] == "b*2");
}

TEST_CASE("X_{6,3} basis and the D2_12 expansion") {
  const SpaceId s = make_space(6, 3);
  std::vector<std::string> names;
  for (const auto& l : relations_and_basis(s).ordered_basis) names.push_back(label_name(l));
  CHECK(names == std::vector<std::string>{"D2", "D2_1", "D2_2", "D2_3", "D3", "D3_1", "D3_2", "D3_3"});
  BoundarySum d(s);
  d.add(canonical_label(s, 2, point_set({1, 2})), 3);
  CHECK(equal(express_in_basis(d).coords, make_vector({-1, 1, 1, 0, -3, 1, 1, -1})));
}

TEST_CASE("quotient pushforward agrees with the symmetrization oracle") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    BoundarySum f = random_sum(rng, 6);
    for (int m : {0, 1, 2, 3}) CHECK(pushforward_oracle(f, make_space(6, m)));
  }
  for (int trial = 0; trial < 4; ++trial) {
    BoundarySum f = random_sum(rng, 7);
    for (int m : {1, 2}) CHECK(pushforward_oracle(f, make_space(7, m)));
  }
}

TEST_CASE("ramified label and b-units") {
  const SpaceId s = make_space(7, 1);
  BoundaryLabel r = canonical_label(s, 2, 0);
  CHECK(is_ramified(s, r));
  CHECK(degree_b(s, r) == factorial(6) / binomial(6, 2));
  BoundarySum b(s);
  b.add(r, 1);
  BoundarySum back = b_denormalize(b_normalize(b));
  CHECK(back.terms.at(r) == 1);
  CHECK(b_normalize(b).terms.at(r) == 2);
}

TEST_CASE("forgetful pullback adds the divisor with the forgotten point") {
  BoundarySum d(make_space(5, 5));
  d.add_side({1, 2});
  BoundarySum up = forgetful_pullback(d, make_space(6, 6));
  BoundarySum expected(make_space(6, 6));
  expected.add_side({1, 2}).add_side({1, 2, 6});
  CHECK(equal(up.to_vector(), expected.to_vector()));
}

TEST_CASE("surface intersection form") {
  for (int m : {1, 2, 3}) {
    RatMatrix q = surface_intersection_form(make_space(5, m));
    CHECK(q.rows() == picard_number(make_space(5, m)));
    CHECK(q == q.transpose());
    CHECK(rank(q) == q.rows());
  }
  CHECK_THROWS(surface_intersection_form(make_space(6, 1)));
}

TEST_CASE("relabelling points") {
  BoundarySum d(make_space(6, 6));
  d.add_side({1, 2});
  BoundarySum p = permute_points(d, {3, 4, 1, 2, 5, 6});
  BoundarySum expected(make_space(6, 6));
  expected.add_side({3, 4});
  CHECK(equal(p.to_vector(), expected.to_vector()));
  CHECK_THROWS(permute_points(d, {1, 2, 3}));
}
