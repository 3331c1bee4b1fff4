#include "nemcone/cone.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace nemcone;

namespace {

// Extreme rays by brute force: every (d−1)-subset of inequalities with a
// one-dimensional common kernel, kept when a direction of it is feasible.
std::vector<RatVector> brute_force_rays(const std::vector<RatVector>& ineqs, Index d) {
  std::vector<RatVector> out;
  const size_t n = ineqs.size();
  std::vector<bool> pick(n, false);
  std::fill(pick.end() - std::min<std::ptrdiff_t>(d - 1, static_cast<std::ptrdiff_t>(n)), pick.end(), true);
  do {
    std::vector<RatVector> rows;
    for (size_t k = 0; k < n; ++k)
      if (pick[k]) rows.push_back(ineqs[k]);
    if (rank(rows, d) != d - 1) continue;
    RatVector v = kernel_basis(stack_rows(rows, d)).front();
    for (int sign : {1, -1}) {
      RatVector w = Rational(sign) * v;
      if (std::all_of(ineqs.begin(), ineqs.end(), [&](const RatVector& a) { return dot(a, w) >= 0; }))
        out.push_back(w);
    }
  } while (std::next_permutation(pick.begin(), pick.end()));
  return canonical_rays(out);
}

RatVector random_vector(std::mt19937& rng, Index d, int lo, int hi) {
  std::uniform_int_distribution<int> u(lo, hi);
  RatVector v(d);
  for (Index k = 0; k < d; ++k) v(k) = u(rng);
  return v;
}

// Random pointed full-dimensional cone: generators with a positive first
// coordinate.
std::vector<RatVector> random_generators(std::mt19937& rng, Index d, int count) {
  std::vector<RatVector> gens;
  for (int k = 0; k < count; ++k) {
    RatVector v = random_vector(rng, d, -3, 3);
    v(0) = 1 + k % 3;
    gens.push_back(v);
  }
  for (Index k = 0; k < d; ++k) {
    RatVector e = zero_vector(d);
    e(0) = 1;
    e(k) += 1;
    gens.push_back(e);
  }
  return gens;
}

}  // namespace

TEST_CASE("orthant in both representations") {
  Cone c = hrep_to_vrep(Cone::from_hrep(2, {make_vector({1, 0}), make_vector({0, 1})}));
  REQUIRE(c.vrep);
  CHECK(same_ray_set(c.vrep->rays, {make_vector({1, 0}), make_vector({0, 1})}));
  CHECK(is_simplicial(c));
  CHECK(cone_dimension(c) == 2);
}

TEST_CASE("double description matches brute force enumeration") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const Index d = 3 + trial % 2;
    std::vector<RatVector> ineqs;
    for (int k = 0; k < 6; ++k) ineqs.push_back(random_vector(rng, d, -3, 3));
    // Keep the cone pointed by bounding it inside a simplicial cone.
    for (Index k = 0; k < d; ++k) {
      RatVector e = zero_vector(d);
      e(k) = 1;
      ineqs.push_back(e);
    }
    Cone c = hrep_to_vrep(Cone::from_hrep(d, ineqs));
    CHECK(same_ray_set(c.vrep->rays, brute_force_rays(ineqs, d)));
  }
}

TEST_CASE("representations round trip and output is independent of input order") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const Index d = 3 + trial % 3;
    auto gens = random_generators(rng, d, 6);
    Cone a = canonical(Cone::from_rays(d, gens));
    std::shuffle(gens.begin(), gens.end(), rng);
    Cone b = canonical(Cone::from_rays(d, gens));
    CHECK(a.vrep->rays.size() == b.vrep->rays.size());
    for (size_t k = 0; k < a.vrep->rays.size(); ++k) CHECK(equal(a.vrep->rays[k], b.vrep->rays[k]));
    for (size_t k = 0; k < a.hrep->inequalities.size(); ++k)
      CHECK(equal(a.hrep->inequalities[k], b.hrep->inequalities[k]));
    for (const auto& g : gens)
      for (const auto& f : a.hrep->inequalities) CHECK(dot(f, g) >= 0);
    Cone again = hrep_to_vrep(Cone::from_hrep(d, a.hrep->inequalities));
    CHECK(same_ray_set(again.vrep->rays, a.vrep->rays));
    CHECK(equals(dual(dual(a)), a).equal);
  }
}

TEST_CASE("every membership answer carries a certificate that verifies") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = 3 + trial % 2;
    auto gens = random_generators(rng, d, 5);
    Cone c = canonical(Cone::from_rays(d, gens));
    std::uniform_int_distribution<int> w(0, 4);
    RatVector inside = zero_vector(d);
    for (const auto& g : gens) inside += Rational(w(rng), 3) * g;
    Certificate in = contains(c, inside);
    CHECK(in.is_member());
    CHECK(verify_certificate(c, inside, in));
    for (int k = 0; k < 5; ++k) {
      RatVector v = random_vector(rng, d, -4, 4);
      Certificate cert = contains(c, v);
      CHECK(verify_certificate(c, v, cert));
      bool inside_by_facets = true;
      for (const auto& f : c.hrep->inequalities) inside_by_facets = inside_by_facets && dot(f, v) >= 0;
      CHECK(cert.is_member() == inside_by_facets);
    }
  }
}

TEST_CASE("redundant inequalities are certified") {
  std::vector<RatVector> ineqs{make_vector({1, 0}), make_vector({0, 1}), make_vector({1, 1}),
                               make_vector({2, 1})};
  MinimalHRep m = minimal_hrep(ineqs, {}, 2);
  CHECK(m.kept.size() == 2);
  CHECK(m.removed.size() == 2);
  for (const auto& r : m.removed) CHECK(verify_redundancy(ineqs, {}, r));
}

TEST_CASE("faces, lineality and empty cones") {
  Cone c = canonical(Cone::from_rays(3, {make_vector({1, 0, 0}), make_vector({0, 1, 0}), make_vector({0, 0, 1})}));
  Cone f = face(c, make_vector({0, 0, 1}));
  CHECK(same_ray_set(f.vrep->rays, {make_vector({1, 0, 0}), make_vector({0, 1, 0})}));
  Cone half = hrep_to_vrep(Cone::from_hrep(2, {make_vector({1, 0})}));
  CHECK(half.vrep->lineality.size() == 1);
  Cone pt = hrep_to_vrep(Cone::from_hrep(2, {make_vector({1, 0}), make_vector({-1, 0}), make_vector({0, 1}),
                                             make_vector({0, -1})}));
  CHECK(pt.vrep->rays.empty());
  CHECK(pt.vrep->lineality.empty());
  Certificate cert = contains(pt, make_vector({1, 0}));
  CHECK_FALSE(cert.is_member());
  CHECK(verify_certificate(pt, make_vector({1, 0}), cert));
}

TEST_CASE("non-simplicial example") {
  Cone c = canonical(Cone::from_rays(3, {make_vector({1, 0, 0}), make_vector({0, 1, 0}), make_vector({1, 0, 1}),
                                         make_vector({0, 1, 1})}));
  CHECK(c.vrep->rays.size() == 4);
  CHECK_FALSE(is_simplicial(c));
}
