#include "nemcone/curves.hpp"
#include "nemcone/fixtures.hpp"

#include <doctest.h>

using namespace nemcone;

namespace {

bool satisfies_all(const Cone& hrep, const RatVector& v) {
  for (const auto& f : hrep.hrep->inequalities)
    if (dot(f, v) < 0) return false;
  return true;
}

}  // namespace

TEST_CASE("dual basis vectors") {
  const SpaceId x80 = make_space(8, 0);
  CHECK(equal(dual_b(x80, 2), make_vector({1, 0, 0})));
  CHECK(equal(dual_b(x80, 6), dual_b(x80, 2)));
  CHECK(equal(dual_b(x80, 4), make_vector({0, 0, 1})));
  const SpaceId x72 = make_space(7, 2);
  CHECK(is_zero(dual_b(x72, 2)));
  CHECK(equal(dual_b(x72, 3), unit_vector(7, 0)));
  CHECK(equal(dual_b_star(x72, 2), unit_vector(7, 3)));
  CHECK_THROWS(dual_b_star(make_space(7, 1), 2));
}

TEST_CASE("curve classes pair with the basis as stated") {
  const SpaceId s = make_space(7, 1);
  CurveClass c = curve_Ck(s, 2);
  CHECK(equal(c.coords, make_vector({-3, 5, 0, 0})));
  CHECK_THROWS_WITH(curve_Ck(s, 5), doctest::Contains("1 ≤ k ≤ 4"));
  CHECK_THROWS(curve_Ck(make_space(7, 2), 1));
  CurveClass star = curve_Ck_star(5, 1);
  CHECK(star.space == make_space(6, 2));
  CHECK(equal(star.coords, Rational(4) * dual_b_star(star.space, 2)));
}

TEST_CASE("closed-form q pushforward matches the recursion through C_k") {
  for (int n = 6; n <= 10; ++n)
    for (int m = 0; m <= 2; ++m)
      for (int l = 3; l <= std::min(n - 2, n - m); ++l) {
        LinearMap q = attach_pushforward(AttachMapSpec{AttachMapSpec::Kind::q, l, n, m});
        for (int k = 1; k <= l - 2; ++k)
          CHECK(equal(q.apply(unit_vector(l - 2, k - 1)), q_recursion_image(l, n, m, k)));
      }
  CHECK_THROWS(attach_pushforward(AttachMapSpec{AttachMapSpec::Kind::q, 2, 7, 0}));
  CHECK_THROWS(attach_pushforward(AttachMapSpec{AttachMapSpec::Kind::q, 6, 7, 2}));
}

TEST_CASE("pullback along the forgetful map") {
  LinearMap pi = attach_pushforward(AttachMapSpec{AttachMapSpec::Kind::pi_star, 0, 7, 0});
  CHECK(pi.matrix.rows() == 4);
  CHECK(pi.matrix.cols() == 2);
  CHECK_THROWS(attach_pushforward(AttachMapSpec{AttachMapSpec::Kind::pi_star, 0, 4, 0}));
}

TEST_CASE("Nem(X_{n,0}) rays: double description against the inductive formula") {
  for (int n = 6; n <= 12; ++n) {
    Cone nem = hrep_to_vrep(nem_hrep(make_space(n, 0)));
    const auto inductive = nem_rays_inductive(n);
    CHECK(inductive.size() == (size_t{1} << (n / 2 - 2)));
    CHECK(same_ray_set(nem.vrep->rays, inductive));
    for (const auto& r : inductive) CHECK(satisfies_all(nem, r));
    for (int i = 2; i <= n / 2; ++i) {
      RatVector ri = extremal_ray_Ri(n, i);
      bool found = false;
      for (const auto& r : nem.vrep->rays) found = found || equal(r, ri);
      CHECK(found);
    }
  }
}

TEST_CASE("reduction certificates verify against the reduced list") {
  for (int n = 5; n <= 10; ++n) {
    ReductionCheck rc = nem_Xn1_reduction(n);
    CHECK(rc.failures == 0);
    CHECK(rc.b2_combination);
    CHECK(rc.chain);
    CHECK(rc.full_subset_reduced);
    std::vector<RatVector> reduced;
    for (const auto& f : nem_Xn1_reduced(n)) reduced.push_back(f.functional);
    const auto full = nem_Xn1_full(n);
    REQUIRE(rc.certificates.size() == full.size());
    for (const auto& r : rc.certificates) {
      RatVector sum = zero_vector(n - 3);
      for (const auto& [k, c] : r.certificate.coefficients) {
        CHECK(c > 0);
        sum += c * reduced.at(k);
      }
      CHECK(equal(sum, full[r.index].functional));
    }
  }
}

TEST_CASE("Nem(X_{n,1}) splits into a pulled-back face and a positive part") {
  for (int n = 6; n <= 10; ++n) {
    Xn1Decomposition d = nem_Xn1_decomposition(n);
    CHECK(d.face_matches);
    CHECK(d.off_face_positive);
    CHECK(d.face_symmetric);
  }
}

TEST_CASE("Eff(X_{n,2}) derivation") {
  for (int n = 6; n <= 10; ++n) {
    Xn2Derivation d = eff_Xn2_derivation(n);
    CHECK(d.ineq1_from_r);
    CHECK(d.ineq3_from_ineq2);
    CHECK(d.verified);
  }
}

TEST_CASE("effective cone refusals") {
  CHECK_NOTHROW(eff_cone(make_space(5, 3)));
  CHECK_THROWS_WITH(eff_cone(make_space(6, 3)), doctest::Contains("proper subcone of the effective cone"));
  CHECK(boundary_classes(make_space(6, 0)).size() == 2);
}

TEST_CASE("counterexample separation verified by hand") {
  const Fixtures fx = load_fixtures();
  for (int n = 6; n <= 8; ++n) {
    Counterexample ce = counterexample_Ftau(n, fx.sum("F_tau"));
    REQUIRE_FALSE(ce.certificate.is_member());
    CHECK(ce.certificate_verified);
    for (const auto& g : ce.boundary_generators) CHECK(dot(ce.certificate.functional, g) >= 0);
    CHECK(dot(ce.certificate.functional, ce.pushed.coords) < 0);
  }
  CHECK_THROWS(counterexample_Ftau(6, BoundarySum(make_space(7, 7))));
}

TEST_CASE("L_7 class with the distinguished point first") {
  const Fixtures fx = load_fixtures();
  L7Result r = class_L7(fx.sum("L_7"), fx.distinguished.at("L_7"));
  CHECK(equal(r.primitive_ray, make_vector({10, 6, 3, 1})));
  CHECK_THROWS(class_L7(fx.sum("L_7"), 8));
}
