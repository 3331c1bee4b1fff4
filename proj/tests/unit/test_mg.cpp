#include "nemcone/curves.hpp"
#include "nemcone/fixtures.hpp"
#include "nemcone/mg.hpp"

#include <doctest.h>

using namespace nemcone;

TEST_CASE("M_g coordinates") {
  const MgSpace m2 = make_mg_space(2, MgTarget::Mg);
  CHECK(mg_dim(m2) == 2);
  CHECK(equal(mg_lambda(m2), make_vector({Rational(1, 10), Rational(1, 5)})));
  CHECK(is_zero(mg_delta(m2, 0)));
  const MgSpace m5 = make_mg_space(5, MgTarget::Mg);
  CHECK(equal(mg_delta(m5, 1), mg_delta(m5, 4)));
  const MgSpace m31 = make_mg_space(3, MgTarget::Mg1);
  CHECK(equal(mg_delta(m31, 0), -mg_omega(m31)));
  CHECK_THROWS(mg_omega(m5));
  CHECK_THROWS(mg_delta(m5, 5));
}

TEST_CASE("hyperelliptic images of C_k agree with the pushforward matrix") {
  for (int g = 2; g <= 6; ++g) {
    LinearMap i = hyperelliptic_pushforward(g);
    const SpaceId x = make_space(2 * g + 2, 0);
    for (int k = 1; k <= 2 * g - 1; ++k)
      CHECK(equal(i.apply(curve_Ck(x, k).coords), hyperelliptic_curve_image(g, k)));
  }
}

TEST_CASE("hyperelliptic inequality family") {
  for (int g = 2; g <= 6; ++g) {
    const MgSpace t = make_mg_space(g, MgTarget::Mg);
    auto ineqs = hyperelliptic_pullback_inequalities(g);
    CHECK(ineqs.size() == static_cast<size_t>(2 * (g - 1)));
    for (int i = 1; i <= g - 1; ++i) {
      RatVector a = Rational(4 * (2 * i + 1)) * mg_delta_irr(t) + Rational(i) * mg_lambda(t) -
                    Rational(2 * i - 1) * mg_delta(t, i);
      RatVector b = Rational(i + 1) * mg_delta(t, i) - Rational(4 * i) * mg_delta_irr(t);
      CHECK(equal(ineqs[static_cast<size_t>(2 * i - 2)], a));
      CHECK(equal(ineqs[static_cast<size_t>(2 * i - 1)], b));
    }
  }
}

TEST_CASE("pointed images of C_k agree with the pushforward matrix") {
  for (int g = 2; g <= 6; ++g)
    for (MgTarget t : {MgTarget::Mg, MgTarget::Mg1}) {
      const int top = t == MgTarget::Mg ? g - 1 : g;
      for (int n = 1; n <= top; ++n) {
        LinearMap p = pointed_pushforward(g, n, t);
        const SpaceId y = make_space(2 * n + 3, 1);
        for (int k = 1; k <= 2 * n; ++k)
          CHECK(equal(p.apply(curve_Ck(y, k).coords), pointed_curve_image(g, n, t, k)));
      }
    }
}

TEST_CASE("the contracted curve and the pulled-back ω") {
  LinearMap p = pointed_pushforward(2, 2, MgTarget::Mg1);
  CHECK(is_zero(p.apply(make_vector({2, -1, 0, 1}))));
  RatVector pulled = Rational(30) * p.pull(mg_omega(make_mg_space(2, MgTarget::Mg1)));
  CHECK(equal(primitive(pulled), make_vector({5, 12, 6, 2})));
}

TEST_CASE("c coefficients") {
  for (int n = 3; n <= 12; ++n) {
    CIdentityCheck c = mg1_c_identity(n);
    CHECK(c.nonnegative);
    CHECK(c.identity);
    CHECK(c.cases == n * (n - 1) / 2);
  }
  CHECK_THROWS(mg1_c_identity(2));
}

TEST_CASE("dropped families are nonnegative combinations of the bullets") {
  for (auto [g, n, t] : {std::tuple{2, 2, MgTarget::Mg1}, std::tuple{3, 3, MgTarget::Mg1},
                         std::tuple{4, 3, MgTarget::Mg}}) {
    Mg1Report r = mg1_inequality_family(g, n, t);
    CHECK(r.pushed_in_families);
    CHECK(r.families_in_pushed);
    CHECK(r.subsumption_verified);
    std::vector<RatVector> bullets;
    for (const auto& b : r.bullets) bullets.push_back(b.functional);
    for (const auto& s : r.subsumed) {
      RatVector sum = zero_vector(mg_dim(r.space));
      for (const auto& [k, c] : s.certificate.coefficients) {
        CHECK(c >= 0);
        sum += c * bullets.at(k);
      }
      CHECK(equal(sum, s.inequality.functional));
    }
  }
}

TEST_CASE("cones on M_{2,1}") {
  const Fixtures fx = load_fixtures();
  LinearMap z = m21_pushforward();
  CHECK(z.matrix.rows() == 3);
  CHECK(z.matrix.cols() == 4);
  CHECK(equal(primitive(z.apply(make_vector({5, 12, 6, 2}))), make_vector({1, 6, 5})));

  M21Cones c = m21_cones(fx.nef_rays(7, 1));
  CHECK(c.nem_generators.size() == 10);
  CHECK(same_ray_set(c.push_nem.vrep->rays, {make_vector({1, 1, 0}), make_vector({1, 6, 0}),
                                             make_vector({1, 6, 20}), make_vector({3, 3, 10})}));
  CHECK(same_ray_set(c.push_nef.vrep->rays,
                     {make_vector({1, 1, 0}), make_vector({1, 6, 0}), make_vector({1, 6, 20})}));
  CHECK(subset(c.push_nef, c.push_nem).equal);
  CHECK_FALSE(subset(c.push_nem, c.push_nef).equal);
  for (size_t k = 0; k < c.nem_images.size(); ++k)
    CHECK(verify_certificate(c.push_nem, c.nem_images[k], c.image_certificates[k]));
  CHECK(c.c_in_push_nef.is_member());
  CHECK(verify_certificate(c.push_nef, make_vector({1, 6, 5}), c.c_in_push_nef));
}

TEST_CASE("Mori data on X_{7,1}") {
  const Fixtures fx = load_fixtures();
  X71MoriData d = x71_mori_data(fx.nef_rays(7, 1));
  CHECK(dot(d.canonical, d.c2.coords) == 0);
  CHECK(d.k_dot_c2 == 0);
  CHECK(d.c1_dot_b3 == -1);
  CHECK(d.c1_contracted);
  for (const auto& r : d.face.vrep->rays) CHECK(dot(r, d.c2.coords) == 0);
  CHECK(d.face.vrep->rays.size() == 3);
  CHECK(d.z_nef.size() == 3);
}
