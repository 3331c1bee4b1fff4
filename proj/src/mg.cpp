#include "nemcone/mg.hpp"

#include "nemcone/curves.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace nemcone {

namespace {

bool has_lambda(const MgSpace& s) { return s.g >= 3; }
Index base(const MgSpace& s) { return has_lambda(s) ? 1 : 0; }

RatVector unit(const MgSpace& s, Index k) { return unit_vector(mg_dim(s), k); }

using Terms = std::initializer_list<std::pair<Rational, RatVector>>;

RatVector combine(Terms terms) {
  RatVector out = terms.begin()->first * terms.begin()->second;
  for (auto it = terms.begin() + 1; it != terms.end(); ++it) out += it->first * it->second;
  return out;
}

bool positively_proportional(const RatVector& a, const RatVector& b) {
  if (is_zero(a) || is_zero(b)) return false;
  return equal(primitive(a), primitive(b));
}

struct Families {
  MgSpace s;
  int n;
  RatVector irr() const { return mg_delta_irr(s); }
  RatVector lam() const { return mg_lambda(s); }
  RatVector d(int j) const { return mg_delta(s, j); }
  int g() const { return s.g; }

  RatVector i(int k) const { return combine({{k + 1, d(g() - k)}, {-4 * k, irr()}}); }
  RatVector ii(int k) const {
    return combine({{4 * (2 * k + 1), irr()}, {k, lam()}, {-(2 * k - 1), d(g() - k)}});
  }
  RatVector I(int k, int m) const {
    return combine({{(2 * m + 1) * (k - m), d(g() - k)},
                    {k * m * (k - m), lam()},
                    {k * (2 * k + 1), d(g() - n + m)},
                    {-k * (2 * m + 1), d(g() - n + k)},
                    {-4 * k * (k - m), d(g() - n)}});
  }
  RatVector II(int k, int m) const {
    return combine({{4 * (2 * (k + m) + 3), irr()}, {(k + 1) * (m + 1), lam()}, {-2 * (2 * k + 1), d(g() - n)}});
  }
  RatVector III(int k, int m) const {
    return combine({{m * (k + 1) * (k - m), lam()},
                    {(k + 1) * (2 * k + 1), d(g() - n + m)},
                    {-4 * m * (2 * m + 1), irr()},
                    {-(2 * k + 1) * (2 * (k - m) + 1), d(g() - n)}});
  }
  RatVector IV(int k, int m) const {
    return combine({{(m + 1) * (2 * (k - m) - 1), d(g() - k)},
                    {k * (m + 1) * (k - m), lam()},
                    {4 * k * (2 * k + 1), irr()},
                    {-2 * k * (2 * (k - m) - 1), d(g() - n)},
                    {-2 * k * (m + 1), d(g() - n + k)}});
  }
  /// 4[2(k+m)+3]δ̌_irr + (k+1)(m+1)λ̌.
  RatVector bracket(int k, int m) const {
    return combine({{4 * (2 * (k + m) + 3), irr()}, {(k + 1) * (m + 1), lam()}});
  }
};

void check_pointed(int g, int n, MgTarget target) {
  if (g < 2) throw std::invalid_argument("g ≥ 2 required");
  const int top = target == MgTarget::Mg ? g - 1 : g;
  if (n < 1 || n > top)
    throw std::invalid_argument("pointed map: 1 ≤ n ≤ " + std::to_string(top) + " required for " +
                                to_string(MgSpace{g, target}));
}

}  // namespace

MgSpace make_mg_space(int g, MgTarget target) {
  if (g < 2) throw std::invalid_argument("g ≥ 2 required");
  return MgSpace{g, target};
}

std::string to_string(const MgSpace& s) {
  return (s.target == MgTarget::Mg ? "M_" : "M_{") + std::to_string(s.g) + (s.target == MgTarget::Mg ? "" : ",1}");
}

Index mg_dim(const MgSpace& s) {
  if (s.target == MgTarget::Mg) return base(s) + 1 + s.g / 2;
  return base(s) + 1 + (s.g - 1) + 1;
}

std::vector<std::string> mg_basis_names(const MgSpace& s) {
  std::vector<std::string> out;
  if (has_lambda(s)) out.push_back("λ");
  out.push_back("δirr");
  const int top = s.target == MgTarget::Mg ? s.g / 2 : s.g - 1;
  for (int j = 1; j <= top; ++j) out.push_back("δ" + std::to_string(j));
  if (s.target == MgTarget::Mg1) out.push_back("ω");
  return out;
}

RatVector mg_lambda(const MgSpace& s) {
  if (has_lambda(s)) return unit(s, 0);
  return combine({{Rational(1, 10), mg_delta_irr(s)}, {Rational(1, 5), mg_delta(s, 1)}});
}

RatVector mg_delta_irr(const MgSpace& s) { return unit(s, base(s)); }

RatVector mg_omega(const MgSpace& s) {
  if (s.target != MgTarget::Mg1) throw std::invalid_argument("ω̌ exists only on M̄_{g,1}");
  return unit(s, mg_dim(s) - 1);
}

RatVector mg_delta(const MgSpace& s, int j) {
  if (j < 0 || j > s.g - 1)
    throw std::invalid_argument("δ̌ index " + std::to_string(j) + " out of range for " + to_string(s));
  if (s.target == MgTarget::Mg) {
    if (j == 0) return zero_vector(mg_dim(s));
    return unit(s, base(s) + std::min(j, s.g - j));
  }
  if (j == 0) return -mg_omega(s);
  return unit(s, base(s) + j);
}

LinearMap hyperelliptic_pushforward(int g) {
  MgSpace t = make_mg_space(g, MgTarget::Mg);
  SpaceId src = make_space(2 * g + 2, 0);
  LinearMap map;
  map.source = to_string(src);
  map.target = to_string(t);
  map.source_basis = dual_basis_names(src);
  for (auto nm : mg_basis_names(t)) map.target_basis.push_back(nm.substr(0, 2) + "̌" + nm.substr(2));
  map.matrix = RatMatrix::Constant(mg_dim(t), g, Rational(0));
  for (int k = 2; k <= g + 1; ++k) {
    RatVector col;
    if (k % 2 == 0) {
      const int j = k / 2;
      col = combine({{2, mg_delta_irr(t)}, {Rational(j * (g + 1 - j), 4 * g + 2), mg_lambda(t)}});
    } else {
      const int j = (k - 1) / 2;
      col = combine({{Rational(1, 2), mg_delta(t, j)}, {Rational(j * (g - j), 4 * g + 2), mg_lambda(t)}});
    }
    map.matrix.col(k - 2) = col;
  }
  return map;
}

RatVector hyperelliptic_curve_image(int g, int k) {
  MgSpace t = make_mg_space(g, MgTarget::Mg);
  if (k < 1 || k > 2 * g - 1) throw std::invalid_argument("hyperelliptic_curve_image: 1 ≤ k ≤ 2g−1 required");
  if (k % 2 == 1) {
    const int j = (k - 1) / 2;
    return combine({{2 * (2 * g + 1 - 2 * j), mg_delta_irr(t)},
                    {Rational(2 * j + 1 - 2 * g, 2), mg_delta(t, j)},
                    {Rational(g - j, 2), mg_lambda(t)}});
  }
  const int j = k / 2;
  return combine({{4 * (j - g), mg_delta_irr(t)}, {g + 1 - j, mg_delta(t, j)}});
}

std::vector<RatVector> hyperelliptic_pullback_inequalities(int g) {
  MgSpace t = make_mg_space(g, MgTarget::Mg);
  std::vector<RatVector> out;
  for (int i = 1; i <= g - 1; ++i) {
    out.push_back(combine({{4 * (2 * i + 1), mg_delta_irr(t)}, {i, mg_lambda(t)}, {-(2 * i - 1), mg_delta(t, i)}}));
    out.push_back(combine({{i + 1, mg_delta(t, i)}, {-4 * i, mg_delta_irr(t)}}));
  }
  return out;
}

Cone hyperelliptic_pullback_cone(int g) {
  std::vector<RatVector> ineqs;
  for (const auto& f : hyperelliptic_pullback_inequalities(g)) ineqs.push_back(primitive(f));
  return Cone::from_hrep(mg_dim(make_mg_space(g, MgTarget::Mg)), ineqs);
}

LinearMap pointed_pushforward(int g, int n, MgTarget target) {
  check_pointed(g, n, target);
  MgSpace t{g, target};
  SpaceId src = make_space(2 * n + 3, 1);
  LinearMap map;
  map.source = to_string(src);
  map.target = to_string(t);
  map.source_basis = dual_basis_names(src);
  for (auto nm : mg_basis_names(t)) map.target_basis.push_back(nm.substr(0, 2) + "̌" + nm.substr(2));
  map.matrix = RatMatrix::Constant(mg_dim(t), 2 * n, Rational(0));
  const int q = (2 * n + 1) * (n + 1);
  for (int k = 2; k <= 2 * n + 1; ++k) {
    RatVector col;
    if (k % 2 == 0) {
      const int j = k / 2 - 1;
      col = combine({{Rational(1, 2), mg_delta(t, g - n + j)},
                     {Rational(j * (n - j), 2 * (2 * n + 1)), mg_lambda(t)},
                     {-Rational((n - j) * (2 * n + 1 - 2 * j), q), mg_delta(t, g - n)}});
    } else {
      const int j = (k - 1) / 2;
      col = combine({{2, mg_delta_irr(t)},
                     {Rational(j * (n + 1 - j), 2 * (2 * n + 1)), mg_lambda(t)},
                     {-Rational((2 * n + 1 - 2 * j) * (n + 1 - j), q), mg_delta(t, g - n)}});
    }
    map.matrix.col(k - 2) = col;
  }
  return map;
}

RatVector pointed_curve_image(int g, int n, MgTarget target, int k) {
  check_pointed(g, n, target);
  MgSpace t{g, target};
  if (k < 1 || k > 2 * n) throw std::invalid_argument("pointed_curve_image: 1 ≤ k ≤ 2n required");
  if (k == 1) return -Rational(n - 1) * mg_delta(t, g - n);
  if (k % 2 == 1) {
    const int j = (k - 1) / 2;
    return combine({{-4 * (n - j), mg_delta_irr(t)}, {n + 1 - j, mg_delta(t, g - n + j)}});
  }
  const int j = k / 2;
  return combine({{2 * (2 * n + 3 - 2 * j), mg_delta_irr(t)},
                  {-Rational(2 * n + 1 - 2 * j, 2), mg_delta(t, g - n + j - 1)},
                  {Rational(n + 1 - j, 2), mg_lambda(t)}});
}

std::vector<Mg1Inequality> mg1_proof_families(int g, int n, MgTarget target) {
  check_pointed(g, n, target);
  Families f{MgSpace{g, target}, n};
  std::vector<Mg1Inequality> out;
  for (int k = 1; k <= n - 1; ++k) out.push_back({"i", k, 0, f.i(k)});
  for (int k = 1; k <= n; ++k) out.push_back({"ii", k, 0, f.ii(k)});
  for (int k = 1; k <= n - 1; ++k)
    for (int m = 0; m <= k - 1; ++m) out.push_back({"I", k, m, f.I(k, m)});
  for (int k = 1; k <= n - 1; ++k)
    for (int m = 0; m <= k - 1; ++m) out.push_back({"II", k, m, f.II(k, m)});
  for (int k = 0; k <= n - 1; ++k)
    for (int m = 0; m <= k; ++m) out.push_back({"III", k, m, f.III(k, m)});
  for (int k = 1; k <= n - 1; ++k)
    for (int m = 0; m <= k - 1; ++m) out.push_back({"IV", k, m, f.IV(k, m)});
  return out;
}

std::vector<Mg1Inequality> mg1_bullets(int g, int n, MgTarget target) {
  std::vector<Mg1Inequality> out;
  for (auto& q : mg1_proof_families(g, n, target)) {
    if (q.family == "II") continue;
    if (q.family == "ii" && q.k == n) continue;
    if (q.family == "III" && q.k == 0) continue;
    out.push_back(std::move(q));
  }
  return out;
}

std::pair<Rational, Rational> mg1_c_coefficients(int n, int k, int m) {
  if (n < 2) throw std::invalid_argument("mg1_c_coefficients: n ≥ 2 required");
  if (n == 2) return {Rational(1), Rational(2)};
  const int s = 2 * (k + m) + 3, p = (k + 1) * (m + 1);
  return {Rational(2 * n * (n - 1) * s - 2 * (4 * n - 3) * p), Rational(10 * p - 4 * s)};
}

CIdentityCheck mg1_c_identity(int n) {
  if (n < 3) throw std::invalid_argument("mg1_c_identity: n ≥ 3 required");
  Families f{MgSpace{n + 1, MgTarget::Mg1}, n};
  CIdentityCheck out;
  out.n = n;
  out.nonnegative = true;
  out.identity = true;
  const Rational scale(2 * (5 * n * n - 13 * n + 6));
  for (int k = 1; k <= n - 1; ++k)
    for (int m = 0; m <= k - 1; ++m) {
      auto [c1, c2] = mg1_c_coefficients(n, k, m);
      out.nonnegative = out.nonnegative && c1 >= 0 && c2 >= 0;
      RatVector lhs = c1 * RatVector(f.i(1) + 2 * f.ii(1)) +
                      c2 * RatVector(Rational(2 * n - 3) * f.i(n - 1) + Rational(n) * f.ii(n - 1));
      out.identity = out.identity && equal(lhs, RatVector(scale * f.bracket(k, m)));
      ++out.cases;
    }
  out.identity = out.identity && scale > 0;
  return out;
}

Mg1Report mg1_inequality_family(int g, int n, MgTarget target) {
  if (target == MgTarget::Mg && (g < 3 || n < 2 || n > g - 1))
    throw std::invalid_argument("mg1_inequality_family: g ≥ 3 and 2 ≤ n ≤ g−1 required for M̄_g");
  if (target == MgTarget::Mg1 && (g < 2 || n < 2 || n > g))
    throw std::invalid_argument("mg1_inequality_family: g ≥ 2 and 2 ≤ n ≤ g required for M̄_{g,1}");
  Mg1Report r;
  r.space = MgSpace{g, target};
  r.n = n;
  r.bullets = mg1_bullets(g, n, target);
  r.families = mg1_proof_families(g, n, target);

  LinearMap p = pointed_pushforward(g, n, target);
  for (const auto& q : nem_Xn1_reduced(2 * n + 3)) r.pushed.push_back(p.apply(q.functional));
  r.pushed_in_families = true;
  for (const auto& v : r.pushed) {
    if (is_zero(v)) continue;
    bool found = false;
    for (const auto& q : r.families) found = found || positively_proportional(v, q.functional);
    r.pushed_in_families = r.pushed_in_families && found;
  }
  r.families_in_pushed = true;
  for (const auto& q : r.families) {
    if (is_zero(q.functional)) continue;
    bool found = false;
    for (const auto& v : r.pushed) found = found || positively_proportional(v, q.functional);
    r.families_in_pushed = r.families_in_pushed && found;
  }

  std::map<std::tuple<std::string, int, int>, size_t> pos;
  std::vector<RatVector> gens;
  for (size_t k = 0; k < r.bullets.size(); ++k) {
    pos[{r.bullets[k].family, r.bullets[k].k, r.bullets[k].m}] = k;
    gens.push_back(r.bullets[k].functional);
  }
  std::optional<Cone> bullet_cone;
  r.subsumption_verified = true;
  for (const auto& q : r.families) {
    if (pos.count({q.family, q.k, q.m})) continue;
    SubsumedInequality s{q, {}, false};
    s.certificate.kind = CertificateKind::redundancy;
    if (n >= 3 && q.family != "III") {
      // bracket(k, m)·2(5n²−13n+6) from the c-combination; then add δ̌_{g−n} ≤ 0.
      const int k = q.family == "II" ? q.k : n - 1;
      const int m = q.family == "II" ? q.m : 0;
      const Rational extra = q.family == "II" ? Rational(2 * (2 * k + 1), 3) : Rational(2 * n - 1, 3);
      auto [c1, c2] = mg1_c_coefficients(n, k, m);
      const Rational scale(2 * (5 * n * n - 13 * n + 6));
      std::map<size_t, Rational> c;
      c[pos.at({"i", 1, 0})] += c1 / scale;
      c[pos.at({"ii", 1, 0})] += 2 * c1 / scale;
      c[pos.at({"i", n - 1, 0})] += Rational(2 * n - 3) * c2 / scale;
      c[pos.at({"ii", n - 1, 0})] += Rational(n) * c2 / scale;
      c[pos.at({"III", 1, 0})] += extra;
      for (const auto& [idx, coef] : c)
        if (coef != 0) s.certificate.coefficients.emplace_back(idx, coef);
    } else if (!is_zero(q.functional)) {
      if (!bullet_cone) bullet_cone = Cone::from_rays(mg_dim(r.space), gens);
      Certificate c = contains(*bullet_cone, q.functional);
      if (c.is_member()) {
        // Re-index onto the bullet list, undoing the primitive scaling.
        for (const auto& [idx, coef] : c.coefficients) {
          const RatVector& ray = bullet_cone->vrep->rays[idx];
          size_t hit = 0;
          while (!equal(primitive(gens[hit]), ray)) ++hit;
          Index lead = 0;
          while (ray(lead) == 0) ++lead;
          s.certificate.coefficients.emplace_back(hit, coef * ray(lead) / gens[hit](lead));
        }
      }
    }
    s.verified = verify_membership(gens, {}, q.functional, s.certificate);
    r.subsumption_verified = r.subsumption_verified && s.verified;
    r.subsumed.push_back(std::move(s));
  }

  std::vector<RatVector> ineqs;
  for (const auto& q : r.bullets)
    if (!is_zero(q.functional)) ineqs.push_back(primitive(q.functional));
  r.cone = Cone::from_hrep(mg_dim(r.space), ineqs);
  return r;
}

LinearMap m21_pushforward() {
  LinearMap map;
  map.source = "X_{7,1}";
  map.target = "M_{2,1}";
  map.source_basis = {"b2", "b3", "b4", "b5"};
  map.target_basis = {"Δirr", "Δ1", "W"};
  map.matrix = RatMatrix::Constant(3, 4, Rational(0));
  map.matrix(2, 0) = 1;               // B₂ ↦ W
  map.matrix(1, 2) = 1;               // B₄ ↦ Δ₁
  map.matrix(0, 3) = Rational(1, 2);  // b₅ = B₅/2 ↦ Δ_irr/2; B₃ is contracted
  return map;
}

namespace {

std::vector<RatVector> images(const LinearMap& p, const std::vector<RatVector>& rays) {
  std::vector<RatVector> out;
  for (const auto& r : rays) {
    RatVector v = p.apply(r);
    if (!is_zero(v)) out.push_back(primitive(v));
  }
  return out;
}

}  // namespace

M21Cones m21_cones(const std::vector<RatVector>& nef_x71) {
  const LinearMap p = m21_pushforward();
  M21Cones out;
  out.eff = canonical(Cone::from_rays(3, {unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2)}));
  out.nem_generators = hrep_to_vrep(nem_hrep(make_space(7, 1))).vrep->rays;
  out.nem_images = images(p, out.nem_generators);
  out.nef_images = images(p, nef_x71);
  out.push_nem = canonical(Cone::from_rays(3, out.nem_images));
  out.push_nef = canonical(Cone::from_rays(3, out.nef_images));
  out.nef = canonical(Cone::from_rays(3, {make_vector({1, 1, 0}), make_vector({1, 6, 0}), make_vector({1, 6, 5})}));
  for (const auto& v : out.nem_images) out.image_certificates.push_back(contains(out.push_nem, v));
  out.c_in_push_nef = contains(out.push_nef, make_vector({1, 6, 5}));
  return out;
}

X71MoriData x71_mori_data(const std::vector<RatVector>& nef_x71) {
  const SpaceId x = make_space(7, 1);
  X71MoriData d;
  d.canonical = make_vector({Rational(-1, 3), 0, 0, Rational(-4, 3)});
  d.c1 = CurveClass{x, make_vector({2, -1, 0, 1})};
  d.c2 = CurveClass{x, make_vector({0, -2, 4, 0})};
  d.k_dot_c2 = pairing(DivisorClass{x, d.canonical}, d.c2);
  d.c1_dot_b3 = pairing(DivisorClass{x, unit_vector(4, 1)}, d.c1);
  d.c1_contracted = is_zero(pointed_pushforward(2, 2, MgTarget::Mg1).apply(d.c1.coords));
  d.face = face(canonical(Cone::from_rays(4, nef_x71)), d.c2.coords);
  d.z_nef = canonical_rays(images(m21_pushforward(), d.face.vrep->rays));
  return d;
}

}  // namespace nemcone
