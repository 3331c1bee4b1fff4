#include "nemcone/verify.hpp"

#include "nemcone/curves.hpp"
#include "nemcone/io.hpp"
#include "nemcone/mg.hpp"

#include <chrono>
#include <future>
#include <sstream>
#include <stdexcept>

namespace nemcone {

namespace {

using Checks = std::vector<CheckResult>;

RatVector vec(std::initializer_list<Rational> v) { return make_vector(v); }

std::string list(const std::vector<RatVector>& rows) {
  std::string out = "{";
  for (size_t k = 0; k < rows.size(); ++k) out += (k ? ", " : "") + format_vector(rows[k]);
  return out + "}";
}

std::string space_name(int n, int m) {
  return "X_{" + std::to_string(n) + "," + std::to_string(m) + "}";
}

void add(Checks& out, std::string name, bool ok, std::string detail = {}) {
  out.push_back({std::move(name), ok, std::move(detail)});
}

void add_rays(Checks& out, const std::string& name, const std::vector<RatVector>& computed,
              const std::vector<RatVector>& expected) {
  add(out, name, same_ray_set(computed, expected),
      "computed " + list(canonical_rays(computed)) + ", expected " + list(canonical_rays(expected)));
}

void add_vector(Checks& out, const std::string& name, const RatVector& computed, const RatVector& expected) {
  bool ok = computed.size() == expected.size() && equal(computed, expected);
  add(out, name, ok, "computed " + format_vector(computed) + ", expected " + format_vector(expected));
}

// Every generator of `inner` lies in `outer`, each with a verified certificate.
void add_containment(Checks& out, const std::string& name, const std::vector<RatVector>& inner,
                     const Cone& outer) {
  std::string bad;
  for (const auto& r : inner) {
    Certificate c = contains(outer, r);
    if (!c.is_member() || !verify_certificate(outer, r, c)) bad += " " + format_vector(r);
  }
  add(out, name, bad.empty(), bad.empty() ? "" : "not contained:" + bad);
}

Cone computed_nem(int n, int m) { return canonical(hrep_to_vrep(nem_hrep(make_space(n, m)))); }

// Nef cone of a surface X_{5,m}: classes meeting every effective generator
// nonnegatively under the intersection form.
Cone surface_nef(int m) {
  const SpaceId s = make_space(5, m);
  const RatMatrix q = surface_intersection_form(s);
  std::vector<RatVector> rows;
  for (const auto& e : boundary_classes(s)) rows.push_back(q * e);
  return canonical(hrep_to_vrep(Cone::from_hrep(q.rows(), rows)));
}

// S_3-symmetrization of a class on M̄_{0,6} minus the quotient pullback of a
// candidate class on X_{6,3}: zero modulo the Keel relations iff the
// candidate is the pushforward of the class.
bool quotient_pushforward_oracle(const BoundarySum& f, const RatVector& candidate) {
  const SpaceId top = make_space(6, 6), quo = make_space(6, 3);
  BoundarySum sym(top);
  const std::vector<std::vector<int>> perms{{1, 2, 3, 4, 5, 6}, {1, 2, 3, 5, 4, 6},
                                            {1, 2, 3, 6, 5, 4}, {1, 2, 3, 4, 6, 5},
                                            {1, 2, 3, 5, 6, 4}, {1, 2, 3, 6, 4, 5}};
  for (const auto& p : perms) sym = sym + permute_points(f, p);
  const BasisSpec basis = relations_and_basis(quo);
  BoundarySum down = as_boundary_sum(basis, DivisorClass{quo, candidate});
  BoundarySum up(top);
  for (const auto& l : enumerate_boundaries(top)) {
    auto it = down.terms.find(label_of_side(quo, l.T));
    if (it != down.terms.end()) up.add(l, it->second);
  }
  RatVector diff = sym.to_vector() - up.to_vector();
  return in_span(keel_relations(6), diff);
}

Checks picard_table(const Fixtures&) {
  Checks out;
  for (int n = 5; n <= 12; ++n)
    for (int m = 0; m <= 3; ++m) {
      const SpaceId s = make_space(n, m);
      int rho = 0, bd = 0;
      switch (m) {
        case 0: rho = bd = n / 2 - 1; break;
        case 1: rho = bd = n - 3; break;
        case 2: rho = 2 * n - 7; bd = 2 * n - 6; break;
        default: rho = 4 * n - 16; bd = 4 * n - 13; break;
      }
      const int got_rho = picard_number(s);
      const int got_bd = static_cast<int>(enumerate_boundaries(s).size());
      add(out, space_name(n, m) + " Picard number and boundary count", got_rho == rho && got_bd == bd,
          "computed (" + std::to_string(got_rho) + ", " + std::to_string(got_bd) + "), expected (" +
              std::to_string(rho) + ", " + std::to_string(bd) + ")");
    }
  return out;
}

Checks counterexample(const Fixtures& fx) {
  Checks out;
  const SpaceId x63 = make_space(6, 3);
  BoundarySum d12(x63);
  d12.add(canonical_label(x63, 2, point_set({1, 2})), 3);
  add_vector(out, "3·D2_12 in the X_{6,3} basis", express_in_basis(d12).coords,
             vec({-1, 1, 1, 0, -3, 1, 1, -1}));
  const BoundarySum& ftau = fx.sum("F_tau");
  const RatVector printed = 2 * vec({0, 0, 0, 1, -3, -1, -1, 1});
  for (int n : {6, 7, 8}) {
    Counterexample ce = counterexample_Ftau(n, ftau);
    const RatVector& v = ce.pushed.coords;
    if (n == 6) {
      add_vector(out, "pushforward of F_tau to X_{6,3}", v, printed);
      add(out, "symmetrization oracle accepts the computed pushforward",
          quotient_pushforward_oracle(ftau, v), format_vector(v));
      add(out, "symmetrization oracle rejects the printed pushforward",
          !quotient_pushforward_oracle(ftau, printed), format_vector(printed));
    } else {
      bool vanish = v(0) == 0 && v(1) == 0 && v(2) == 0 && v(3) == 0;
      add(out, "first four coordinates vanish on " + space_name(n, 3), vanish, "computed " + format_vector(v));
    }
    add(out, "D2_1 and D2_2 coordinates vanish on " + space_name(n, 3), v(1) == 0 && v(2) == 0,
        "computed " + format_vector(v));
    add(out, "separating functional against the boundary cone of " + space_name(n, 3),
        ce.certificate_verified, "functional " + format_vector(ce.certificate.functional));
  }
  return out;
}

Checks nem_rays_m0(const Fixtures&) {
  Checks out;
  const std::vector<std::pair<int, std::vector<RatVector>>> expected{
      {6, {vec({2, 1}), vec({1, 3})}},
      {7, {vec({5, 3}), vec({1, 3})}},
      {8, {vec({3, 2, 4}), vec({1, 3, 6}), vec({5, 15, 9}), vec({15, 10, 6})}},
      {9, {vec({1, 3, 2}), vec({1, 3, 6}), vec({7, 5, 10}), vec({21, 15, 10})}}};
  for (const auto& [n, rays] : expected)
    add_rays(out, "Nem(" + space_name(n, 0) + ") rays", computed_nem(n, 0).vrep->rays, rays);
  return out;
}

Checks inductive_rays(const Fixtures&) {
  Checks out;
  for (int n = 6; n <= 14; ++n) {
    auto ind = nem_rays_inductive(n);
    const size_t want = size_t(1) << (n / 2 - 2);
    add(out, "inductive ray count for n = " + std::to_string(n), ind.size() == want,
        "computed " + std::to_string(ind.size()) + ", expected " + std::to_string(want));
    add_rays(out, "inductive rays equal double description for n = " + std::to_string(n), ind,
             hrep_to_vrep(nem_hrep(make_space(n, 0))).vrep->rays);
  }
  return out;
}

Checks nem_m1(const Fixtures&) {
  Checks out;
  Cone x51 = canonical(nem_hrep(make_space(5, 1)));
  Cone stated = canonical(Cone::from_hrep(2, {vec({-1, 3}), vec({1, 0})}));
  add(out, "Nem(X_{5,1}) is cut out by 3a3 ≥ a2 and a2 ≥ 0", equals(x51, stated).equal,
      "computed facets " + list(x51.hrep->inequalities));
  add_rays(out, "Nem(X_{6,1}) rays", computed_nem(6, 1).vrep->rays,
           {vec({6, 3, 1}), vec({1, 3, 1}), vec({0, 1, 1}), vec({1, 3, 6}), vec({2, 1, 2})});
  Cone h71 = nem_hrep(make_space(7, 1));
  add(out, "Nem(X_{7,1}) system has 9 inequalities", h71.hrep->inequalities.size() == 9,
      "computed " + std::to_string(h71.hrep->inequalities.size()));
  add_rays(out, "Nem(X_{7,1}) generators", hrep_to_vrep(h71).vrep->rays,
           {vec({5, 12, 36, 32}), vec({10, 6, 3, 6}), vec({5, 3, 9, 8}), vec({5, 12, 6, 2}),
            vec({0, 1, 3, 1}), vec({5, 12, 21, 32}), vec({10, 6, 3, 1}), vec({5, 3, 9, 3}),
            vec({20, 12, 21, 32}), vec({0, 2, 1, 2})});
  return out;
}

Checks reduction(const Fixtures&) {
  Checks out;
  for (int n = 5; n <= 12; ++n) {
    ReductionCheck r = nem_Xn1_reduction(n);
    const std::string tag = " for n = " + std::to_string(n);
    // One identity per 2 ≤ j ≤ l−1 and 3 ≤ i ≤ l−1; none exist for n = 5.
    int expected = 0;
    for (int l = 3; l <= n - 2; ++l) expected += (l - 2) * (l - 3);
    add(out, "reduction identities" + tag, r.identities == expected && r.failures == 0,
        std::to_string(r.identities) + " checked, " + std::to_string(r.failures) + " failed");
    add(out, "b2 ≥ 0 from the stated combination" + tag, r.b2_combination);
    add(out, "b_{k+1} ≥ 0 chain" + tag, r.chain);
    // Full and reduced systems: the reduced list is a sublist, and every full
    // member has a verified certificate over the reduced list.
    auto full = nem_Xn1_full(n), red = nem_Xn1_reduced(n);
    bool sub = true;
    for (const auto& q : red) {
      bool found = false;
      for (const auto& p : full) found = found || equal(p.functional, q.functional);
      sub = sub && found;
    }
    add(out, "full and reduced systems define equal cones" + tag,
        sub && r.full_subset_reduced && r.certificates.size() == full.size());
  }
  return out;
}

Checks eff_x52(const Fixtures&) {
  Checks out;
  const SpaceId s = make_space(5, 2);
  BoundarySum b2(s);
  b2.add(canonical_label(s, 2, point_set({1, 2})), 3);
  // 3b2 = b*2 + b*3 − b3 in the basis (b3, b*2, b*3).
  add_vector(out, "relation 3b2 = b*2 + b*3 - b3", express_in_basis(b2).coords, vec({-1, 1, 1}));
  Cone eff = canonical(eff_cone(s));
  add(out, "Eff(X_{5,2}) has 4 extremal rays", eff.vrep->rays.size() == 4,
      "computed " + list(eff.vrep->rays));
  add(out, "Eff(X_{5,2}) is not simplicial", !is_simplicial(eff));
  // Nef through the intersection form against the dual cone of Eff read
  // back through the same form.
  const RatMatrix q = surface_intersection_form(s);
  Cone nef = surface_nef(2);
  std::vector<RatVector> from_dual;
  const Cone eff_dual = dual(eff);
  for (const auto& f : eff_dual.vrep->rays) from_dual.push_back(*solve(q, f));
  add_rays(out, "dual of Eff(X_{5,2}) equals the nef cone", nef.vrep->rays, from_dual);
  add_containment(out, "Nef(X_{5,2}) ⊆ Eff(X_{5,2})", nef.vrep->rays, eff);
  return out;
}

Checks eff_xn2(const Fixtures&) {
  Checks out;
  for (int n = 5; n <= 10; ++n) {
    Xn2Derivation d = eff_Xn2_derivation(n);
    std::string mult;
    for (const auto& q : d.multiples) mult += " " + to_string(q);
    add(out, "b*_j ≥ 0 combination for n = " + std::to_string(n),
        d.verified && d.multiples.size() == static_cast<size_t>(n - 3), "multiples:" + mult);
    add(out, "ineq1 from the r map and ineq3 from ineq2 for n = " + std::to_string(n),
        d.ineq1_from_r && d.ineq3_from_ineq2);
  }
  return out;
}

Checks mg_bridge(const Fixtures&) {
  Checks out;
  for (int g = 2; g <= 5; ++g) {
    LinearMap i = hyperelliptic_pushforward(g);
    const SpaceId x = make_space(2 * g + 2, 0);
    bool ok = true;
    for (int k = 1; k <= 2 * g - 1; ++k)
      ok = ok && equal(i.apply(curve_Ck(x, k).coords), hyperelliptic_curve_image(g, k));
    add(out, "hyperelliptic curve images for g = " + std::to_string(g), ok);
    for (MgTarget t : {MgTarget::Mg, MgTarget::Mg1}) {
      const int top = t == MgTarget::Mg ? g - 1 : g;
      for (int n = 1; n <= top; ++n) {
        LinearMap p = pointed_pushforward(g, n, t);
        const SpaceId y = make_space(2 * n + 3, 1);
        bool ok2 = true;
        for (int k = 1; k <= 2 * n; ++k)
          ok2 = ok2 && equal(p.apply(curve_Ck(y, k).coords), pointed_curve_image(g, n, t, k));
        add(out, "pointed curve images into " + to_string(make_mg_space(g, t)) + " for n = " + std::to_string(n),
            ok2);
      }
    }
  }
  for (int n = 3; n <= 20; ++n) {
    CIdentityCheck c = mg1_c_identity(n);
    add(out, "c1, c2 ≥ 0 and the reduction identity for n = " + std::to_string(n),
        c.nonnegative && c.identity && c.cases > 0, std::to_string(c.cases) + " cases");
  }
  const std::vector<std::tuple<int, int, MgTarget>> spaces{
      {2, 2, MgTarget::Mg1}, {3, 2, MgTarget::Mg1}, {3, 3, MgTarget::Mg1}, {4, 3, MgTarget::Mg1},
      {3, 2, MgTarget::Mg},  {4, 3, MgTarget::Mg}};
  for (const auto& [g, n, t] : spaces) {
    Mg1Report r = mg1_inequality_family(g, n, t);
    const std::string tag = " for " + to_string(r.space) + ", n = " + std::to_string(n);
    add(out, "pushed Nem inequalities match the families" + tag, r.pushed_in_families && r.families_in_pushed);
    add(out, "dropped families are certified by the kept ones" + tag, r.subsumption_verified);
  }
  return out;
}

Checks m21(const Fixtures& fx) {
  Checks out;
  const auto& nef71 = fx.nef_rays(7, 1);
  M21Cones c = m21_cones(nef71);
  const RatVector A = vec({1, 1, 0}), B = vec({1, 6, 0}), C = vec({1, 6, 5}), D = vec({1, 6, 20}),
                  E = vec({3, 3, 10});
  add(out, "10 Nem(X_{7,1}) generators", c.nem_generators.size() == 10, list(c.nem_generators));
  add_rays(out, "extremal rays of the pushed Nem cone", c.push_nem.vrep->rays, {A, B, D, E});
  bool certs = c.image_certificates.size() == c.nem_images.size();
  for (size_t k = 0; certs && k < c.nem_images.size(); ++k)
    certs = c.image_certificates[k].is_member() &&
            verify_certificate(c.push_nem, c.nem_images[k], c.image_certificates[k]);
  add(out, "every pushed generator has a membership certificate", certs);
  add_rays(out, "extremal rays of the pushed Nef fixture", c.push_nef.vrep->rays, {A, B, D});
  add_vector(out, "(5,12,6,2) maps to (1,6,5)", primitive(m21_pushforward().apply(vec({5, 12, 6, 2}))), C);
  add(out, "C = 3/4·B + 1/4·D", equal(C, Rational(3, 4) * B + Rational(1, 4) * D) &&
                                    verify_certificate(c.push_nef, C, c.c_in_push_nef));
  X71MoriData d = x71_mori_data(nef71);
  add(out, "K·C2 = 0", d.k_dot_c2 == 0, to_string(d.k_dot_c2));
  add(out, "C1 is contracted by p", d.c1_contracted);
  add_rays(out, "face of Nef(X_{7,1}) cut by C2", d.face.vrep->rays,
           {vec({0, 2, 1, 2}), vec({5, 12, 6, 2}), vec({10, 6, 3, 1})});
  add_rays(out, "pushed face is spanned by A, C, D", d.z_nef, {A, C, D});
  return out;
}

Checks l7(const Fixtures& fx) {
  Checks out;
  const std::string name = "L_7";
  auto it = fx.distinguished.find(name);
  if (it == fx.distinguished.end()) {
    add(out, "distinguished point of L_7", false, "fixture missing");
    return out;
  }
  L7Result r = class_L7(fx.sum(name), it->second);
  add_vector(out, "primitive image of L_7 on X_{7,1}", r.primitive_ray, vec({10, 6, 3, 1}));
  return out;
}

Checks containment(const Fixtures& fx) {
  Checks out;
  const std::vector<std::pair<int, int>> spaces{{6, 0}, {7, 0}, {8, 0}, {9, 0}, {6, 1}, {7, 1}};
  for (const auto& [n, m] : spaces) {
    Cone nem = computed_nem(n, m);
    add_containment(out, "Nef fixture ⊆ Nem(" + space_name(n, m) + ")", fx.nef_rays(n, m), nem);
    add_containment(out, "Nem(" + space_name(n, m) + ") ⊆ Eff", nem.vrep->rays, canonical(eff_cone(make_space(n, m))));
  }
  Cone x51 = computed_nem(5, 1);
  add(out, "Nem(X_{5,1}) equals the nef cone of the surface", equals(x51, surface_nef(1)).equal);
  add_containment(out, "Nem(X_{5,1}) ⊆ Eff", x51.vrep->rays, canonical(eff_cone(make_space(5, 1))));
  add_containment(out, "Nem(X_{5,2}) ⊆ Eff", surface_nef(2).vrep->rays, canonical(eff_cone(make_space(5, 2))));
  add(out, "Nem(X_{6,0}) equals the Nef fixture",
      equals(computed_nem(6, 0), Cone::from_rays(2, fx.nef_rays(6, 0))).equal);
  EqualityWitness w = subset(computed_nem(7, 0), Cone::from_rays(2, fx.nef_rays(7, 0)));
  add(out, "Nem(X_{7,0}) ⊄ Nef fixture, witness (5,3)",
      !w.equal && w.offending && equal(primitive(*w.offending), vec({5, 3})),
      w.offending ? "witness " + format_vector(*w.offending) : "no witness");
  return out;
}

Checks round_trips(const Fixtures&) {
  Checks out;
  std::vector<std::pair<std::string, Cone>> cones;
  for (int n = 6; n <= 9; ++n) cones.emplace_back("Nem(" + space_name(n, 0) + ")", computed_nem(n, 0));
  for (int n = 5; n <= 7; ++n) cones.emplace_back("Nem(" + space_name(n, 1) + ")", computed_nem(n, 1));
  cones.emplace_back("Eff(X_{5,2})", canonical(eff_cone(make_space(5, 2))));
  cones.emplace_back("pushed Nem on M_{2,1}", m21_cones({}).push_nem);
  cones.emplace_back("orthant", canonical(Cone::from_rays(2, {vec({1, 0}), vec({0, 1})})));
  for (const auto& [name, c] : cones) {
    for (PortaRep rep : {PortaRep::hrep, PortaRep::vrep}) {
      const std::string t1 = porta_write(c, rep);
      const std::string t2 = porta_write(canonical(porta_read(t1)), rep);
      add(out, name + (rep == PortaRep::hrep ? " .ieq" : " .poi") + " round trip", t1 == t2, t1 == t2 ? "" : t1 + "\n" + t2);
    }
    const std::string j1 = dump(cone_to_json(c));
    const std::string j2 = dump(cone_to_json(canonical(cone_from_json(Json::parse(j1)))));
    add(out, name + " JSON round trip", j1 == j2, j1 == j2 ? "" : j1 + "\n" + j2);
  }
  const std::string ieq = porta_write(nem_hrep(make_space(7, 1)), PortaRep::hrep);
  size_t rows = 0;
  for (size_t p = ieq.find(">="); p != std::string::npos; p = ieq.find(">=", p + 1)) ++rows;
  add(out, "Nem(X_{7,1}) system exports 9 integer rows", rows == 9, ieq);
  const std::string poi = porta_write(computed_nem(8, 0), PortaRep::vrep);
  add(out, "Nem(X_{8,0}) exports 4 CONE_SECTION rows",
      poi.find("(  4)") != std::string::npos && poi.find("(  5)") == std::string::npos, poi);
  LinearMap p = pointed_pushforward(3, 2, MgTarget::Mg1);
  const std::string m1 = dump(map_to_json(p));
  add(out, "map JSON round trip", dump(map_to_json(map_from_json(Json::parse(m1)))) == m1);
  const SpaceId x = make_space(7, 1);
  Json cj = class_to_json(x, basis_names(x), vec({5, 12, 6, Rational(2, 3)}));
  add(out, "class JSON round trip", equal(class_coords_from_json(Json::parse(dump(cj))), vec({5, 12, 6, Rational(2, 3)})),
      dump(cj));
  return out;
}

}  // namespace

bool CriterionResult::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "picard", "Picard numbers and boundary counts", picard_table},
      {2, "counterexample", "boundary classes do not span Eff(X_{n,3})", counterexample},
      {3, "nem-m0", "Nem(X_{n,0}) rays for n = 6..9", nem_rays_m0},
      {4, "inductive", "inductive extremal rays of Nem(X_{n,0})", inductive_rays},
      {5, "nem-m1", "Nem(X_{n,1}) for n = 5, 6, 7", nem_m1},
      {6, "reduction", "redundancy certificates for the X_{n,1} system", reduction},
      {7, "eff-x52", "Eff(X_{5,2}) and its dual", eff_x52},
      {8, "eff-xn2", "b*_j ≥ 0 on Eff(X_{n,2})", eff_xn2},
      {9, "mg", "pushforwards into M_g and M_{g,1}", mg_bridge},
      {10, "m21", "cones on M_{2,1}", m21},
      {11, "l7", "the class L_7 on X_{7,1}", l7},
      {12, "containment", "Nef ⊆ Nem ⊆ Eff on the example spaces", containment},
      {13, "io", "PORTA and JSON round trips", round_trips},
  };
  return all;
}

std::vector<const Criterion*> select_criteria(const std::vector<std::string>& filter) {
  std::vector<const Criterion*> out;
  for (const auto& c : criteria()) {
    bool keep = filter.empty();
    for (const auto& f : filter) keep = keep || f == c.group || f == std::to_string(c.id);
    if (keep) out.push_back(&c);
  }
  for (const auto& f : filter) {
    bool known = false;
    for (const auto& c : criteria()) known = known || f == c.group || f == std::to_string(c.id);
    if (!known) throw std::invalid_argument("unknown section '" + f + "'");
  }
  return out;
}

std::vector<CriterionResult> run_criteria(const std::vector<const Criterion*>& selected,
                                          const Fixtures& fixtures) {
  std::vector<std::future<CriterionResult>> jobs;
  for (const Criterion* c : selected)
    jobs.push_back(std::async(std::launch::async, [c, &fixtures] {
      CriterionResult r{c->id, c->group, c->title, {}, 0};
      const auto start = std::chrono::steady_clock::now();
      try {
        r.checks = c->run(fixtures);
      } catch (const std::exception& e) {
        r.checks.push_back({"criterion ran to completion", false, std::string("exception: ") + e.what()});
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return r;
    }));
  std::vector<CriterionResult> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::string format_report(const std::vector<CriterionResult>& results, bool verbose) {
  std::ostringstream out;
  for (const auto& r : results) {
    out << (r.passed() ? "PASS" : "FAIL") << " AC" << r.id << " [" << r.group << "] " << r.title << "\n";
    for (const auto& c : r.checks) {
      if (c.passed && !verbose) continue;
      out << "    " << (c.passed ? "ok   " : "FAIL ") << c.name;
      if (!c.detail.empty() && (!c.passed || verbose)) out << ": " << c.detail;
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace nemcone
