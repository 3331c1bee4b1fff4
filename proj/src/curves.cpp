#include "nemcone/curves.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

namespace nemcone {

namespace {

Index dual_dim(const SpaceId& s) {
  switch (s.m) {
    case 0: return s.n / 2 - 1;
    case 1: return s.n - 3;
    case 2: return 2 * s.n - 7;
    default: throw std::invalid_argument("dual coordinates: m ≤ 2 required, got " + to_string(s));
  }
}

std::string space_name(int n, int m) { return "X_{" + std::to_string(n) + "," + std::to_string(m) + "}"; }

RatVector scaled_sum(std::initializer_list<std::pair<Rational, RatVector>> terms) {
  RatVector out = terms.begin()->second * terms.begin()->first;
  for (auto it = terms.begin() + 1; it != terms.end(); ++it) out += it->first * it->second;
  return out;
}

/// q > 0 with v = q·w, or nullopt.
std::optional<Rational> positive_multiple(const RatVector& v, const RatVector& w) {
  if (v.size() != w.size() || is_zero(w)) return std::nullopt;
  Index k = 0;
  while (w(k) == 0) ++k;
  Rational q = v(k) / w(k);
  if (q <= 0 || !equal(v, RatVector(q * w))) return std::nullopt;
  return q;
}

}  // namespace

RatVector dual_b(const SpaceId& s, int j) {
  RatVector v = zero_vector(dual_dim(s));
  const int n = s.n;
  if (j < 2 || j > n - 2) return v;
  switch (s.m) {
    case 0: v(std::min(j, n - j) - 2) = 1; break;
    case 1: v(j - 2) = 1; break;
    case 2:
      if (j >= 3) v(j - 3) = 1;
      break;
  }
  return v;
}

RatVector dual_b_star(const SpaceId& s, int j) {
  if (s.m != 2) throw std::invalid_argument("b̌* coordinates exist only for m = 2");
  RatVector v = zero_vector(dual_dim(s));
  if (j >= 2 && j <= s.n - 2) v(s.n - 4 + j - 2) = 1;
  return v;
}

CurveClass curve_Ck(const SpaceId& s, int k) {
  if (s.m > 1) throw std::invalid_argument("curve_Ck: m ∈ {0, 1} required");
  const int n = s.n;
  if (k < 1 || k > n - 3)
    throw std::invalid_argument("curve_Ck: 1 ≤ k ≤ " + std::to_string(n - 3) + " required, got " +
                                std::to_string(k));
  return CurveClass{s, scaled_sum({{n - k, dual_b(s, k + 1)}, {2 - n + k, dual_b(s, k)}})};
}

CurveClass curve_Ck_star(int l, int i) {
  SpaceId s = make_space(l + 1, 2);
  if (i < 1 || i > l - 2)
    throw std::invalid_argument("curve_Ck_star: 1 ≤ i ≤ " + std::to_string(l - 2) + " required, got " +
                                std::to_string(i));
  return CurveClass{s, scaled_sum({{1, dual_b(s, i + 1)},
                                   {l - i, dual_b_star(s, i + 1)},
                                   {1 - l + i, dual_b_star(s, i)}})};
}

void validate(const AttachMapSpec& spec) {
  const int l = spec.l, n = spec.n;
  auto fail = [](const std::string& msg) { throw std::invalid_argument("attach map: " + msg); };
  switch (spec.kind) {
    case AttachMapSpec::Kind::q:
      if (spec.m < 0 || spec.m > 2) fail("q requires 0 ≤ m ≤ 2");
      if (l < 3 || l > n - 2 || l > n - spec.m) fail("q requires 3 ≤ l ≤ n−2 and l ≤ n−m");
      break;
    case AttachMapSpec::Kind::r:
    case AttachMapSpec::Kind::s:
      if (l < 2 || l > n - 2) fail("r and s require 2 ≤ l ≤ n−2");
      break;
    case AttachMapSpec::Kind::pi_star:
      if (n < 5) fail("pi_star requires n ≥ 5");
      break;
  }
}

LinearMap attach_pushforward(const AttachMapSpec& spec) {
  validate(spec);
  const int l = spec.l, n = spec.n;
  LinearMap map;
  std::vector<RatVector> columns;
  SpaceId target;

  switch (spec.kind) {
    case AttachMapSpec::Kind::q: {
      target = make_space(n, spec.m);
      map.source = space_name(l + 1, 1);
      for (int k = 1; k <= l - 2; ++k) {
        map.source_basis.push_back("b̌" + std::to_string(k + 1));
        Rational c = Rational((l - k - 1) * (l - k)) / (l * (l - 1));
        columns.push_back(scaled_sum({{1, dual_b(target, n - l + k)}, {-c, dual_b(target, n - l)}}));
      }
      break;
    }
    case AttachMapSpec::Kind::r: {
      target = make_space(n, 2);
      map.source = space_name(l + 1, 2);
      for (int i = 1; i <= l - 2; ++i) {
        map.source_basis.push_back("b̌*" + std::to_string(i + 1));
        Rational c1 = Rational(i * (l - i - 1)) / ((l - 2) * (l - 1));
        Rational c2 = Rational(i) / (l - 1);
        columns.push_back(scaled_sum({{1, dual_b_star(target, i + 1)},
                                      {c1, dual_b(target, n - l + 1)},
                                      {-c2, dual_b_star(target, l)}}));
      }
      break;
    }
    case AttachMapSpec::Kind::s: {
      target = make_space(n, 1);
      map.source = space_name(l + 1, 2);
      for (int i = 2; i <= l - 2; ++i) {
        map.source_basis.push_back("b̌" + std::to_string(i + 1));
        Rational c = Rational((l - i - 1) * (l - i)) / ((l - 2) * (l - 1));
        columns.push_back(scaled_sum({{1, dual_b(target, n - l + i)}, {-c, dual_b(target, n - l + 1)}}));
      }
      for (int i = 1; i <= l - 2; ++i) {
        map.source_basis.push_back("b̌*" + std::to_string(i + 1));
        Rational c1 = Rational(i * (l - i - 1)) / ((l - 2) * (l - 1));
        Rational c2 = Rational(i) / (l - 1);
        columns.push_back(scaled_sum(
            {{1, dual_b(target, i + 1)}, {c1, dual_b(target, n - l + 1)}, {-c2, dual_b(target, l)}}));
      }
      break;
    }
    case AttachMapSpec::Kind::pi_star: {
      SpaceId src = make_space(n - 1, 0);
      target = make_space(n, 1);
      map.source = to_string(src);
      map.source_basis = basis_names(src);
      map.target = to_string(target);
      map.target_basis = basis_names(target);
      BasisSpec b = relations_and_basis(src);
      for (Index k = 0; k < static_cast<Index>(b.ordered_basis.size()); ++k) {
        DivisorClass d{src, unit_vector(static_cast<Index>(b.ordered_basis.size()), k)};
        columns.push_back(forgetful_pullback(d, target).coords);
      }
      map.matrix = RatMatrix::Constant(static_cast<Index>(map.target_basis.size()),
                                       static_cast<Index>(columns.size()), Rational(0));
      for (size_t c = 0; c < columns.size(); ++c) map.matrix.col(static_cast<Index>(c)) = columns[c];
      return map;
    }
  }

  map.target = to_string(target);
  map.target_basis = dual_basis_names(target);
  const Index rows = dual_dim(target);
  map.matrix = RatMatrix::Constant(rows, static_cast<Index>(columns.size()), Rational(0));
  for (size_t c = 0; c < columns.size(); ++c) map.matrix.col(static_cast<Index>(c)) = columns[c];
  return map;
}

RatVector q_recursion_image(int l, int n, int m, int k) {
  validate(AttachMapSpec{AttachMapSpec::Kind::q, l, n, m});
  if (k < 1 || k > l - 2) throw std::invalid_argument("q_recursion_image: 1 ≤ k ≤ l−2 required");
  SpaceId t = make_space(n, m);
  RatVector image = zero_vector(dual_dim(t));  // q_* b̌_1 = 0
  for (int kk = 1; kk <= k; ++kk) {
    // q_*C_kk = (l−kk+1) q_*b̌_{kk+1} − (l−kk−1) q_*b̌_kk on X_{l+1,1}.
    RatVector qc = scaled_sum({{l - kk + 1, dual_b(t, n - l + kk)}, {-(l - kk - 1), dual_b(t, n - l + kk - 1)}});
    image = (qc + Rational(l - kk - 1) * image) / Rational(l - kk + 1);
  }
  return image;
}

std::vector<RatVector> boundary_classes(const SpaceId& s) {
  BasisSpec b = relations_and_basis(s);
  std::vector<RatVector> out;
  for (const auto& l : b.labels) {
    BoundarySum sum(s);
    sum.add(l, 1);
    out.push_back(express_in_basis(b, sum).coords);
  }
  return out;
}

Cone eff_cone(const SpaceId& s) {
  if (s.m >= 3 && !(s.m == 3 && s.n == 5))
    throw std::invalid_argument("eff_cone: refused for " + to_string(s) +
                                ": for n ≥ 6 and m ≥ 3 the boundary divisors generate a proper "
                                "subcone of the effective cone");
  auto classes = boundary_classes(s);
  return Cone::from_rays(classes.front().size(), classes);
}

Xn2Derivation eff_Xn2_derivation(int n) {
  if (n < 5) throw std::invalid_argument("eff_Xn2_derivation: n ≥ 5 required");
  SpaceId s = make_space(n, 2);
  auto b = [&](int j) { return dual_b(s, j); };
  auto bs = [&](int j) { return dual_b_star(s, j); };
  const int a = (n - 4) * (n - 3);
  Xn2Derivation d;
  d.n = n;
  for (int j = 2; j <= n - 2; ++j) {
    d.ineq1.push_back(scaled_sum({{a, bs(j)}, {(j - 1) * (n - j - 2), b(3)}, {-(n - 4) * (j - 1), bs(n - 2)}}));
    d.ineq2.push_back(scaled_sum({{a, bs(n - j)}, {(j - 1) * (n - j - 2), b(3)}, {-(n - 4) * (j - 1), bs(2)}}));
    d.ineq3.push_back(scaled_sum({{a, bs(j)}, {(n - j - 1) * (j - 2), b(3)}, {-(n - 4) * (n - j - 1), bs(2)}}));
  }
  d.ineq4 = scaled_sum({{1, bs(2)}, {1, bs(n - 2)}, {-1, b(3)}});

  // (ineq1) is the pushforward of b̌*_j ≥ 0 along r with l = n−2; at j = n−2
  // it degenerates to 0 ≥ 0.
  LinearMap r = attach_pushforward(AttachMapSpec{AttachMapSpec::Kind::r, n - 2, n, 2});
  d.ineq1_from_r = is_zero(d.ineq1[static_cast<size_t>(n - 4)]);
  for (int j = 2; j <= n - 3; ++j)
    d.ineq1_from_r = d.ineq1_from_r &&
                     equal(d.ineq1[static_cast<size_t>(j - 2)], RatVector(Rational(a) * r.matrix.col(j - 2)));
  d.ineq3_from_ineq2 = true;
  for (int j = 2; j <= n - 2; ++j)
    d.ineq3_from_ineq2 = d.ineq3_from_ineq2 &&
                         equal(d.ineq3[static_cast<size_t>(j - 2)], d.ineq2[static_cast<size_t>(n - j - 2)]);

  d.verified = d.ineq1_from_r && d.ineq3_from_ineq2;
  for (int j = 2; j <= n - 2; ++j) {
    const size_t k = static_cast<size_t>(j - 2);
    RatVector comb = scaled_sum({{n - j - 1, d.ineq1[k]},
                                 {j - 1, d.ineq3[k]},
                                 {(n - j - 1) * (j - 1) * (n - 4), d.ineq4}});
    auto q = positive_multiple(comb, bs(j));
    d.combinations.push_back(comb);
    d.multiples.push_back(q.value_or(Rational(0)));
    d.verified = d.verified && q.has_value();
  }
  return d;
}

RatVector nem_J(int n, int l) {
  if (l < 3 || l > n - 2) throw std::invalid_argument("nem_J: 3 ≤ l ≤ n−2 required");
  SpaceId s = make_space(n, 1);
  return scaled_sum({{l, dual_b(s, n - l + 1)}, {-(l - 2), dual_b(s, n - l)}});
}

RatVector nem_I(int n, int i, int j, int l) {
  if (l < 3 || l > n - 2 || i < 2 || i > l - 1 || j < 2 || j > l - 1)
    throw std::invalid_argument("nem_I: 3 ≤ l ≤ n−2 and 2 ≤ i, j ≤ l−1 required");
  SpaceId s = make_space(n, 1);
  return scaled_sum({{(l - 1) * (j - 1) * (l - j), dual_b(s, n - l + i - 1)},
                     {(l - 1) * (l - i) * (l - i + 1), dual_b(s, j)},
                     {-(j - 1) * (l - i) * (l - i + 1), dual_b(s, l)}});
}

std::vector<IndexedInequality> nem_Xn1_reduced(int n) {
  if (n < 5) throw std::invalid_argument("nem_Xn1_reduced: n ≥ 5 required");
  std::vector<IndexedInequality> out;
  for (int l = 3; l <= n - 2; ++l) out.push_back({"J_" + std::to_string(l), nem_J(n, l)});
  for (int l = 3; l <= n - 2; ++l)
    for (int j = 2; j <= l - 1; ++j)
      out.push_back({"I_{2," + std::to_string(j) + "," + std::to_string(l) + "}", nem_I(n, 2, j, l)});
  return out;
}

std::vector<IndexedInequality> nem_Xn1_full(int n) {
  if (n < 5) throw std::invalid_argument("nem_Xn1_full: n ≥ 5 required");
  std::vector<IndexedInequality> out;
  SpaceId s = make_space(n, 1);
  for (int k = 2; k <= n - 2; ++k) out.push_back({"E_" + std::to_string(k), dual_b(s, k)});
  for (int l = 3; l <= n - 2; ++l) out.push_back({"J_" + std::to_string(l), nem_J(n, l)});
  for (int l = 3; l <= n - 2; ++l)
    for (int i = 2; i <= l - 1; ++i)
      for (int j = 2; j <= l - 1; ++j)
        out.push_back({"I_{" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(l) + "}",
                       nem_I(n, i, j, l)});
  return out;
}

Cone nem_hrep(const SpaceId& s) {
  const int n = s.n;
  std::vector<RatVector> ineqs;
  if (s.m == 0) {
    if (n < 6) throw std::invalid_argument("nem_hrep: n ≥ 6 required for m = 0");
    for (int i = 2; i <= n / 2 - 1; ++i) {
      ineqs.push_back(primitive(scaled_sum({{n - i, dual_b(s, i + 1)}, {-(n - i - 2), dual_b(s, i)}})));
      ineqs.push_back(primitive(scaled_sum({{i + 1, dual_b(s, i)}, {-(i - 1), dual_b(s, i + 1)}})));
    }
    return Cone::from_hrep(dual_dim(s), ineqs);
  }
  if (s.m == 1) {
    if (n < 5) throw std::invalid_argument("nem_hrep: n ≥ 5 required for m = 1");
    for (const auto& f : nem_Xn1_reduced(n)) ineqs.push_back(primitive(f.functional));
    return Cone::from_hrep(dual_dim(s), ineqs);
  }
  throw std::invalid_argument("nem_hrep: only m ∈ {0, 1} is supported, got " + to_string(s));
}

ReductionCheck nem_Xn1_reduction(int n) {
  if (n < 5) throw std::invalid_argument("nem_Xn1_reduction: n ≥ 5 required");
  SpaceId s = make_space(n, 1);
  ReductionCheck rc;
  rc.n = n;
  for (int l = 3; l <= n - 2; ++l)
    for (int j = 2; j <= l - 1; ++j)
      for (int i = 3; i <= l - 1; ++i) {
        Rational a = Rational((l - 1) * (j - 1) * (l - j)) / (l - i + 2);
        Rational b = Rational(l - i) / (l - i + 2);
        RatVector rhs = a * nem_J(n, l - i + 2) + b * nem_I(n, i - 1, j, l);
        ++rc.identities;
        if (!equal(nem_I(n, i, j, l), rhs)) ++rc.failures;
      }

  RatVector b2 = dual_b(s, 2);
  RatVector comb = n % 2 == 1
                       ? nem_I(n, 2, 2, (n + 1) / 2)
                       : RatVector(Rational(n / 2) * nem_I(n, 2, 2, n / 2) +
                                   Rational(n / 2 - 2) * nem_I(n, 2, 2, n / 2 + 1));
  rc.b2_combination = positive_multiple(comb, b2).has_value();

  rc.chain = true;
  for (int k = 2; k <= n - 3; ++k) {
    RatVector rhs = nem_J(n, n - k) / Rational(n - k) + Rational(n - k - 2, n - k) * dual_b(s, k);
    rc.chain = rc.chain && equal(dual_b(s, k + 1), rhs);
  }

  // Certificates over the reduced list: J_l sits at l−3, I_{2,j,l} follows.
  using Combination = std::map<size_t, Rational>;
  auto j_pos = [](int l) { return static_cast<size_t>(l - 3); };
  auto i2_pos = [n](int j, int l) {
    size_t p = static_cast<size_t>(n - 4);
    for (int ll = 3; ll < l; ++ll) p += static_cast<size_t>(ll - 2);
    return p + static_cast<size_t>(j - 2);
  };
  auto axpy = [](Combination& into, const Combination& from, const Rational& q) {
    for (const auto& [k, c] : from) into[k] += q * c;
  };
  std::function<Combination(int, int, int)> i_comb = [&](int i, int j, int l) {
    if (i == 2) return Combination{{i2_pos(j, l), Rational(1)}};
    Combination c{{j_pos(l - i + 2), Rational((l - 1) * (j - 1) * (l - j)) / (l - i + 2)}};
    axpy(c, i_comb(i - 1, j, l), Rational(l - i) / (l - i + 2));
    return c;
  };
  Combination e_comb;
  if (n % 2 == 1) {
    e_comb = i_comb(2, 2, (n + 1) / 2);
  } else {
    axpy(e_comb, i_comb(2, 2, n / 2), Rational(n / 2));
    axpy(e_comb, i_comb(2, 2, n / 2 + 1), Rational(n / 2 - 2));
  }
  if (auto mu = positive_multiple(comb, b2))
    for (auto& [k, c] : e_comb) c /= *mu;

  std::vector<RatVector> reduced;
  for (const auto& f : nem_Xn1_reduced(n)) reduced.push_back(f.functional);
  const auto full = nem_Xn1_full(n);
  rc.full_subset_reduced = true;
  for (size_t pos = 0; pos < full.size(); ++pos) {
    const std::string& name = full[pos].name;
    Combination c;
    if (name[0] == 'E') {
      const int k = std::stoi(name.substr(2));
      c = e_comb;
      for (int kk = 2; kk < k; ++kk) {
        Combination next{{j_pos(n - kk), Rational(1, n - kk)}};
        axpy(next, c, Rational(n - kk - 2, n - kk));
        c = std::move(next);
      }
    } else if (name[0] == 'J') {
      c = {{j_pos(std::stoi(name.substr(2))), Rational(1)}};
    } else {
      int i = 0, j = 0, l = 0;
      std::sscanf(name.c_str(), "I_{%d,%d,%d}", &i, &j, &l);
      c = i_comb(i, j, l);
    }
    Redundancy r;
    r.index = pos;
    r.certificate.kind = CertificateKind::redundancy;
    for (const auto& [k, q] : c)
      if (q != 0) r.certificate.coefficients.emplace_back(k, q);
    bool ok = true;
    for (const auto& [k, q] : r.certificate.coefficients) ok = ok && q > 0;
    ok = ok && verify_membership(reduced, {}, full[pos].functional, r.certificate);
    rc.full_subset_reduced = rc.full_subset_reduced && ok;
    rc.certificates.push_back(std::move(r));
  }
  return rc;
}

std::vector<RatVector> nem_rays_inductive(int n) {
  if (n < 6) throw std::invalid_argument("nem_rays_inductive: n ≥ 6 required");
  std::vector<std::vector<Rational>> partial{{Rational(1)}};
  for (int i = 2; i <= n / 2 - 1; ++i) {
    std::vector<std::vector<Rational>> next;
    for (const auto& v : partial) {
      const Rational& a = v.back();
      for (const Rational& f : {Rational(n - i - 2, n - i), Rational(i + 1, i - 1)}) {
        auto w = v;
        w.push_back(a * f);
        next.push_back(std::move(w));
      }
    }
    partial = std::move(next);
  }
  std::vector<RatVector> out;
  for (const auto& v : partial) out.push_back(primitive(make_vector(v)));
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

RatVector extremal_ray_Ri(int n, int i) {
  if (n < 6) throw std::invalid_argument("extremal_ray_Ri: n ≥ 6 required");
  if (i < 2 || i > n / 2) throw std::invalid_argument("extremal_ray_Ri: 2 ≤ i ≤ ⌊n/2⌋ required");
  const int top = n / 2;
  RatVector v = zero_vector(top - 1);
  v(i - 2) = 1;
  for (int k = i; k < top; ++k) v(k - 1) = v(k - 2) * Rational(n - k - 2, n - k);  // Type A
  for (int k = i - 1; k >= 2; --k) v(k - 2) = v(k - 1) * Rational(k - 1, k + 1);  // Type B
  return primitive(v);
}

Xn1Decomposition nem_Xn1_decomposition(int n) {
  if (n < 6) throw std::invalid_argument("nem_Xn1_decomposition: n ≥ 6 required");
  Xn1Decomposition d;
  d.n = n;
  Cone nem = hrep_to_vrep(nem_hrep(make_space(n, 1)));
  const Index dim = nem.ambient_dim;
  d.face_rays = face(nem, unit_vector(dim, 0)).vrep->rays;

  std::vector<RatVector> base;
  if (n - 1 == 5)
    base = {make_vector({1})};  // X_{5,0} has Picard number one
  else
    base = hrep_to_vrep(nem_hrep(make_space(n - 1, 0))).vrep->rays;
  LinearMap pull = attach_pushforward(AttachMapSpec{AttachMapSpec::Kind::pi_star, 0, n, 0});
  for (const auto& r : base) d.pulled_rays.push_back(primitive(pull.apply(r)));
  d.pulled_rays = canonical_rays(d.pulled_rays);
  d.face_matches = same_ray_set(d.face_rays, d.pulled_rays);

  d.off_face_positive = true;
  for (const auto& r : nem.vrep->rays) {
    if (r(0) == 0) continue;
    for (Index k = 0; k < dim; ++k) d.off_face_positive = d.off_face_positive && r(k) > 0;
  }
  d.face_symmetric = true;
  for (const auto& r : d.face_rays)
    for (int l = 3; l <= n - 2; ++l) d.face_symmetric = d.face_symmetric && r(n - l - 1) == r(l - 2);
  return d;
}

Counterexample counterexample_Ftau(int n, const BoundarySum& ftau) {
  if (n < 6) throw std::invalid_argument("counterexample_Ftau: n ≥ 6 required");
  if (!(ftau.space == make_space(6, 6)))
    throw std::invalid_argument("counterexample_Ftau: F_tau must live on X_{6,6}");
  Counterexample ce;
  ce.n = n;
  ce.source = ftau;
  BoundarySum down = push_boundary_sum(ftau, make_space(6, 3));
  if (n > 6) down = push_boundary_sum(forgetful_pullback(down, make_space(n, n - 3)), make_space(n, 3));
  ce.pushed = express_in_basis(down);
  ce.boundary_generators = boundary_classes(make_space(n, 3));
  Cone bc = Cone::from_rays(ce.pushed.coords.size(), ce.boundary_generators);
  ce.certificate = contains(bc, ce.pushed.coords);
  ce.certificate_verified = !ce.certificate.is_member() &&
                            verify_separation(ce.boundary_generators, {}, ce.pushed.coords, ce.certificate);
  return ce;
}

L7Result class_L7(const BoundarySum& l7, int distinguished) {
  if (!(l7.space == make_space(7, 7))) throw std::invalid_argument("class_L7: L_7 must live on X_{7,7}");
  if (distinguished < 1 || distinguished > 7) throw std::invalid_argument("class_L7: point out of range");
  std::vector<int> perm{1, 2, 3, 4, 5, 6, 7};
  std::swap(perm[0], perm[static_cast<size_t>(distinguished - 1)]);
  L7Result out;
  out.relabelled = permute_points(l7, perm);
  out.pushed = quotient_pushforward(out.relabelled, make_space(7, 1));
  out.primitive_ray = primitive(out.pushed.coords);
  return out;
}

}  // namespace nemcone
