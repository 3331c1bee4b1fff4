#include "nemcone/cone.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <stdexcept>

namespace nemcone {

namespace {

struct DDRay {
  RatVector v;
  boost::dynamic_bitset<> zero;  // processed inequalities tight on v
};

struct DDResult {
  std::vector<RatVector> rays;
  std::vector<RatVector> lineality;
};

void sort_unique(std::vector<RatVector>& rows) {
  std::sort(rows.begin(), rows.end(), lex_less);
  rows.erase(std::unique(rows.begin(), rows.end(), equal), rows.end());
}

void check_dims(const std::vector<RatVector>& rows, Index d, const char* what) {
  for (const auto& r : rows)
    if (r.size() != d)
      throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                  std::to_string(d) + ", got " + std::to_string(r.size()));
}

// Double description: equations first, then inequalities in lexicographic
// order of their primitive forms.
DDResult double_description(Index d, const std::vector<RatVector>& equations,
                            const std::vector<RatVector>& inequalities) {
  std::vector<RatVector> eqs, ineqs;
  for (const auto& e : equations)
    if (!is_zero(e)) eqs.push_back(line_canonical(e));
  for (const auto& a : inequalities)
    if (!is_zero(a)) ineqs.push_back(primitive(a));
  sort_unique(eqs);
  sort_unique(ineqs);

  const size_t m = ineqs.size();
  std::vector<RatVector> lin;
  for (Index k = 0; k < d; ++k) lin.push_back(unit_vector(d, k));
  std::vector<DDRay> rays;
  std::vector<RatVector> done_eqs;
  std::vector<RatVector> done_ineqs;
  Index eq_rank = 0;

  auto adjacent = [&](const DDRay& p, const DDRay& n) {
    const Index target = d - static_cast<Index>(lin.size()) - 2;
    boost::dynamic_bitset<> common = p.zero & n.zero;
    if (eq_rank + static_cast<Index>(common.count()) < target) return false;
    std::vector<RatVector> rows = done_eqs;
    for (size_t k = common.find_first(); k != common.npos; k = common.find_next(k))
      rows.push_back(done_ineqs[k]);
    return rank(rows, d) == target;
  };

  auto process = [&](const RatVector& a, bool is_eq) {
    const size_t idx = done_ineqs.size();
    auto it = std::find_if(lin.begin(), lin.end(),
                           [&](const RatVector& l) { return dot(a, l) != 0; });
    if (it != lin.end()) {
      RatVector l0 = *it;
      lin.erase(it);
      Rational s0 = dot(a, l0);
      if (s0 < 0) {
        l0 = -l0;
        s0 = -s0;
      }
      for (auto& l : lin) l = primitive(RatVector(s0 * l - dot(a, l) * l0));
      for (auto& r : rays) {
        r.v = primitive(RatVector(s0 * r.v - dot(a, r.v) * l0));
        if (!is_eq) r.zero.set(idx);
      }
      if (!is_eq) {
        DDRay fresh{primitive(l0), boost::dynamic_bitset<>(m)};
        for (size_t k = 0; k < idx; ++k) fresh.zero.set(k);
        rays.push_back(std::move(fresh));
      }
    } else {
      std::vector<DDRay> plus, zeros, minus;
      std::vector<Rational> sp, sm;
      for (auto& r : rays) {
        Rational s = dot(a, r.v);
        if (s > 0) {
          plus.push_back(r);
          sp.push_back(s);
        } else if (s < 0) {
          minus.push_back(r);
          sm.push_back(s);
        } else {
          zeros.push_back(r);
        }
      }
      std::vector<DDRay> next;
      if (!is_eq) next = plus;
      for (auto& z : zeros) {
        if (!is_eq) z.zero.set(idx);
        next.push_back(z);
      }
      for (size_t i = 0; i < plus.size(); ++i)
        for (size_t j = 0; j < minus.size(); ++j) {
          if (!adjacent(plus[i], minus[j])) continue;
          DDRay c{primitive(RatVector(sp[i] * minus[j].v - sm[j] * plus[i].v)),
                  plus[i].zero & minus[j].zero};
          if (!is_eq) c.zero.set(idx);
          next.push_back(std::move(c));
        }
      rays = std::move(next);
    }
    if (is_eq) {
      done_eqs.push_back(a);
      eq_rank = rank(done_eqs, d);
    } else {
      done_ineqs.push_back(a);
    }
  };

  for (const auto& e : eqs) process(e, true);
  for (const auto& a : ineqs) process(a, false);

  DDResult out;
  out.lineality = canonical_span_basis(lin, d);
  for (const auto& r : rays) {
    RatVector p = project_out(r.v, out.lineality);
    if (!is_zero(p)) out.rays.push_back(primitive(p));
  }
  sort_unique(out.rays);
  return out;
}

std::vector<RatVector> generators_of(const VRep& v) {
  std::vector<RatVector> g = v.rays;
  for (const auto& l : v.lineality) {
    g.push_back(l);
    g.push_back(-l);
  }
  return g;
}

// Facet walk: peel off rays of the minimal face of the remainder until the
// remainder lies in the lineality space.
Certificate walk(const HRep& h, const VRep& v, const RatVector& target) {
  Certificate cert;
  for (const auto& e : h.equations) {
    Rational s = dot(e, target);
    if (s != 0) {
      cert.kind = CertificateKind::non_membership;
      cert.functional = s < 0 ? RatVector(e) : RatVector(-e);
      return cert;
    }
  }
  for (const auto& a : h.inequalities)
    if (dot(a, target) < 0) {
      cert.kind = CertificateKind::non_membership;
      cert.functional = a;
      return cert;
    }
  cert.kind = CertificateKind::membership;
  RatVector w = target;
  std::vector<Rational> coeff(v.rays.size(), Rational(0));
  while (!in_span(v.lineality, w)) {
    std::vector<Rational> slack;
    for (const auto& a : h.inequalities) slack.push_back(dot(a, w));
    bool stepped = false;
    for (size_t r = 0; r < v.rays.size() && !stepped; ++r) {
      const RatVector& ray = v.rays[r];
      bool in_face = true;
      std::optional<Rational> t;
      for (size_t k = 0; k < h.inequalities.size(); ++k) {
        Rational ar = dot(h.inequalities[k], ray);
        if (slack[k] == 0 && ar != 0) {
          in_face = false;
          break;
        }
        if (ar > 0) {
          Rational q = slack[k] / ar;
          if (!t || q < *t) t = q;
        }
      }
      if (!in_face || !t) continue;
      w -= *t * ray;
      coeff[r] += *t;
      stepped = true;
    }
    if (!stepped) throw std::logic_error("contains: no ray of the minimal face bounds the walk");
  }
  for (size_t r = 0; r < coeff.size(); ++r)
    if (coeff[r] != 0) cert.coefficients.emplace_back(r, coeff[r]);
  if (!v.lineality.empty()) {
    auto x = solve_columns(v.lineality, w);
    if (!x) throw std::logic_error("contains: lineality solve failed");
    for (Index k = 0; k < x->size(); ++k)
      if ((*x)(k) != 0) cert.line_coefficients.emplace_back(static_cast<size_t>(k), (*x)(k));
  }
  return cert;
}

}  // namespace

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::membership: return "membership";
    case CertificateKind::non_membership: return "non-membership";
    case CertificateKind::redundancy: return "redundancy";
  }
  return "unknown";
}

std::vector<RatVector> canonical_rays(const std::vector<RatVector>& rays) {
  std::vector<RatVector> out;
  for (const auto& r : rays)
    if (!is_zero(r)) out.push_back(primitive(r));
  sort_unique(out);
  return out;
}

bool same_ray_set(const std::vector<RatVector>& a, const std::vector<RatVector>& b) {
  auto ca = canonical_rays(a), cb = canonical_rays(b);
  return ca.size() == cb.size() && std::equal(ca.begin(), ca.end(), cb.begin(), equal);
}

Cone Cone::from_hrep(Index dim, std::vector<RatVector> inequalities,
                     std::vector<RatVector> equations) {
  check_dims(inequalities, dim, "inequality");
  check_dims(equations, dim, "equation");
  Cone c;
  c.ambient_dim = dim;
  std::vector<RatVector> ineqs;
  for (auto& a : inequalities)
    if (std::none_of(ineqs.begin(), ineqs.end(), [&](const RatVector& b) { return equal(a, b); }))
      ineqs.push_back(std::move(a));
  c.hrep = HRep{std::move(ineqs), std::move(equations)};
  return c;
}

Cone Cone::from_rays(Index dim, std::vector<RatVector> rays, std::vector<RatVector> lineality) {
  check_dims(rays, dim, "ray");
  check_dims(lineality, dim, "lineality vector");
  Cone c;
  c.ambient_dim = dim;
  c.vrep = VRep{canonical_rays(rays), canonical_span_basis(lineality, dim)};
  return c;
}

Cone hrep_to_vrep(const Cone& c) {
  if (!c.hrep) throw std::invalid_argument("hrep_to_vrep: cone has no H-representation");
  DDResult r = double_description(c.ambient_dim, c.hrep->equations, c.hrep->inequalities);
  Cone out;
  out.ambient_dim = c.ambient_dim;
  out.hrep = c.hrep;
  out.vrep = VRep{std::move(r.rays), std::move(r.lineality)};
  return out;
}

Cone vrep_to_hrep(const Cone& c) {
  if (!c.vrep) throw std::invalid_argument("vrep_to_hrep: cone has no V-representation");
  const Index d = c.ambient_dim;
  DDResult dual_dd = double_description(d, c.vrep->lineality, c.vrep->rays);
  HRep h{dual_dd.rays, dual_dd.lineality};

  std::vector<RatVector> normals = h.inequalities;
  normals.insert(normals.end(), h.equations.begin(), h.equations.end());
  std::vector<RatVector> lineality = orthogonal_complement(normals, d);
  const Index target = d - static_cast<Index>(lineality.size()) - 1;

  std::vector<RatVector> rays;
  for (const auto& r : c.vrep->rays) {
    RatVector p = project_out(r, lineality);
    if (is_zero(p)) continue;
    std::vector<RatVector> tight = h.equations;
    for (const auto& a : h.inequalities)
      if (dot(a, p) == 0) tight.push_back(a);
    if (rank(tight, d) == target) rays.push_back(primitive(p));
  }
  Cone out;
  out.ambient_dim = d;
  out.hrep = std::move(h);
  out.vrep = VRep{canonical_rays(rays), std::move(lineality)};
  return out;
}

Cone canonical(const Cone& c) {
  if (c.vrep) return vrep_to_hrep(c);
  return vrep_to_hrep(hrep_to_vrep(c));
}

Cone dual(const Cone& c) {
  Cone k = canonical(c);
  Cone out;
  out.ambient_dim = c.ambient_dim;
  out.hrep = HRep{k.vrep->rays, k.vrep->lineality};
  out.vrep = VRep{k.hrep->inequalities, k.hrep->equations};
  return out;
}

Certificate contains(const Cone& c, const RatVector& v) {
  if (v.size() != c.ambient_dim)
    throw std::invalid_argument("contains: cone has dimension " + std::to_string(c.ambient_dim) +
                                " but vector has dimension " + std::to_string(v.size()));
  if (!c.hrep && !c.vrep) throw std::invalid_argument("contains: cone has no representation");
  if (c.hrep && c.vrep) return walk(*c.hrep, *c.vrep, v);
  if (c.vrep) return walk(*vrep_to_hrep(c).hrep, *c.vrep, v);
  Cone k = hrep_to_vrep(c);
  return walk(*k.hrep, *k.vrep, v);
}

bool verify_membership(const std::vector<RatVector>& generators,
                       const std::vector<RatVector>& lines, const RatVector& target,
                       const Certificate& cert) {
  if (cert.kind == CertificateKind::non_membership) return false;
  RatVector sum = zero_vector(target.size());
  for (const auto& [i, c] : cert.coefficients) {
    if (i >= generators.size() || c < 0 || generators[i].size() != target.size()) return false;
    sum += c * generators[i];
  }
  for (const auto& [i, c] : cert.line_coefficients) {
    if (i >= lines.size() || lines[i].size() != target.size()) return false;
    sum += c * lines[i];
  }
  return equal(sum, target);
}

bool verify_separation(const std::vector<RatVector>& generators,
                       const std::vector<RatVector>& lines, const RatVector& target,
                       const Certificate& cert) {
  if (cert.kind != CertificateKind::non_membership) return false;
  if (cert.functional.size() != target.size()) return false;
  for (const auto& g : generators)
    if (dot(cert.functional, g) < 0) return false;
  for (const auto& l : lines)
    if (dot(cert.functional, l) != 0) return false;
  return dot(cert.functional, target) < 0;
}

bool verify_certificate(const Cone& c, const RatVector& target, const Certificate& cert) {
  Cone k = c.vrep ? c : hrep_to_vrep(c);
  if (cert.kind == CertificateKind::non_membership)
    return verify_separation(k.vrep->rays, k.vrep->lineality, target, cert);
  return verify_membership(k.vrep->rays, k.vrep->lineality, target, cert);
}

EqualityWitness subset(const Cone& a, const Cone& b) {
  if (a.ambient_dim != b.ambient_dim)
    throw std::invalid_argument("subset: ambient dimensions differ");
  Cone ka = a.vrep ? a : hrep_to_vrep(a);
  Cone kb = (b.hrep && b.vrep) ? b : canonical(b);
  for (const auto& g : generators_of(*ka.vrep)) {
    Certificate cert = contains(kb, g);
    if (!cert.is_member()) return EqualityWitness{false, g, cert};
  }
  return {};
}

EqualityWitness equals(const Cone& a, const Cone& b) {
  EqualityWitness w = subset(a, b);
  if (!w.equal) return w;
  return subset(b, a);
}

Cone face(const Cone& c, const RatVector& f) {
  if (f.size() != c.ambient_dim) throw std::invalid_argument("face: dimension mismatch");
  Cone k = c.vrep ? c : hrep_to_vrep(c);
  for (const auto& l : k.vrep->lineality)
    if (dot(f, l) != 0)
      throw std::invalid_argument("face: functional is nonzero on lineality vector " +
                                  format_vector(l));
  std::vector<RatVector> rays;
  for (const auto& r : k.vrep->rays) {
    Rational s = dot(f, r);
    if (s < 0) throw std::invalid_argument("face: functional is negative on ray " + format_vector(r));
    if (s == 0) rays.push_back(r);
  }
  return Cone::from_rays(c.ambient_dim, std::move(rays), k.vrep->lineality);
}

MinimalHRep minimal_hrep(const std::vector<RatVector>& inequalities,
                         const std::vector<RatVector>& equations, Index dim) {
  check_dims(inequalities, dim, "inequality");
  check_dims(equations, dim, "equation");
  MinimalHRep out;
  std::vector<RatVector> prim;
  std::vector<size_t> first;  // position of the first input with each primitive form
  std::vector<bool> duplicate(inequalities.size(), false);
  for (size_t k = 0; k < inequalities.size(); ++k) {
    if (is_zero(inequalities[k])) {
      duplicate[k] = true;
      continue;
    }
    RatVector p = primitive(inequalities[k]);
    auto it = std::find_if(prim.begin(), prim.end(), [&](const RatVector& q) { return equal(p, q); });
    if (it != prim.end()) {
      duplicate[k] = true;
    } else {
      prim.push_back(p);
      first.push_back(k);
    }
  }
  DDResult c = double_description(dim, equations, prim);
  std::vector<RatVector> span = c.rays;
  span.insert(span.end(), c.lineality.begin(), c.lineality.end());
  const Index cone_dim = rank(span, dim);
  if (cone_dim != dim - rank(equations, dim))
    throw std::invalid_argument(
        "minimal_hrep: cone is not full-dimensional relative to the equations");

  std::vector<RatVector> kept_vectors;
  for (size_t u = 0; u < prim.size(); ++u) {
    std::vector<RatVector> tight = c.lineality;
    for (const auto& r : c.rays)
      if (dot(prim[u], r) == 0) tight.push_back(r);
    if (rank(tight, dim) == cone_dim - 1) {
      out.kept.push_back(first[u]);
      kept_vectors.push_back(inequalities[first[u]]);
    }
  }

  HRep dual_h{c.rays, c.lineality};
  VRep dual_v{kept_vectors, equations};
  for (size_t k = 0; k < inequalities.size(); ++k) {
    if (std::find(out.kept.begin(), out.kept.end(), k) != out.kept.end()) continue;
    Certificate cert = walk(dual_h, dual_v, inequalities[k]);
    if (!cert.is_member())
      throw std::logic_error("minimal_hrep: inequality is not implied by the facets");
    cert.kind = CertificateKind::redundancy;
    for (auto& [i, q] : cert.coefficients) i = out.kept[i];
    out.removed.push_back(Redundancy{k, std::move(cert)});
  }
  return out;
}

bool verify_redundancy(const std::vector<RatVector>& inequalities,
                       const std::vector<RatVector>& equations, const Redundancy& r) {
  if (r.index >= inequalities.size()) return false;
  if (r.certificate.kind != CertificateKind::redundancy) return false;
  for (const auto& [i, q] : r.certificate.coefficients)
    if (i == r.index) return false;
  return verify_membership(inequalities, equations, inequalities[r.index], r.certificate);
}

Index cone_dimension(const Cone& c) {
  Cone k = c.vrep ? c : hrep_to_vrep(c);
  std::vector<RatVector> span = k.vrep->rays;
  span.insert(span.end(), k.vrep->lineality.begin(), k.vrep->lineality.end());
  return rank(span, c.ambient_dim);
}

bool is_simplicial(const Cone& c) {
  Cone k = canonical(c);
  return static_cast<Index>(k.vrep->rays.size()) == rank(k.vrep->rays, c.ambient_dim);
}

}  // namespace nemcone
