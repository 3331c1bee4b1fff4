#include "nemcone/moduli.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace nemcone {

namespace {

PointSet first_points(int m) { return m >= 32 ? ~PointSet(0) : (PointSet(1) << m) - 1; }

bool set_less(PointSet a, PointSet b) {
  if (cardinality(a) != cardinality(b)) return cardinality(a) < cardinality(b);
  auto ea = elements(a), eb = elements(b);
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

void require_same_space(const SpaceId& a, const SpaceId& b, const char* what) {
  if (!(a == b))
    throw std::invalid_argument(std::string(what) + ": class lives on " + to_string(a) +
                                ", expected " + to_string(b));
}

}  // namespace

SpaceId make_space(int n, int m) {
  if (n < 4) throw std::invalid_argument("n ≥ 4 required");
  if (n > 30) throw std::invalid_argument("n ≤ 30 required");
  if (m < 0 || m > n) throw std::invalid_argument("0 ≤ m ≤ n required");
  return SpaceId{n, m == n - 1 ? n : m};
}

std::string to_string(const SpaceId& s) {
  return "X_{" + std::to_string(s.n) + "," + std::to_string(s.m) + "}";
}

PointSet point_set(std::initializer_list<int> points) {
  PointSet s = 0;
  for (int p : points) {
    if (p < 1 || p > 30) throw std::invalid_argument("marked point out of range");
    s |= PointSet(1) << (p - 1);
  }
  return s;
}

std::vector<int> elements(PointSet s) {
  std::vector<int> out;
  for (int k = 0; k < 32; ++k)
    if (s & (PointSet(1) << k)) out.push_back(k + 1);
  return out;
}

int cardinality(PointSet s) { return std::popcount(s); }

bool operator<(const BoundaryLabel& a, const BoundaryLabel& b) {
  if (a.i != b.i) return a.i < b.i;
  return set_less(a.T, b.T);
}

bool label_valid(const SpaceId& s, int i, PointSet T) {
  if (i < 2 || i > s.n - 2) return false;
  if (T & ~first_points(s.m)) return false;
  int t = cardinality(T);
  return t <= i && i - t <= s.n - s.m;
}

BoundaryLabel canonical_label(const SpaceId& s, int i, PointSet T) {
  if (!label_valid(s, i, T))
    throw std::invalid_argument("invalid boundary label D" + std::to_string(i) + " on " +
                                to_string(s));
  BoundaryLabel a{i, T};
  BoundaryLabel b{s.n - i, first_points(s.m) & ~T};
  return b < a ? b : a;
}

BoundaryLabel label_of_side(const SpaceId& s, PointSet side) {
  return canonical_label(s, cardinality(side), side & first_points(s.m));
}

std::string label_name(const BoundaryLabel& l) {
  std::string out = "D" + std::to_string(l.i);
  auto pts = elements(l.T);
  if (pts.empty()) return out;
  bool wide = pts.back() > 9;
  out += "_";
  for (size_t k = 0; k < pts.size(); ++k) {
    if (wide && k) out += ",";
    out += std::to_string(pts[k]);
  }
  return out;
}

std::vector<BoundaryLabel> enumerate_boundaries(const SpaceId& s) {
  std::vector<BoundaryLabel> out;
  const PointSet full = first_points(s.m);
  for (int i = 2; i <= s.n - 2; ++i)
    for (PointSet T = 0;; T = (T - full) & full) {
      if (label_valid(s, i, T)) out.push_back(canonical_label(s, i, T));
      if (T == full) break;
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

size_t label_index(const std::vector<BoundaryLabel>& labels, const BoundaryLabel& l) {
  auto it = std::lower_bound(labels.begin(), labels.end(), l);
  if (it == labels.end() || !(*it == l))
    throw std::invalid_argument("label " + label_name(l) + " not in list");
  return static_cast<size_t>(it - labels.begin());
}

bool is_ramified(const SpaceId& s, const BoundaryLabel& l) {
  return s.n - s.m >= 2 && l == canonical_label(s, 2, 0);
}

Rational orbit_size(const SpaceId& s, const BoundaryLabel& l) {
  int u = l.i - cardinality(l.T);
  if (s.m >= 1) return binomial(s.n - s.m, u);
  if (2 * l.i == s.n) return binomial(s.n, l.i) / 2;
  return binomial(s.n, l.i);
}

Rational degree_b(const SpaceId& s, const BoundaryLabel& l) {
  return factorial(s.n - s.m) / orbit_size(s, l);
}

BoundarySum& BoundarySum::add(const BoundaryLabel& l, const Rational& q) {
  BoundaryLabel c = canonical_label(space, l.i, l.T);
  Rational& slot = terms[c];
  slot += q;
  if (slot == 0) terms.erase(c);
  return *this;
}

BoundarySum& BoundarySum::add_side(std::initializer_list<int> side, const Rational& q) {
  return add(label_of_side(space, point_set(side)), q);
}

RatVector BoundarySum::to_vector() const {
  auto labels = enumerate_boundaries(space);
  RatVector v = zero_vector(static_cast<Index>(labels.size()));
  for (const auto& [l, q] : terms) v(static_cast<Index>(label_index(labels, l))) += q;
  return v;
}

BoundarySum operator+(const BoundarySum& a, const BoundarySum& b) {
  require_same_space(b.space, a.space, "boundary sum");
  BoundarySum out = a;
  for (const auto& [l, q] : b.terms) out.add(l, q);
  return out;
}

BoundarySum operator*(const Rational& q, const BoundarySum& a) {
  BoundarySum out(a.space);
  if (q == 0) return out;
  for (const auto& [l, c] : a.terms) out.add(l, q * c);
  return out;
}

BoundarySum permute_points(const BoundarySum& sum, const std::vector<int>& perm) {
  const SpaceId& s = sum.space;
  if (s.m != s.n) throw std::invalid_argument("permute_points: every point must be named");
  if (static_cast<int>(perm.size()) != s.n)
    throw std::invalid_argument("permute_points: permutation has wrong length");
  BoundarySum out(s);
  for (const auto& [l, q] : sum.terms) {
    PointSet image = 0;
    for (int p : elements(l.T)) image |= PointSet(1) << (perm[static_cast<size_t>(p - 1)] - 1);
    out.add(label_of_side(s, image), q);
  }
  return out;
}

std::vector<RatVector> keel_relations(int n) {
  SpaceId s = make_space(n, n);
  auto labels = enumerate_boundaries(s);
  auto in = [](PointSet S, int p) { return (S >> (p - 1)) & 1u; };
  auto relation = [&](auto plus, auto minus) {
    RatVector v = zero_vector(static_cast<Index>(labels.size()));
    for (PointSet rest = 0; rest < (PointSet(1) << (n - 1)); ++rest) {
      PointSet S = 1u | (rest << 1);  // sides containing point 1
      int c = cardinality(S);
      if (c < 2 || c > n - 2) continue;
      Index k = static_cast<Index>(label_index(labels, label_of_side(s, S)));
      if (plus(S)) v(k) += 1;
      if (minus(S)) v(k) -= 1;
    }
    return v;
  };
  std::vector<RatVector> out;
  for (int i = 3; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      out.push_back(relation(
          [&](PointSet S) { return in(S, 2) && !in(S, i) && !in(S, j); },
          [&](PointSet S) { return in(S, i) && !in(S, 2) && !in(S, j); }));
  for (int k = 4; k <= n; ++k)
    out.push_back(relation(
        [&](PointSet S) { return in(S, 3) && !in(S, 2) && !in(S, k); },
        [&](PointSet S) { return in(S, k) && !in(S, 2) && !in(S, 3); }));
  return out;
}

std::vector<RatVector> pushed_keel_relations(const SpaceId& s) {
  SpaceId full = make_space(s.n, s.n);
  auto src_labels = enumerate_boundaries(full);
  std::vector<RatVector> out;
  for (const auto& rel : keel_relations(s.n)) {
    BoundarySum sum(full);
    for (Index k = 0; k < rel.size(); ++k)
      if (rel(k) != 0) sum.add(src_labels[static_cast<size_t>(k)], rel(k));
    out.push_back(push_boundary_sum(sum, s).to_vector());
  }
  return out;
}

int picard_number(const SpaceId& s) {
  auto labels = enumerate_boundaries(s);
  Index r = rank(pushed_keel_relations(s), static_cast<Index>(labels.size()));
  return static_cast<int>(static_cast<Index>(labels.size()) - r);
}

BasisSpec relations_and_basis(const SpaceId& s) {
  if (s.m > 3)
    throw std::invalid_argument(
        "m ≤ 3 required: for m ≥ 4 the boundary divisors of X_{n,m} do not generate the "
        "effective cone, and no basis convention is fixed");
  if (s.m == 3 && s.n < 5) throw std::invalid_argument("n ≥ 5 required for m = 3");
  const int n = s.n;
  BasisSpec b;
  b.space = s;
  b.labels = enumerate_boundaries(s);
  auto L = [&](int i, std::initializer_list<int> T) { return canonical_label(s, i, point_set(T)); };
  auto add = [&](RatVector& v, const BoundaryLabel& l, const Rational& q) {
    v(static_cast<Index>(label_index(b.labels, l))) += q;
  };
  const Index nl = static_cast<Index>(b.labels.size());

  if (s.m == 0) {
    for (int k = 2; k <= n / 2; ++k) {
      b.ordered_basis.push_back(L(k, {}));
      b.basis_names.push_back("b" + std::to_string(k));
    }
  } else if (s.m == 1) {
    for (int k = 2; k <= n - 2; ++k) {
      b.ordered_basis.push_back(L(k, {1}));
      b.basis_names.push_back("b" + std::to_string(k));
    }
  } else if (s.m == 2) {
    RatVector rel = zero_vector(nl);
    for (int i = 2; i <= n - 2; ++i) {
      add(rel, L(i, {1, 2}), Rational((n - i) * (n - i - 1)));
      add(rel, L(i, {1}), -Rational((i - 1) * (n - i - 1)));
    }
    b.relations.push_back(rel);
    for (int i = 3; i <= n - 2; ++i) {
      b.ordered_basis.push_back(L(i, {1, 2}));
      b.basis_names.push_back("b" + std::to_string(i));
    }
    for (int i = 2; i <= n - 2; ++i) {
      b.ordered_basis.push_back(L(i, {1}));
      b.basis_names.push_back("b*" + std::to_string(i));
    }
  } else if (s.m == 3) {
    RatVector r1 = zero_vector(nl), r2 = zero_vector(nl), r3 = zero_vector(nl);
    for (int i = 2; i <= n - 2; ++i) {
      Rational c(n - i - 1);
      add(r1, L(i, {1, 2}), c);
      add(r1, L(i, {1, 3}), -c);
      add(r2, L(i, {1, 2}), c);
      add(r2, L(i, {2, 3}), -c);
    }
    for (int i = 3; i <= n - 2; ++i) {
      add(r3, L(i, {1, 2, 3}), Rational((n - i) * (n - i - 1)));
      add(r3, L(i, {1, 3}), -Rational((i - 2) * (n - i - 1)));
    }
    for (int i = 2; i <= n - 3; ++i) {
      add(r3, L(i, {1, 2}), Rational((n - i - 1) * (n - i - 2)));
      add(r3, L(i, {1}), -Rational((i - 1) * (n - i - 2)));
    }
    b.relations = {r1, r2, r3};
    const BoundaryLabel excluded[] = {L(2, {1, 2}), L(2, {1, 3}), L(2, {2, 3})};
    for (const auto& l : b.labels) {
      if (std::find(std::begin(excluded), std::end(excluded), l) != std::end(excluded)) continue;
      b.ordered_basis.push_back(l);
      b.basis_names.push_back(label_name(l));
    }
  }

  const Index nb = static_cast<Index>(b.ordered_basis.size());
  std::vector<Index> basis_pos(static_cast<size_t>(nl), -1);
  for (Index k = 0; k < nb; ++k)
    basis_pos[label_index(b.labels, b.ordered_basis[static_cast<size_t>(k)])] = k;
  std::vector<Index> non_basis;
  for (Index k = 0; k < nl; ++k)
    if (basis_pos[static_cast<size_t>(k)] < 0) non_basis.push_back(k);
  const Index nr = static_cast<Index>(b.relations.size());
  if (static_cast<Index>(non_basis.size()) != nr)
    throw std::logic_error("relations_and_basis: relation count does not match eliminated labels");

  b.label_to_basis = RatMatrix::Constant(nb, nl, Rational(0));
  for (Index k = 0; k < nl; ++k)
    if (basis_pos[static_cast<size_t>(k)] >= 0) b.label_to_basis(basis_pos[static_cast<size_t>(k)], k) = 1;
  if (nr > 0) {
    RatMatrix rn(nr, nr), rb(nr, nb);
    for (Index r = 0; r < nr; ++r) {
      const RatVector& rel = b.relations[static_cast<size_t>(r)];
      for (Index c = 0; c < nr; ++c) rn(r, c) = rel(non_basis[static_cast<size_t>(c)]);
      for (Index k = 0; k < nl; ++k)
        if (basis_pos[static_cast<size_t>(k)] >= 0) rb(r, basis_pos[static_cast<size_t>(k)]) = rel(k);
    }
    if (rank(rn) != nr) throw std::logic_error("relations_and_basis: eliminated labels are dependent");
    for (Index c = 0; c < nb; ++c) {
      auto x = solve(rn, RatVector(-rb.col(c)));
      for (Index k = 0; k < nr; ++k) b.label_to_basis(c, non_basis[static_cast<size_t>(k)]) = (*x)(k);
    }
  }
  return b;
}

Rational pairing(const DivisorClass& d, const CurveClass& c) {
  require_same_space(c.space, d.space, "pairing");
  return dot(d.coords, c.coords);
}

DivisorClass express_in_basis(const BasisSpec& basis, const BoundarySum& sum) {
  require_same_space(sum.space, basis.space, "express_in_basis");
  return DivisorClass{basis.space, basis.label_to_basis * sum.to_vector()};
}

DivisorClass express_in_basis(const BoundarySum& sum) {
  return express_in_basis(relations_and_basis(sum.space), sum);
}

BoundarySum as_boundary_sum(const BasisSpec& basis, const DivisorClass& d) {
  require_same_space(d.space, basis.space, "as_boundary_sum");
  BoundarySum out(basis.space);
  for (Index k = 0; k < d.coords.size(); ++k)
    if (d.coords(k) != 0) out.add(basis.ordered_basis[static_cast<size_t>(k)], d.coords(k));
  return out;
}

BoundarySum push_boundary_sum(const BoundarySum& sum, const SpaceId& dst) {
  const SpaceId& src = sum.space;
  if (src.n != dst.n || dst.m > src.m)
    throw std::invalid_argument("quotient_pushforward: " + to_string(dst) +
                                " is not a quotient of " + to_string(src));
  BoundarySum out(dst);
  const PointSet keep = first_points(dst.m);
  for (const auto& [l, q] : sum.terms) {
    BoundaryLabel image = canonical_label(dst, l.i, l.T & keep);
    out.add(image, q * degree_b(dst, image) / degree_b(src, l));
  }
  return out;
}

DivisorClass quotient_pushforward(const BoundarySum& sum, const SpaceId& dst) {
  return express_in_basis(push_boundary_sum(sum, dst));
}

BoundarySum forgetful_pullback(const BoundarySum& sum, const SpaceId& dst) {
  const SpaceId& src = sum.space;
  const int k = dst.n - src.n;
  if (k < 0 || dst.m - src.m != k)
    throw std::invalid_argument("forgetful_pullback: " + to_string(dst) + " does not map onto " +
                                to_string(src) + " by forgetting distinguished points");
  BoundarySum out(dst);
  const PointSet kept = first_points(src.m);
  const PointSet all = first_points(dst.m);
  for (const auto& l : enumerate_boundaries(dst)) {
    int side1 = l.i - cardinality(l.T & ~kept);
    int side2 = (dst.n - l.i) - cardinality(all & ~l.T & ~kept);
    if (side1 < 2 || side2 < 2) continue;
    auto it = sum.terms.find(canonical_label(src, side1, l.T & kept));
    if (it != sum.terms.end()) out.add(l, it->second);
  }
  return out;
}

DivisorClass forgetful_pullback(const DivisorClass& d, const SpaceId& dst) {
  return express_in_basis(forgetful_pullback(as_boundary_sum(relations_and_basis(d.space), d), dst));
}

BoundarySum b_normalize(const BoundarySum& in_B) {
  BoundarySum out(in_B.space);
  for (const auto& [l, q] : in_B.terms) out.add(l, is_ramified(in_B.space, l) ? 2 * q : q);
  return out;
}

BoundarySum b_denormalize(const BoundarySum& in_b) {
  BoundarySum out(in_b.space);
  for (const auto& [l, q] : in_b.terms) out.add(l, is_ramified(in_b.space, l) ? q / 2 : q);
  return out;
}

namespace {

DivisorClass scale_ramified(const DivisorClass& d, const Rational& factor) {
  BasisSpec b = relations_and_basis(d.space);
  DivisorClass out = d;
  for (size_t k = 0; k < b.ordered_basis.size(); ++k)
    if (is_ramified(d.space, b.ordered_basis[k])) out.coords(static_cast<Index>(k)) *= factor;
  return out;
}

}  // namespace

DivisorClass b_normalize(const DivisorClass& in_B) { return scale_ramified(in_B, 2); }
DivisorClass b_denormalize(const DivisorClass& in_b) { return scale_ramified(in_b, Rational(1, 2)); }

RatMatrix surface_intersection_form(const SpaceId& s) {
  if (s.n != 5) throw std::invalid_argument("surface_intersection_form: n = 5 required");
  BasisSpec b = relations_and_basis(s);
  // Boundary divisors of M̄_{0,5} are the pairs.
  std::vector<PointSet> pairs;
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) pairs.push_back(point_set({i, j}));
  auto meet = [](PointSet a, PointSet c) {
    if (a == c) return -1;
    return (a & c) ? 0 : 1;
  };
  const Index nb = static_cast<Index>(b.ordered_basis.size());
  RatMatrix q(nb, nb);
  for (Index x = 0; x < nb; ++x)
    for (Index y = 0; y < nb; ++y) {
      int total = 0;
      for (PointSet p : pairs) {
        if (!(label_of_side(s, p) == b.ordered_basis[static_cast<size_t>(x)])) continue;
        for (PointSet r : pairs)
          if (label_of_side(s, r) == b.ordered_basis[static_cast<size_t>(y)]) total += meet(p, r);
      }
      q(x, y) = Rational(total) / factorial(5 - s.m);
    }
  return q;
}

RatVector LinearMap::apply(const RatVector& v) const {
  if (v.size() != matrix.cols()) throw std::invalid_argument("LinearMap::apply: dimension mismatch");
  return matrix * v;
}

RatVector LinearMap::pull(const RatVector& functional) const {
  if (functional.size() != matrix.rows())
    throw std::invalid_argument("LinearMap::pull: dimension mismatch");
  return matrix.transpose() * functional;
}

std::vector<std::string> basis_names(const SpaceId& s) { return relations_and_basis(s).basis_names; }

std::vector<std::string> dual_basis_names(const SpaceId& s) {
  auto names = basis_names(s);
  for (auto& nm : names) nm = nm.substr(0, 1) + "̌" + nm.substr(1);
  return names;
}

}  // namespace nemcone
