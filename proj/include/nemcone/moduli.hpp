#pragma once

#include "nemcone/linalg.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nemcone {

/// X_{n,m}: the last n−m marked points are symmetrized. m = n−1 is stored as
/// m = n since both name the same space.
struct SpaceId {
  int n = 0;
  int m = 0;
  friend bool operator==(const SpaceId&, const SpaceId&) = default;
};

/// Validates and normalizes; throws std::invalid_argument("n ≥ 4 required")
/// and similar.
SpaceId make_space(int n, int m);
std::string to_string(const SpaceId& s);

/// Bit k−1 stands for marked point k.
using PointSet = std::uint32_t;

PointSet point_set(std::initializer_list<int> points);
std::vector<int> elements(PointSet s);
int cardinality(PointSet s);

/// D^i_T: i marked points on one component, of which T are distinguished.
struct BoundaryLabel {
  int i = 0;
  PointSet T = 0;
  friend bool operator==(const BoundaryLabel&, const BoundaryLabel&) = default;
};

/// Order by i, then |T|, then T lexicographically.
bool operator<(const BoundaryLabel& a, const BoundaryLabel& b);

bool label_valid(const SpaceId& s, int i, PointSet T);
/// The representative of {(i,T), (n−i, [m]∖T)} with smaller i, ties broken by
/// the smaller T in (size, lex) order.
BoundaryLabel canonical_label(const SpaceId& s, int i, PointSet T);
/// Label of the divisor separating `side` (a set of marked points) from the
/// rest.
BoundaryLabel label_of_side(const SpaceId& s, PointSet side);
std::string label_name(const BoundaryLabel& l);

std::vector<BoundaryLabel> enumerate_boundaries(const SpaceId& s);
size_t label_index(const std::vector<BoundaryLabel>& labels, const BoundaryLabel& l);

/// The simply ramified boundary D^2_∅, present when n − m ≥ 2.
bool is_ramified(const SpaceId& s, const BoundaryLabel& l);

/// Number of boundary divisors of M̄_{0,n} over the label, and the degree
/// (n−m)!/orbit of the quotient map along it.
Rational orbit_size(const SpaceId& s, const BoundaryLabel& l);
Rational degree_b(const SpaceId& s, const BoundaryLabel& l);

/// Formal sum of boundary labels. Coefficients are in b-units: the ramified
/// label counts half of its reduced divisor.
struct BoundarySum {
  SpaceId space;
  std::map<BoundaryLabel, Rational> terms;

  BoundarySum() = default;
  explicit BoundarySum(SpaceId s) : space(s) {}
  BoundarySum& add(const BoundaryLabel& l, const Rational& q);
  /// Adds the divisor separating `side`, for spaces with all points named.
  BoundarySum& add_side(std::initializer_list<int> side, const Rational& q = 1);
  RatVector to_vector() const;
  size_t size() const { return terms.size(); }
};

BoundarySum operator+(const BoundarySum& a, const BoundarySum& b);
BoundarySum operator*(const Rational& q, const BoundarySum& a);

/// Relabels marked points of a space with every point named.
BoundarySum permute_points(const BoundarySum& sum, const std::vector<int>& perm);

/// Keel relations on M̄_{0,n}, over enumerate_boundaries(X_{n,n}).
std::vector<RatVector> keel_relations(int n);

/// Keel relations pushed to X_{n,m}, over the labels of X_{n,m}.
std::vector<RatVector> pushed_keel_relations(const SpaceId& s);

int picard_number(const SpaceId& s);

struct BasisSpec {
  SpaceId space;
  std::vector<BoundaryLabel> labels;
  std::vector<BoundaryLabel> ordered_basis;
  std::vector<std::string> basis_names;
  std::vector<RatVector> relations;  // over `labels`
  RatMatrix label_to_basis;          // picard × #labels
};

/// Supported for m ≤ 3 (n ≥ 5 when m = 3, n ≥ 4 otherwise).
BasisSpec relations_and_basis(const SpaceId& s);

struct DivisorClass {
  SpaceId space;
  RatVector coords;
};

struct CurveClass {
  SpaceId space;
  RatVector coords;
};

Rational pairing(const DivisorClass& d, const CurveClass& c);

DivisorClass express_in_basis(const BasisSpec& basis, const BoundarySum& sum);
DivisorClass express_in_basis(const BoundarySum& sum);

/// Section of the boundary map: each basis coordinate as its basis label.
BoundarySum as_boundary_sum(const BasisSpec& basis, const DivisorClass& d);

/// Label-level pushforward along X_{n,m} → X_{n,m'} (m' ≤ m): points m'+1..m
/// become symmetric.
BoundarySum push_boundary_sum(const BoundarySum& sum, const SpaceId& dst);
DivisorClass quotient_pushforward(const BoundarySum& sum, const SpaceId& dst);

/// Label-level pullback along X_{n+k,m+k} → X_{n,m} forgetting the
/// distinguished points m+1..m+k.
BoundarySum forgetful_pullback(const BoundarySum& sum, const SpaceId& dst);
DivisorClass forgetful_pullback(const DivisorClass& d, const SpaceId& dst);

/// Conversion between coefficients on the reduced boundary divisors (B) and
/// b-units: the ramified coefficient doubles.
BoundarySum b_normalize(const BoundarySum& in_B);
BoundarySum b_denormalize(const BoundarySum& in_b);
DivisorClass b_normalize(const DivisorClass& in_B);
DivisorClass b_denormalize(const DivisorClass& in_b);

/// Intersection form on the surfaces X_{5,m}, in the ordered basis.
RatMatrix surface_intersection_form(const SpaceId& s);

/// Exact matrix between coordinate spaces.
struct LinearMap {
  std::string source;
  std::string target;
  std::vector<std::string> source_basis;
  std::vector<std::string> target_basis;
  RatMatrix matrix;  // target dim × source dim

  RatVector apply(const RatVector& v) const;
  /// Pulls back a functional on the target to one on the source.
  RatVector pull(const RatVector& functional) const;
};

/// Names of the basis of X_{n,m} for m ≤ 3.
std::vector<std::string> basis_names(const SpaceId& s);
/// Names of the dual basis ("b̌" rendered as "bv").
std::vector<std::string> dual_basis_names(const SpaceId& s);

}  // namespace nemcone
