#pragma once

#include "nemcone/cone.hpp"
#include "nemcone/moduli.hpp"

#include <string>
#include <vector>

namespace nemcone {

/// Coordinates of b̌_j (and b̌*_j) in the dual basis of X_{n,m}, m ≤ 2, with
/// the conventions b̌_1 = 0 (m ≤ 1), b̌_1 = b̌_2 = b̌*_1 = 0 (m = 2) and, for
/// m = 0, the folding j ↦ min(j, n−j). Out-of-range indices give zero.
RatVector dual_b(const SpaceId& s, int j);
RatVector dual_b_star(const SpaceId& s, int j);

CurveClass curve_Ck(const SpaceId& s, int k);
/// C*_i on X_{l+1,2}.
CurveClass curve_Ck_star(int l, int i);

struct AttachMapSpec {
  enum class Kind { q, r, s, pi_star };
  Kind kind = Kind::q;
  int l = 0;
  int n = 0;
  int m = 0;
};

void validate(const AttachMapSpec& spec);

/// Dual-coordinate pushforward of the attaching map (for pi_star: the
/// divisor pullback X_{n−1,0} → X_{n,1}). The r map is given on the b̌*
/// coordinates of X_{l+1,2} only.
LinearMap attach_pushforward(const AttachMapSpec& spec);

/// q_*C_k by the unrolled recursion, independent of the closed form.
RatVector q_recursion_image(int l, int n, int m, int k);

/// Boundary classes of X_{n,m} in the ordered basis, one per label.
std::vector<RatVector> boundary_classes(const SpaceId& s);

/// Cone generated by the boundary classes. Refused for m ≥ 3 with n ≥ 6.
Cone eff_cone(const SpaceId& s);

struct Xn2Derivation {
  int n = 0;
  std::vector<RatVector> ineq1, ineq2, ineq3;  // index j−2 for 2 ≤ j ≤ n−2
  RatVector ineq4;
  std::vector<RatVector> combinations;          // the stated combination, per j
  std::vector<Rational> multiples;              // combination = multiple · b̌*_j
  bool ineq1_from_r = false;  // ineq1 = (n−4)(n−3)·r_*b̌*_j with l = n−2
  bool ineq3_from_ineq2 = false;
  bool verified = false;
};

Xn2Derivation eff_Xn2_derivation(int n);

/// Theorem-level H-representation: m = 0 (n ≥ 6) or m = 1 (n ≥ 5).
Cone nem_hrep(const SpaceId& s);

/// The m = 1 inequality families, with their indices.
struct IndexedInequality {
  std::string name;
  RatVector functional;
};
std::vector<IndexedInequality> nem_Xn1_reduced(int n);
/// E_k (b̌_k ≥ 0), J_l and all I_{i,j,l} with 2 ≤ i, j ≤ l−1.
std::vector<IndexedInequality> nem_Xn1_full(int n);

/// J_l for X_{n,1}.
RatVector nem_J(int n, int l);
/// I_{i,j,l} for X_{n,1}, unscaled.
RatVector nem_I(int n, int i, int j, int l);

struct ReductionCheck {
  int n = 0;
  int identities = 0;          // I_{i,j,l} = a·J + b·I_{i−1,j,l} checked
  int failures = 0;
  bool b2_combination = false;  // b̌_2 ≥ 0 from the stated combination
  bool chain = false;           // b̌_{k+1} ≥ 0 for every k via J
  bool full_subset_reduced = false;  // every full inequality is a nonnegative
                                     // combination of reduced ones
  /// One per member of nem_Xn1_full(n); coefficients index nem_Xn1_reduced(n).
  std::vector<Redundancy> certificates;
};

ReductionCheck nem_Xn1_reduction(int n);

std::vector<RatVector> nem_rays_inductive(int n);
RatVector extremal_ray_Ri(int n, int i);

struct Xn1Decomposition {
  int n = 0;
  std::vector<RatVector> face_rays;
  std::vector<RatVector> pulled_rays;
  bool face_matches = false;
  bool off_face_positive = false;
  bool face_symmetric = false;
};

Xn1Decomposition nem_Xn1_decomposition(int n);

struct Counterexample {
  int n = 0;
  BoundarySum source;  // F_τ on X_6
  DivisorClass pushed;
  std::vector<RatVector> boundary_generators;
  Certificate certificate;
  bool certificate_verified = false;
};

/// `ftau` is F_τ on X_6 (all points named).
Counterexample counterexample_Ftau(int n, const BoundarySum& ftau);

struct L7Result {
  BoundarySum relabelled;  // with the distinguished point moved to 1
  DivisorClass pushed;
  RatVector primitive_ray;
};

/// `distinguished` is the point of `l7` that stays distinguished on X_{7,1}.
L7Result class_L7(const BoundarySum& l7, int distinguished);

}  // namespace nemcone
