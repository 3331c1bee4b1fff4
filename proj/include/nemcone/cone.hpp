#pragma once

#include "nemcone/linalg.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nemcone {

/// Inequalities read ⟨a, x⟩ ≥ 0, equations ⟨a, x⟩ = 0.
struct HRep {
  std::vector<RatVector> inequalities;
  std::vector<RatVector> equations;
};

struct VRep {
  std::vector<RatVector> rays;
  std::vector<RatVector> lineality;
};

struct Cone {
  Index ambient_dim = 0;
  std::optional<HRep> hrep;
  std::optional<VRep> vrep;

  static Cone from_hrep(Index dim, std::vector<RatVector> inequalities,
                        std::vector<RatVector> equations = {});
  static Cone from_rays(Index dim, std::vector<RatVector> rays,
                        std::vector<RatVector> lineality = {});
};

enum class CertificateKind { membership, non_membership, redundancy };

std::string to_string(CertificateKind kind);

/// Membership and redundancy: target = Σ c_i·gen_i (c_i ≥ 0) + Σ d_j·line_j.
/// For a cone the lines are its lineality basis; for redundancy they are the
/// equations. Non-membership: `functional` is ≥ 0 on the cone and < 0 on the
/// target.
struct Certificate {
  CertificateKind kind = CertificateKind::membership;
  std::vector<std::pair<size_t, Rational>> coefficients;
  std::vector<std::pair<size_t, Rational>> line_coefficients;
  RatVector functional;

  bool is_member() const { return kind != CertificateKind::non_membership; }
};

/// Canonical V-representation by double description. The H-representation is
/// kept as given.
Cone hrep_to_vrep(const Cone& c);

/// Minimal H-representation: facet normals (primitive, sorted) and a
/// canonical basis of the equations. The V-representation is canonicalized.
Cone vrep_to_hrep(const Cone& c);

/// Both representations, canonical.
Cone canonical(const Cone& c);

/// {y : ⟨y, x⟩ ≥ 0 for all x in c}, with both representations.
Cone dual(const Cone& c);

Certificate contains(const Cone& c, const RatVector& v);

/// Arithmetic check of a certificate against explicit generators and lines.
bool verify_membership(const std::vector<RatVector>& generators,
                       const std::vector<RatVector>& lines, const RatVector& target,
                       const Certificate& cert);
/// Checks a separating functional against generators (≥ 0), lines (= 0) and
/// the target (< 0).
bool verify_separation(const std::vector<RatVector>& generators,
                       const std::vector<RatVector>& lines, const RatVector& target,
                       const Certificate& cert);
/// Dispatches on the certificate kind using the cone's V-representation.
bool verify_certificate(const Cone& c, const RatVector& target, const Certificate& cert);

struct EqualityWitness {
  bool equal = true;
  std::optional<RatVector> offending;
  std::optional<Certificate> certificate;
};

/// Mutual containment of generators.
EqualityWitness equals(const Cone& a, const Cone& b);

/// Generator containment of a in b.
EqualityWitness subset(const Cone& a, const Cone& b);

Cone face(const Cone& c, const RatVector& f);

struct Redundancy {
  size_t index = 0;  // position in the input list
  Certificate certificate;  // coefficients refer to positions in the input list
};

struct MinimalHRep {
  std::vector<size_t> kept;  // positions in the input list
  std::vector<Redundancy> removed;
};

/// Splits an inequality list into facet-defining members and redundant ones,
/// each redundant one certified as a nonnegative combination of kept
/// inequalities plus a combination of the equations. The cone must be
/// full-dimensional inside the equation subspace.
MinimalHRep minimal_hrep(const std::vector<RatVector>& inequalities,
                         const std::vector<RatVector>& equations, Index dim);

/// Checks a redundancy certificate against the input lists.
bool verify_redundancy(const std::vector<RatVector>& inequalities,
                       const std::vector<RatVector>& equations, const Redundancy& r);

bool is_simplicial(const Cone& c);

/// Dimension of the linear span of the cone.
Index cone_dimension(const Cone& c);

std::vector<RatVector> canonical_rays(const std::vector<RatVector>& rays);

bool same_ray_set(const std::vector<RatVector>& a, const std::vector<RatVector>& b);

}  // namespace nemcone
