#pragma once

#include "nemcone/cone.hpp"
#include "nemcone/moduli.hpp"

#include <string>
#include <vector>

namespace nemcone {

enum class MgTarget { Mg, Mg1 };

/// N¹ of M̄_g in the basis (λ, δ_irr, δ_1, …, δ_⌊g/2⌋), or of M̄_{g,1} in
/// (λ, δ_irr, δ_1, …, δ_{g−1}, ω). For g = 2 the λ coordinate is dropped.
struct MgSpace {
  int g = 2;
  MgTarget target = MgTarget::Mg;
};

MgSpace make_mg_space(int g, MgTarget target);
std::string to_string(const MgSpace& s);
std::vector<std::string> mg_basis_names(const MgSpace& s);
Index mg_dim(const MgSpace& s);

/// Dual basis vectors with the conventions applied: λ̌ becomes
/// (1/10)δ̌_irr + (1/5)δ̌_1 for g = 2; on M̄_g indices fold j ↦ g−j and
/// δ̌_0 = 0; on M̄_{g,1} δ̌_0 = −ω̌.
RatVector mg_lambda(const MgSpace& s);
RatVector mg_delta_irr(const MgSpace& s);
RatVector mg_delta(const MgSpace& s, int j);
RatVector mg_omega(const MgSpace& s);

/// i_* on dual coordinates, X_{2g+2,0} → M̄_g.
LinearMap hyperelliptic_pushforward(int g);
/// The closed-form curve images i_*C_k, 1 ≤ k ≤ 2g−1.
RatVector hyperelliptic_curve_image(int g, int k);
/// The 2(g−1) inequalities, ordered (first family, second family) per i.
std::vector<RatVector> hyperelliptic_pullback_inequalities(int g);
Cone hyperelliptic_pullback_cone(int g);

/// p_* on dual coordinates, X_{2n+3,1} → M̄_g (n ≤ g−1) or M̄_{g,1} (n ≤ g).
LinearMap pointed_pushforward(int g, int n, MgTarget target);
/// The closed-form curve images p_*C_k, 1 ≤ k ≤ 2n.
RatVector pointed_curve_image(int g, int n, MgTarget target, int k);

struct Mg1Inequality {
  std::string family;  // "i", "ii", "I", "II", "III", "IV"
  int k = 0;
  int m = 0;
  RatVector functional;
};

/// All families of the pushed Nem system over their stated ranges.
std::vector<Mg1Inequality> mg1_proof_families(int g, int n, MgTarget target);
/// The five families kept in the final statement.
std::vector<Mg1Inequality> mg1_bullets(int g, int n, MgTarget target);

/// Reduction coefficients c₁, c₂ (c₁ = 1, c₂ = 2 for n = 2).
std::pair<Rational, Rational> mg1_c_coefficients(int n, int k, int m);

struct CIdentityCheck {
  int n = 0;
  bool nonnegative = false;
  bool identity = false;  // holds for every valid (k, m)
  int cases = 0;
};

/// Checks the identity in M̄_{n+1,1}, where all δ indices involved are
/// distinct coordinates, so the check is symbolic.
CIdentityCheck mg1_c_identity(int n);

struct SubsumedInequality {
  Mg1Inequality inequality;
  Certificate certificate;  // coefficients index mg1_bullets
  bool verified = false;
};

struct Mg1Report {
  MgSpace space;
  int n = 0;
  std::vector<Mg1Inequality> bullets;
  std::vector<Mg1Inequality> families;
  std::vector<RatVector> pushed;  // images of the Nem(X_{2n+3,1}) inequalities
  bool pushed_in_families = false;  // every nonzero image is a positive multiple of a family member
  bool families_in_pushed = false;  // and conversely
  std::vector<SubsumedInequality> subsumed;
  bool subsumption_verified = false;
  Cone cone;  // H-representation from the bullets
};

Mg1Report mg1_inequality_family(int g, int n, MgTarget target);

/// X_{7,1} (b₂..b₅) to M̄_{2,1} in (Δ_irr, Δ₁, W).
LinearMap m21_pushforward();

struct M21Cones {
  Cone eff;
  Cone push_nem;
  Cone push_nef;
  Cone nef;
  std::vector<RatVector> nem_generators;  // computed Nem(X_{7,1}) rays
  std::vector<RatVector> nem_images;
  std::vector<RatVector> nef_images;
  std::vector<Certificate> image_certificates;  // each nem image in push_nem
  Certificate c_in_push_nef;
};

M21Cones m21_cones(const std::vector<RatVector>& nef_x71);

struct X71MoriData {
  RatVector canonical;  // K
  CurveClass c1;
  CurveClass c2;
  Rational k_dot_c2;
  Rational c1_dot_b3;
  bool c1_contracted = false;  // p_*C₁ = 0
  Cone face;                   // C₂^⊥ ∩ Nef(X_{7,1})
  std::vector<RatVector> z_nef;  // primitive images of the face rays
};

X71MoriData x71_mori_data(const std::vector<RatVector>& nef_x71);

}  // namespace nemcone
