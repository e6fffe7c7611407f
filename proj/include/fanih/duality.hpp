#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "fanih/sheaf.hpp"

namespace fanih {

/// psi_h(omega_sigma) = epsilon * c * omega_tau for the facet form h.
struct TransitionData {
  int epsilon = 1;
  Rational c;
};

/// The linear form on V_sigma (local coordinates) vanishing on V_tau,
/// nonnegative on sigma and equal to 1 on the sum of the rays of sigma
/// outside tau.
Vec canonical_facet_form(const Fan& fan, ConeId sigma, ConeId tau);

/// Throws NotAFacetForm unless h vanishes exactly on V_tau and is >= 0 on sigma.
TransitionData transition_data(const Fan& fan, ConeId sigma, ConeId tau, const Vec& h);

/// Minimal generators of F_(sigma, boundary sigma) as coordinates in F_sigma.
/// Throws TruncationTooLow / NotFree when the module is not captured freely.
Generators relative_generators(const PureSheaf& f, ConeId sigma);

/// Matrix of phi_h : Hom(F_(sigma,d sigma), A_sigma) -> Hom(F_(tau,d tau), A_tau)
/// in the dual bases of the relative generators. Throws LiftFailed.
PolyMatrix phi_h(const PureSheaf& f, ConeId sigma, ConeId tau, const Vec& h,
                 const Generators& rel_sigma, const Generators& rel_tau);

struct DualSheaf {
  PureSheaf sheaf;
  std::vector<Generators> relative;                  // per cone
  std::map<std::pair<ConeId, ConeId>, Rational> scale;  // c(h) used per facet
};

/// Dual sheaf with det V_sigma^* trivialized by the cone orientation: stalk
/// generators in degrees 2 dim sigma - deg u_j, facet maps c(h) * phi_h.
/// `forms` may override the facet form per incidence (for invariance tests).
DualSheaf dual_sheaf(const PureSheaf& f,
                     const std::map<std::pair<ConeId, ConeId>, Vec>& forms = {});

/// Composite of facet maps along a chain c_0 > c_1 > ... (decreasing).
PolyMatrix compose_chain(const PureSheaf& f, const std::vector<ConeId>& chain);

/// Degree-0 sheaf homomorphism, one matrix per cone (target gens x source gens).
struct SheafMap {
  std::vector<PolyMatrix> stalks;
};

/// Inductive extension of `seed` at the zero cone. Cones are processed by
/// increasing dimension, by id or reversed id within a dimension. Throws
/// LiftMissing, and LiftNotUnique when require_unique is set and a lift is
/// ambiguous.
SheafMap extend_hom(const PureSheaf& e, const PureSheaf& f, const PolyMatrix& seed, bool require_unique,
                    bool reversed = false);

/// Commutes with every facet map.
bool is_homomorphism(const PureSheaf& e, const PureSheaf& f, const SheafMap& m);
/// Stalkwise invertible (reduced constant matrix square and nonsingular).
bool is_isomorphism(const PureSheaf& e, const PureSheaf& f, const SheafMap& m);

/// Generator degrees of the double dual equal those of F on every cone.
bool bidual_check(const PureSheaf& f);

struct ThetaCheck {
  bool absolute = false;  // dim (DF)_L^q = dim Hom(F_(L,dL), A)^(q-2n)
  bool relative = false;  // dim (DF)_(L,dL)^q = dim Hom(F_L, A)^(q-2n)
};

/// Dimension identities between sections of the dual and Hom into A on the whole fan.
ThetaCheck theta_iso_check(const PureSheaf& f, const DualSheaf& df);

struct PairingReport {
  std::vector<std::size_t> betti;
  std::vector<std::size_t> betti_compact;
  std::vector<Matrix> blocks;  // P_k: IH^(2k) x IH_c^(2n-2k)
  bool nondegenerate = false;
  bool symmetric = false;  // only meaningful for complete fans
  bool complete = false;
};

/// Intersection product on a complete or full-dimensional affine fan:
/// E, its dual, the duality correlation, global and compactly supported
/// sections with reduced representatives.
class IntersectionPairing {
 public:
  /// Throws QuasiConvexityUnknown outside the recognized cases.
  IntersectionPairing(FanPtr fan, int max_degree, bool reversed = false);
  IntersectionPairing(const IntersectionPairing&) = delete;
  IntersectionPairing& operator=(const IntersectionPairing&) = delete;

  const FanPtr& fan() const { return fan_; }
  int max_degree() const { return max_degree_; }
  const PureSheaf& e() const { return *e_; }
  const DualSheaf& dual() const { return *de_; }
  const SheafMap& theta() const { return theta_; }
  const Sections& absolute() const { return *abs_; }
  const Sections& compact() const { return *rel_; }
  /// Representatives of the reduced spaces, per degree.
  const Generators& absolute_reps() const { return abs_reps_; }
  const Generators& compact_reps() const { return rel_reps_; }

  /// <a, b> in A^(p + r - 2n) for a in E_Delta^p, b in E_(Delta, d Delta)^r.
  Poly value(const Vec& a, int p, const Vec& b, int r) const;
  /// e(b) = <1, b>.
  Poly evaluate(const Vec& b, int r) const;
  /// Degree-0 global section normalized to 1 at the zero cone.
  Vec unit() const;

  /// Matrix of pairing values between reps of degree 2k and compact reps of degree 2n - 2k.
  Matrix block(int k) const;
  PairingReport report() const;

  /// Multiplication of a global section by a conewise linear function.
  Vec multiply(const ConewiseLinear& psi, const Vec& a, int p, bool compact_side = false) const;
  /// Coefficients of a degree-q section on the reduced representatives.
  Vec reduce(const Vec& a, int q, bool compact_side = false) const;

 private:
  FanPtr fan_;
  int max_degree_;
  std::unique_ptr<PureSheaf> e_;
  std::unique_ptr<DualSheaf> de_;
  SheafMap theta_;
  std::unique_ptr<Sections> abs_;
  std::unique_ptr<Sections> rel_;
  Generators abs_reps_;
  Generators rel_reps_;
  std::map<ConeId, Vec> wall_forms_;  // (n-1)-cone -> normalized normal form
};

/// Bilinear sheaf map E x E -> E extending multiplication at the zero cone,
/// built with canonical lifts. table[sigma][i * rank + j] = beta(g_i, g_j).
struct BetaProduct {
  std::vector<std::vector<Element>> table;
};

BetaProduct beta_product(const PureSheaf& e);
/// beta applied to two global sections (components on maximal cones).
Vec apply_beta(const BetaProduct& beta, const Sections& target, const Sections& left, const Vec& a, int p,
               const Sections& right, const Vec& b, int r);
/// e(beta(a, b)) == <a, b> on all reduced representative pairs.
bool cross_check_beta(const IntersectionPairing& pairing, const BetaProduct& beta);

struct CompatibilityReport {
  bool equal = false;
  std::size_t pairs = 0;
};

/// iota = extend_hom(E, pi_* E^) and <a, b> == <iota a, iota b> on reduced pairs.
CompatibilityReport refinement_compatibility(const RefinementMap& pi, int max_degree);

}  // namespace fanih
