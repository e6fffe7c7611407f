#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "fanih/linalg.hpp"
#include "fanih/rational.hpp"

namespace fanih {

using ConeId = std::size_t;
using RayId = std::size_t;

/// One cone of a fan. Coordinates on V_sigma are taken with respect to
/// `basis`: the standard basis for full-dimensional cones, otherwise the
/// first linearly independent rays in id order. The orientation of the cone
/// is the one of this basis.
struct Cone {
  ConeId id = 0;
  std::vector<RayId> rays;  // sorted
  int dim = 0;
  Matrix basis;                      // ambient_dim x dim
  std::vector<ConeId> facets;        // faces of codimension one, sorted by id
  std::vector<Vec> facet_normals;    // local linear forms, >= 0 on the cone, aligned with facets
  std::vector<ConeId> cofacets;      // cones having this one as a facet
};

/// A polyhedral fan with its full face lattice. Immutable after construction;
/// cones are numbered by (dimension, ray set), so id 0 is the zero cone.
class Fan {
 public:
  int ambient_dim() const { return dim_; }
  const std::vector<Vec>& rays() const { return rays_; }
  const Vec& ray(RayId r) const { return rays_[r]; }

  std::size_t size() const { return cones_.size(); }
  const Cone& cone(ConeId id) const { return cones_.at(id); }
  const std::vector<Cone>& cones() const { return cones_; }
  const std::vector<ConeId>& maximal_cones() const { return maximal_; }

  std::optional<ConeId> find(const std::vector<RayId>& sorted_rays) const;

  /// tau is a face of sigma (tau == sigma allowed).
  bool is_face(ConeId tau, ConeId sigma) const;
  /// All faces of sigma including sigma itself, sorted by id.
  std::vector<ConeId> faces(ConeId sigma) const;
  /// Cones having sigma as a face (the star), sorted by id.
  std::vector<ConeId> star(ConeId sigma) const;
  /// Smallest cone containing both (their join in the face poset) if one exists.
  std::optional<ConeId> join(ConeId a, ConeId b) const;
  /// Cone spanned by the common rays of a and b (a common face in a fan).
  ConeId meet(ConeId a, ConeId b) const;

  /// Coordinates of an ambient vector of V_sigma in the basis of sigma.
  std::optional<Vec> local_coords(ConeId sigma, const Vec& v) const;
  /// Matrix M with t_sigma = M t_tau, i.e. the coordinates in sigma's basis
  /// of tau's basis vectors. Requires V_tau inside V_sigma.
  Matrix embedding(ConeId tau, ConeId sigma) const;
  /// Restriction of an ambient linear form to sigma, in local coordinates.
  Vec restrict_form(const Vec& form, ConeId sigma) const;

  bool contains_point(ConeId sigma, const Vec& v) const;
  /// Smallest cone containing v, if any.
  std::optional<ConeId> carrier(const Vec& v) const;

  /// Lexicographically minimal chain tau = c_0 <1 c_1 <1 ... <1 c_r = sigma.
  std::vector<ConeId> flag(ConeId tau, ConeId sigma) const;

  /// Face closure of a set of cone ids.
  std::vector<ConeId> closure(const std::vector<ConeId>& ids) const;
  /// Maximal elements of a face-closed set.
  std::vector<ConeId> maximal_in(const std::vector<ConeId>& subfan) const;

  friend Fan build_fan(int ambient_dim, const std::vector<Vec>& rays,
                       const std::vector<std::vector<RayId>>& cones);

 private:
  int dim_ = 0;
  std::vector<Vec> rays_;
  std::vector<Cone> cones_;
  std::vector<ConeId> maximal_;
  std::map<std::vector<RayId>, ConeId> index_;
};

using FanPtr = std::shared_ptr<const Fan>;

/// Builds the face-closed fan generated by the listed cones. Rays are
/// rescaled to primitive integer vectors. Throws NotStrictlyConvex,
/// RedundantRay, NotCommonFace, OverlappingCones, InvalidArgument.
Fan build_fan(int ambient_dim, const std::vector<Vec>& rays,
              const std::vector<std::vector<RayId>>& cones);

/// A face-closed set of cones, sorted by id.
using Subfan = std::vector<ConeId>;

Subfan whole(const Fan& fan);
/// <sigma>: sigma and all its faces.
Subfan affine(const Fan& fan, ConeId sigma);
/// Proper faces of sigma (the boundary of the affine fan inside V_sigma).
Subfan proper_faces(const Fan& fan, ConeId sigma);
bool is_subfan(const Fan& fan, const Subfan& cones);

/// Face closure of the (n-1)-cones lying in exactly one n-cone of the subfan.
/// Throws NotPurelyDimensional.
Subfan boundary_fan(const Fan& fan, const Subfan& subfan);

/// Quotient of the star of sigma by V_sigma.
struct TransversalFan {
  FanPtr fan;
  Matrix projection;                  // (n - dim sigma) x n, kernel = V_sigma
  std::map<ConeId, ConeId> cone_map;  // star cone -> quotient cone
};

TransversalFan transversal_fan(const Fan& fan, ConeId sigma);

/// Refinement: every cone of `source` mapped to the smallest cone of
/// `target` containing it.
struct RefinementMap {
  FanPtr source;
  FanPtr target;
  std::vector<ConeId> carrier;

  /// Cones of the source contained in sigma (the refinement of <sigma>).
  Subfan refinement_of(ConeId sigma) const;
};

RefinementMap make_refinement(FanPtr source, FanPtr target);
RefinementMap identity_refinement(FanPtr fan);

/// Stellar subdivision of sigma along the ray through `direction`.
/// Throws ConeNotInFan, RayNotInterior.
RefinementMap stellar_subdivision(FanPtr fan, ConeId sigma, const Vec& direction);

struct FanClass {
  enum class Tri { No, Yes, Unknown };
  bool complete = false;
  bool purely_full_dim = false;
  bool normal = false;
  bool convex_support = false;
  Tri quasi_convex = Tri::Unknown;
};

FanClass classify(const Fan& fan);

/// Conewise linear function: one ambient linear form per maximal cone.
struct ConewiseLinear {
  std::map<ConeId, Vec> forms;
};

/// Agreement on shared faces.
bool is_consistent(const Fan& fan, const ConewiseLinear& psi);
/// Strict convexity across every wall of a complete fan.
bool is_strictly_convex(const Fan& fan, const ConewiseLinear& psi);
/// Searches a strictly convex conewise linear function by exact LP.
std::optional<ConewiseLinear> find_strictly_convex(const Fan& fan);

struct Polytope {
  int dim = 0;
  std::vector<Vec> vertices;
};

struct PolytopeFace {
  std::vector<std::size_t> vertices;  // sorted vertex indices; empty for the empty face
  int dim = -1;
};

/// All faces of P including the empty face and P itself, sorted by (dim, vertices).
/// Throws NotFullDim, RedundantRay (non-extreme vertex), FaceLatticeTooLarge.
std::vector<PolytopeFace> polytope_faces(const Polytope& p, std::size_t max_faces = 100000);

/// Facet inequalities a.x + b >= 0 with the facet's vertex set.
struct Facet {
  Vec normal;  // a, primitive
  Rational offset;  // b
  std::vector<std::size_t> vertices;
};
std::vector<Facet> polytope_facets(const Polytope& p);

struct PolytopeFan {
  FanPtr fan;
  ConewiseLinear psi;  // gauge for the face fan, support function for the normal fan
};

/// Cones over the proper faces of P (translated to its vertex barycenter),
/// with the gauge function of P as strictly convex function.
PolytopeFan face_fan(const Polytope& p);
/// Outer normal fan with the support function of P. Throws StrictConvexityFailed.
PolytopeFan normal_fan(const Polytope& p);
/// Polar of P after translating the vertex barycenter to the origin.
Polytope polar(const Polytope& p);

}  // namespace fanih
