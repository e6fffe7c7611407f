#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "fanih/fan.hpp"
#include "fanih/module.hpp"

namespace fanih {

/// Restriction of a polynomial function on sigma to its face tau.
Poly restrict_poly(const Fan& fan, const Poly& p, ConeId sigma, ConeId tau);

/// Sheaf of graded modules on a fan, given by free stalks over A_sigma and
/// polynomial restriction matrices for every facet incidence. Zero stalks
/// are allowed (rank 0).
class PureSheaf {
 public:
  PureSheaf() = default;
  PureSheaf(FanPtr fan, int max_degree);

  const FanPtr& fan() const { return fan_; }
  int max_degree() const { return max_degree_; }

  const FreeModule& stalk(ConeId sigma) const { return stalks_.at(sigma); }
  void set_stalk(ConeId sigma, std::vector<int> gens);

  /// Restriction to a facet tau of sigma.
  const PolyMatrix& facet_map(ConeId sigma, ConeId tau) const;
  void set_facet_map(ConeId sigma, ConeId tau, PolyMatrix m);

  /// Restriction to any face, composed along the lexicographically minimal flag.
  PolyMatrix restriction(ConeId sigma, ConeId tau) const;
  /// Degree-q part of restriction(sigma, tau); cached.
  const Matrix& restriction_matrix(ConeId sigma, ConeId tau, int q) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<ConeId, ConeId>, PolyMatrix> composites;
    std::map<std::tuple<ConeId, ConeId, int>, Matrix> degree_parts;
  };

  FanPtr fan_;
  int max_degree_ = 0;
  std::vector<FreeModule> stalks_;
  std::map<std::pair<ConeId, ConeId>, PolyMatrix> facet_maps_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Sections of F over the subfan lambda vanishing on lambda0, as a graded
/// module over the polynomial ring of a frame (columns of `frame` span a
/// space containing every cone of lambda). A section is stored as the
/// concatenation of its components on the maximal cones of lambda.
class Sections {
 public:
  Sections(const PureSheaf& f, Subfan lambda, Subfan lambda0, Matrix frame);

  const PureSheaf& sheaf() const { return *f_; }
  const std::vector<ConeId>& maximal() const { return maximal_; }
  std::size_t nvars() const { return frame_.cols(); }

  std::size_t ambient_dim(int q) const;
  /// Basis of the degree-q sections (kernel basis of the gluing system).
  const std::vector<Vec>& basis(int q) const;
  std::size_t dim(int q) const { return basis(q).size(); }

  /// Multiplication by a homogeneous polynomial in frame variables.
  Matrix multiply(const Poly& p, int q) const;
  Matrix multiply_variable(std::size_t i, int q) const;

  /// Component in F_gamma^q of a section, for any cone gamma of lambda.
  Vec restrict_to(const Vec& section, ConeId gamma, int q) const;
  /// Section from its values on the maximal cones (missing ones are zero).
  Vec assemble(const std::map<ConeId, Vec>& components, int q) const;

  /// Minimal generators over the frame ring in degrees <= max_degree.
  Generators generators(int max_degree) const;
  /// Hilbert function check that the given generators span freely up to max_degree.
  bool is_free_on(const Generators& g, int max_degree) const;
  /// Coefficients of a degree-q section in the given generators, if expressible.
  std::optional<Element> express(const Generators& g, const Vec& section, int q) const;

 private:
  std::size_t offset(std::size_t k, int q) const;

  const PureSheaf* f_;
  Subfan lambda_;
  Subfan lambda0_;
  Matrix frame_;
  std::vector<ConeId> maximal_;
  std::vector<Matrix> frame_coords_;  // per maximal cone: its basis in frame coordinates

  struct Cache {
    std::mutex mutex;
    std::map<int, std::vector<Vec>> bases;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

PureSheaf structure_sheaf(FanPtr fan, int max_degree);

/// Minimal extension sheaf with L_{sigma0} = A_{sigma0}; sigma0 = 0 gives E.
/// Throws TruncationTooLow when a stalk generator shows up at max_degree.
PureSheaf minimal_extension(FanPtr fan, ConeId sigma0, int max_degree);

/// Linear map of fans; cone_map[c] is the target cone containing the image
/// of c, or nullopt outside the domain (stalks there are zero).
struct FanMap {
  FanPtr source;
  FanPtr target;
  Matrix linear;  // target.ambient_dim x source.ambient_dim
  std::vector<std::optional<ConeId>> cone_map;
};

PureSheaf inverse_image(const FanMap& f, const PureSheaf& g);

/// The simple sheaf of sigma built from E of the transversal fan.
PureSheaf simple_sheaf(FanPtr fan, ConeId sigma, int max_degree);

/// Direct image under a refinement, stalks re-presented as free modules.
struct DirectImage {
  PureSheaf sheaf;
  /// Per cone of the coarse fan: the generator sections over its refinement.
  std::vector<Generators> generators;
  std::vector<Subfan> refinements;
};

DirectImage direct_image(const RefinementMap& pi, const PureSheaf& f);

PureSheaf direct_sum(const PureSheaf& a, const PureSheaf& b);

/// Surjectivity of F_sigma -> F_{boundary sigma} in every degree <= max_degree.
bool is_flabby(const PureSheaf& f);
/// Composites along the two flags of every codimension-2 incidence agree.
bool is_compatible(const PureSheaf& f);
/// Reduced restriction to the boundary: rank in degree q of the composite
/// F_sigma / m F_sigma -> F_{boundary} / m F_{boundary}.
std::vector<int> reduced_kernel_degrees(const PureSheaf& f, ConeId sigma);

struct DecompositionReport {
  std::vector<std::vector<int>> kernel_degrees;  // K_sigma per cone, sorted
  bool balanced = false;
};

/// Throws BookkeepingMismatch if the stalk degrees are not reproduced.
DecompositionReport decompose(const PureSheaf& f);

/// Sorted generator degrees of a stalk.
std::vector<int> degrees(const PureSheaf& f, ConeId sigma);

}  // namespace fanih
