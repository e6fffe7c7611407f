#pragma once

#include <string>
#include <vector>

#include "fanih/duality.hpp"

namespace fanih {

/// b_0, b_2, ..., b_2n as a vector indexed by k (degree 2k).
using BettiVector = std::vector<std::size_t>;
using HVector = std::vector<long>;

/// Default truncation 2n when max_degree < 0. Throws QuasiConvexityUnknown.
BettiVector ih_betti(const FanPtr& fan, int max_degree = -1);
BettiVector ih_betti_compact(const FanPtr& fan, int max_degree = -1);

/// Generalized h-vector by the g/h recursion over the face lattice.
HVector stanley_h(const Polytope& p, std::size_t max_faces = 100000);
/// Classical h-vector from f = (f_0, ..., f_{d-1}) of a simplicial d-polytope.
HVector simplicial_h(const std::vector<long>& f_vector);

struct PdReport {
  PairingReport pairing;
  bool palindromic = false;  // b_k == compact b_(n-k)
  bool ok = false;
};
PdReport pd_check(const FanPtr& fan, int max_degree = -1);

struct HlStep {
  int from_degree = 0;  // degree 2j
  int to_degree = 0;    // 2n - 2j
  std::size_t rows = 0, cols = 0, rank = 0;
  bool ok = false;
};
struct HlReport {
  std::vector<HlStep> steps;
  bool ok = false;
};
/// L^(n-2j) : IH^(2j) -> IH^(2n-2j) for 2j <= n, where L is multiplication
/// by psi reduced mod the maximal ideal. The symmetric pairs of the
/// statement around the middle degree n (linear forms in degree 2) are exactly these.
/// Throws NotStrictlyConvex.
HlReport hl_check(const FanPtr& fan, const ConewiseLinear& psi, int max_degree = -1);

struct VanishingReport {
  std::vector<std::string> failures;  // "cone <id>: condition <k> degree <q>"
  bool ok = false;
};
/// The three equivalent vanishing conditions on every non-zero cone.
VanishingReport vanishing_check(const FanPtr& fan, int max_degree = -1);

}  // namespace fanih
