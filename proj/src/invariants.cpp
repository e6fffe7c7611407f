#include "fanih/invariants.hpp"

#include <algorithm>
#include <map>

#include "fanih/error.hpp"

namespace fanih {

namespace {

int truncation(const Fan& fan, int max_degree) { return max_degree < 0 ? 2 * fan.ambient_dim() : max_degree; }

void require_quasi_convex(const Fan& fan) {
  if (classify(fan).quasi_convex != FanClass::Tri::Yes)
    throw Error(ErrorKind::QuasiConvexityUnknown, "quasi-convexity not recognized for this fan");
}

BettiVector betti_of(const Sections& s, int n) {
  BettiVector b(static_cast<std::size_t>(n + 1), 0);
  for (int d : s.generators(2 * n).degrees) ++b[static_cast<std::size_t>(d / 2)];
  return b;
}

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Polynomials in t as coefficient vectors, lowest degree first.
using TPoly = std::vector<long>;

TPoly times_t_minus_1_pow(const TPoly& p, int e) {
  TPoly out = p;
  for (int k = 0; k < e; ++k) {
    TPoly next(out.size() + 1, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i + 1] += out[i];
      next[i] -= out[i];
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

BettiVector ih_betti(const FanPtr& fan, int max_degree) {
  require_quasi_convex(*fan);
  const int n = fan->ambient_dim();
  auto e = minimal_extension(fan, 0, truncation(*fan, max_degree));
  Sections s(e, whole(*fan), {}, Matrix::identity(static_cast<std::size_t>(n)));
  return betti_of(s, n);
}

BettiVector ih_betti_compact(const FanPtr& fan, int max_degree) {
  require_quasi_convex(*fan);
  const int n = fan->ambient_dim();
  auto e = minimal_extension(fan, 0, truncation(*fan, max_degree));
  const Subfan all = whole(*fan);
  Sections s(e, all, boundary_fan(*fan, all), Matrix::identity(static_cast<std::size_t>(n)));
  return betti_of(s, n);
}

HVector stanley_h(const Polytope& p, std::size_t max_faces) {
  const auto faces = polytope_faces(p, max_faces);
  // faces are sorted by dimension, so every proper face precedes its cofaces
  std::vector<TPoly> h(faces.size()), g(faces.size());
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const auto& f = faces[i];
    if (f.dim < 0) {
      h[i] = {1};
      g[i] = {1};
      continue;
    }
    TPoly acc(static_cast<std::size_t>(f.dim + 1), 0);
    for (std::size_t j = 0; j < i; ++j) {
      const auto& sub = faces[j];
      if (sub.dim >= f.dim ||
          !std::includes(f.vertices.begin(), f.vertices.end(), sub.vertices.begin(), sub.vertices.end()))
        continue;
      const TPoly term = times_t_minus_1_pow(g[j], f.dim - 1 - sub.dim);
      for (std::size_t k = 0; k < term.size() && k < acc.size(); ++k) acc[k] += term[k];
    }
    h[i] = acc;
    TPoly gi(static_cast<std::size_t>(f.dim / 2 + 1), 0);
    for (std::size_t k = 0; k < gi.size(); ++k) gi[k] = acc[k] - (k > 0 ? acc[k - 1] : 0);
    g[i] = std::move(gi);
  }
  return h.back();
}

HVector simplicial_h(const std::vector<long>& f_vector) {
  const long d = static_cast<long>(f_vector.size());
  HVector h(static_cast<std::size_t>(d + 1), 0);
  for (long j = 0; j <= d; ++j)
    for (long i = 0; i <= j; ++i) {
      const long f = i == 0 ? 1 : f_vector[static_cast<std::size_t>(i - 1)];
      h[static_cast<std::size_t>(j)] += ((j - i) % 2 ? -1 : 1) * binomial(d - i, j - i) * f;
    }
  return h;
}

PdReport pd_check(const FanPtr& fan, int max_degree) {
  IntersectionPairing p(fan, truncation(*fan, max_degree));
  PdReport out;
  out.pairing = p.report();
  const std::size_t n = out.pairing.betti.size() - 1;
  out.palindromic = true;
  for (std::size_t k = 0; k <= n; ++k)
    if (out.pairing.betti[k] != out.pairing.betti_compact[n - k]) out.palindromic = false;
  out.ok = out.palindromic && out.pairing.nondegenerate;
  return out;
}

HlReport hl_check(const FanPtr& fan, const ConewiseLinear& psi, int max_degree) {
  if (!classify(*fan).complete) throw Error(ErrorKind::InvalidArgument, "Hard Lefschetz needs a complete fan");
  if (!is_strictly_convex(*fan, psi)) throw Error(ErrorKind::NotStrictlyConvex, "psi is not strictly convex");
  IntersectionPairing p(fan, truncation(*fan, max_degree));
  const int n = fan->ambient_dim();
  const auto& reps = p.absolute_reps();
  HlReport out;
  out.ok = true;
  for (int j = 0; 2 * j <= n; ++j) {
    HlStep step;
    step.from_degree = 2 * j;
    step.to_degree = 2 * n - 2 * j;
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < reps.degrees.size(); ++i) {
      if (reps.degrees[i] != 2 * j) continue;
      Vec x = reps.lifts[i];
      for (int q = 2 * j; q < step.to_degree; q += 2) x = p.multiply(psi, x, q);
      cols.push_back(p.reduce(x, step.to_degree));
    }
    step.cols = cols.size();
    step.rows = static_cast<std::size_t>(std::count(reps.degrees.begin(), reps.degrees.end(), step.to_degree));
    step.rank = cols.empty() ? 0 : rank(Matrix::from_columns(cols, step.rows));
    step.ok = step.rows == step.cols && step.rank == step.rows;
    if (!step.ok) out.ok = false;
    out.steps.push_back(step);
  }
  return out;
}

VanishingReport vanishing_check(const FanPtr& fan, int max_degree) {
  auto e = minimal_extension(fan, 0, truncation(*fan, max_degree));
  VanishingReport out;
  auto fail = [&](ConeId c, int cond, int q) {
    out.failures.push_back("cone " + std::to_string(c) + ": condition " + std::to_string(cond) + " degree " +
                           std::to_string(q));
  };
  for (const auto& c : fan->cones()) {
    if (c.dim == 0) continue;
    for (int d : e.stalk(c.id).gens)
      if (d >= c.dim) fail(c.id, 1, d);
    for (int d : relative_generators(e, c.id).degrees)
      if (d <= c.dim) fail(c.id, 2, d);
    Sections rel(e, affine(*fan, c.id), proper_faces(*fan, c.id), c.basis);
    for (int q = 0; q <= c.dim; q += 2)
      if (rel.dim(q) != 0) fail(c.id, 3, q);
  }
  out.ok = out.failures.empty();
  return out;
}

}  // namespace fanih
