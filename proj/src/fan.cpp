#include "fanih/fan.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "fanih/error.hpp"
#include "fanih/lp.hpp"

namespace fanih {

namespace {

bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<std::size_t> set_intersection(const std::vector<std::size_t>& a,
                                          const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Calls f on every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Face lattice of pointed cones generated by subsets of a fixed vector list.
class FaceEnumerator {
 public:
  struct Node {
    int dim = 0;
    std::vector<std::vector<std::size_t>> facets;
  };

  FaceEnumerator(const std::vector<Vec>& vecs, int ambient) : vecs_(vecs), n_(ambient) {}

  /// Basis of the span of the subset: its first independent members.
  std::vector<std::size_t> pivots(const std::vector<std::size_t>& subset) const {
    SpanBuilder span(static_cast<std::size_t>(n_));
    std::vector<std::size_t> out;
    for (auto i : subset)
      if (span.add(vecs_[i])) out.push_back(i);
    return out;
  }

  const Node& visit(const std::vector<std::size_t>& subset, std::size_t max_nodes) {
    if (auto it = memo_.find(subset); it != memo_.end()) return it->second;
    if (memo_.size() >= max_nodes)
      throw Error(ErrorKind::FaceLatticeTooLarge, "more than " + std::to_string(max_nodes) + " faces");
    Node node;
    const auto piv = pivots(subset);
    node.dim = static_cast<int>(piv.size());
    if (node.dim > 0) {
      Matrix basis = Matrix::from_columns(basis_vectors(piv), static_cast<std::size_t>(n_));
      std::vector<Vec> local;
      for (auto i : subset) local.push_back(*solve(basis, vecs_[i]));
      const std::size_t d = static_cast<std::size_t>(node.dim);
      std::set<std::vector<std::size_t>> found;
      for_each_combination(subset.size(), d - 1, [&](const std::vector<std::size_t>& combo) {
        std::vector<std::size_t> chosen;
        for (auto c : combo) chosen.push_back(subset[c]);
        for (const auto& f : found)
          if (is_subset(chosen, f)) return;
        std::vector<Vec> rows;
        for (auto c : combo) rows.push_back(local[c]);
        auto ker = kernel_basis(Matrix::from_rows(rows, d));
        if (ker.size() != 1) return;
        int sign = 0;
        std::vector<std::size_t> zeros;
        for (std::size_t j = 0; j < subset.size(); ++j) {
          const int s = sgn(dot(ker[0], local[j]));
          if (s == 0) {
            zeros.push_back(subset[j]);
          } else if (sign == 0) {
            sign = s;
          } else if (s != sign) {
            return;
          }
        }
        found.insert(zeros);
      });
      if (found.empty())
        throw Error(ErrorKind::NotStrictlyConvex, "cone contains a line");
      node.facets.assign(found.begin(), found.end());
    }
    auto [it, inserted] = memo_.emplace(subset, std::move(node));
    for (const auto& f : it->second.facets) visit(f, max_nodes);
    return memo_.at(subset);
  }

  /// All faces of subset (including itself), collected from the memo.
  void collect(const std::vector<std::size_t>& subset, std::set<std::vector<std::size_t>>& out) const {
    if (!out.insert(subset).second) return;
    for (const auto& f : memo_.at(subset).facets) collect(f, out);
  }

  const Node& node(const std::vector<std::size_t>& subset) const { return memo_.at(subset); }

  std::vector<Vec> basis_vectors(const std::vector<std::size_t>& piv) const {
    std::vector<Vec> out;
    for (auto i : piv) out.push_back(vecs_[i]);
    return out;
  }

 private:
  const std::vector<Vec>& vecs_;
  int n_;
  std::map<std::vector<std::size_t>, Node> memo_;
};

/// Linear form on the local coordinates of `outer` vanishing on `inner`'s
/// rays and positive on the remaining ones.
Vec facet_normal(const std::vector<Vec>& outer_local, const std::vector<Vec>& inner_local,
                 std::size_t d) {
  auto ker = kernel_basis(Matrix::from_rows(inner_local, d));
  Vec normal = primitive(ker.at(0));
  for (const auto& v : outer_local) {
    const int s = sgn(dot(normal, v));
    if (s < 0) {
      for (auto& x : normal) x = -x;
      break;
    }
    if (s > 0) break;
  }
  return normal;
}

}  // namespace

// ---------------------------------------------------------------------------
// build_fan

Fan build_fan(int ambient_dim, const std::vector<Vec>& rays_in,
              const std::vector<std::vector<RayId>>& cones_in) {
  if (ambient_dim < 0) throw Error(ErrorKind::InvalidArgument, "negative dimension");
  const auto n = static_cast<std::size_t>(ambient_dim);
  Fan fan;
  fan.dim_ = ambient_dim;
  for (const auto& r : rays_in) {
    if (r.size() != n) throw Error(ErrorKind::InvalidArgument, "ray has wrong length");
    if (is_zero(r)) throw Error(ErrorKind::InvalidArgument, "zero ray");
    fan.rays_.push_back(primitive(r));
  }
  {
    std::set<Vec> seen;
    for (const auto& r : fan.rays_)
      if (!seen.insert(r).second) throw Error(ErrorKind::InvalidArgument, "duplicate ray");
  }

  std::vector<std::vector<RayId>> listed;
  for (auto c : cones_in) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (auto r : c)
      if (r >= fan.rays_.size()) throw Error(ErrorKind::InvalidArgument, "ray index out of range");
    listed.push_back(std::move(c));
  }
  if (listed.empty()) listed.push_back({});

  FaceEnumerator faces(fan.rays_, ambient_dim);
  std::set<std::vector<RayId>> all;
  std::vector<std::set<std::vector<RayId>>> face_sets(listed.size());
  for (std::size_t k = 0; k < listed.size(); ++k) {
    faces.visit(listed[k], 1000000);
    faces.collect(listed[k], face_sets[k]);
    std::set<RayId> extreme;
    for (const auto& f : face_sets[k])
      if (faces.node(f).dim == 1) extreme.insert(f.begin(), f.end());
    if (extreme.size() != listed[k].size())
      throw Error(ErrorKind::RedundantRay, "a listed ray is not an extreme ray of its cone");
    all.insert(face_sets[k].begin(), face_sets[k].end());
  }

  // Pairwise intersections must be common faces.
  for (std::size_t a = 0; a < listed.size(); ++a) {
    for (std::size_t b = a + 1; b < listed.size(); ++b) {
      const auto common = set_intersection(listed[a], listed[b]);
      if (!face_sets[a].count(common) || !face_sets[b].count(common))
        throw Error(ErrorKind::NotCommonFace, "cones " + std::to_string(a) + " and " +
                                                  std::to_string(b) + " do not meet in a common face");
      if (common == listed[a] || common == listed[b]) continue;
      // Look for x in both cones with h(x) = 1, where h >= 0 on cone a
      // vanishes exactly on the common face.
      const auto& na = faces.node(listed[a]);
      const auto piv = faces.pivots(listed[a]);
      Matrix basis = Matrix::from_columns(faces.basis_vectors(piv), n);
      const std::size_t d = piv.size();
      std::vector<Vec> local;
      for (auto r : listed[a]) local.push_back(*solve(basis, fan.rays_[r]));
      Vec h(d);
      for (const auto& f : na.facets) {
        if (!is_subset(common, f)) continue;
        std::vector<Vec> inner;
        for (auto r : f) inner.push_back(*solve(basis, fan.rays_[r]));
        Vec nf = facet_normal(local, inner, d);
        for (std::size_t i = 0; i < d; ++i) h[i] += nf[i];
      }
      const std::size_t la = listed[a].size(), lb = listed[b].size();
      Matrix lp(n + 1, la + lb);
      Vec rhs(n + 1);
      for (std::size_t i = 0; i < la; ++i) {
        for (std::size_t j = 0; j < n; ++j) lp(j, i) = fan.rays_[listed[a][i]][j];
        lp(n, i) = dot(h, local[i]);
      }
      for (std::size_t i = 0; i < lb; ++i)
        for (std::size_t j = 0; j < n; ++j) lp(j, la + i) = -fan.rays_[listed[b][i]][j];
      rhs[n] = 1;
      if (find_nonnegative_solution(lp, rhs))
        throw Error(ErrorKind::OverlappingCones, "cones " + std::to_string(a) + " and " +
                                                     std::to_string(b) + " overlap");
    }
  }

  std::vector<std::vector<RayId>> ordered(all.begin(), all.end());
  std::stable_sort(ordered.begin(), ordered.end(), [&](const auto& x, const auto& y) {
    const int dx = faces.node(x).dim, dy = faces.node(y).dim;
    if (dx != dy) return dx < dy;
    return x < y;
  });
  for (std::size_t id = 0; id < ordered.size(); ++id) fan.index_[ordered[id]] = id;

  for (std::size_t id = 0; id < ordered.size(); ++id) {
    Cone c;
    c.id = id;
    c.rays = ordered[id];
    c.dim = faces.node(c.rays).dim;
    const auto d = static_cast<std::size_t>(c.dim);
    if (c.dim == ambient_dim) {
      c.basis = Matrix::identity(n);
    } else {
      c.basis = Matrix::from_columns(faces.basis_vectors(faces.pivots(c.rays)), n);
    }
    std::vector<Vec> local;
    for (auto r : c.rays) local.push_back(*solve(c.basis, fan.rays_[r]));
    std::vector<std::pair<ConeId, Vec>> fs;
    for (const auto& f : faces.node(c.rays).facets) {
      std::vector<Vec> inner;
      for (auto r : f) inner.push_back(*solve(c.basis, fan.rays_[r]));
      fs.emplace_back(fan.index_.at(f), facet_normal(local, inner, d));
    }
    std::sort(fs.begin(), fs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [fid, nrm] : fs) {
      c.facets.push_back(fid);
      c.facet_normals.push_back(std::move(nrm));
    }
    fan.cones_.push_back(std::move(c));
  }
  for (const auto& c : fan.cones_)
    for (auto f : c.facets) fan.cones_[f].cofacets.push_back(c.id);
  for (auto& c : fan.cones_) std::sort(c.cofacets.begin(), c.cofacets.end());
  for (const auto& c : fan.cones_)
    if (c.cofacets.empty()) fan.maximal_.push_back(c.id);
  return fan;
}

// ---------------------------------------------------------------------------
// Fan queries

std::optional<ConeId> Fan::find(const std::vector<RayId>& sorted_rays) const {
  auto it = index_.find(sorted_rays);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Fan::is_face(ConeId tau, ConeId sigma) const {
  const auto& t = cones_.at(tau);
  const auto& s = cones_.at(sigma);
  return t.dim <= s.dim && is_subset(t.rays, s.rays);
}

std::vector<ConeId> Fan::faces(ConeId sigma) const {
  std::vector<ConeId> out;
  for (ConeId id = 0; id <= sigma; ++id)
    if (is_face(id, sigma)) out.push_back(id);
  return out;
}

std::vector<ConeId> Fan::star(ConeId sigma) const {
  std::vector<ConeId> out;
  for (ConeId id = sigma; id < cones_.size(); ++id)
    if (is_face(sigma, id)) out.push_back(id);
  return out;
}

std::optional<ConeId> Fan::join(ConeId a, ConeId b) const {
  for (ConeId id = std::max(a, b); id < cones_.size(); ++id)
    if (is_face(a, id) && is_face(b, id)) return id;
  return std::nullopt;
}

ConeId Fan::meet(ConeId a, ConeId b) const {
  return index_.at(set_intersection(cones_.at(a).rays, cones_.at(b).rays));
}

std::optional<Vec> Fan::local_coords(ConeId sigma, const Vec& v) const {
  const auto& c = cones_.at(sigma);
  if (c.dim == 0) {
    if (!is_zero(v)) return std::nullopt;
    return Vec{};
  }
  auto x = solve(c.basis, v);
  if (!x || c.basis * *x != v) return std::nullopt;
  return x;
}

Matrix Fan::embedding(ConeId tau, ConeId sigma) const {
  const auto& t = cones_.at(tau);
  const auto& s = cones_.at(sigma);
  Matrix m(static_cast<std::size_t>(s.dim), static_cast<std::size_t>(t.dim));
  for (std::size_t j = 0; j < static_cast<std::size_t>(t.dim); ++j) {
    auto x = local_coords(sigma, t.basis.column(j));
    if (!x) throw Error(ErrorKind::NotAFace, "span of cone " + std::to_string(tau) +
                                                 " not inside cone " + std::to_string(sigma));
    for (std::size_t i = 0; i < x->size(); ++i) m(i, j) = (*x)[i];
  }
  return m;
}

Vec Fan::restrict_form(const Vec& form, ConeId sigma) const {
  const auto& c = cones_.at(sigma);
  Vec out(static_cast<std::size_t>(c.dim));
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = dot(form, c.basis.column(j));
  return out;
}

bool Fan::contains_point(ConeId sigma, const Vec& v) const {
  auto x = local_coords(sigma, v);
  if (!x) return false;
  for (const auto& nrm : cones_.at(sigma).facet_normals)
    if (sgn(dot(nrm, *x)) < 0) return false;
  return true;
}

std::optional<ConeId> Fan::carrier(const Vec& v) const {
  for (const auto& c : cones_)
    if (contains_point(c.id, v)) return c.id;
  return std::nullopt;
}

std::vector<ConeId> Fan::flag(ConeId tau, ConeId sigma) const {
  if (!is_face(tau, sigma)) throw Error(ErrorKind::NotAFace, "no flag between non-incident cones");
  std::vector<ConeId> chain{tau};
  while (chain.back() != sigma) {
    bool advanced = false;
    for (auto up : cones_[chain.back()].cofacets) {
      if (is_face(up, sigma)) {
        chain.push_back(up);
        advanced = true;
        break;
      }
    }
    if (!advanced) throw Error(ErrorKind::NotAFace, "broken face lattice");
  }
  return chain;
}

std::vector<ConeId> Fan::closure(const std::vector<ConeId>& ids) const {
  std::set<ConeId> out;
  for (auto id : ids)
    for (auto f : faces(id)) out.insert(f);
  return {out.begin(), out.end()};
}

std::vector<ConeId> Fan::maximal_in(const std::vector<ConeId>& subfan) const {
  std::vector<ConeId> out;
  for (auto a : subfan) {
    bool maximal = true;
    for (auto b : subfan)
      if (b != a && is_face(a, b)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subfans

Subfan whole(const Fan& fan) {
  Subfan out(fan.size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

Subfan affine(const Fan& fan, ConeId sigma) { return fan.faces(sigma); }

Subfan proper_faces(const Fan& fan, ConeId sigma) {
  auto f = fan.faces(sigma);
  f.pop_back();
  return f;
}

bool is_subfan(const Fan& fan, const Subfan& cones) {
  std::set<ConeId> s(cones.begin(), cones.end());
  for (auto c : cones) {
    if (c >= fan.size()) return false;
    for (auto f : fan.faces(c))
      if (!s.count(f)) return false;
  }
  return true;
}

Subfan boundary_fan(const Fan& fan, const Subfan& subfan) {
  const int n = fan.ambient_dim();
  std::set<ConeId> in(subfan.begin(), subfan.end());
  for (auto m : fan.maximal_in(subfan))
    if (fan.cone(m).dim != n)
      throw Error(ErrorKind::NotPurelyDimensional, "maximal cone " + std::to_string(m) +
                                                       " is not full-dimensional");
  std::vector<ConeId> outer;
  for (auto t : subfan) {
    if (fan.cone(t).dim != n - 1) continue;
    std::size_t count = 0;
    for (auto up : fan.cone(t).cofacets) count += in.count(up);
    if (count == 1) outer.push_back(t);
  }
  if (outer.empty()) return {};
  return fan.closure(outer);
}

// ---------------------------------------------------------------------------
// Transversal fan

TransversalFan transversal_fan(const Fan& fan, ConeId sigma) {
  if (sigma >= fan.size()) throw Error(ErrorKind::ConeNotInFan, "cone " + std::to_string(sigma));
  const auto n = static_cast<std::size_t>(fan.ambient_dim());
  const auto& s = fan.cone(sigma);
  std::vector<Vec> sigma_rays;
  for (auto r : s.rays) sigma_rays.push_back(fan.ray(r));
  auto ann = kernel_basis(Matrix::from_rows(sigma_rays, n));
  TransversalFan out;
  out.projection = Matrix::from_rows(ann, n);

  const auto st = fan.star(sigma);
  std::map<ConeId, RayId> ray_of;  // (dim sigma + 1)-cones of the star -> quotient ray
  std::vector<Vec> qrays;
  for (auto g : st) {
    const auto& c = fan.cone(g);
    if (c.dim != s.dim + 1) continue;
    RayId extra = 0;
    for (auto r : c.rays)
      if (!std::binary_search(s.rays.begin(), s.rays.end(), r)) {
        extra = r;
        break;
      }
    ray_of[g] = qrays.size();
    qrays.push_back(out.projection * fan.ray(extra));
  }
  auto quotient_rays = [&](ConeId g) {
    std::vector<RayId> rs;
    for (auto [rho, idx] : ray_of)
      if (fan.is_face(rho, g)) rs.push_back(idx);
    std::sort(rs.begin(), rs.end());
    return rs;
  };
  std::vector<std::vector<RayId>> qcones;
  for (auto m : fan.maximal_in(st)) qcones.push_back(quotient_rays(m));
  auto q = std::make_shared<Fan>(build_fan(static_cast<int>(ann.size()), qrays, qcones));
  for (auto g : st) out.cone_map[g] = *q->find(quotient_rays(g));
  out.fan = std::move(q);
  return out;
}

// ---------------------------------------------------------------------------
// Refinements

Subfan RefinementMap::refinement_of(ConeId sigma) const {
  Subfan out;
  for (ConeId c = 0; c < source->size(); ++c)
    if (target->is_face(carrier[c], sigma)) out.push_back(c);
  return out;
}

RefinementMap make_refinement(FanPtr source, FanPtr target) {
  if (source->ambient_dim() != target->ambient_dim())
    throw Error(ErrorKind::InvalidArgument, "refinement between different spaces");
  std::vector<ConeId> ray_carrier(source->rays().size());
  for (RayId r = 0; r < source->rays().size(); ++r) {
    auto c = target->carrier(source->ray(r));
    if (!c) throw Error(ErrorKind::InvalidArgument, "ray outside the support of the coarse fan");
    ray_carrier[r] = *c;
  }
  RefinementMap map{source, target, {}};
  for (const auto& c : source->cones()) {
    std::optional<ConeId> best;
    for (ConeId t = 0; t < target->size() && !best; ++t) {
      bool ok = true;
      for (auto r : c.rays)
        if (!target->is_face(ray_carrier[r], t)) {
          ok = false;
          break;
        }
      if (ok) best = t;
    }
    if (!best) throw Error(ErrorKind::InvalidArgument, "cone not contained in a cone of the coarse fan");
    map.carrier.push_back(*best);
  }
  return map;
}

RefinementMap identity_refinement(FanPtr fan) {
  RefinementMap map{fan, fan, {}};
  map.carrier.resize(fan->size());
  std::iota(map.carrier.begin(), map.carrier.end(), 0);
  return map;
}

RefinementMap stellar_subdivision(FanPtr fan, ConeId sigma, const Vec& direction) {
  if (sigma >= fan->size()) throw Error(ErrorKind::ConeNotInFan, "cone " + std::to_string(sigma));
  const auto& s = fan->cone(sigma);
  auto x = fan->local_coords(sigma, direction);
  if (s.dim == 0 || !x || is_zero(direction))
    throw Error(ErrorKind::RayNotInterior, "direction not in the span of the cone");
  for (const auto& nrm : s.facet_normals)
    if (sgn(dot(nrm, *x)) <= 0) throw Error(ErrorKind::RayNotInterior, "direction not in the relative interior");
  const Vec ell = primitive(direction);
  if (s.dim == 1) return identity_refinement(fan);

  std::vector<Vec> rays = fan->rays();
  const RayId fresh = rays.size();
  rays.push_back(ell);
  std::vector<std::vector<RayId>> cones;
  for (auto m : fan->maximal_cones()) {
    if (!fan->is_face(sigma, m)) {
      cones.push_back(fan->cone(m).rays);
      continue;
    }
    for (auto f : fan->cone(m).facets) {
      if (fan->is_face(sigma, f)) continue;
      auto rs = fan->cone(f).rays;
      rs.push_back(fresh);
      cones.push_back(std::move(rs));
    }
  }
  auto refined = std::make_shared<Fan>(build_fan(fan->ambient_dim(), rays, cones));
  return make_refinement(std::move(refined), std::move(fan));
}

// ---------------------------------------------------------------------------
// Classification

namespace {

/// Maximal cones of `cells` connected through (n-1)-cones in `walls`.
bool connected(const Fan& fan, const std::vector<ConeId>& cells, const std::vector<ConeId>& walls) {
  if (cells.empty()) return true;
  std::set<ConeId> cell_set(cells.begin(), cells.end());
  std::map<ConeId, std::vector<ConeId>> adj;
  for (auto w : walls) {
    std::vector<ConeId> ups;
    for (auto up : fan.cone(w).cofacets)
      if (cell_set.count(up)) ups.push_back(up);
    for (auto a : ups)
      for (auto b : ups)
        if (a != b) adj[a].push_back(b);
  }
  std::set<ConeId> seen{cells.front()};
  std::queue<ConeId> todo;
  todo.push(cells.front());
  while (!todo.empty()) {
    auto c = todo.front();
    todo.pop();
    for (auto nb : adj[c])
      if (seen.insert(nb).second) todo.push(nb);
  }
  return seen.size() == cell_set.size();
}

}  // namespace

FanClass classify(const Fan& fan) {
  FanClass out;
  const int n = fan.ambient_dim();
  out.purely_full_dim = true;
  for (auto m : fan.maximal_cones())
    if (fan.cone(m).dim != n) out.purely_full_dim = false;

  std::vector<ConeId> walls;
  for (const auto& c : fan.cones())
    if (c.dim == n - 1) walls.push_back(c.id);

  if (out.purely_full_dim) {
    bool two_sided = true;
    for (auto w : walls)
      if (fan.cone(w).cofacets.size() != 2) two_sided = false;
    out.complete = two_sided && connected(fan, fan.maximal_cones(), walls);
    if (out.complete && n > 0) {
      // Sample points must be covered.
      std::vector<Vec> samples;
      for (int i = 0; i < n; ++i) {
        Vec e(static_cast<std::size_t>(n));
        e[static_cast<std::size_t>(i)] = 1;
        samples.push_back(e);
        e[static_cast<std::size_t>(i)] = -1;
        samples.push_back(e);
      }
      Vec g(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = (i % 2 ? -1 : 1) * (2 * i + 3);
      samples.push_back(g);
      for (auto& x : g) x = -x;
      samples.push_back(g);
      for (const auto& p : samples)
        if (!fan.carrier(p)) out.complete = false;
    }
    out.normal = true;
    for (const auto& c : fan.cones()) {
      std::vector<ConeId> cells, local_walls;
      for (auto g : fan.star(c.id)) {
        if (fan.cone(g).dim == n) cells.push_back(g);
        if (fan.cone(g).dim == n - 1) local_walls.push_back(g);
      }
      if (!connected(fan, cells, local_walls)) {
        out.normal = false;
        break;
      }
    }
  }
  if (out.purely_full_dim && out.normal && connected(fan, fan.maximal_cones(), walls)) {
    out.convex_support = true;
    for (auto w : walls) {
      const auto& wc = fan.cone(w);
      if (wc.cofacets.size() != 1) continue;
      const auto& s = fan.cone(wc.cofacets[0]);
      const auto k = static_cast<std::size_t>(std::find(s.facets.begin(), s.facets.end(), w) - s.facets.begin());
      for (const auto& r : fan.rays())
        if (sgn(dot(s.facet_normals[k], r)) < 0) out.convex_support = false;
    }
  }
  if (out.complete || out.convex_support)
    out.quasi_convex = FanClass::Tri::Yes;
  else if (!out.purely_full_dim || !out.normal)
    out.quasi_convex = FanClass::Tri::No;
  else
    out.quasi_convex = FanClass::Tri::Unknown;
  return out;
}

// ---------------------------------------------------------------------------
// Conewise linear functions

bool is_consistent(const Fan& fan, const ConewiseLinear& psi) {
  for (auto m : fan.maximal_cones())
    if (!psi.forms.count(m)) return false;
  for (auto a : fan.maximal_cones())
    for (auto b : fan.maximal_cones()) {
      if (b <= a) continue;
      for (auto r : fan.cone(fan.meet(a, b)).rays)
        if (dot(psi.forms.at(a), fan.ray(r)) != dot(psi.forms.at(b), fan.ray(r))) return false;
    }
  return true;
}

bool is_strictly_convex(const Fan& fan, const ConewiseLinear& psi) {
  if (!is_consistent(fan, psi)) return false;
  const int n = fan.ambient_dim();
  for (const auto& w : fan.cones()) {
    if (w.dim != n - 1 || w.cofacets.size() != 2) continue;
    const ConeId a = w.cofacets[0], b = w.cofacets[1];
    for (auto [s, t] : {std::pair{a, b}, std::pair{b, a}}) {
      for (auto r : fan.cone(t).rays) {
        if (std::binary_search(w.rays.begin(), w.rays.end(), r)) continue;
        if (dot(psi.forms.at(t), fan.ray(r)) <= dot(psi.forms.at(s), fan.ray(r))) return false;
      }
    }
  }
  return true;
}

std::optional<ConewiseLinear> find_strictly_convex(const Fan& fan) {
  const auto n = static_cast<std::size_t>(fan.ambient_dim());
  const auto& maxc = fan.maximal_cones();
  std::map<ConeId, std::size_t> slot;
  for (std::size_t k = 0; k < maxc.size(); ++k) slot[maxc[k]] = k;
  // Variables: for every maximal cone, n positive and n negative parts; then slacks.
  std::vector<Vec> rows;
  Vec rhs;
  const std::size_t base = 2 * n * maxc.size();
  std::size_t slacks = 0;
  struct Row {
    std::vector<std::pair<std::size_t, Rational>> terms;
    Rational rhs;
    bool slack;
  };
  std::vector<Row> constraints;
  auto diff_terms = [&](ConeId plus, ConeId minus, const Vec& r) {
    std::vector<std::pair<std::size_t, Rational>> t;
    for (std::size_t i = 0; i < n; ++i) {
      t.emplace_back(2 * n * slot[plus] + i, r[i]);
      t.emplace_back(2 * n * slot[plus] + n + i, -r[i]);
      t.emplace_back(2 * n * slot[minus] + i, -r[i]);
      t.emplace_back(2 * n * slot[minus] + n + i, r[i]);
    }
    return t;
  };
  for (std::size_t x = 0; x < maxc.size(); ++x)
    for (std::size_t y = x + 1; y < maxc.size(); ++y)
      for (auto r : fan.cone(fan.meet(maxc[x], maxc[y])).rays)
        constraints.push_back({diff_terms(maxc[x], maxc[y], fan.ray(r)), 0, false});
  for (const auto& w : fan.cones()) {
    if (w.dim != fan.ambient_dim() - 1 || w.cofacets.size() != 2) continue;
    const ConeId a = w.cofacets[0], b = w.cofacets[1];
    for (auto [s, t] : {std::pair{a, b}, std::pair{b, a}})
      for (auto r : fan.cone(t).rays) {
        if (std::binary_search(w.rays.begin(), w.rays.end(), r)) continue;
        constraints.push_back({diff_terms(t, s, fan.ray(r)), 1, true});
        ++slacks;
      }
  }
  Matrix a(constraints.size(), base + slacks);
  Vec b(constraints.size());
  std::size_t next_slack = base;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (const auto& [col, v] : constraints[i].terms) a(i, col) += v;
    if (constraints[i].slack) a(i, next_slack++) = -1;
    b[i] = constraints[i].rhs;
  }
  auto sol = find_nonnegative_solution(a, b);
  if (!sol) return std::nullopt;
  ConewiseLinear psi;
  for (std::size_t k = 0; k < maxc.size(); ++k) {
    Vec f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = (*sol)[2 * n * k + i] - (*sol)[2 * n * k + n + i];
    psi.forms[maxc[k]] = std::move(f);
  }
  if (!is_strictly_convex(fan, psi)) return std::nullopt;
  return psi;
}

// ---------------------------------------------------------------------------
// Polytopes

namespace {

std::vector<Vec> homogenize(const Polytope& p) {
  std::vector<Vec> out;
  for (const auto& v : p.vertices) {
    if (v.size() != static_cast<std::size_t>(p.dim))
      throw Error(ErrorKind::InvalidArgument, "vertex has wrong length");
    Vec h = v;
    h.push_back(1);
    out.push_back(std::move(h));
  }
  return out;
}

Vec barycenter(const Polytope& p) {
  Vec c(static_cast<std::size_t>(p.dim));
  for (const auto& v : p.vertices)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += v[i];
  for (auto& x : c) x /= static_cast<long>(p.vertices.size());
  return c;
}

}  // namespace

std::vector<PolytopeFace> polytope_faces(const Polytope& p, std::size_t max_faces) {
  const auto hv = homogenize(p);
  std::vector<std::size_t> all(hv.size());
  std::iota(all.begin(), all.end(), 0);
  FaceEnumerator fe(hv, p.dim + 1);
  if (static_cast<int>(fe.pivots(all).size()) != p.dim + 1)
    throw Error(ErrorKind::NotFullDim, "polytope is not full-dimensional");
  fe.visit(all, max_faces);
  std::set<std::vector<std::size_t>> faces;
  fe.collect(all, faces);
  std::vector<PolytopeFace> out;
  std::size_t vertex_faces = 0;
  for (const auto& f : faces) {
    out.push_back({f, fe.node(f).dim - 1});
    if (fe.node(f).dim == 1) ++vertex_faces;
  }
  if (vertex_faces != p.vertices.size())
    throw Error(ErrorKind::RedundantRay, "listed point is not a vertex of the polytope");
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.dim != y.dim) return x.dim < y.dim;
    return x.vertices < y.vertices;
  });
  return out;
}

std::vector<Facet> polytope_facets(const Polytope& p) {
  const auto hv = homogenize(p);
  const auto d = static_cast<std::size_t>(p.dim + 1);
  std::vector<std::size_t> all(hv.size());
  std::iota(all.begin(), all.end(), 0);
  FaceEnumerator fe(hv, p.dim + 1);
  if (fe.pivots(all).size() != d) throw Error(ErrorKind::NotFullDim, "polytope is not full-dimensional");
  const auto& node = fe.visit(all, 1000000);
  std::vector<Facet> out;
  for (const auto& f : node.facets) {
    std::vector<Vec> inner;
    for (auto i : f) inner.push_back(hv[i]);
    Vec nrm = facet_normal(hv, inner, d);
    Facet facet;
    facet.offset = nrm.back();
    nrm.pop_back();
    facet.normal = std::move(nrm);
    facet.vertices = f;
    out.push_back(std::move(facet));
  }
  return out;
}

PolytopeFan face_fan(const Polytope& p) {
  polytope_faces(p);  // validates vertices and dimension
  const auto facets = polytope_facets(p);
  const Vec c = barycenter(p);
  std::vector<Vec> rays;
  for (const auto& v : p.vertices) {
    Vec y(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) y[i] = v[i] - c[i];
    rays.push_back(std::move(y));
  }
  std::vector<std::vector<RayId>> cones;
  for (const auto& f : facets) cones.push_back(f.vertices);
  auto fan = std::make_shared<Fan>(build_fan(p.dim, rays, cones));
  PolytopeFan out;
  for (const auto& f : facets) {
    const Rational k = dot(f.normal, c) + f.offset;
    Vec gauge(f.normal.size());
    for (std::size_t i = 0; i < gauge.size(); ++i) gauge[i] = -f.normal[i] / k;
    out.psi.forms[*fan->find(f.vertices)] = std::move(gauge);
  }
  if (!is_strictly_convex(*fan, out.psi))
    throw Error(ErrorKind::StrictConvexityFailed, "gauge function is not strictly convex");
  out.fan = std::move(fan);
  return out;
}

PolytopeFan normal_fan(const Polytope& p) {
  polytope_faces(p);
  const auto facets = polytope_facets(p);
  std::vector<Vec> rays;
  for (const auto& f : facets) {
    Vec u = f.normal;
    for (auto& x : u) x = -x;
    rays.push_back(std::move(u));
  }
  std::vector<std::vector<RayId>> cones;
  for (std::size_t v = 0; v < p.vertices.size(); ++v) {
    std::vector<RayId> rs;
    for (std::size_t k = 0; k < facets.size(); ++k)
      if (std::binary_search(facets[k].vertices.begin(), facets[k].vertices.end(), v)) rs.push_back(k);
    cones.push_back(std::move(rs));
  }
  auto fan = std::make_shared<Fan>(build_fan(p.dim, rays, cones));
  PolytopeFan out;
  for (std::size_t v = 0; v < p.vertices.size(); ++v) {
    auto rs = cones[v];
    std::sort(rs.begin(), rs.end());
    out.psi.forms[*fan->find(rs)] = p.vertices[v];
  }
  if (!is_strictly_convex(*fan, out.psi))
    throw Error(ErrorKind::StrictConvexityFailed, "support function is not strictly convex");
  out.fan = std::move(fan);
  return out;
}

Polytope polar(const Polytope& p) {
  const auto facets = polytope_facets(p);
  const Vec c = barycenter(p);
  Polytope q;
  q.dim = p.dim;
  for (const auto& f : facets) {
    const Rational k = dot(f.normal, c) + f.offset;
    Vec v(f.normal.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = -f.normal[i] / k;
    q.vertices.push_back(std::move(v));
  }
  return q;
}

}  // namespace fanih
