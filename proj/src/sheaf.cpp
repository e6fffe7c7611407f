#include "fanih/sheaf.hpp"

#include <algorithm>

#include "fanih/error.hpp"

namespace fanih {

Poly restrict_poly(const Fan& fan, const Poly& p, ConeId sigma, ConeId tau) {
  if (!fan.is_face(tau, sigma)) throw Error(ErrorKind::NotAFace, "restriction to a non-face");
  return p.substitute(fan.embedding(tau, sigma));
}

// ---------------------------------------------------------------------------
// PureSheaf

PureSheaf::PureSheaf(FanPtr fan, int max_degree) : fan_(std::move(fan)), max_degree_(max_degree) {
  stalks_.resize(fan_->size());
  for (const auto& c : fan_->cones()) stalks_[c.id].nvars = static_cast<std::size_t>(c.dim);
}

void PureSheaf::set_stalk(ConeId sigma, std::vector<int> gens) {
  stalks_.at(sigma).gens = std::move(gens);
  cache_ = std::make_shared<Cache>();
}

const PolyMatrix& PureSheaf::facet_map(ConeId sigma, ConeId tau) const {
  auto it = facet_maps_.find({sigma, tau});
  if (it == facet_maps_.end())
    throw Error(ErrorKind::NotAFace, "no facet map " + std::to_string(sigma) + " -> " + std::to_string(tau));
  return it->second;
}

void PureSheaf::set_facet_map(ConeId sigma, ConeId tau, PolyMatrix m) {
  if (m.rows() != stalk(tau).rank() || m.cols() != stalk(sigma).rank() ||
      m.nvars() != static_cast<std::size_t>(fan_->cone(tau).dim))
    throw Error(ErrorKind::InvalidArgument, "facet map has the wrong shape");
  facet_maps_[{sigma, tau}] = std::move(m);
  cache_ = std::make_shared<Cache>();
}

PolyMatrix PureSheaf::restriction(ConeId sigma, ConeId tau) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->composites.find({sigma, tau});
    if (it != cache_->composites.end()) return it->second;
  }
  const auto& tau_stalk = stalk(tau);
  PolyMatrix out;
  if (sigma == tau) {
    out = PolyMatrix::identity(tau_stalk.rank(), tau_stalk.nvars);
  } else if (tau_stalk.rank() == 0 || stalk(sigma).rank() == 0) {
    out = PolyMatrix(tau_stalk.rank(), stalk(sigma).rank(), tau_stalk.nvars);
  } else {
    const auto chain = fan_->flag(tau, sigma);
    const ConeId up = chain[1];
    out = compose(facet_map(up, tau), restriction(sigma, up), fan_->embedding(tau, up));
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->composites.emplace(std::make_pair(sigma, tau), std::move(out)).first->second;
}

const Matrix& PureSheaf::restriction_matrix(ConeId sigma, ConeId tau, int q) const {
  const auto key = std::make_tuple(sigma, tau, q);
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->degree_parts.find(key);
    if (it != cache_->degree_parts.end()) return it->second;
  }
  Matrix m = degree_matrix(restriction(sigma, tau), fan_->embedding(tau, sigma), stalk(sigma), stalk(tau), q);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->degree_parts.emplace(key, std::move(m)).first->second;
}

std::vector<int> degrees(const PureSheaf& f, ConeId sigma) {
  auto d = f.stalk(sigma).gens;
  std::sort(d.begin(), d.end());
  return d;
}

// ---------------------------------------------------------------------------
// Sections

Sections::Sections(const PureSheaf& f, Subfan lambda, Subfan lambda0, Matrix frame)
    : f_(&f), lambda_(std::move(lambda)), lambda0_(std::move(lambda0)), frame_(std::move(frame)) {
  const Fan& fan = *f.fan();
  maximal_ = fan.maximal_in(lambda_);
  for (auto m : maximal_) {
    const auto& c = fan.cone(m);
    Matrix coords(frame_.cols(), static_cast<std::size_t>(c.dim));
    for (std::size_t j = 0; j < coords.cols(); ++j) {
      auto x = solve(frame_, c.basis.column(j));
      if (!x || frame_ * *x != c.basis.column(j))
        throw Error(ErrorKind::InvalidArgument, "cone outside the frame");
      for (std::size_t i = 0; i < coords.rows(); ++i) coords(i, j) = (*x)[i];
    }
    frame_coords_.push_back(std::move(coords));
  }
}

std::size_t Sections::offset(std::size_t k, int q) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < k; ++i) off += f_->stalk(maximal_[i]).dim(q);
  return off;
}

std::size_t Sections::ambient_dim(int q) const { return offset(maximal_.size(), q); }

const std::vector<Vec>& Sections::basis(int q) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->bases.find(q);
    if (it != cache_->bases.end()) return it->second;
  }
  const Fan& fan = *f_->fan();
  const std::size_t n = ambient_dim(q);
  std::vector<Vec> rows;
  auto add_block = [&](std::size_t k, const Matrix& m, int sign, std::vector<Vec>& block) {
    const std::size_t off = offset(k, q);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (sign > 0) block[r][off + c] += m(r, c);
        else block[r][off + c] -= m(r, c);
  };
  for (std::size_t a = 0; a < maximal_.size(); ++a)
    for (std::size_t b = a + 1; b < maximal_.size(); ++b) {
      const ConeId g = fan.meet(maximal_[a], maximal_[b]);
      const std::size_t d = f_->stalk(g).dim(q);
      if (d == 0) continue;
      std::vector<Vec> block(d, Vec(n));
      add_block(a, f_->restriction_matrix(maximal_[a], g, q), 1, block);
      add_block(b, f_->restriction_matrix(maximal_[b], g, q), -1, block);
      for (auto& r : block) rows.push_back(std::move(r));
    }
  for (auto z : fan.maximal_in(lambda0_)) {
    const std::size_t d = f_->stalk(z).dim(q);
    if (d == 0) continue;
    for (std::size_t a = 0; a < maximal_.size(); ++a) {
      if (!fan.is_face(z, maximal_[a])) continue;
      std::vector<Vec> block(d, Vec(n));
      add_block(a, f_->restriction_matrix(maximal_[a], z, q), 1, block);
      for (auto& r : block) rows.push_back(std::move(r));
      break;
    }
  }
  std::vector<Vec> result;
  if (rows.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      Vec e(n);
      e[i] = 1;
      result.push_back(std::move(e));
    }
  } else {
    result = kernel_basis(Matrix::from_rows(rows, n));
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->bases.emplace(q, std::move(result)).first->second;
}

Matrix Sections::multiply(const Poly& p, int q) const {
  const int d = p.degree() < 0 ? 0 : p.degree();
  Matrix out(ambient_dim(q + d), ambient_dim(q));
  for (std::size_t k = 0; k < maximal_.size(); ++k) {
    const auto& stalk = f_->stalk(maximal_[k]);
    Matrix block = multiplication_matrix(stalk, p.substitute(frame_coords_[k]), q, d);
    const std::size_t r0 = offset(k, q + d), c0 = offset(k, q);
    for (std::size_t r = 0; r < block.rows(); ++r)
      for (std::size_t c = 0; c < block.cols(); ++c) out(r0 + r, c0 + c) = block(r, c);
  }
  return out;
}

Matrix Sections::multiply_variable(std::size_t i, int q) const {
  return multiply(Poly::variable(nvars(), i), q);
}

Vec Sections::restrict_to(const Vec& section, ConeId gamma, int q) const {
  const Fan& fan = *f_->fan();
  for (std::size_t k = 0; k < maximal_.size(); ++k) {
    if (!fan.is_face(gamma, maximal_[k])) continue;
    const std::size_t off = offset(k, q);
    Vec comp(section.begin() + static_cast<long>(off),
             section.begin() + static_cast<long>(off + f_->stalk(maximal_[k]).dim(q)));
    if (gamma == maximal_[k]) return comp;
    return f_->restriction_matrix(maximal_[k], gamma, q) * comp;
  }
  throw Error(ErrorKind::ConeNotInFan, "cone " + std::to_string(gamma) + " not in the subfan");
}

Vec Sections::assemble(const std::map<ConeId, Vec>& components, int q) const {
  Vec out(ambient_dim(q));
  for (std::size_t k = 0; k < maximal_.size(); ++k) {
    auto it = components.find(maximal_[k]);
    if (it == components.end()) continue;
    std::copy(it->second.begin(), it->second.end(), out.begin() + static_cast<long>(offset(k, q)));
  }
  return out;
}

Generators Sections::generators(int max_degree) const {
  return minimal_generators([this](int q) { return basis(q); },
                            [this](std::size_t i, int q) { return multiply_variable(i, q); }, nvars(),
                            max_degree, [this](int q) { return ambient_dim(q); });
}

bool Sections::is_free_on(const Generators& g, int max_degree) const {
  for (int q = 0; q <= max_degree; q += 2)
    if (dim(q) != free_dim(nvars(), g.degrees, q)) return false;
  return true;
}

std::optional<Element> Sections::express(const Generators& g, const Vec& section, int q) const {
  std::vector<Vec> cols;
  std::vector<std::pair<std::size_t, std::size_t>> labels;  // generator, monomial index
  for (std::size_t j = 0; j < g.degrees.size(); ++j) {
    const int k = q - g.degrees[j];
    if (k < 0) continue;
    const auto& monos = monomials(nvars(), static_cast<unsigned>(k / 2));
    for (std::size_t m = 0; m < monos.size(); ++m) {
      cols.push_back(multiply(Poly::monomial(monos[m]), g.degrees[j]) * g.lifts[j]);
      labels.emplace_back(j, m);
    }
  }
  Element out(g.degrees.size(), Poly(nvars()));
  if (cols.empty()) {
    if (!is_zero(section)) return std::nullopt;
    return out;
  }
  const Matrix a = Matrix::from_columns(cols, ambient_dim(q));
  auto x = solve(a, section);
  if (!x || a * *x != section) return std::nullopt;
  for (std::size_t c = 0; c < labels.size(); ++c) {
    const auto [j, m] = labels[c];
    const auto& monos = monomials(nvars(), static_cast<unsigned>((q - g.degrees[j]) / 2));
    out[j].add_term(monos[m], (*x)[c]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constructions

PureSheaf structure_sheaf(FanPtr fan, int max_degree) {
  PureSheaf f(fan, max_degree);
  for (const auto& c : fan->cones()) f.set_stalk(c.id, {0});
  for (const auto& c : fan->cones())
    for (auto t : c.facets)
      f.set_facet_map(c.id, t, PolyMatrix::identity(1, static_cast<std::size_t>(fan->cone(t).dim)));
  return f;
}

PureSheaf minimal_extension(FanPtr fan, ConeId sigma0, int max_degree) {
  if (sigma0 >= fan->size()) throw Error(ErrorKind::ConeNotInFan, "cone " + std::to_string(sigma0));
  PureSheaf l(fan, max_degree);
  l.set_stalk(sigma0, {0});
  for (auto t : fan->cone(sigma0).facets)
    l.set_facet_map(sigma0, t, PolyMatrix(0, 1, static_cast<std::size_t>(fan->cone(t).dim)));
  for (auto g : fan->star(sigma0)) {
    if (g == sigma0) continue;
    const auto& cone = fan->cone(g);
    Sections boundary(l, proper_faces(*fan, g), {}, cone.basis);
    Generators gens = boundary.generators(max_degree);
    for (int d : gens.degrees)
      if (d >= max_degree && max_degree > 0)
        throw Error(ErrorKind::TruncationTooLow,
                    "stalk generator at the truncation degree " + std::to_string(max_degree) + " on cone " +
                        std::to_string(g));
    l.set_stalk(g, gens.degrees);
    for (auto t : cone.facets) {
      const auto& ts = l.stalk(t);
      std::vector<Element> cols;
      for (std::size_t k = 0; k < gens.degrees.size(); ++k)
        cols.push_back(ts.element(boundary.restrict_to(gens.lifts[k], t, gens.degrees[k]), gens.degrees[k]));
      l.set_facet_map(g, t, PolyMatrix::from_columns(cols, ts.rank(), ts.nvars));
    }
  }
  // Facet maps from cones outside the star into it are zero maps.
  for (const auto& c : fan->cones())
    for (auto t : c.facets) {
      try {
        l.facet_map(c.id, t);
      } catch (const Error&) {
        l.set_facet_map(c.id, t,
                        PolyMatrix(l.stalk(t).rank(), l.stalk(c.id).rank(), static_cast<std::size_t>(fan->cone(t).dim)));
      }
    }
  return l;
}

PureSheaf inverse_image(const FanMap& f, const PureSheaf& g) {
  const Fan& src = *f.source;
  const Fan& dst = *f.target;
  PureSheaf out(f.source, g.max_degree());
  // Coordinates of each source cone's basis in the basis of its target cone.
  std::vector<Matrix> subst(src.size());
  for (const auto& c : src.cones()) {
    if (!f.cone_map[c.id]) continue;
    const ConeId t = *f.cone_map[c.id];
    out.set_stalk(c.id, g.stalk(t).gens);
    const auto& tc = dst.cone(t);
    Matrix s(static_cast<std::size_t>(tc.dim), static_cast<std::size_t>(c.dim));
    for (std::size_t j = 0; j < s.cols(); ++j) {
      auto x = dst.local_coords(t, f.linear * c.basis.column(j));
      if (!x) throw Error(ErrorKind::InvalidArgument, "fan map does not send a cone into its image cone");
      for (std::size_t i = 0; i < s.rows(); ++i) s(i, j) = (*x)[i];
    }
    subst[c.id] = std::move(s);
  }
  for (const auto& c : src.cones())
    for (auto t : c.facets) {
      const auto& ts = out.stalk(t);
      const auto& cs = out.stalk(c.id);
      PolyMatrix m(ts.rank(), cs.rank(), ts.nvars);
      if (ts.rank() > 0 && cs.rank() > 0) {
        const ConeId gc = *f.cone_map[c.id], gt = *f.cone_map[t];
        PolyMatrix r = g.restriction(gc, gt);
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = r(i, j).substitute(subst[t]);
      }
      out.set_facet_map(c.id, t, std::move(m));
    }
  return out;
}

PureSheaf simple_sheaf(FanPtr fan, ConeId sigma, int max_degree) {
  auto tf = transversal_fan(*fan, sigma);
  PureSheaf e = minimal_extension(tf.fan, 0, max_degree);
  FanMap map{fan, tf.fan, tf.projection, std::vector<std::optional<ConeId>>(fan->size())};
  for (auto [c, q] : tf.cone_map) map.cone_map[c] = q;
  return inverse_image(map, e);
}

DirectImage direct_image(const RefinementMap& pi, const PureSheaf& f) {
  const Fan& coarse = *pi.target;
  const int d = f.max_degree();
  DirectImage out{PureSheaf(pi.target, d), {}, {}};
  std::vector<std::unique_ptr<Sections>> secs;
  for (const auto& c : coarse.cones()) {
    auto ref = pi.refinement_of(c.id);
    auto s = std::make_unique<Sections>(f, ref, Subfan{}, c.basis);
    Generators g = s->generators(d);
    for (int deg : g.degrees)
      if (deg >= d && d > 0)
        throw Error(ErrorKind::TruncationTooLow, "direct image generator at the truncation degree");
    if (!s->is_free_on(g, d))
      throw Error(ErrorKind::NotFree, "direct image stalk at cone " + std::to_string(c.id) + " is not free");
    out.sheaf.set_stalk(c.id, g.degrees);
    out.generators.push_back(std::move(g));
    out.refinements.push_back(std::move(ref));
    secs.push_back(std::move(s));
  }
  for (const auto& c : coarse.cones())
    for (auto t : c.facets) {
      const auto& g = out.generators[c.id];
      const auto& ts = out.sheaf.stalk(t);
      std::vector<Element> cols;
      for (std::size_t k = 0; k < g.degrees.size(); ++k) {
        const int q = g.degrees[k];
        std::map<ConeId, Vec> comps;
        for (auto m : secs[t]->maximal()) comps[m] = secs[c.id]->restrict_to(g.lifts[k], m, q);
        auto e = secs[t]->express(out.generators[t], secs[t]->assemble(comps, q), q);
        if (!e) throw Error(ErrorKind::NotFree, "restricted section not in the span of the face generators");
        cols.push_back(std::move(*e));
      }
      out.sheaf.set_facet_map(c.id, t, PolyMatrix::from_columns(cols, ts.rank(), ts.nvars));
    }
  return out;
}

PureSheaf direct_sum(const PureSheaf& a, const PureSheaf& b) {
  const auto& fan = a.fan();
  PureSheaf out(fan, std::max(a.max_degree(), b.max_degree()));
  for (const auto& c : fan->cones()) {
    auto g = a.stalk(c.id).gens;
    const auto& h = b.stalk(c.id).gens;
    g.insert(g.end(), h.begin(), h.end());
    out.set_stalk(c.id, g);
  }
  for (const auto& c : fan->cones())
    for (auto t : c.facets) {
      const auto& ma = a.facet_map(c.id, t);
      const auto& mb = b.facet_map(c.id, t);
      PolyMatrix m(ma.rows() + mb.rows(), ma.cols() + mb.cols(), static_cast<std::size_t>(fan->cone(t).dim));
      for (std::size_t i = 0; i < ma.rows(); ++i)
        for (std::size_t j = 0; j < ma.cols(); ++j) m(i, j) = ma(i, j);
      for (std::size_t i = 0; i < mb.rows(); ++i)
        for (std::size_t j = 0; j < mb.cols(); ++j) m(ma.rows() + i, ma.cols() + j) = mb(i, j);
      out.set_facet_map(c.id, t, std::move(m));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Checks

bool is_flabby(const PureSheaf& f) {
  const Fan& fan = *f.fan();
  for (const auto& c : fan.cones()) {
    if (c.dim == 0) continue;
    Sections boundary(f, proper_faces(fan, c.id), {}, c.basis);
    for (int q = 0; q <= f.max_degree(); q += 2) {
      const std::size_t target = boundary.dim(q);
      if (target == 0) continue;
      std::vector<Vec> images;
      const std::size_t src = f.stalk(c.id).dim(q);
      for (std::size_t i = 0; i < src; ++i) {
        Vec e(src);
        e[i] = 1;
        std::map<ConeId, Vec> comps;
        for (auto m : boundary.maximal()) comps[m] = f.restriction_matrix(c.id, m, q) * e;
        images.push_back(boundary.assemble(comps, q));
      }
      if (span_basis(images, boundary.ambient_dim(q)).size() != target) return false;
    }
  }
  return true;
}

bool is_compatible(const PureSheaf& f) {
  const Fan& fan = *f.fan();
  for (const auto& s : fan.cones())
    for (auto t1 : s.facets)
      for (auto g : fan.cone(t1).facets)
        for (auto t2 : s.facets) {
          if (t2 <= t1 || !fan.is_face(g, t2)) continue;
          auto a = compose(f.facet_map(t1, g), f.facet_map(s.id, t1), fan.embedding(g, t1));
          auto b = compose(f.facet_map(t2, g), f.facet_map(s.id, t2), fan.embedding(g, t2));
          if (!(a == b)) return false;
        }
  return true;
}

std::vector<int> reduced_kernel_degrees(const PureSheaf& f, ConeId sigma) {
  const Fan& fan = *f.fan();
  const auto& c = fan.cone(sigma);
  const auto& stalk = f.stalk(sigma);
  std::vector<int> out;
  if (c.dim == 0) return degrees(f, sigma);
  Sections boundary(f, proper_faces(fan, sigma), {}, c.basis);
  std::vector<int> gen_degrees = stalk.gens;
  std::sort(gen_degrees.begin(), gen_degrees.end());
  gen_degrees.erase(std::unique(gen_degrees.begin(), gen_degrees.end()), gen_degrees.end());
  for (int q : gen_degrees) {
    const std::size_t amb = boundary.ambient_dim(q);
    SpanBuilder span(amb);
    if (q >= 2)
      for (std::size_t i = 0; i < boundary.nvars(); ++i) {
        Matrix mult = boundary.multiply_variable(i, q - 2);
        for (const auto& v : boundary.basis(q - 2)) span.add(mult * v);
      }
    const std::size_t base = span.rank();
    std::size_t count = 0;
    for (std::size_t i = 0; i < stalk.rank(); ++i) {
      if (stalk.gens[i] != q) continue;
      ++count;
      std::map<ConeId, Vec> comps;
      Vec e = stalk.coords(stalk.generator(i), q);
      for (auto m : boundary.maximal()) comps[m] = f.restriction_matrix(sigma, m, q) * e;
      span.add(boundary.assemble(comps, q));
    }
    const std::size_t kernel = count - (span.rank() - base);
    for (std::size_t k = 0; k < kernel; ++k) out.push_back(q);
  }
  return out;
}

DecompositionReport decompose(const PureSheaf& f) {
  const Fan& fan = *f.fan();
  DecompositionReport rep;
  std::vector<std::vector<int>> expected(fan.size());
  for (const auto& c : fan.cones()) {
    auto k = reduced_kernel_degrees(f, c.id);
    rep.kernel_degrees.push_back(k);
    if (k.empty()) continue;
    PureSheaf l = minimal_extension(f.fan(), c.id, f.max_degree());
    for (auto g : fan.star(c.id))
      for (int a : l.stalk(g).gens)
        for (int b : k) expected[g].push_back(a + b);
  }
  rep.balanced = true;
  for (const auto& c : fan.cones()) {
    std::sort(expected[c.id].begin(), expected[c.id].end());
    if (expected[c.id] != degrees(f, c.id)) rep.balanced = false;
  }
  if (!rep.balanced) throw Error(ErrorKind::BookkeepingMismatch, "stalk degrees not reproduced by the decomposition");
  return rep;
}

}  // namespace fanih
