#include "fanih/duality.hpp"

#include <algorithm>
#include <set>

#include "fanih/error.hpp"

namespace fanih {

namespace {

/// F_sigma^q -> sections over the boundary, in the ambient of `boundary`.
Matrix boundary_restriction(const PureSheaf& f, const Sections& boundary, ConeId sigma, int q) {
  std::vector<Matrix> blocks;
  for (auto m : boundary.maximal()) blocks.push_back(f.restriction_matrix(sigma, m, q));
  return stack_rows(blocks, f.stalk(sigma).dim(q));
}

Element bilinear(const std::vector<Element>& table, std::size_t rank, const Element& x, const Element& y,
                 std::size_t nvars) {
  Element out;
  if (table.empty()) return out;
  out.assign(table.front().size(), Poly(nvars));
  for (std::size_t a = 0; a < rank; ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < rank; ++b) {
      if (y[b].is_zero()) continue;
      const Poly coeff = x[a] * y[b];
      const auto& t = table[a * rank + b];
      for (std::size_t k = 0; k < out.size(); ++k)
        if (!t[k].is_zero()) out[k] += coeff * t[k];
    }
  }
  return out;
}

Poly product_of_forms(const std::vector<Vec>& forms, std::size_t n) {
  Poly p = Poly::constant(n, 1);
  for (const auto& f : forms) p = p * Poly::linear(f);
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Transition data and phi_h

Vec canonical_facet_form(const Fan& fan, ConeId sigma, ConeId tau) {
  const auto& s = fan.cone(sigma);
  auto it = std::find(s.facets.begin(), s.facets.end(), tau);
  if (it == s.facets.end()) throw Error(ErrorKind::NotAFace, "not a facet");
  Vec h = s.facet_normals[static_cast<std::size_t>(it - s.facets.begin())];
  Vec sum(static_cast<std::size_t>(s.dim));
  const auto& t = fan.cone(tau);
  for (auto r : s.rays) {
    if (std::binary_search(t.rays.begin(), t.rays.end(), r)) continue;
    auto x = *fan.local_coords(sigma, fan.ray(r));
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += x[i];
  }
  const Rational value = dot(h, sum);
  for (auto& x : h) x /= value;
  return h;
}

TransitionData transition_data(const Fan& fan, ConeId sigma, ConeId tau, const Vec& h) {
  const auto& s = fan.cone(sigma);
  if (std::find(s.facets.begin(), s.facets.end(), tau) == s.facets.end())
    throw Error(ErrorKind::NotAFace, "not a facet");
  if (h.size() != static_cast<std::size_t>(s.dim)) throw Error(ErrorKind::NotAFacetForm, "wrong length");
  const Matrix b = fan.embedding(tau, sigma);
  for (std::size_t j = 0; j < b.cols(); ++j)
    if (sgn(dot(h, b.column(j))) != 0) throw Error(ErrorKind::NotAFacetForm, "form does not vanish on the facet");
  Vec sum(h.size());
  const auto& t = fan.cone(tau);
  for (auto r : s.rays) {
    auto x = *fan.local_coords(sigma, fan.ray(r));
    if (sgn(dot(h, x)) < 0) throw Error(ErrorKind::NotAFacetForm, "form negative on the cone");
    if (!std::binary_search(t.rays.begin(), t.rays.end(), r))
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += x[i];
  }
  const Rational hv = dot(h, sum);
  if (sgn(hv) <= 0) throw Error(ErrorKind::NotAFacetForm, "form vanishes on the cone");
  Matrix m(h.size(), h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    m(i, 0) = sum[i] / hv;
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, j + 1) = b(i, j);
  }
  const Rational det = determinant(m);
  return {sgn(det) < 0 ? -1 : 1, abs(det)};
}

Generators relative_generators(const PureSheaf& f, ConeId sigma) {
  const Fan& fan = *f.fan();
  const auto& stalk = f.stalk(sigma);
  if (stalk.rank() == 0) return {};
  const auto& c = fan.cone(sigma);
  Sections rel(f, affine(fan, sigma), proper_faces(fan, sigma), c.basis);
  const int top = *std::max_element(stalk.gens.begin(), stalk.gens.end());
  const int bound = std::max(f.max_degree(), 2 * c.dim + top);
  Generators g = rel.generators(bound);
  if (g.degrees.size() < stalk.rank())
    throw Error(ErrorKind::TruncationTooLow,
                "relative module of cone " + std::to_string(sigma) + " not generated below degree " +
                    std::to_string(bound));
  if (!rel.is_free_on(g, bound))
    throw Error(ErrorKind::NotFree, "relative module of cone " + std::to_string(sigma) + " is not free");
  return g;
}

PolyMatrix phi_h(const PureSheaf& f, ConeId sigma, ConeId tau, const Vec& h, const Generators& rel_sigma,
                 const Generators& rel_tau) {
  const Fan& fan = *f.fan();
  const auto& c = fan.cone(sigma);
  const auto& fs = f.stalk(sigma);
  const std::size_t tau_vars = static_cast<std::size_t>(fan.cone(tau).dim);
  PolyMatrix out(rel_tau.degrees.size(), rel_sigma.degrees.size(), tau_vars);
  if (out.rows() == 0 || out.cols() == 0) return out;
  Sections boundary(f, proper_faces(fan, sigma), {}, c.basis);
  const Poly hp = Poly::linear(h);
  const Matrix emb = fan.embedding(tau, sigma);
  for (std::size_t k = 0; k < rel_tau.degrees.size(); ++k) {
    const int d = rel_tau.degrees[k];
    std::map<ConeId, Vec> comps{{tau, rel_tau.lifts[k]}};
    const Vec target = boundary.assemble(comps, d);
    const Matrix r = boundary_restriction(f, boundary, sigma, d);
    auto lift = solve(r, target);
    if (!lift || r * *lift != target)
      throw Error(ErrorKind::LiftFailed, "facet section of cone " + std::to_string(tau) + " does not lift");
    const Vec hs = multiplication_matrix(fs, hp, d, 2) * *lift;
    auto a = express_in(fs, rel_sigma, hs, d + 2);
    if (!a) throw Error(ErrorKind::LiftFailed, "h times lift not in the relative module");
    for (std::size_t j = 0; j < rel_sigma.degrees.size(); ++j) out(k, j) = (*a)[j].substitute(emb);
  }
  return out;
}

DualSheaf dual_sheaf(const PureSheaf& f, const std::map<std::pair<ConeId, ConeId>, Vec>& forms) {
  const auto& fan = f.fan();
  DualSheaf out{PureSheaf(fan, f.max_degree()), {}, {}};
  for (const auto& c : fan->cones()) {
    out.relative.push_back(relative_generators(f, c.id));
    std::vector<int> gens;
    for (int d : out.relative.back().degrees) gens.push_back(2 * c.dim - d);
    out.sheaf.set_stalk(c.id, gens);
  }
  for (const auto& c : fan->cones())
    for (auto t : c.facets) {
      const auto& rs = out.relative[c.id];
      const auto& rt = out.relative[t];
      auto it = forms.find({c.id, t});
      const Vec h = it != forms.end() ? it->second : canonical_facet_form(*fan, c.id, t);
      const auto td = transition_data(*fan, c.id, t, h);
      out.scale[{c.id, t}] = td.c;
      PolyMatrix m = phi_h(f, c.id, t, h, rs, rt);
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= td.c;
      out.sheaf.set_facet_map(c.id, t, std::move(m));
    }
  return out;
}

PolyMatrix compose_chain(const PureSheaf& f, const std::vector<ConeId>& chain) {
  const Fan& fan = *f.fan();
  PolyMatrix acc = f.facet_map(chain.at(0), chain.at(1));
  for (std::size_t i = 2; i < chain.size(); ++i)
    acc = compose(f.facet_map(chain[i - 1], chain[i]), acc, fan.embedding(chain[i], chain[i - 1]));
  return acc;
}

// ---------------------------------------------------------------------------
// Homomorphisms

SheafMap extend_hom(const PureSheaf& e, const PureSheaf& f, const PolyMatrix& seed, bool require_unique,
                    bool reversed) {
  const Fan& fan = *e.fan();
  SheafMap out;
  out.stalks.resize(fan.size());
  if (seed.rows() != f.stalk(0).rank() || seed.cols() != e.stalk(0).rank())
    throw Error(ErrorKind::InvalidArgument, "seed has the wrong shape");
  out.stalks[0] = seed;
  std::vector<ConeId> order;
  for (const auto& c : fan.cones())
    if (c.dim > 0) order.push_back(c.id);
  std::stable_sort(order.begin(), order.end(), [&](ConeId a, ConeId b) {
    const int da = fan.cone(a).dim, db = fan.cone(b).dim;
    if (da != db) return da < db;
    return reversed ? a > b : a < b;
  });
  for (auto sigma : order) {
    const auto& c = fan.cone(sigma);
    const auto& es = e.stalk(sigma);
    const auto& fs = f.stalk(sigma);
    const std::size_t nv = static_cast<std::size_t>(c.dim);
    std::vector<Element> cols;
    Sections boundary(f, proper_faces(fan, sigma), {}, c.basis);
    for (std::size_t i = 0; i < es.rank(); ++i) {
      const int d = es.gens[i];
      std::map<ConeId, Vec> comps;
      for (auto t : c.facets) {
        const Element gi = e.facet_map(sigma, t).column(i);
        const Element img = apply(out.stalks[t], Matrix::identity(static_cast<std::size_t>(fan.cone(t).dim)), gi);
        comps[t] = f.stalk(t).coords(img, d);
      }
      const Vec target = boundary.assemble(comps, d);
      const Matrix r = boundary_restriction(f, boundary, sigma, d);
      auto lift = solve(r, target);
      if (!lift || r * *lift != target)
        throw Error(ErrorKind::LiftMissing, "no preimage on cone " + std::to_string(sigma) + " in degree " +
                                                std::to_string(d));
      if (require_unique && rank(r) < r.cols())
        throw Error(ErrorKind::LiftNotUnique, "ambiguous preimage on cone " + std::to_string(sigma) +
                                                  " in degree " + std::to_string(d));
      cols.push_back(fs.element(*lift, d));
    }
    out.stalks[sigma] = PolyMatrix::from_columns(cols, fs.rank(), nv);
  }
  return out;
}

bool is_homomorphism(const PureSheaf& e, const PureSheaf& f, const SheafMap& m) {
  const Fan& fan = *e.fan();
  for (const auto& c : fan.cones())
    for (auto t : c.facets) {
      const auto lhs = compose(f.facet_map(c.id, t), m.stalks[c.id], fan.embedding(t, c.id));
      const auto rhs =
          compose(m.stalks[t], e.facet_map(c.id, t), Matrix::identity(static_cast<std::size_t>(fan.cone(t).dim)));
      if (!(lhs == rhs)) return false;
    }
  return true;
}

bool is_isomorphism(const PureSheaf& e, const PureSheaf& f, const SheafMap& m) {
  for (const auto& c : e.fan()->cones()) {
    if (degrees(e, c.id) != degrees(f, c.id)) return false;
    const auto& s = m.stalks[c.id];
    if (s.rows() == 0) continue;
    Matrix k(s.rows(), s.cols());
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j) k(i, j) = s(i, j).constant_term();
    if (rank(k) != s.rows()) return false;
  }
  return true;
}

bool bidual_check(const PureSheaf& f) {
  const auto d1 = dual_sheaf(f);
  const auto d2 = dual_sheaf(d1.sheaf);
  for (const auto& c : f.fan()->cones())
    if (degrees(d2.sheaf, c.id) != degrees(f, c.id)) return false;
  return is_flabby(d1.sheaf) && is_compatible(d1.sheaf);
}

ThetaCheck theta_iso_check(const PureSheaf& f, const DualSheaf& df) {
  const Fan& fan = *f.fan();
  const std::size_t n = static_cast<std::size_t>(fan.ambient_dim());
  const Matrix id = Matrix::identity(n);
  const Subfan all = whole(fan);
  const Subfan bd = boundary_fan(fan, all);
  const int top = f.max_degree();
  auto hom_dims = [&](const Sections& s) {
    int maxgen = 0;
    for (const auto& c : fan.cones())
      for (int d : f.stalk(c.id).gens) maxgen = std::max(maxgen, d);
    const int bound = std::max(top, 2 * static_cast<int>(n) + maxgen);
    Generators g = s.generators(bound);
    if (!s.is_free_on(g, bound)) throw Error(ErrorKind::NotFree, "global sections are not free");
    std::vector<std::size_t> dims;
    for (int q = 0; q <= top; q += 2) {
      std::size_t d = 0;
      for (int u : g.degrees) d += poly_dim(n, q - 2 * static_cast<int>(n) + u);
      dims.push_back(d);
    }
    return dims;
  };
  Sections fa(f, all, {}, id), fr(f, all, bd, id);
  Sections da(df.sheaf, all, {}, id), dr(df.sheaf, all, bd, id);
  const auto hom_rel = hom_dims(fr), hom_abs = hom_dims(fa);
  ThetaCheck out{true, true};
  for (int q = 0, i = 0; q <= top; q += 2, ++i) {
    if (da.dim(q) != hom_rel[static_cast<std::size_t>(i)]) out.absolute = false;
    if (dr.dim(q) != hom_abs[static_cast<std::size_t>(i)]) out.relative = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Intersection pairing

IntersectionPairing::IntersectionPairing(FanPtr fan, int max_degree, bool reversed)
    : fan_(std::move(fan)), max_degree_(max_degree) {
  const auto cls = classify(*fan_);
  if (cls.quasi_convex != FanClass::Tri::Yes || !cls.purely_full_dim)
    throw Error(ErrorKind::QuasiConvexityUnknown,
                "pairing only available for complete or full-dimensional affine fans");
  const std::size_t n = static_cast<std::size_t>(fan_->ambient_dim());
  e_ = std::make_unique<PureSheaf>(minimal_extension(fan_, 0, max_degree_));
  de_ = std::make_unique<DualSheaf>(dual_sheaf(*e_));
  PolyMatrix seed(1, 1, 0);
  seed(0, 0) = Poly::constant(0, 1);
  theta_ = extend_hom(*e_, de_->sheaf, seed, true, reversed);
  const Subfan all = whole(*fan_);
  abs_ = std::make_unique<Sections>(*e_, all, Subfan{}, Matrix::identity(n));
  rel_ = std::make_unique<Sections>(*e_, all, boundary_fan(*fan_, all), Matrix::identity(n));
  const int top = 2 * static_cast<int>(n);
  abs_reps_ = abs_->generators(top);
  rel_reps_ = rel_->generators(top);
  for (const auto& c : fan_->cones()) {
    if (c.dim != static_cast<int>(n) - 1) continue;
    std::vector<Vec> rays;
    for (auto r : c.rays) rays.push_back(fan_->ray(r));
    Vec form = primitive(kernel_basis(Matrix::from_rows(rays, n)).at(0));
    for (const auto& x : form)
      if (sgn(x) != 0) {
        if (sgn(x) < 0)
          for (auto& y : form) y = -y;
        break;
      }
    wall_forms_[c.id] = std::move(form);
  }
}

Poly IntersectionPairing::value(const Vec& a, int p, const Vec& b, int r) const {
  const std::size_t n = static_cast<std::size_t>(fan_->ambient_dim());
  const int out_degree = p + r - 2 * static_cast<int>(n);
  if (out_degree < 0) return Poly(n);
  std::set<Vec> hyperplanes;
  for (const auto& [id, form] : wall_forms_) hyperplanes.insert(form);
  Poly total(n);
  const Matrix id = Matrix::identity(n);
  for (auto sigma : abs_->maximal()) {
    const auto& stalk = e_->stalk(sigma);
    const Element a_s = stalk.element(abs_->restrict_to(a, sigma, p), p);
    const Element psi = apply(theta_.stalks[sigma], id, a_s);
    std::vector<Vec> facet_forms;
    std::set<Vec> own;
    for (auto t : fan_->cone(sigma).facets) {
      facet_forms.push_back(wall_forms_.at(t));
      own.insert(wall_forms_.at(t));
    }
    const Poly h = product_of_forms(facet_forms, n);
    const int hd = 2 * static_cast<int>(facet_forms.size());
    const Vec b_s = rel_->restrict_to(b, sigma, r);
    const Vec hb = multiplication_matrix(stalk, h, r, hd) * b_s;
    auto coeffs = express_in(stalk, de_->relative[sigma], hb, r + hd);
    if (!coeffs) throw Error(ErrorKind::LiftFailed, "h * b outside the relative module");
    Poly val(n);
    for (std::size_t j = 0; j < coeffs->size(); ++j) val += psi[j] * (*coeffs)[j];
    std::vector<Vec> others;
    for (const auto& w : hyperplanes)
      if (!own.count(w)) others.push_back(w);
    total += val * product_of_forms(others, n);
  }
  const std::vector<Vec> all_forms(hyperplanes.begin(), hyperplanes.end());
  const Poly big_h = product_of_forms(all_forms, n);
  const int hdeg = 2 * static_cast<int>(all_forms.size());
  const FreeModule ring{n, {0}};
  const Vec rhs = coefficients(total, out_degree + hdeg);
  const Matrix mult = multiplication_matrix(ring, big_h, out_degree, hdeg);
  auto q = solve(mult, rhs);
  if (!q || mult * *q != rhs) throw Error(ErrorKind::LiftFailed, "pairing value is not polynomial");
  Poly out = from_coefficients(n, out_degree, *q);
  return out;
}

Vec IntersectionPairing::unit() const {
  const auto& b = abs_->basis(0);
  if (b.size() != 1) throw Error(ErrorKind::InvalidArgument, "degree-0 sections are not one-dimensional");
  Vec u = b[0];
  const Vec at_zero = abs_->restrict_to(u, 0, 0);
  const Rational s = at_zero.at(0);
  for (auto& x : u) x /= s;
  return u;
}

Poly IntersectionPairing::evaluate(const Vec& b, int r) const { return value(unit(), 0, b, r); }

Matrix IntersectionPairing::block(int k) const {
  const int n = fan_->ambient_dim();
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < abs_reps_.degrees.size(); ++i)
    if (abs_reps_.degrees[i] == 2 * k) rows.push_back(i);
  for (std::size_t j = 0; j < rel_reps_.degrees.size(); ++j)
    if (rel_reps_.degrees[j] == 2 * n - 2 * k) cols.push_back(j);
  Matrix m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      m(i, j) = value(abs_reps_.lifts[rows[i]], 2 * k, rel_reps_.lifts[cols[j]], 2 * n - 2 * k).constant_term();
  return m;
}

PairingReport IntersectionPairing::report() const {
  const int n = fan_->ambient_dim();
  PairingReport rep;
  rep.complete = classify(*fan_).complete;
  rep.betti.assign(static_cast<std::size_t>(n + 1), 0);
  rep.betti_compact.assign(static_cast<std::size_t>(n + 1), 0);
  for (int d : abs_reps_.degrees) ++rep.betti[static_cast<std::size_t>(d / 2)];
  for (int d : rel_reps_.degrees) ++rep.betti_compact[static_cast<std::size_t>(d / 2)];
  rep.nondegenerate = true;
  for (int k = 0; k <= n; ++k) {
    rep.blocks.push_back(block(k));
    const auto& b = rep.blocks.back();
    if (b.rows() != b.cols() || rank(b) != b.rows()) rep.nondegenerate = false;
  }
  rep.symmetric = rep.complete;
  if (rep.complete)
    for (int k = 0; k <= n; ++k)
      if (!(rep.blocks[static_cast<std::size_t>(k)] == rep.blocks[static_cast<std::size_t>(n - k)].transposed()))
        rep.symmetric = false;
  return rep;
}

Vec IntersectionPairing::multiply(const ConewiseLinear& psi, const Vec& a, int p, bool compact_side) const {
  const Sections& s = compact_side ? *rel_ : *abs_;
  std::map<ConeId, Vec> comps;
  for (auto sigma : s.maximal()) {
    const auto& stalk = e_->stalk(sigma);
    const Poly l = Poly::linear(fan_->restrict_form(psi.forms.at(sigma), sigma));
    comps[sigma] = multiplication_matrix(stalk, l, p, 2) * s.restrict_to(a, sigma, p);
  }
  return s.assemble(comps, p + 2);
}

Vec IntersectionPairing::reduce(const Vec& a, int q, bool compact_side) const {
  const Sections& s = compact_side ? *rel_ : *abs_;
  const Generators& reps = compact_side ? rel_reps_ : abs_reps_;
  std::vector<Vec> cols;
  if (q >= 2)
    for (std::size_t i = 0; i < s.nvars(); ++i) {
      const Matrix m = s.multiply_variable(i, q - 2);
      for (const auto& v : s.basis(q - 2)) cols.push_back(m * v);
    }
  cols = span_basis(cols, s.ambient_dim(q));
  const std::size_t base = cols.size();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < reps.degrees.size(); ++i)
    if (reps.degrees[i] == q) {
      cols.push_back(reps.lifts[i]);
      idx.push_back(i);
    }
  Vec out(idx.size());
  if (cols.empty()) return out;
  const Matrix m = Matrix::from_columns(cols, s.ambient_dim(q));
  auto x = solve(m, a);
  if (!x || m * *x != a) throw Error(ErrorKind::InvalidArgument, "not a section");
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = (*x)[base + i];
  return out;
}

// ---------------------------------------------------------------------------
// Beta product

BetaProduct beta_product(const PureSheaf& e) {
  const Fan& fan = *e.fan();
  BetaProduct beta;
  beta.table.resize(fan.size());
  if (e.stalk(0).rank() != 1) throw Error(ErrorKind::InvalidArgument, "expected a rank one stalk at the zero cone");
  beta.table[0] = {Element{Poly::constant(0, 1)}};
  for (const auto& c : fan.cones()) {
    if (c.dim == 0) continue;
    const auto& stalk = e.stalk(c.id);
    const std::size_t rk = stalk.rank();
    Sections boundary(e, proper_faces(fan, c.id), {}, c.basis);
    for (std::size_t i = 0; i < rk; ++i)
      for (std::size_t j = 0; j < rk; ++j) {
        const int d = stalk.gens[i] + stalk.gens[j];
        std::map<ConeId, Vec> comps;
        for (auto t : c.facets) {
          const auto& fm = e.facet_map(c.id, t);
          const auto& ts = e.stalk(t);
          const Element v = bilinear(beta.table[t], ts.rank(), fm.column(i), fm.column(j), ts.nvars);
          comps[t] = ts.coords(v, d);
        }
        const Vec target = boundary.assemble(comps, d);
        const Matrix r = boundary_restriction(e, boundary, c.id, d);
        auto lift = solve(r, target);
        if (!lift || r * *lift != target) throw Error(ErrorKind::LiftFailed, "product does not lift");
        beta.table[c.id].push_back(stalk.element(*lift, d));
      }
  }
  return beta;
}

Vec apply_beta(const BetaProduct& beta, const Sections& target, const Sections& left, const Vec& a, int p,
               const Sections& right, const Vec& b, int r) {
  const PureSheaf& e = target.sheaf();
  std::map<ConeId, Vec> comps;
  for (auto sigma : target.maximal()) {
    const auto& stalk = e.stalk(sigma);
    const Element x = stalk.element(left.restrict_to(a, sigma, p), p);
    const Element y = stalk.element(right.restrict_to(b, sigma, r), r);
    comps[sigma] = stalk.coords(bilinear(beta.table[sigma], stalk.rank(), x, y, stalk.nvars), p + r);
  }
  return target.assemble(comps, p + r);
}

bool cross_check_beta(const IntersectionPairing& pairing, const BetaProduct& beta) {
  const int n = pairing.fan()->ambient_dim();
  const auto& ar = pairing.absolute_reps();
  const auto& cr = pairing.compact_reps();
  for (std::size_t i = 0; i < ar.degrees.size(); ++i)
    for (std::size_t j = 0; j < cr.degrees.size(); ++j) {
      const int p = ar.degrees[i], r = cr.degrees[j];
      if (p + r != 2 * n) continue;
      const Vec prod = apply_beta(beta, pairing.compact(), pairing.absolute(), ar.lifts[i], p, pairing.compact(),
                                  cr.lifts[j], r);
      if (!(pairing.evaluate(prod, p + r) == pairing.value(ar.lifts[i], p, cr.lifts[j], r))) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Refinements

CompatibilityReport refinement_compatibility(const RefinementMap& pi, int max_degree) {
  IntersectionPairing coarse(pi.target, max_degree);
  IntersectionPairing fine(pi.source, max_degree);
  const auto di = direct_image(pi, fine.e());
  PolyMatrix seed(1, 1, 0);
  seed(0, 0) = Poly::constant(0, 1);
  const SheafMap iota = extend_hom(coarse.e(), di.sheaf, seed, false);
  const Fan& cf = *pi.target;
  const std::size_t n = static_cast<std::size_t>(cf.ambient_dim());
  std::map<ConeId, std::unique_ptr<Sections>> local;
  for (auto sigma : cf.maximal_cones())
    local[sigma] = std::make_unique<Sections>(fine.e(), di.refinements[sigma], Subfan{}, cf.cone(sigma).basis);

  auto transport = [&](const Vec& a, int q, bool compact_side) {
    const Sections& from = compact_side ? coarse.compact() : coarse.absolute();
    const Sections& to = compact_side ? fine.compact() : fine.absolute();
    std::map<ConeId, Vec> comps;
    for (auto sigma : cf.maximal_cones()) {
      const Element a_s = coarse.e().stalk(sigma).element(from.restrict_to(a, sigma, q), q);
      const Element img = apply(iota.stalks[sigma], Matrix::identity(n), a_s);
      const auto& gens = di.generators[sigma];
      const Sections& ls = *local[sigma];
      Vec sec(ls.ambient_dim(q));
      for (std::size_t j = 0; j < gens.degrees.size(); ++j) {
        if (img[j].is_zero()) continue;
        const Vec part = ls.multiply(img[j], gens.degrees[j]) * gens.lifts[j];
        for (std::size_t i = 0; i < sec.size(); ++i) sec[i] += part[i];
      }
      for (auto m : ls.maximal()) comps[m] = ls.restrict_to(sec, m, q);
    }
    return to.assemble(comps, q);
  };

  CompatibilityReport rep{true, 0};
  const auto& ar = coarse.absolute_reps();
  const auto& cr = coarse.compact_reps();
  for (std::size_t i = 0; i < ar.degrees.size(); ++i)
    for (std::size_t j = 0; j < cr.degrees.size(); ++j) {
      const int p = ar.degrees[i], r = cr.degrees[j];
      if (p + r != 2 * static_cast<int>(n)) continue;
      ++rep.pairs;
      const Poly lhs = coarse.value(ar.lifts[i], p, cr.lifts[j], r);
      const Poly rhs = fine.value(transport(ar.lifts[i], p, false), p, transport(cr.lifts[j], r, true), r);
      if (!(lhs == rhs)) rep.equal = false;
    }
  return rep;
}

}  // namespace fanih
