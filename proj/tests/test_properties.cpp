#include <doctest.h>

#include <random>

#include "fanih/invariants.hpp"
#include "fanih/lp.hpp"
#include "fixtures.hpp"

using namespace fanih;
using fixtures::v;

namespace {

/// Random lattice points in a box, reduced to the extreme ones.
Polytope random_polytope(std::mt19937& rng, int npoints) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<Vec> pts;
  while (static_cast<int>(pts.size()) < npoints) {
    Vec p{d(rng), d(rng), d(rng)};
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  Polytope out{3, {}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) {
        Vec c = pts[j];
        c.push_back(1);
        cols.push_back(c);
      }
    Vec b = pts[i];
    b.push_back(1);
    if (!find_nonnegative_solution(Matrix::from_columns(cols, 4), b)) out.vertices.push_back(pts[i]);
  }
  return out;
}

bool full_dim(const Polytope& p) {
  if (p.vertices.size() < 4) return false;
  std::vector<Vec> rows;
  for (const auto& x : p.vertices) rows.push_back({x[0] - p.vertices[0][0], x[1] - p.vertices[0][1], x[2] - p.vertices[0][2]});
  return rank(Matrix::from_rows(rows, 3)) == 3;
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("random polytopes: Betti numbers, h-vector and duality") {
    std::mt19937 rng(2024);
    int done = 0;
    while (done < 6) {
      auto p = random_polytope(rng, 7);
      if (!full_dim(p)) continue;
      ++done;
      auto pf = face_fan(p);
      const auto h = stanley_h(p);
      const auto b = ih_betti(pf.fan);
      CHECK(HVector(b.begin(), b.end()) == h);
      for (std::size_t i = 0; i < h.size(); ++i) CHECK(h[i] == h[h.size() - 1 - i]);
      CHECK(hl_check(pf.fan, pf.psi).ok);
      CHECK(vanishing_check(pf.fan).ok);
      auto e = minimal_extension(pf.fan, 0, 6);
      auto de = dual_sheaf(e);
      for (const auto& c : pf.fan->cones()) CHECK(degrees(de.sheaf, c.id) == degrees(e, c.id));
    }
  }

  TEST_CASE("random stellar subdivisions keep the support and the pairing") {
    std::mt19937 rng(99);
    auto c = fixtures::cube_face_fan();
    std::uniform_int_distribution<int> pick(0, static_cast<int>(c->size()) - 1);
    std::uniform_int_distribution<int> w(1, 4);
    int done = 0;
    while (done < 3) {
      const ConeId sigma = static_cast<ConeId>(pick(rng));
      if (c->cone(sigma).dim < 2) continue;
      ++done;
      Vec dir(3);
      for (auto r : c->cone(sigma).rays) {
        const int k = w(rng);
        for (std::size_t i = 0; i < 3; ++i) dir[i] += c->ray(r)[i] * k;
      }
      auto pi = stellar_subdivision(c, sigma, dir);
      CHECK(classify(*pi.source).complete);
      std::uniform_int_distribution<int> coord(-5, 5);
      for (int s = 0; s < 20; ++s) {
        Vec x{coord(rng), coord(rng), coord(rng)};
        if (is_zero(x)) continue;
        CHECK(pi.source->carrier(x).has_value());
      }
      auto rep = refinement_compatibility(pi, 6);
      CHECK(rep.equal);
    }
  }

  TEST_CASE("random facet forms give the same dual") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> num(1, 9), den(1, 9);
    auto s = fixtures::sqcone();
    auto e = minimal_extension(s, 0, 6);
    auto base = dual_sheaf(e);
    for (int trial = 0; trial < 3; ++trial) {
      std::map<std::pair<ConeId, ConeId>, Vec> forms;
      for (const auto& c : s->cones())
        for (auto t : c.facets) {
          Vec h = canonical_facet_form(*s, c.id, t);
          const Rational k = Rational(num(rng)) / den(rng);
          for (auto& x : h) x *= k;
          forms[{c.id, t}] = h;
        }
      auto other = dual_sheaf(e, forms);
      for (const auto& c : s->cones())
        for (auto t : c.facets) CHECK(other.sheaf.facet_map(c.id, t) == base.sheaf.facet_map(c.id, t));
    }
  }

  TEST_CASE("polynomial substitution is a ring map") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
      Matrix m(3, 2);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) m(i, j) = d(rng);
      Vec c1(poly_dim(3, 2)), c2(poly_dim(3, 4));
      for (auto& x : c1) x = d(rng);
      for (auto& x : c2) x = d(rng);
      const Poly p = from_coefficients(3, 2, c1), q = from_coefficients(3, 4, c2);
      CHECK((p * q).substitute(m) == p.substitute(m) * q.substitute(m));
      CHECK((p + p).substitute(m) == p.substitute(m) + p.substitute(m));
      const Vec pt{d(rng), d(rng)};
      Vec image(3);
      for (std::size_t i = 0; i < 3; ++i) image[i] = m(i, 0) * pt[0] + m(i, 1) * pt[1];
      CHECK(q.substitute(m).evaluate(pt) == q.evaluate(image));
    }
  }
}
