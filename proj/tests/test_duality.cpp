#include <doctest.h>

#include <random>

#include "fanih/duality.hpp"
#include "fanih/error.hpp"
#include "fixtures.hpp"

using namespace fanih;
using fixtures::v;

namespace {

ConeId cone_of(const Fan& f, std::vector<RayId> rays) { return *f.find(rays); }

/// Equivariant localization on a complete simplicial fan with E = A:
/// sum over maximal cones of f_sigma / (|det| * prod of the dual basis forms),
/// where f = a * b is given on each cone. Returns the numerator over the
/// common denominator check by multiplying through.
Rational localization(const Fan& f, const std::map<ConeId, Poly>& values, const Vec& point) {
  const std::size_t n = static_cast<std::size_t>(f.ambient_dim());
  Rational total = 0;
  for (auto m : f.maximal_cones()) {
    std::vector<Vec> cols;
    for (auto r : f.cone(m).rays) cols.push_back(f.ray(r));
    const Matrix rm = Matrix::from_columns(cols, n);
    const Rational det = determinant(rm);
    Rational denom = det < 0 ? Rational(-det) : det;
    // dual basis forms are the rows of rm^-1
    for (std::size_t i = 0; i < n; ++i) {
      Vec e(n);
      e[i] = 1;
      const Vec row = *solve(rm.transposed(), e);
      denom *= dot(row, point);
    }
    total += values.at(m).evaluate(point) / denom;
  }
  return total;
}

Poly random_poly(std::mt19937& rng, std::size_t n, int q) {
  std::uniform_int_distribution<int> d(-3, 3);
  Vec c(poly_dim(n, q));
  for (auto& x : c) x = d(rng);
  return from_coefficients(n, q, c);
}

}  // namespace

TEST_SUITE("duality") {
  TEST_CASE("transition data on the quadrant") {
    auto q = fixtures::quadrant();
    const ConeId top = q->maximal_cones().front();
    const ConeId e1 = cone_of(*q, {0}), e2 = cone_of(*q, {1});
    auto t = transition_data(*q, top, e1, v({0, 1}));
    CHECK(t.epsilon == -1);
    CHECK(t.c == 1);
    auto t2 = transition_data(*q, top, e1, v({0, 2}));
    CHECK(t2.epsilon == -1);
    CHECK(t2.c == Rational(1, 2));
    auto t3 = transition_data(*q, top, e2, v({1, 0}));
    CHECK(t3.epsilon == 1);
    CHECK(t3.c == 1);
    CHECK_THROWS_AS(transition_data(*q, top, e1, v({1, 0})), Error);
    CHECK_THROWS_AS(transition_data(*q, top, e1, v({0, -1})), Error);
    CHECK(canonical_facet_form(*q, top, e1) == v({0, 1}));
  }

  TEST_CASE("phi_h of the structure sheaf on the quadrant") {
    auto q = fixtures::quadrant();
    auto a = structure_sheaf(q, 4);
    const ConeId top = q->maximal_cones().front();
    const ConeId e1 = cone_of(*q, {0});
    auto rs = relative_generators(a, top);
    auto rt = relative_generators(a, e1);
    REQUIRE(rs.degrees == std::vector<int>{4});
    REQUIRE(rt.degrees == std::vector<int>{2});
    auto m = phi_h(a, top, e1, v({0, 1}), rs, rt);
    REQUIRE(m.rows() == 1);
    // generators are normalized by the echelon form, so compare ratios
    const Rational base = m(0, 0).constant_term();
    CHECK(base != 0);
    auto m2 = phi_h(a, top, e1, v({0, 2}), rs, rt);
    CHECK(m2(0, 0).constant_term() == 2 * base);
    auto d = dual_sheaf(a);
    for (const auto& c : q->cones()) CHECK(degrees(d.sheaf, c.id) == std::vector<int>{0});
  }

  TEST_CASE("dual of E has the degrees of E") {
    auto s = fixtures::sqcone();
    auto e = minimal_extension(s, 0, 6);
    const ConeId top = s->maximal_cones().front();
    auto d = dual_sheaf(e);
    CHECK(d.relative[top].degrees == std::vector<int>{4, 6});
    for (const auto& c : s->cones()) CHECK(degrees(d.sheaf, c.id) == degrees(e, c.id));
    CHECK(is_flabby(d.sheaf));
    CHECK(is_compatible(d.sheaf));
  }

  TEST_CASE("facet maps do not depend on the facet form") {
    auto c = fixtures::cube_face_fan();
    auto e = minimal_extension(c, 0, 6);
    auto base = dual_sheaf(e);
    std::map<std::pair<ConeId, ConeId>, Vec> forms;
    int k = 0;
    for (const auto& cone : c->cones())
      for (auto t : cone.facets) {
        Vec h = canonical_facet_form(*c, cone.id, t);
        const Rational s = (k++ % 2) ? Rational(3) : Rational(2, 7);
        for (auto& x : h) x *= s;
        forms[{cone.id, t}] = h;
      }
    auto other = dual_sheaf(e, forms);
    for (const auto& cone : c->cones())
      for (auto t : cone.facets) CHECK(other.sheaf.facet_map(cone.id, t) == base.sheaf.facet_map(cone.id, t));
  }

  TEST_CASE("restrictions of the dual do not depend on the flag") {
    auto c = fixtures::cube_face_fan();
    auto e = minimal_extension(c, 0, 6);
    auto d = dual_sheaf(e);
    std::size_t checked = 0;
    for (const auto& sigma : c->cones())
      for (auto t1 : sigma.facets)
        for (auto r : c->cone(t1).facets)
          for (auto t2 : sigma.facets)
            if (t2 != t1 && c->is_face(r, t2)) {
              CHECK(compose_chain(d.sheaf, {sigma.id, t1, r}) == compose_chain(d.sheaf, {sigma.id, t2, r}));
              ++checked;
            }
    CHECK(checked > 0);
  }

  TEST_CASE("biduality") {
    CHECK(bidual_check(minimal_extension(fixtures::sqcone(), 0, 6)));
    CHECK(bidual_check(minimal_extension(fixtures::cube_face_fan(), 0, 6)));
    auto s = fixtures::sqcone();
    CHECK(bidual_check(minimal_extension(s, s->maximal_cones().front(), 6)));
  }

  TEST_CASE("dimensions of the dual sections") {
    for (auto f : {fixtures::sqcone(), face_fan(fixtures::octahedron()).fan, fixtures::cube_face_fan()}) {
      auto e = minimal_extension(f, 0, 6);
      auto t = theta_iso_check(e, dual_sheaf(e));
      CHECK(t.absolute);
      CHECK(t.relative);
    }
  }

  TEST_CASE("duality correlation") {
    for (auto f : {fixtures::sqcone(), fixtures::cube_face_fan()}) {
      IntersectionPairing p(f, 6);
      CHECK(is_homomorphism(p.e(), p.dual().sheaf, p.theta()));
      CHECK(is_isomorphism(p.e(), p.dual().sheaf, p.theta()));
      IntersectionPairing r(f, 6, true);
      for (const auto& c : f->cones()) CHECK(p.theta().stalks[c.id] == r.theta().stalks[c.id]);
    }
  }

  TEST_CASE("pairing on the quadrant is a * b / (x1 x2)") {
    auto q = fixtures::quadrant();
    IntersectionPairing p(q, 8);
    std::mt19937 rng(11);
    const Poly x1x2 = Poly::variable(2, 0) * Poly::variable(2, 1);
    for (int trial = 0; trial < 10; ++trial) {
      const int pa = 2 * (trial % 3), pm = 2 * (trial % 2);
      const Poly a = random_poly(rng, 2, pa);
      const Poly m = random_poly(rng, 2, pm);
      const Poly b = x1x2 * m;
      const Poly got = p.value(coefficients(a, pa), pa, coefficients(b, pm + 4), pm + 4);
      CHECK(got == a * m);
    }
    auto rep = p.report();
    CHECK(rep.betti == std::vector<std::size_t>{1, 0, 0});
    CHECK(rep.betti_compact == std::vector<std::size_t>{0, 0, 1});
    CHECK_FALSE(rep.complete);
  }

  TEST_CASE("pairing on a complete simplicial fan matches localization") {
    auto f = face_fan(fixtures::octahedron()).fan;
    IntersectionPairing p(f, 6);
    const Vec point = v({3, 7, 19});
    for (const auto& [pa, pb] : std::vector<std::pair<int, int>>{{0, 6}, {2, 4}, {4, 2}, {2, 6}}) {
      for (std::size_t i = 0; i < p.absolute().basis(pa).size(); ++i)
        for (std::size_t j = 0; j < p.compact().basis(pb).size(); ++j) {
          const Vec& a = p.absolute().basis(pa)[i];
          const Vec& b = p.compact().basis(pb)[j];
          std::map<ConeId, Poly> prod;
          for (auto m : f->maximal_cones()) {
            const auto& st = p.e().stalk(m);
            prod[m] = st.element(p.absolute().restrict_to(a, m, pa), pa)[0] *
                      st.element(p.compact().restrict_to(b, m, pb), pb)[0];
          }
          CHECK(p.value(a, pa, b, pb).evaluate(point) == localization(*f, prod, point));
        }
    }
  }

  TEST_CASE("pairing on the cube face fan") {
    IntersectionPairing p(fixtures::cube_face_fan(), 6);
    auto rep = p.report();
    CHECK(rep.betti == std::vector<std::size_t>{1, 5, 5, 1});
    CHECK(rep.betti_compact == rep.betti);
    CHECK(rep.nondegenerate);
    CHECK(rep.symmetric);
    for (int k = 0; k <= 3; ++k) CHECK(rep.blocks[static_cast<std::size_t>(k)].rows() == rep.betti[static_cast<std::size_t>(k)]);
  }

  TEST_CASE("evaluation of the unit") {
    auto f = face_fan(fixtures::simplex3()).fan;
    IntersectionPairing p(f, 6);
    const Vec u = p.unit();
    CHECK(p.absolute().restrict_to(u, 0, 0) == v({1}));
    auto rep = p.report();
    CHECK(rep.betti == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK(rep.nondegenerate);
    CHECK(p.evaluate(p.compact_reps().lifts.back(), 6) == p.value(u, 0, p.compact_reps().lifts.back(), 6));
  }

  TEST_CASE("beta product recovers the pairing") {
    for (auto f : {fixtures::sqcone(), fixtures::cube_face_fan()}) {
      IntersectionPairing p(f, 6);
      auto beta = beta_product(p.e());
      CHECK(cross_check_beta(p, beta));
    }
  }

  TEST_CASE("pairing is compatible with a refinement") {
    auto s = fixtures::sqcone();
    auto r = stellar_subdivision(s, s->maximal_cones().front(), v({0, 0, 1}));
    auto rep = refinement_compatibility(r, 6);
    CHECK(rep.pairs > 0);
    CHECK(rep.equal);
    auto c = fixtures::cube_face_fan();
    const ConeId top = c->maximal_cones().front();
    Vec dir(3);
    for (auto ray : c->cone(top).rays)
      for (std::size_t i = 0; i < 3; ++i) dir[i] += c->ray(ray)[i];
    auto rc = stellar_subdivision(c, top, dir);
    auto repc = refinement_compatibility(rc, 6);
    CHECK(repc.pairs > 0);
    CHECK(repc.equal);
  }

  TEST_CASE("non quasi-convex fans are rejected") {
    auto f = fixtures::make(2, {v({1, 0}), v({0, 1}), v({-1, 0}), v({0, -1})}, {{0, 1}, {1, 2}, {2, 3}});
    CHECK_THROWS_AS(IntersectionPairing(f, 4), Error);
  }
}
