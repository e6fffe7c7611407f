#include <doctest.h>

#include <set>

#include "fanih/error.hpp"
#include "fanih/fan.hpp"
#include "fixtures.hpp"

using namespace fanih;
using fixtures::v;

namespace {

int count_dim(const Fan& f, int d) {
  int c = 0;
  for (const auto& cone : f.cones()) c += cone.dim == d;
  return c;
}

/// Brute-force face oracle: a subset of rays of a full cone is a face iff a
/// supporting vector exists among the normals of all (n-1)-subsets.
std::size_t brute_force_faces(const std::vector<Vec>& rays) {
  std::set<std::vector<std::size_t>> faces;
  const std::size_t m = rays.size();
  for (std::size_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<std::size_t> sub;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) sub.push_back(i);
    // supporting form: sum of outer normals to all triples containing sub
    bool is_face = false;
    for (std::size_t a = 0; a < m && !is_face; ++a)
      for (std::size_t b = a + 1; b < m && !is_face; ++b) {
        Vec nrm{rays[a][1] * rays[b][2] - rays[a][2] * rays[b][1],
                rays[a][2] * rays[b][0] - rays[a][0] * rays[b][2],
                rays[a][0] * rays[b][1] - rays[a][1] * rays[b][0]};
        for (int s : {1, -1}) {
          bool ok = true;
          std::vector<std::size_t> zero;
          for (std::size_t i = 0; i < m; ++i) {
            Rational d = s * dot(nrm, rays[i]);
            if (d < 0) ok = false;
            if (d == 0) zero.push_back(i);
          }
          if (ok && zero == sub) is_face = true;
        }
      }
    if (sub.empty() || sub.size() == 1 || sub.size() == m) is_face = true;
    if (is_face) faces.insert(sub);
  }
  return faces.size();
}

}  // namespace

TEST_SUITE("fan") {
  TEST_CASE("single quadrant has four cones") {
    auto f = fixtures::quadrant();
    CHECK(f->size() == 4);
    CHECK(f->cone(0).dim == 0);
    CHECK(f->maximal_cones() == std::vector<ConeId>{3});
  }

  TEST_CASE("line fan") {
    auto f = fixtures::line();
    CHECK(f->size() == 3);
    auto cls = classify(*f);
    CHECK(cls.complete);
    CHECK(boundary_fan(*f, whole(*f)).empty());
  }

  TEST_CASE("cube face fan lattice matches brute force per cone") {
    auto f = fixtures::cube_face_fan();
    CHECK(f->size() == 27);
    CHECK(count_dim(*f, 1) == 8);
    CHECK(count_dim(*f, 2) == 12);
    CHECK(count_dim(*f, 3) == 6);
    for (auto m : f->maximal_cones()) {
      std::vector<Vec> rs;
      for (auto r : f->cone(m).rays) rs.push_back(f->ray(r));
      CHECK(f->faces(m).size() == brute_force_faces(rs));
    }
    for (const auto& c : f->cones())
      for (auto t : c.facets) CHECK(f->cone(t).dim == c.dim - 1);
  }

  TEST_CASE("face closure is idempotent") {
    auto f = fixtures::cube_face_fan();
    std::vector<std::vector<RayId>> maxr;
    for (auto m : f->maximal_cones()) maxr.push_back(f->cone(m).rays);
    auto g = build_fan(3, f->rays(), maxr);
    REQUIRE(g.size() == f->size());
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.cone(i).rays == f->cone(i).rays);
  }

  TEST_CASE("ray scaling keeps direction") {
    auto f = fixtures::make(1, {v({3}), v({-2})}, {{0}, {1}});
    CHECK(f->ray(0) == v({1}));
    CHECK(f->ray(1) == v({-1}));
  }

  TEST_CASE("invalid fans are rejected") {
    auto kind = [](auto fn) {
      try {
        fn();
      } catch (const Error& e) {
        return e.kind();
      }
      return ErrorKind::InvalidArgument;
    };
    CHECK(kind([] { build_fan(1, {v({1}), v({-1})}, {{0, 1}}); }) == ErrorKind::NotStrictlyConvex);
    CHECK(kind([] { build_fan(2, {v({1, 0}), v({0, 1}), v({1, 1})}, {{0, 1}, {2}}); }) ==
          ErrorKind::OverlappingCones);
    CHECK(kind([] {
            build_fan(3, {v({1, 1, 1}), v({-1, 1, 1}), v({-1, -1, 1}), v({1, -1, 1}), v({2, -1, 0})},
                      {{0, 1, 2, 3}, {0, 2, 4}});
          }) == ErrorKind::NotCommonFace);
    CHECK(kind([] { build_fan(2, {v({1, 0}), v({0, 1}), v({1, 1})}, {{0, 1, 2}}); }) ==
          ErrorKind::RedundantRay);
    CHECK(kind([] {
            build_fan(2, {v({1, 0}), v({1, 2}), v({2, 1}), v({0, 1})}, {{0, 1}, {2, 3}});
          }) == ErrorKind::OverlappingCones);
  }

  TEST_CASE("boundary fans") {
    auto q = fixtures::quadrant();
    CHECK(boundary_fan(*q, whole(*q)) == Subfan{0, 1, 2});
    auto s = fixtures::sqcone();
    auto b = boundary_fan(*s, whole(*s));
    CHECK(b.size() == 9);
    auto c = fixtures::cube_face_fan();
    CHECK(boundary_fan(*c, whole(*c)).empty());
    CHECK_THROWS_AS(boundary_fan(*fixtures::make(2, {v({1, 0})}, {{0}}), Subfan{0, 1}), Error);
  }

  TEST_CASE("transversal fans") {
    auto c = fixtures::cube_face_fan();
    auto t0 = transversal_fan(*c, 0);
    CHECK(t0.fan->size() == c->size());
    auto t1 = transversal_fan(*c, 1);
    CHECK(t1.fan->ambient_dim() == 2);
    CHECK(t1.fan->maximal_cones().size() == 3);
    CHECK(classify(*t1.fan).complete);
    auto tm = transversal_fan(*c, c->maximal_cones().front());
    CHECK(tm.fan->size() == 1);
    auto s = fixtures::sqcone();
    auto ts = transversal_fan(*s, 1);
    CHECK(ts.fan->ambient_dim() == 2);
    CHECK(ts.fan->maximal_cones().size() == 1);
  }

  TEST_CASE("stellar subdivisions") {
    auto q = fixtures::quadrant();
    auto r = stellar_subdivision(q, 3, v({1, 1}));
    CHECK(r.source->maximal_cones().size() == 2);
    auto s = fixtures::sqcone();
    auto rs = stellar_subdivision(s, s->maximal_cones().front(), v({0, 0, 1}));
    CHECK(rs.source->maximal_cones().size() == 4);
    for (auto m : rs.source->maximal_cones()) CHECK(rs.source->cone(m).rays.size() == 3);
    auto ry = stellar_subdivision(q, 1, v({5, 0}));
    CHECK(ry.source == ry.target);
    CHECK_THROWS_AS(stellar_subdivision(q, 3, v({1, 0})), Error);
    CHECK_THROWS_AS(stellar_subdivision(q, 3, v({-1, 1})), Error);
  }

  TEST_CASE("stellar subdivision of cube preserves support") {
    auto c = fixtures::cube_face_fan();
    const auto m = c->maximal_cones().front();
    Vec center(3);
    for (auto r : c->cone(m).rays)
      for (int i = 0; i < 3; ++i) center[i] += c->ray(r)[i];
    auto rc = stellar_subdivision(c, m, center);
    CHECK(rc.source->maximal_cones().size() == 9);
    CHECK(classify(*rc.source).complete);
    for (long x = -2; x <= 2; ++x)
      for (long y = -2; y <= 2; ++y)
        for (long z = -2; z <= 2; ++z) {
          auto p = v({x, y, z});
          CHECK(rc.source->carrier(p).has_value() == c->carrier(p).has_value());
        }
    for (ConeId k = 0; k < rc.source->size(); ++k) {
      auto t = rc.carrier[k];
      for (auto r : rc.source->cone(k).rays) CHECK(c->contains_point(t, rc.source->ray(r)));
    }
  }

  TEST_CASE("classification") {
    auto c = classify(*fixtures::cube_face_fan());
    CHECK(c.complete);
    CHECK(c.normal);
    CHECK(c.quasi_convex == FanClass::Tri::Yes);
    auto s = classify(*fixtures::sqcone());
    CHECK_FALSE(s.complete);
    CHECK(s.normal);
    CHECK(s.quasi_convex == FanClass::Tri::Yes);
    auto two = classify(*fixtures::make(2, {v({1, 0}), v({0, 1}), v({-1, 0}), v({0, -1})}, {{0, 1}, {2, 3}}));
    CHECK(two.purely_full_dim);
    CHECK_FALSE(two.normal);
    CHECK(two.quasi_convex == FanClass::Tri::No);
    auto half = classify(*fixtures::make(2, {v({1, 0}), v({0, 1}), v({-1, 0})}, {{0, 1}, {1, 2}}));
    CHECK(half.normal);
    CHECK(half.convex_support);
    CHECK(half.quasi_convex == FanClass::Tri::Yes);
    auto three = classify(
        *fixtures::make(2, {v({1, 0}), v({0, 1}), v({-1, 0}), v({0, -1})}, {{0, 1}, {1, 2}, {2, 3}}));
    CHECK(three.normal);
    CHECK_FALSE(three.convex_support);
    CHECK(three.quasi_convex == FanClass::Tri::Unknown);
  }

  TEST_CASE("polytope fans") {
    CHECK(face_fan(fixtures::simplex3()).fan->maximal_cones().size() == 4);
    auto oct = face_fan(fixtures::octahedron()).fan;
    CHECK(oct->maximal_cones().size() == 8);
    for (auto m : oct->maximal_cones()) CHECK(oct->cone(m).rays.size() == 3);
    auto nf = normal_fan(fixtures::cube());
    CHECK(nf.fan->maximal_cones().size() == 8);
    CHECK(is_strictly_convex(*nf.fan, nf.psi));
    int walls = 0;
    for (const auto& c : nf.fan->cones()) walls += c.dim == 2;
    CHECK(walls == 12);
    // psi(u) = sum |u_i|
    for (auto m : nf.fan->maximal_cones())
      for (auto r : nf.fan->cone(m).rays) {
        Rational abs_sum = 0;
        for (const auto& x : nf.fan->ray(r)) abs_sum += abs(x);
        CHECK(dot(nf.psi.forms.at(m), nf.fan->ray(r)) == abs_sum);
      }
    CHECK_THROWS_AS(face_fan(Polytope{3, {v({0, 0, 0}), v({1, 0, 0}), v({0, 1, 0})}}), Error);
    auto ico = polytope_facets(fixtures::icosahedron());
    CHECK(ico.size() == 20);
    for (const auto& f : ico) CHECK(f.vertices.size() == 3);
  }

  TEST_CASE("strictly convex function search") {
    auto c = fixtures::cube_face_fan();
    auto psi = find_strictly_convex(*c);
    REQUIRE(psi);
    CHECK(is_strictly_convex(*c, *psi));
    auto l = find_strictly_convex(*fixtures::line());
    CHECK(l.has_value());
  }

  TEST_CASE("flags and embeddings") {
    auto c = fixtures::cube_face_fan();
    const auto m = c->maximal_cones().front();
    auto fl = c->flag(0, m);
    REQUIRE(fl.size() == 4);
    for (std::size_t i = 0; i + 1 < fl.size(); ++i)
      CHECK(c->cone(fl[i]).dim + 1 == c->cone(fl[i + 1]).dim);
    auto e = c->embedding(c->cone(m).facets[0], m);
    CHECK(e.rows() == 3);
    CHECK(e.cols() == 2);
  }
}
