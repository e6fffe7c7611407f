#include <doctest.h>

#include <set>

#include "fanih/error.hpp"
#include "fanih/sheaf.hpp"
#include "fixtures.hpp"

using namespace fanih;
using fixtures::v;

namespace {

/// Conewise linear functions on a fan with full-dimensional maximal cones:
/// unknowns are the ray values and one form per maximal cone, tied by
/// form(ray) = value. Dimension of the solution space.
std::size_t conewise_linear_oracle(const Fan& f) {
  const std::size_t n = static_cast<std::size_t>(f.ambient_dim());
  const std::size_t nr = f.rays().size();
  const auto& maxc = f.maximal_cones();
  const std::size_t cols = nr + n * maxc.size();
  std::vector<Vec> rows;
  for (std::size_t k = 0; k < maxc.size(); ++k)
    for (auto r : f.cone(maxc[k]).rays) {
      Vec row(cols);
      row[r] = -1;
      for (std::size_t i = 0; i < n; ++i) row[nr + n * k + i] = f.ray(r)[i];
      rows.push_back(row);
    }
  return cols - rank(Matrix::from_rows(rows, cols));
}

/// Degree-2k part of the Stanley-Reisner ring of a simplicial fan: monomials
/// supported on the ray sets of cones.
std::size_t face_ring_dim(const Fan& f, int k) {
  if (k == 0) return 1;
  std::size_t total = 0;
  for (const auto& c : f.cones()) {
    const long s = static_cast<long>(c.rays.size());
    if (s == 0) continue;
    // monomials of degree k with support exactly c.rays: C(k-1, s-1)
    long r = 1;
    const long top = k - 1, bot = s - 1;
    if (bot > top) continue;
    for (long i = 1; i <= bot; ++i) r = r * (top - bot + i) / i;
    total += static_cast<std::size_t>(r);
  }
  return total;
}

std::vector<int> sorted(std::vector<int> d) {
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_SUITE("sheaf") {
  TEST_CASE("structure sheaf sections") {
    auto q = fixtures::quadrant();
    auto a = structure_sheaf(q, 4);
    for (const auto& c : q->cones()) CHECK(a.stalk(c.id).rank() == 1);
    auto l = fixtures::line();
    auto al = structure_sheaf(l, 8);
    Sections s(al, whole(*l), {}, Matrix::identity(1));
    CHECK(s.dim(0) == 1);
    for (int k = 1; k <= 4; ++k) CHECK(s.dim(2 * k) == 2);
    auto c = fixtures::cube_face_fan();
    auto ac = structure_sheaf(c, 6);
    Sections sc(ac, whole(*c), {}, Matrix::identity(3));
    CHECK(sc.dim(2) == conewise_linear_oracle(*c));
    CHECK(sc.dim(2) == 4);
    auto ec = minimal_extension(c, 0, 6);
    Sections se(ec, whole(*c), {}, Matrix::identity(3));
    CHECK(se.dim(2) == 8);
  }

  TEST_CASE("sections over an affine fan are the stalk") {
    auto s = fixtures::sqcone();
    auto e = minimal_extension(s, 0, 6);
    const auto top = s->maximal_cones().front();
    Sections sec(e, affine(*s, top), {}, Matrix::identity(3));
    for (int q = 0; q <= 6; q += 2) CHECK(sec.dim(q) == e.stalk(top).dim(q));
  }

  TEST_CASE("minimal extension of the square cone") {
    auto s = fixtures::sqcone();
    auto e = minimal_extension(s, 0, 6);
    const auto top = s->maximal_cones().front();
    CHECK(degrees(e, top) == std::vector<int>{0, 2});
    for (const auto& c : s->cones())
      if (c.id != top) CHECK(degrees(e, c.id) == std::vector<int>{0});
    CHECK(is_flabby(e));
    CHECK(is_compatible(e));
  }

  TEST_CASE("E equals A on simplicial fans") {
    for (auto p : {fixtures::simplex3(), fixtures::octahedron()}) {
      auto f = face_fan(p).fan;
      auto e = minimal_extension(f, 0, 6);
      for (const auto& c : f->cones()) CHECK(degrees(e, c.id) == std::vector<int>{0});
    }
  }

  TEST_CASE("skyscraper at a maximal cone") {
    auto s = fixtures::sqcone();
    const auto top = s->maximal_cones().front();
    auto l = minimal_extension(s, top, 6);
    for (const auto& c : s->cones()) CHECK(l.stalk(c.id).rank() == (c.id == top ? 1u : 0u));
  }

  TEST_CASE("simple sheaf via the transversal fan agrees with the minimal extension") {
    auto c = fixtures::cube_face_fan();
    for (ConeId sigma : {ConeId{0}, ConeId{1}, ConeId{9}, c->maximal_cones().front()}) {
      auto a = simple_sheaf(c, sigma, 6);
      auto b = minimal_extension(c, sigma, 6);
      for (const auto& cone : c->cones()) CHECK(degrees(a, cone.id) == degrees(b, cone.id));
      CHECK(is_compatible(a));
      CHECK(is_flabby(a));
    }
  }

  TEST_CASE("inverse image under the identity") {
    auto s = fixtures::sqcone();
    auto e = minimal_extension(s, 0, 6);
    FanMap id{s, s, Matrix::identity(3), {}};
    for (ConeId k = 0; k < s->size(); ++k) id.cone_map.push_back(k);
    auto g = inverse_image(id, e);
    for (const auto& c : s->cones())
      for (auto t : c.facets) CHECK(g.facet_map(c.id, t) == e.facet_map(c.id, t));
  }

  TEST_CASE("direct images") {
    auto s = fixtures::sqcone();
    auto e = minimal_extension(s, 0, 6);
    auto di = direct_image(identity_refinement(s), e);
    for (const auto& c : s->cones()) CHECK(degrees(di.sheaf, c.id) == degrees(e, c.id));

    const auto top = s->maximal_cones().front();
    auto r = stellar_subdivision(s, top, v({0, 0, 1}));
    auto ehat = minimal_extension(r.source, 0, 6);
    for (const auto& c : r.source->cones()) CHECK(degrees(ehat, c.id) == std::vector<int>{0});
    Sections fine(ehat, whole(*r.source), {}, Matrix::identity(3));
    for (int k = 0; k <= 3; ++k) CHECK(fine.dim(2 * k) == face_ring_dim(*r.source, k));
    auto pe = direct_image(r, ehat);
    CHECK(degrees(pe.sheaf, top) == std::vector<int>{0, 2, 2, 4});
    CHECK(is_flabby(pe.sheaf));
    CHECK(is_compatible(pe.sheaf));

    auto l = fixtures::line();
    auto al = structure_sheaf(l, 4);
    auto pl = direct_image(identity_refinement(l), al);
    for (const auto& c : l->cones()) CHECK(degrees(pl.sheaf, c.id) == std::vector<int>{0});
  }

  TEST_CASE("decomposition") {
    auto s = fixtures::sqcone();
    auto e = minimal_extension(s, 0, 6);
    auto rep = decompose(e);
    CHECK(rep.balanced);
    CHECK(rep.kernel_degrees[0] == std::vector<int>{0});
    for (ConeId k = 1; k < s->size(); ++k) CHECK(rep.kernel_degrees[k].empty());

    const auto top = s->maximal_cones().front();
    auto r = stellar_subdivision(s, top, v({0, 0, 1}));
    auto pe = direct_image(r, minimal_extension(r.source, 0, 6));
    auto rp = decompose(pe.sheaf);
    CHECK(rp.kernel_degrees[0] == std::vector<int>{0});
    CHECK(rp.kernel_degrees[top] == std::vector<int>{2, 4});
    for (ConeId k = 1; k < top; ++k) CHECK(rp.kernel_degrees[k].empty());

    auto c = fixtures::cube_face_fan();
    auto sum = direct_sum(minimal_extension(c, 1, 6), minimal_extension(c, 9, 6));
    auto rs = decompose(sum);
    int units = 0;
    for (const auto& k : rs.kernel_degrees) units += static_cast<int>(k.size());
    CHECK(units == 2);
    CHECK(rs.kernel_degrees[1] == std::vector<int>{0});
    CHECK(rs.kernel_degrees[9] == std::vector<int>{0});
  }

  TEST_CASE("truncation too low is reported") {
    auto s = fixtures::sqcone();
    CHECK_THROWS_AS(minimal_extension(s, 0, 2), Error);
  }
}
