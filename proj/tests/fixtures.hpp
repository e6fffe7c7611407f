#pragma once

#include <string>
#include <vector>

#include "fanih/fan.hpp"

namespace fixtures {

using fanih::FanPtr;
using fanih::Polytope;
using fanih::Rational;
using fanih::Vec;

inline Vec v(std::initializer_list<long> xs) {
  Vec out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

inline FanPtr make(int n, std::vector<Vec> rays, std::vector<std::vector<std::size_t>> cones) {
  return std::make_shared<fanih::Fan>(fanih::build_fan(n, rays, cones));
}

inline FanPtr line() { return make(1, {v({1}), v({-1})}, {{0}, {1}}); }
inline FanPtr quadrant() { return make(2, {v({1, 0}), v({0, 1})}, {{0, 1}}); }
/// Cone over the unit square: rays (+-1,+-1,1) in cyclic order.
inline FanPtr sqcone() {
  return make(3, {v({1, 1, 1}), v({-1, 1, 1}), v({-1, -1, 1}), v({1, -1, 1})}, {{0, 1, 2, 3}});
}

inline Polytope simplex3() { return {3, {v({0, 0, 0}), v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})}}; }
inline Polytope octahedron() {
  return {3, {v({1, 0, 0}), v({-1, 0, 0}), v({0, 1, 0}), v({0, -1, 0}), v({0, 0, 1}), v({0, 0, -1})}};
}
inline Polytope cube() {
  Polytope p{3, {}};
  for (long x : {-1, 1})
    for (long y : {-1, 1})
      for (long z : {-1, 1}) p.vertices.push_back(v({x, y, z}));
  return p;
}
inline Polytope pyramid() {
  return {3, {v({1, 1, 0}), v({-1, 1, 0}), v({-1, -1, 0}), v({1, -1, 0}), v({0, 0, 1})}};
}
inline Polytope prism() {
  return {3, {v({0, 0, 0}), v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({1, 0, 1}), v({0, 1, 1})}};
}
inline Polytope square() { return {2, {v({1, 1}), v({-1, 1}), v({-1, -1}), v({1, -1})}}; }
inline Polytope icosahedron() {
  Polytope p{3, {}};
  const Rational g(8, 5);
  for (long s1 : {-1, 1})
    for (int s2 : {-1, 1}) {
      Rational a = s1, b = g * s2;
      p.vertices.push_back({0, a, b});
      p.vertices.push_back({a, b, 0});
      p.vertices.push_back({b, 0, a});
    }
  return p;
}

inline FanPtr cube_face_fan() { return fanih::face_fan(cube()).fan; }

}  // namespace fixtures
