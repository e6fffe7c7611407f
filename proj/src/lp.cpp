#include "fanih/lp.hpp"

namespace fanih {

std::optional<Vec> find_nonnegative_solution(const Matrix& a, const Vec& b) {
  const std::size_t m = a.rows(), n = a.cols();
  // Tableau columns: n structural, m artificial, 1 right-hand side.
  const std::size_t width = n + m + 1;
  Matrix t(m + 1, width);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = sgn(b[i]) < 0;
    for (std::size_t j = 0; j < n; ++j) t(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
    t(i, n + i) = 1;
    t(i, n + m) = flip ? Rational(-b[i]) : b[i];
    basis[i] = n + i;
  }
  // Objective row holds reduced costs of "minimize sum of artificials".
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < width; ++j)
      if (j < n || j == n + m) t(m, j) -= t(i, j);

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < n + m; ++j)
      if (sgn(t(m, j)) < 0) { enter = j; break; }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t(i, enter)) <= 0) continue;
      Rational ratio = t(i, n + m) / t(i, enter);
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen in phase one
    const Rational piv = t(leave, enter);
    for (std::size_t j = 0; j < width; ++j) t(leave, j) /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const Rational f = t(i, enter);
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < width; ++j)
        if (sgn(t(leave, j)) != 0) t(i, j) -= f * t(leave, j);
    }
    basis[leave] = enter;
  }
  if (sgn(t(m, n + m)) != 0) return std::nullopt;
  Vec x(n);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t(i, n + m);
  return x;
}

}  // namespace fanih
