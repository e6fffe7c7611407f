#include "fanih/module.hpp"

#include <algorithm>

#include "fanih/error.hpp"

namespace fanih {

std::size_t free_dim(std::size_t nvars, const std::vector<int>& gens, int q) {
  std::size_t d = 0;
  for (int g : gens) d += poly_dim(nvars, q - g);
  return d;
}

std::size_t FreeModule::dim(int q) const { return free_dim(nvars, gens, q); }

std::size_t FreeModule::offset(std::size_t gen, int q) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < gen; ++i) off += poly_dim(nvars, q - gens[i]);
  return off;
}

Vec FreeModule::coords(const Element& e, int q) const {
  Vec out;
  out.reserve(dim(q));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Vec c = coefficients(e.at(i), q - gens[i]);
    for (const auto& [m, x] : e[i].terms())
      if (2 * static_cast<int>(total_degree(m)) != q - gens[i])
        throw Error(ErrorKind::InvalidArgument, "element is not homogeneous of degree " + std::to_string(q));
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

Element FreeModule::element(const Vec& c, int q) const {
  Element e;
  std::size_t off = 0;
  for (int g : gens) {
    const std::size_t d = poly_dim(nvars, q - g);
    Vec part(c.begin() + static_cast<long>(off), c.begin() + static_cast<long>(off + d));
    e.push_back(from_coefficients(nvars, q - g, part));
    off += d;
  }
  return e;
}

Element FreeModule::zero() const { return Element(gens.size(), Poly(nvars)); }

Element FreeModule::generator(std::size_t i) const {
  Element e = zero();
  e.at(i) = Poly::constant(nvars, 1);
  return e;
}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, Poly(nvars)) {}

PolyMatrix PolyMatrix::identity(std::size_t n, std::size_t nvars) {
  PolyMatrix m(n, n, nvars);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(nvars, 1);
  return m;
}

PolyMatrix PolyMatrix::from_columns(const std::vector<Element>& cols, std::size_t rows, std::size_t nvars) {
  PolyMatrix m(rows, cols.size(), nvars);
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c].at(r);
  return m;
}

Element PolyMatrix::column(std::size_t c) const {
  Element e;
  for (std::size_t r = 0; r < rows_; ++r) e.push_back((*this)(r, c));
  return e;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

Matrix same_algebra(std::size_t nvars) { return Matrix::identity(nvars); }

Element apply(const PolyMatrix& m, const Matrix& subst, const Element& x) {
  Element out(m.rows(), Poly(m.nvars()));
  for (std::size_t i = 0; i < m.cols(); ++i) {
    if (x.at(i).is_zero()) continue;
    const Poly xi = x[i].substitute(subst);
    for (std::size_t j = 0; j < m.rows(); ++j)
      if (!m(j, i).is_zero()) out[j] += xi * m(j, i);
  }
  return out;
}

PolyMatrix compose(const PolyMatrix& outer, const PolyMatrix& inner, const Matrix& subst) {
  if (outer.cols() != inner.rows()) throw Error(ErrorKind::InvalidArgument, "composition size mismatch");
  PolyMatrix out(outer.rows(), inner.cols(), outer.nvars());
  for (std::size_t i = 0; i < inner.cols(); ++i) {
    auto col = apply(outer, subst, inner.column(i));
    for (std::size_t j = 0; j < outer.rows(); ++j) out(j, i) = std::move(col[j]);
  }
  return out;
}

Matrix degree_matrix(const PolyMatrix& m, const Matrix& subst, const FreeModule& src,
                     const FreeModule& dst, int q) {
  Matrix out(dst.dim(q), src.dim(q));
  std::size_t col = 0;
  for (std::size_t i = 0; i < src.rank(); ++i) {
    const int k = q - src.gens[i];
    if (k < 0) continue;
    for (const auto& mono : monomials(src.nvars, static_cast<unsigned>(k / 2))) {
      Element x = src.zero();
      x[i] = Poly::monomial(mono);
      Vec c = dst.coords(apply(m, subst, x), q);
      for (std::size_t r = 0; r < c.size(); ++r) out(r, col) = c[r];
      ++col;
    }
  }
  return out;
}

Matrix multiplication_matrix(const FreeModule& m, const Poly& p, int q, int degree) {
  const int d = degree >= 0 ? degree : std::max(p.degree(), 0);
  Matrix out(m.dim(q + d), m.dim(q));
  std::size_t col = 0;
  for (std::size_t i = 0; i < m.rank(); ++i) {
    const int k = q - m.gens[i];
    if (k < 0) continue;
    for (const auto& mono : monomials(m.nvars, static_cast<unsigned>(k / 2))) {
      Element x = m.zero();
      x[i] = Poly::monomial(mono) * p;
      Vec c = m.coords(x, q + d);
      for (std::size_t r = 0; r < c.size(); ++r) out(r, col) = c[r];
      ++col;
    }
  }
  return out;
}

bool is_homogeneous_map(const PolyMatrix& m, const FreeModule& src, const FreeModule& dst) {
  for (std::size_t j = 0; j < m.rows(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) {
      const Poly& p = m(j, i);
      if (p.is_zero()) continue;
      if (!p.is_homogeneous() || p.degree() != src.gens[i] - dst.gens[j]) return false;
    }
  return true;
}

Generators minimal_generators(const std::function<std::vector<Vec>(int)>& space,
                              const std::function<Matrix(std::size_t, int)>& multiply,
                              std::size_t nvars, int max_degree,
                              const std::function<std::size_t(int)>& ambient_dim) {
  Generators out;
  std::vector<Vec> previous;
  for (int q = 0; q <= max_degree; q += 2) {
    const std::size_t dim = ambient_dim(q);
    auto current = span_basis(space(q), dim);
    SpanBuilder span(dim);
    if (q >= 2 && !previous.empty()) {
      for (std::size_t i = 0; i < nvars; ++i) {
        Matrix mult = multiply(i, q - 2);
        for (const auto& v : previous) span.add(mult * v);
      }
    }
    for (const auto& v : current)
      if (span.add(v)) {
        out.degrees.push_back(q);
        out.lifts.push_back(v);
      }
    previous = std::move(current);
  }
  return out;
}

std::optional<Element> express_in(const FreeModule& m, const Generators& g, const Vec& x, int q) {
  std::vector<Vec> cols;
  std::vector<std::pair<std::size_t, const Monomial*>> labels;
  for (std::size_t j = 0; j < g.degrees.size(); ++j) {
    const int k = q - g.degrees[j];
    if (k < 0) continue;
    for (const auto& mono : monomials(m.nvars, static_cast<unsigned>(k / 2))) {
      cols.push_back(multiplication_matrix(m, Poly::monomial(mono), g.degrees[j], k) * g.lifts[j]);
      labels.emplace_back(j, &mono);
    }
  }
  Element out(g.degrees.size(), Poly(m.nvars));
  if (cols.empty()) {
    if (!is_zero(x)) return std::nullopt;
    return out;
  }
  const Matrix a = Matrix::from_columns(cols, m.dim(q));
  auto sol = solve(a, x);
  if (!sol || a * *sol != x) return std::nullopt;
  for (std::size_t c = 0; c < labels.size(); ++c) out[labels[c].first].add_term(*labels[c].second, (*sol)[c]);
  return out;
}

Matrix stack_rows(const std::vector<Matrix>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  Matrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) out(r0 + r, c) = b(r, c);
    r0 += b.rows();
  }
  return out;
}

}  // namespace fanih
