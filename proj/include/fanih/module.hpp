#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "fanih/linalg.hpp"
#include "fanih/poly.hpp"

namespace fanih {

/// Element of a free module: one coefficient polynomial per generator.
using Element = std::vector<Poly>;

/// Free graded module over the polynomial ring in nvars variables with
/// generators in the given (even) degrees. The basis of the degree-q
/// part is ordered by generator, then by monomial in DegLex order.
struct FreeModule {
  std::size_t nvars = 0;
  std::vector<int> gens;

  std::size_t rank() const { return gens.size(); }
  std::size_t dim(int q) const;
  std::size_t offset(std::size_t gen, int q) const;
  Vec coords(const Element& e, int q) const;
  Element element(const Vec& c, int q) const;
  Element zero() const;
  Element generator(std::size_t i) const;
};

/// dim of the degree-q part of a free module with these generator degrees.
std::size_t free_dim(std::size_t nvars, const std::vector<int>& gens, int q);

/// Matrix of polynomials; column i is the image of source generator i
/// expressed in the target generators. Entries live in the target algebra.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);

  static PolyMatrix identity(std::size_t n, std::size_t nvars);
  static PolyMatrix from_columns(const std::vector<Element>& cols, std::size_t rows, std::size_t nvars);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return nvars_; }

  Poly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Poly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Element column(std::size_t c) const;
  bool is_zero() const;
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.nvars_ == b.nvars_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, nvars_ = 0;
  std::vector<Poly> data_;
};

/// Substitution matrix for identical algebras.
Matrix same_algebra(std::size_t nvars);

/// m(x) where the coefficients of x are first pulled back along `subst`
/// (source variables -> target variables).
Element apply(const PolyMatrix& m, const Matrix& subst, const Element& x);

/// outer o inner, where inner's entries are pulled back along subst.
PolyMatrix compose(const PolyMatrix& outer, const PolyMatrix& inner, const Matrix& subst);

/// Degree-q part of the map as a matrix (dst.dim(q) x src.dim(q)).
Matrix degree_matrix(const PolyMatrix& m, const Matrix& subst, const FreeModule& src,
                     const FreeModule& dst, int q);

/// Multiplication by a homogeneous p: M^q -> M^(q + deg p). Pass the degree
/// explicitly when p may be zero.
Matrix multiplication_matrix(const FreeModule& m, const Poly& p, int q, int degree = -1);

/// Every entry (j, i) homogeneous of degree src.gens[i] - dst.gens[j] (or zero).
bool is_homogeneous_map(const PolyMatrix& m, const FreeModule& src, const FreeModule& dst);

/// Minimal homogeneous generators of a graded submodule S of a free module,
/// given degreewise. `space(q)` spans S^q inside the ambient degree-q part,
/// `multiply(i, q)` is multiplication by the i-th variable from degree q to
/// q + 2. Per degree the new generators are the reduced echelon rows of S^q
/// not in the span of the lower-degree part, so the choice is canonical.
struct Generators {
  std::vector<int> degrees;
  std::vector<Vec> lifts;  // coordinates in the ambient part of that degree
};

Generators minimal_generators(const std::function<std::vector<Vec>(int)>& space,
                              const std::function<Matrix(std::size_t, int)>& multiply,
                              std::size_t nvars, int max_degree,
                              const std::function<std::size_t(int)>& ambient_dim);

/// Coefficients of x in M^q on the generators (lifts given as M coordinates),
/// or nullopt if x is not in their span.
std::optional<Element> express_in(const FreeModule& m, const Generators& g, const Vec& x, int q);

/// Stacks the rows of the given matrices (all with the same column count).
Matrix stack_rows(const std::vector<Matrix>& blocks, std::size_t cols);

}  // namespace fanih
