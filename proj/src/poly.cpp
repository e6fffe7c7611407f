#include "fanih/poly.hpp"

#include <mutex>
#include <numeric>
#include <sstream>

#include "fanih/error.hpp"

namespace fanih {

unsigned total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0u); }

bool DegLex::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  Monomial m(nvars, 0);
  m.at(i) = 1;
  return monomial(m);
}

Poly Poly::linear(const Vec& coeffs) {
  Poly p(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Monomial m(coeffs.size(), 0);
    m[i] = 1;
    p.add_term(m, coeffs[i]);
  }
  return p;
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p(m.size());
  p.add_term(m, c);
  return p;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return 2 * static_cast<int>(total_degree(terms_.begin()->first));
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const unsigned d = total_degree(terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (total_degree(m) != d) return false;
  return true;
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != nvars_) throw Error(ErrorKind::InvalidArgument, "monomial arity mismatch");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.nvars_ != nvars_) throw Error(ErrorKind::InvalidArgument, "polynomial arity mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.nvars_ != nvars_) throw Error(ErrorKind::InvalidArgument, "polynomial arity mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_) throw Error(ErrorKind::InvalidArgument, "polynomial arity mismatch");
  Poly out(a.nvars_);
  Monomial m(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  return out;
}

Poly Poly::substitute(const Matrix& m) const {
  if (m.rows() != nvars_) throw Error(ErrorKind::InvalidArgument, "substitution arity mismatch");
  const std::size_t k = m.cols();
  std::vector<std::vector<Poly>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    powers[i].push_back(constant(k, 1));
    powers[i].push_back(linear(m.row(i)));
  }
  Poly out(k);
  for (const auto& [mono, c] : terms_) {
    Poly t = constant(k, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (mono[i] == 0) continue;
      while (powers[i].size() <= mono[i]) powers[i].push_back(powers[i].back() * powers[i][1]);
      t = t * powers[i][mono[i]];
    }
    out += t;
  }
  return out;
}

Rational Poly::evaluate(const Vec& point) const {
  Rational s = 0;
  for (const auto& [mono, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned e = 0; e < mono[i]; ++e) t *= point[i];
    s += t;
  }
  return s;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    Rational a = c;
    if (first) {
      if (sgn(a) < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    const bool is_const = total_degree(mono) == 0;
    bool need_star = false;
    if (a != 1 || is_const) {
      os << a.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      if (need_star) os << "*";
      os << "x" << (i + 1);
      if (mono[i] > 1) os << "^" << mono[i];
      need_star = true;
    }
  }
  return os.str();
}

namespace {

struct MonomialTable {
  std::vector<Monomial> list;
  std::map<Monomial, std::size_t> index;
};

void enumerate(std::size_t nvars, unsigned k, std::size_t pos, Monomial& cur, std::vector<Monomial>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = k;
    out.push_back(cur);
    return;
  }
  for (unsigned e = k + 1; e-- > 0;) {
    cur[pos] = e;
    enumerate(nvars, k - e, pos + 1, cur, out);
  }
}

const MonomialTable& table(std::size_t nvars, unsigned k) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, unsigned>, MonomialTable> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(nvars, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  MonomialTable t;
  if (nvars == 0) {
    if (k == 0) t.list.push_back({});
  } else {
    Monomial cur(nvars, 0);
    enumerate(nvars, k, 0, cur, t.list);
  }
  for (std::size_t i = 0; i < t.list.size(); ++i) t.index[t.list[i]] = i;
  return cache.emplace(key, std::move(t)).first->second;
}

}  // namespace

const std::vector<Monomial>& monomials(std::size_t nvars, unsigned k) { return table(nvars, k).list; }

std::size_t monomial_index(std::size_t nvars, const Monomial& m) {
  return table(nvars, total_degree(m)).index.at(m);
}

std::size_t poly_dim(std::size_t nvars, int q) {
  if (q < 0 || q % 2 != 0) return 0;
  // C(k + nvars - 1, nvars - 1)
  const std::size_t k = static_cast<std::size_t>(q / 2);
  if (nvars == 0) return k == 0 ? 1 : 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), k + nvars - 1, nvars - 1);
  return r.get_ui();
}

Vec coefficients(const Poly& p, int q) {
  Vec out(poly_dim(p.nvars(), q));
  if (q < 0) return out;
  const unsigned k = static_cast<unsigned>(q / 2);
  const auto& t = table(p.nvars(), k);
  for (const auto& [m, c] : p.terms())
    if (total_degree(m) == k) out[t.index.at(m)] = c;
  return out;
}

Poly from_coefficients(std::size_t nvars, int q, const Vec& c) {
  Poly p(nvars);
  if (q < 0) return p;
  const auto& list = monomials(nvars, static_cast<unsigned>(q / 2));
  for (std::size_t i = 0; i < c.size(); ++i) p.add_term(list.at(i), c[i]);
  return p;
}

}  // namespace fanih
