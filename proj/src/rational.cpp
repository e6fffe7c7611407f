#include "fanih/rational.hpp"

#include <cctype>

#include "fanih/error.hpp"

namespace fanih {

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string strip_plus(std::string_view s) {
  return std::string(!s.empty() && s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
    throw Error(ErrorKind::Parse, "bad rational literal '" + std::string(text) + "'");
  Integer n(strip_plus(num));
  Integer d{std::string(den)};
  if (d == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

Vec primitive(const Vec& v) {
  Integer lcm_den = 1;
  for (const auto& x : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> ints;
  ints.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer k = x.get_num() * (lcm_den / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t());
    ints.push_back(std::move(k));
  }
  Vec out;
  out.reserve(v.size());
  for (auto& k : ints) out.emplace_back(g == 0 ? Integer(0) : Integer(k / g));
  return out;
}

Rational dot(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace fanih
