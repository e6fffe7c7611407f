#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace fanih {

/// Exact scalar of the coefficient field. Everything in the engine is exact.
using Rational = mpq_class;
using Integer = mpz_class;
using Vec = std::vector<Rational>;

/// Parses "p" or "p/q" (optional sign, no whitespace inside). Throws Error(Parse).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

bool is_zero(const Vec& v);

/// Positive rescaling of a nonzero vector to a primitive integer vector.
Vec primitive(const Vec& v);

Rational dot(const Vec& a, const Vec& b);

}  // namespace fanih
