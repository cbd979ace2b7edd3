#include "isolab/rational.hpp"

#include <cctype>
#include <ostream>

#include "isolab/errors.hpp"

namespace isolab {

Rational::Rational(const mpz_class& n, const mpz_class& d) : v_(n, d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  v_.canonicalize();
}

namespace {

mpz_class parse_integer(std::string_view s) {
  if (s.empty()) throw ParseError("empty integer literal");
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) throw ParseError("sign without digits");
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw ParseError("bad integer literal: " + std::string(s));
  mpz_class z(std::string(s.substr(s[0] == '+' ? 1 : 0)), 10);
  return z;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

long double Rational::to_long_double() const {
  double hi = v_.get_d();
  mpq_class rem = v_ - mpq_class(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rem.get_d());
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero rational");
  v_ /= o.v_;
  return *this;
}

Rational Rational::pow(long e) const {
  if (e < 0) return Rational(1) / pow(-e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational gcd(const Rational& a, const Rational& b) {
  mpz_class n, d;
  mpz_gcd(n.get_mpz_t(), a.value().get_num_mpz_t(), b.value().get_num_mpz_t());
  mpz_lcm(d.get_mpz_t(), a.value().get_den_mpz_t(), b.value().get_den_mpz_t());
  return Rational(n, d);
}

}  // namespace isolab
