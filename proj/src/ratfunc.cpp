#include "isolab/ratfunc.hpp"

#include "isolab/errors.hpp"

namespace isolab {

namespace {

MultiPoly quotient(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_constant()) return a * (Rational(1) / b.constant_value());
  auto q = divide_exact(a, b);
  if (!q) throw Error("internal: inexact division in rational function arithmetic");
  return *q;
}

}  // namespace

RatFunc RatFunc::normalize(const MultiPoly& num, const MultiPoly& den) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  if (num.is_zero()) return RatFunc();
  MultiPoly n = num, d = den;
  if (!d.is_constant()) {
    MultiPoly g = gcd(n, d);
    if (!g.is_constant()) {
      n = quotient(n, g);
      d = quotient(d, g);
    }
  }
  Rational lc = d.leading_coefficient();
  if (!lc.is_one()) {
    Rational inv = Rational(1) / lc;
    n *= inv;
    d *= inv;
  }
  return RatFunc(std::move(n), std::move(d), 0);
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw DomainError("rational function is not constant");
  return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, 0); }

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    MultiPoly n = num_ + o.num_;
    *this = den_.is_constant() ? RatFunc(std::move(n), den_, 0) : normalize(n, den_);
    if (num_.is_zero()) den_ = MultiPoly(1);
    return *this;
  }
  MultiPoly g = gcd(den_, o.den_);
  if (g.is_constant()) {
    MultiPoly n = num_ * o.den_ + o.num_ * den_;
    MultiPoly d = den_ * o.den_;
    if (n.is_zero()) return *this = RatFunc();
    *this = RatFunc(std::move(n), std::move(d), 0);
    return *this;
  }
  MultiPoly b1 = quotient(den_, g), d1 = quotient(o.den_, g);
  MultiPoly n = num_ * d1 + o.num_ * b1;
  if (n.is_zero()) return *this = RatFunc();
  MultiPoly d = b1 * o.den_;
  MultiPoly g2 = gcd(n, g);
  if (!g2.is_constant()) {
    n = quotient(n, g2);
    d = quotient(d, g2);
  }
  *this = normalize(n, d);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (den_.is_constant() && o.den_.is_constant()) {
    *this = normalize(num_ * o.num_, den_ * o.den_);
    return *this;
  }
  MultiPoly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  MultiPoly n = quotient(num_, g1) * quotient(o.num_, g2);
  MultiPoly d = quotient(den_, g2) * quotient(o.den_, g1);
  *this = normalize(n, d);
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero rational function");
  return normalize(den_, num_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  // gcd(num, den) = 1 implies the powers stay coprime.
  MultiPoly n = num_.pow(static_cast<unsigned>(e)), d = den_.pow(static_cast<unsigned>(e));
  return normalize(n, d);
}

RatFunc RatFunc::partial(const std::string& var) const {
  MultiPoly dn = num_.partial(var);
  if (den_.is_constant()) return normalize(dn, den_);
  MultiPoly dd = den_.partial(var);
  if (dd.is_zero()) return normalize(dn, den_);
  // With g = gcd(den, den'), the quotient rule needs only den * (den / g) below.
  MultiPoly g = gcd(den_, dd);
  MultiPoly d1 = quotient(den_, g), e = quotient(dd, g);
  return normalize(dn * d1 - num_ * e, den_ * d1);
}

RatFunc RatFunc::derivation(const std::vector<std::string>& vars) const {
  MultiPoly dn, dd;
  for (const auto& v : vars) {
    dn += num_.partial(v);
    if (!den_.is_constant()) dd += den_.partial(v);
  }
  if (dd.is_zero()) return normalize(dn, den_);
  MultiPoly g = gcd(den_, dd);
  MultiPoly d1 = quotient(den_, g), e = quotient(dd, g);
  return normalize(dn * d1 - num_ * e, den_ * d1);
}

RatFunc substitute(const MultiPoly& p, const std::string& var, const RatFunc& value) {
  int idx = p.var_index(var);
  if (idx < 0 || p.degree(idx) <= 0) return RatFunc(p);
  auto coeffs = p.coefficients_in(idx);
  int top = static_cast<int>(coeffs.size()) - 1;
  // sum_k c_k n^k d^(top-k) / d^top, assembled by Horner's rule.
  const MultiPoly& n = value.num();
  const MultiPoly& d = value.den();
  MultiPoly acc = coeffs[static_cast<std::size_t>(top)];
  MultiPoly dpow(1);
  for (int k = top - 1; k >= 0; --k) {
    dpow = dpow * d;
    acc = acc * n + coeffs[static_cast<std::size_t>(k)] * dpow;
  }
  return RatFunc::normalize(acc, d.pow(static_cast<unsigned>(top)));
}

RatFunc RatFunc::substitute(const std::string& var, const RatFunc& value) const {
  RatFunc n = isolab::substitute(num_, var, value);
  RatFunc d = isolab::substitute(den_, var, value);
  if (d.is_zero()) throw DomainError("substitution makes a denominator vanish identically");
  return n / d;
}

RatFunc RatFunc::substitute(const std::map<std::string, RatFunc>& values) const {
  RatFunc r = *this;
  std::map<std::string, RatFunc> second;
  int k = 0;
  for (const auto& [var, val] : values) {
    std::string tmp = "__subst" + std::to_string(k++);
    r = r.substitute(var, RatFunc::variable(tmp));
    second.emplace(tmp, val);
  }
  for (const auto& [var, val] : second) r = r.substitute(var, val);
  return r;
}

std::complex<double> RatFunc::evaluate(const std::map<std::string, std::complex<double>>& at) const {
  std::complex<double> d = den_.evaluate(at);
  if (d == std::complex<double>(0.0)) throw DomainError("evaluation at a pole");
  return num_.evaluate(at) / d;
}

Rational RatFunc::evaluate(const std::map<std::string, Rational>& at) const {
  Rational d = den_.evaluate(at);
  if (d.is_zero()) throw DomainError("evaluation at a pole");
  return num_.evaluate(at) / d;
}

}  // namespace isolab
