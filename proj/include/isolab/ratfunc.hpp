#pragma once

#include <complex>
#include <map>
#include <string>

#include "isolab/multipoly.hpp"

namespace isolab {

// Reduced quotient of polynomials: gcd(num, den) = 1 and den has leading coefficient 1.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(int c) : num_(Rational(c)), den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}
  RatFunc(const MultiPoly& p) : num_(p), den_(1) {}

  static RatFunc normalize(const MultiPoly& num, const MultiPoly& den);
  static RatFunc variable(const std::string& name) { return RatFunc(MultiPoly::variable(name)); }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  std::vector<std::string> vars() const { return merge_vars(num_.vars(), den_.vars()); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc inverse() const;
  RatFunc pow(int e) const;
  RatFunc partial(const std::string& var) const;
  // Sum of the partial derivatives in the listed variables.
  RatFunc derivation(const std::vector<std::string>& vars) const;
  RatFunc substitute(const std::string& var, const RatFunc& value) const;
  RatFunc substitute(const std::map<std::string, RatFunc>& values) const;

  std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& at) const;
  Rational evaluate(const std::map<std::string, Rational>& at) const;

 private:
  RatFunc(MultiPoly n, MultiPoly d, int) : num_(std::move(n)), den_(std::move(d)) {}
  MultiPoly num_;
  MultiPoly den_;
};

// Replaces var by value in p and returns the reduced result.
RatFunc substitute(const MultiPoly& p, const std::string& var, const RatFunc& value);

}  // namespace isolab
