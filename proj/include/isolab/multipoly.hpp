#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "isolab/rational.hpp"

namespace isolab {

using Exponents = std::vector<std::uint32_t>;

struct Term {
  Exponents exp;
  Rational coef;
};

// Natural order on variable names: "a2" < "a10" < "c" < "x".
bool var_less(const std::string& a, const std::string& b);
std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b);

// Graded lexicographic comparison; first variable is the most significant.
int grlex_compare(const Exponents& a, const Exponents& b);

// Sparse polynomial over Q. Terms are stored in descending grlex order, no zero
// coefficients, exponent vectors sized to the variable list, which is always sorted
// by var_less.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(const Rational& c);
  MultiPoly(int c) : MultiPoly(Rational(c)) {}
  MultiPoly(std::vector<std::string> vars, std::vector<Term> terms);

  static MultiPoly variable(const std::string& name);
  static MultiPoly monomial(const std::vector<std::string>& vars, Exponents exp, Rational coef);
  // Univariate polynomial from dense coefficients, lowest degree first.
  static MultiPoly univariate(const std::string& var, const std::vector<Rational>& coeffs);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_value() const;  // requires is_constant()
  Rational coefficient(const Exponents& e) const;

  int var_index(const std::string& name) const;  // -1 when absent
  int total_degree() const;
  int degree(const std::string& var) const;
  int degree(int idx) const;
  const Term& leading() const { return terms_.front(); }
  std::vector<std::string> used_vars() const;

  // Same polynomial over a superset of the current variables.
  MultiPoly with_vars(const std::vector<std::string>& target) const;
  // Drops variables that do not occur.
  MultiPoly trimmed() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

  // Structural equality, insensitive to unused variables.
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned e) const;
  MultiPoly partial(const std::string& var) const;

  // Smallest exponent of each variable over all terms.
  Exponents min_exponents() const;
  // Divides every term by the monomial x^e (caller guarantees divisibility).
  MultiPoly shift_down(const Exponents& e) const;
  MultiPoly shift_up(const Exponents& e) const;

  // Coefficients as a polynomial in variable idx, lowest power first. Each coefficient
  // keeps the full variable list with a zero exponent at idx.
  std::vector<MultiPoly> coefficients_in(int idx) const;
  static MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs, int idx);

  // Makes the leading coefficient 1 (zero stays zero).
  MultiPoly monic() const;
  Rational leading_coefficient() const { return terms_.empty() ? Rational(0) : terms_.front().coef; }

  template <class T>
  T evaluate(const std::vector<T>& values) const;  // values aligned with vars()
  std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& at) const;
  Rational evaluate(const std::map<std::string, Rational>& at) const;

 private:
  void normalize_terms();
  std::vector<std::string> vars_;
  std::vector<Term> terms_;
};

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

namespace detail {
template <class T>
T from_rational(const Rational& r) {
  if constexpr (std::is_same_v<T, long double> || std::is_same_v<T, std::complex<long double>>)
    return T(r.to_long_double());
  else
    return T(r.to_double());
}
}  // namespace detail

template <class T>
T MultiPoly::evaluate(const std::vector<T>& values) const {
  T acc(0);
  for (const auto& t : terms_) {
    T v = detail::from_rational<T>(t.coef);
    for (std::size_t i = 0; i < t.exp.size(); ++i)
      for (std::uint32_t k = 0; k < t.exp[i]; ++k) v *= values[i];
    acc += v;
  }
  return acc;
}

}  // namespace isolab
