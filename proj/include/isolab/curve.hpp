#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "isolab/ratfunc.hpp"
#include "isolab/series.hpp"

namespace isolab {

using cplx = std::complex<double>;

struct CurveInvariants {
  int s = 1;   // gcd(m, N), number of points at infinity
  int N1 = 1;  // N / s
  int m1 = 1;  // m / s
  int genus = 0;
  int infinity_points = 1;
  int finite_poles = 0;  // N when n < 0
};

CurveInvariants curve_invariants(int m, int N, int n = 1);

// Number of independent cycles carrying the differentials: (m-1)(N-1) for n > 0 and
// 2g + N - 1 for n < 0.
int cycle_count(int m, int N, int n);

// w^m = (z - a_1)...(z - a_N) with differentials w^(jn) dz/(z - a_i).
// Branch points are rational functions (variables or constants).
struct SuperellipticCurve {
  int m = 2;
  int n = 1;
  std::vector<RatFunc> a;

  int N() const { return static_cast<int>(a.size()); }
  static SuperellipticCurve symbolic(int m, int N, int n);  // a_i = variables a1..aN
  void validate() const;
};

struct NumericCurve {
  int m = 2;
  int n = 1;
  std::vector<cplx> a;

  int N() const { return static_cast<int>(a.size()); }
  void validate() const;
};

// exp(2 pi i num / den), kept exact.
struct RootTag {
  int num = 0;
  int den = 1;
  cplx value() const;
};

// Product of base_k^(exponent_k) with rational exponents, principal branch in numerics.
struct Radical {
  std::vector<std::pair<RatFunc, Rational>> factors;
  Radical pow(const Rational& e) const;
  bool is_rational() const;  // every exponent an integer
  RatFunc as_ratfunc() const;
};

struct SymbolicChart {
  TruncatedSeries<RatFunc> z;
  TruncatedSeries<RatFunc> w;  // w = tag * radical * (this series)
  RootTag tag;
  Radical radical;
};

struct NumericChart {
  TruncatedSeries<cplx> z;
  TruncatedSeries<cplx> w;
};

// Chart at the k-th point at infinity (1 <= k <= s); `terms` coefficients of w.
SymbolicChart expand_at_infinity(const SuperellipticCurve& c, int k, int terms);
NumericChart expand_at_infinity(const NumericCurve& c, int k, int terms);

// Chart at the ramification point (a_nu, 0), 1 <= nu <= N.
SymbolicChart expand_at_branch_point(const SuperellipticCurve& c, int nu, int terms);
NumericChart expand_at_branch_point(const NumericCurve& c, int nu, int terms);

struct InfinityPole {
  int k;
};
struct BranchPole {
  int nu;
};
using Pole = std::variant<InfinityPole, BranchPole>;

struct SymbolicResidue {
  RatFunc value;
  RootTag tag;  // residue = value * tag.value()
};

// Residue of w^(jn) dz/(z - a_i) at the pole (1-based i), computed by multiplying
// truncated chart series and reading the coefficient of t^-1.
SymbolicResidue residue_series_oracle(const SuperellipticCurve& c, int i, int j, const Pole& pole);
cplx residue_series_oracle(const NumericCurve& c, int i, int j, const Pole& pole);

// Scalar relating the oracle to the closed-form residue sums:
// at infinity   oracle = -m1 (-1)^(N1 d) eps^tag * sum,  d = j n s / m;
// at (a_nu, 0)  oracle = m * sum.
Rational oracle_constant(int m, int N, int n, int j, const Pole& pole);

}  // namespace isolab
