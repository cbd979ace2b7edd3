#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "isolab/ratfunc.hpp"
#include "isolab/roots.hpp"

namespace isolab {

// Independent variable "x"; the free family parameter is the variable "c".
inline const std::string kPviVar = "x";
inline const std::string kFamilyVar = "c";

struct ThetaTuple {
  Rational beta1, beta2, beta3, beta_inf;
  bool triangular() const { return (beta1 + beta2 + beta3 + beta_inf).is_zero(); }
  friend bool operator==(const ThetaTuple&, const ThetaTuple&) = default;
};

struct PVIParams {
  Rational alpha, beta, gamma, delta;
  friend bool operator==(const PVIParams&, const PVIParams&) = default;
};

struct OkamotoCoords {
  Rational b1, b2, b3, b4;
  static OkamotoCoords from_theta(const ThetaTuple& t);
  ThetaTuple theta() const;
  friend bool operator==(const OkamotoCoords&, const OkamotoCoords&) = default;
};

// Upper-right entries of the three 2x2 residue matrices.
struct BTriple {
  RatFunc b1, b2, b3;
};

struct PVISolutionFamily {
  std::string theorem;                    // "5", "6", "7", "8"
  std::map<std::string, Rational> inputs; // n, b, c, a as applicable
  ThetaTuple theta;
  PVIParams params;
  // One triple, or two (b, b~) combined as c*b + b~.
  std::vector<BTriple> basis;
  RatFunc y;
  // Displayed numerator and denominator polynomials when the theorem gives them.
  std::optional<std::pair<MultiPoly, MultiPoly>> pq;

  bool has_family_parameter() const { return basis.size() == 2; }
  RatFunc at(const Rational& c) const;
};

PVIParams pvi_params(const ThetaTuple& theta);

// x b1 / (b1 + (1 - x) b3). Throws DomainError when the denominator vanishes.
RatFunc y_from_b(const RatFunc& b1, const RatFunc& b3);

// First-order system for (b1, b2); both components vanish for a valid pair.
std::pair<RatFunc, RatFunc> linear_system_residual(const RatFunc& b1, const RatFunc& b2, const ThetaTuple& theta);

// Second-order equation satisfied by b1 (which = 1) or b2 (which = 2).
RatFunc hypergeom_residual(const RatFunc& b, int which, const ThetaTuple& theta);

// Rational solution for n > 0, 3 not dividing n, beta_i = n/6.
PVISolutionFamily thm5_solution(int n);
// One-parameter rational family for n < 0, beta_i = n/2.
PVISolutionFamily thm6_family(int n);
// Rational solution built from the degree-n polynomial hypergeometric solution.
PVISolutionFamily thm7_solution(int n, const Rational& b, const Rational& c);
// One-parameter rational family for integers c > 1, b >= 1, a > c, c - a < b < c - 1.
PVISolutionFamily thm8_family(int a, int b, int c);
// The same formulas without the inequality checks; needs c - b - 1 >= 0, a - c >= 0, b + 1 != c.
PVISolutionFamily hypergeometric_rational_family(int a, int b, int c);

// thm7's polynomial b1 = sum_j binom(-b, j) binom(c + n - 1, n - j) x^j.
MultiPoly hypergeometric_polynomial(int n, const Rational& b, const Rational& c);
// -(x f' + b f)/(1 + b - c): the b3 partner of a b1 solution.
RatFunc b3_from_b1(const RatFunc& b1, const Rational& b, const Rational& c);

enum class Degenerate { none, zero, one, x, infinity };
Degenerate degenerate_kind(const RatFunc& y);
// y = inf needs alpha = 0, y = 0 needs beta = 0, y = 1 needs gamma = 0, y = x needs delta = 1/2.
bool degenerate_holds(Degenerate kind, const PVIParams& params);

// Exact residual y'' - RHS. Degenerate y is routed to degenerate_holds: the result is 0
// when it holds, else the offending parameter (alpha, beta, gamma or delta - 1/2).
RatFunc pvi_residual(const RatFunc& y, const PVIParams& params);
// Numerator of the residual after clearing 2 Q^3 P (P-Q)(P-xQ) x^2 (x-1)^2; no gcd work.
MultiPoly pvi_residual_numerator(const RatFunc& y, const PVIParams& params);

// Residuals of both equations of the Hamiltonian system for (y, p).
std::pair<RatFunc, RatFunc> hamiltonian_residual(const RatFunc& y, const RatFunc& p, const ThetaTuple& theta);
// p solved from the first Hamiltonian equation. Throws DomainError for y in {0, 1, x}.
RatFunc conjugate_momentum(const RatFunc& y, const ThetaTuple& theta);

// Generators 0..4 act on Okamoto coordinates.
OkamotoCoords okamoto_action(int generator, const OkamotoCoords& b);
// "w1w2w1" -> {1, 2, 1}; letters are applied left to right.
std::vector<int> parse_okamoto_word(const std::string& word);

struct OkamotoImage {
  RatFunc y, p;
  OkamotoCoords b;
};
// Letters w1..w4 solve F[w b] (y_w, y_w (y_w - 1) p_w) + g[w b] = F[b] (y, y (y - 1) p) + g[b],
// with h = h(y, p; b) on both sides. That relation does not induce w0 (beta3 -> -beta3), so w0
// keeps y and takes p_w = p - 2 beta3 / (y - x) from the first Hamiltonian equation.
// Throws DomainError when F[w b] is singular on (y, p).
OkamotoImage okamoto_apply(const std::vector<int>& word, const RatFunc& y, const RatFunc& p, const OkamotoCoords& b);

// Left side minus right side of the F, g relation for a candidate image (h from the source pair).
std::pair<RatFunc, RatFunc> okamoto_relation_residual(const OkamotoCoords& b, const RatFunc& y, const RatFunc& p,
                                                      const OkamotoCoords& wb, const RatFunc& yw, const RatFunc& pw);

// Image of (0, p) under w1 w2 w1 when b1 = -b2.
std::pair<RatFunc, RatFunc> degenerate_prolongation(const RatFunc& p, const Rational& b1, const Rational& b3);
RatFunc riccati_residual(const RatFunc& p, const OkamotoCoords& b);

struct LiouvillianSample {
  long double x;
  long double b1L, b3L;
  long double wronskian;          // b1P b1L' - b1P' b1L, finite differences
  long double wronskian_expected; // x^-c (x-1)^(c-b+n-1)
  long double ode_residual;       // of the hypergeometric equation for b1L
};
// Integrand x^-c (x-1)^(c-b+n-1) / b1P(x)^2 for real x > 1.
long double liouvillian_integrand(int n, const Rational& b, const Rational& c, long double x);
// b1L = b1P * integral from 2 to x, per sample point in (1, inf).
std::vector<LiouvillianSample> liouvillian_eval(int n, const Rational& b, const Rational& c,
                                                const std::vector<long double>& xs, long double quad_tol = 1e-10L,
                                                long double h = 1e-5L);

struct ZeroReport {
  std::vector<cld> roots;
  bool conjugation_symmetric = false;
  bool inversion_paired = false;   // nonzero roots closed under z -> 1/z
  long double max_conjugation_error = 0;
  long double max_inversion_error = 0;
};
ZeroReport polynomial_zeros(const MultiPoly& p, long double tol = 1e-8L);
bool is_palindromic(const MultiPoly& p);

nlohmann::json to_json(const PVIParams& p);
nlohmann::json to_json(const ThetaTuple& t);
nlohmann::json to_json(const PVISolutionFamily& f);
// Inverse of to_json; ParseError on a malformed document.
PVISolutionFamily family_from_json(const nlohmann::json& j);

}  // namespace isolab
